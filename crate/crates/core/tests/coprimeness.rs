mod common;

use common::*;
use polyprime_core::poly::polys_below;
use polyprime_core::polymatrix::{
    are_left_coprime, left_prime_oracle, mutually_left_coprime, pairwise_left_coprime,
    rank_drop_witness,
};
use polyprime_core::PolyMatrix;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn left_prime_matches_oracle_on_gf2_rows() {
    let f = gf(2);
    let polys: Vec<_> = polys_below(&f, 4).collect();
    let mut disagreements = 0;
    for a in &polys {
        for b in &polys {
            let m = PolyMatrix::from_rows(&f, vec![vec![a.clone(), b.clone()]]).unwrap();
            if m.is_left_prime().unwrap() != left_prime_oracle(&m).unwrap() {
                disagreements += 1;
            }
        }
    }
    assert_eq!(disagreements, 0);
}

#[test]
fn left_prime_matches_oracle_on_random_gf3() {
    let f = gf(3);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..500 {
        let m = random_polymatrix(&f, 2, 3, 2, &mut rng);
        assert_eq!(
            m.is_left_prime().unwrap(),
            left_prime_oracle(&m).unwrap(),
            "{m}"
        );
    }
}

#[test]
fn rank_drop_witness_is_a_root_of_the_minors() {
    let f = gf(2);
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..200 {
        let m = random_polymatrix(&f, 1, 2, 3, &mut rng);
        if let Some(w) = rank_drop_witness(&m).unwrap() {
            for p in m.entries() {
                assert!(polyprime_core::field::extension_eval(p, &w)
                    .unwrap()
                    .is_zero());
            }
        }
    }
}

#[test]
fn pairwise_but_not_mutually_coprime_blocks() {
    let f = gf(2);
    let d1 = PolyMatrix::from_coeff_rows(&f, &[&[&[1], &[]], &[&[1], &[0, 1]]]);
    let d2 = PolyMatrix::from_coeff_rows(&f, &[&[&[1], &[]], &[&[], &[0, 1]]]);
    let d3 = PolyMatrix::from_coeff_rows(&f, &[&[&[0, 1], &[]], &[&[], &[1]]]);
    let ds = [d1, d2, d3];
    assert!(pairwise_left_coprime(&ds).unwrap());
    assert!(!mutually_left_coprime(&ds).unwrap());
}

fn random_tuple(rng: &mut ChaCha8Rng, f: &polyprime_core::Field, n: usize) -> Vec<PolyMatrix> {
    (0..n)
        .map(|_| random_hermite(f, &[0, 1 + (rand::Rng::gen_range(rng, 0..2))], rng))
        .collect()
}

#[test]
fn mutual_coprimeness_structure() {
    let f = gf(2);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut mutual_seen = 0;
    for case in 0..300 {
        let n = 3 + case % 2;
        let mut ds = random_tuple(&mut rng, &f, n);
        let mutual = mutually_left_coprime(&ds).unwrap();
        if mutual {
            mutual_seen += 1;
            assert!(
                pairwise_left_coprime(&ds).unwrap(),
                "mutual implies pairwise"
            );
        }
        ds.shuffle(&mut rng);
        assert_eq!(
            mutually_left_coprime(&ds).unwrap(),
            mutual,
            "order does not matter"
        );
    }
    assert!(mutual_seen > 0);
}

#[test]
fn two_blocks_mutual_is_plain_coprimeness() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for case in 0..500 {
        let f = gf([2, 3][case % 2]);
        let a = random_nonsingular(&f, 2, 1, &mut rng);
        let b = random_nonsingular(&f, 2, 1, &mut rng);
        assert_eq!(
            mutually_left_coprime(&[a.clone(), b.clone()]).unwrap(),
            are_left_coprime(&[a, b]).unwrap()
        );
    }
}
