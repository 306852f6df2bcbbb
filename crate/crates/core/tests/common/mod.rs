#![allow(dead_code)]

use polyprime_core::field::Field;
use polyprime_core::poly::{random_below, random_monic};
use polyprime_core::{Poly, PolyMatrix};
use rand::Rng;

pub fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

pub fn random_polymatrix<R: Rng>(
    f: &Field,
    rows: usize,
    cols: usize,
    max_deg: usize,
    rng: &mut R,
) -> PolyMatrix {
    let entries = (0..rows * cols)
        .map(|_| random_below(f, max_deg + 1, rng))
        .collect();
    PolyMatrix::new(f, rows, cols, entries).unwrap()
}

pub fn random_nonsingular<R: Rng>(f: &Field, n: usize, max_deg: usize, rng: &mut R) -> PolyMatrix {
    loop {
        let m = random_polymatrix(f, n, n, max_deg, rng);
        if m.is_nonsingular() {
            return m;
        }
    }
}

/// Product of random elementary column operations.
pub fn random_unimodular<R: Rng>(f: &Field, n: usize, steps: usize, rng: &mut R) -> PolyMatrix {
    let mut u = PolyMatrix::identity(f, n);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            let c = f.elem(rng.gen_range(1..f.size() as u64)).unwrap();
            for r in 0..n {
                let v = u.get(r, i).scale(c);
                u.set(r, i, v);
            }
        } else {
            let mult = random_below(f, 3, rng);
            for r in 0..n {
                let v = u.get(r, i) + &(u.get(r, j) * &mult);
                u.set(r, i, v);
            }
        }
    }
    u
}

/// Random lower-triangular matrix in Hermite form with the given row
/// degrees.
pub fn random_hermite<R: Rng>(f: &Field, degrees: &[usize], rng: &mut R) -> PolyMatrix {
    let n = degrees.len();
    let mut m = PolyMatrix::zeros(f, n, n);
    for (i, &d) in degrees.iter().enumerate() {
        m.set(i, i, random_monic(f, d, rng));
        for j in 0..i {
            m.set(i, j, random_below(f, d, rng));
        }
    }
    m
}

pub fn poly(f: &Field, v: &[u32]) -> Poly {
    Poly::from_values(f, v)
}
