//! Finite sample spaces with index decoding (for exhaustive censuses) and
//! uniform sampling (for Monte Carlo).

use polyprime_core::canonical::{kronecker_hermite_form, HermiteForm};
use polyprime_core::convcode::code_from_system;
use polyprime_core::field::{Elem, Field};
use polyprime_core::polymatrix::{are_left_coprime, mutually_left_coprime, pairwise_left_coprime};
use polyprime_core::systems::{is_observable, is_reachable, parallel_connect};
use polyprime_core::{Matrix, Poly, PolyMatrix, StateSpace};
use rand::{Rng, RngCore};

use crate::error::{CensusError, Result};

/// A finite uniform sample space with a predicate.
///
/// `None` marks a sample outside the conditioning event; such samples count
/// neither as hits nor toward the total.
pub trait SampleSpace: Send + Sync {
    /// Number of points, or `None` when it does not fit in `u128`.
    fn size(&self) -> Option<u128>;

    fn check_index(&self, idx: u128) -> Result<Option<bool>>;

    fn check_random(&self, rng: &mut dyn RngCore) -> Result<Option<bool>> {
        let size = self.size().ok_or_else(|| {
            CensusError::InvalidParameters("sample space too large to index".into())
        })?;
        self.check_index(rng.gen_range(0..size))
    }
}

/// Mixed-radix reader of base-`q` digits from an index.
struct Digits<'a> {
    field: &'a Field,
    rest: u128,
}

impl<'a> Digits<'a> {
    fn new(field: &'a Field, idx: u128) -> Self {
        Digits { field, rest: idx }
    }

    fn elem(&mut self) -> Elem {
        let q = self.field.size() as u128;
        let v = (self.rest % q) as u64;
        self.rest /= q;
        self.field.elem(v).expect("digit below q")
    }

    fn elems(&mut self, count: usize) -> Vec<Elem> {
        (0..count).map(|_| self.elem()).collect()
    }

    fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let data = self.elems(rows * cols);
        Matrix::from_elems(self.field, rows, cols, data)
    }

    /// Polynomial of degree below `bound`.
    fn poly_below(&mut self, bound: usize) -> Poly {
        let c = self.elems(bound);
        Poly::from_elems(self.field, c)
    }

    fn monic(&mut self, degree: usize) -> Poly {
        let mut c = self.elems(degree);
        c.push(Elem::ONE);
        Poly::from_elems(self.field, c)
    }
}

fn pow(q: u64, e: usize) -> Option<u128> {
    (q as u128).checked_pow(u32::try_from(e).ok()?)
}

fn product(sizes: impl IntoIterator<Item = Option<u128>>) -> Option<u128> {
    sizes
        .into_iter()
        .try_fold(1u128, |acc, s| acc.checked_mul(s?))
}

/// Splits a tuple index into per-factor indices.
fn split(mut idx: u128, radices: &[u128]) -> Vec<u128> {
    radices
        .iter()
        .map(|&r| {
            let d = idx % r;
            idx /= r;
            d
        })
        .collect()
}

/// Indexes every `m x m` Hermite form with determinant degree `n`: row
/// degree compositions in lexicographic order, then free coefficients.
#[derive(Clone, Debug)]
pub struct HermiteIndexer {
    field: Field,
    m: usize,
    n: usize,
    /// (row degrees, first index, count)
    blocks: Vec<(Vec<usize>, u128, u128)>,
    total: u128,
}

fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl HermiteIndexer {
    pub fn new(field: &Field, m: usize, n: usize) -> Result<HermiteIndexer> {
        if m == 0 {
            return Err(CensusError::InvalidParameters(
                "m must be at least 1".into(),
            ));
        }
        let q = field.size() as u64;
        let mut blocks = Vec::new();
        let mut total: u128 = 0;
        for rows in compositions(n, m) {
            let free: usize = rows.iter().enumerate().map(|(i, d)| (i + 1) * d).sum();
            let count = pow(q, free).ok_or_else(too_large)?;
            blocks.push((rows, total, count));
            total = total.checked_add(count).ok_or_else(too_large)?;
        }
        Ok(HermiteIndexer {
            field: field.clone(),
            m,
            n,
            blocks,
            total,
        })
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn decode(&self, idx: u128) -> PolyMatrix {
        assert!(idx < self.total, "Hermite index out of range");
        let b = self.blocks.partition_point(|(_, start, _)| *start <= idx) - 1;
        let (rows, start, _) = &self.blocks[b];
        let mut digits = Digits::new(&self.field, idx - start);
        let mut mat = PolyMatrix::zeros(&self.field, self.m, self.m);
        for (i, &d) in rows.iter().enumerate() {
            mat.set(i, i, digits.monic(d));
            for j in 0..i {
                mat.set(i, j, digits.poly_below(d));
            }
        }
        mat
    }

    pub fn form(&self, idx: u128) -> HermiteForm {
        HermiteForm::new(self.decode(idx)).expect("decoded matrices are Hermite forms")
    }

    /// Uniform over all forms, so each row-degree pattern is weighted by
    /// its cardinality.
    pub fn random(&self, rng: &mut dyn RngCore) -> PolyMatrix {
        self.decode(rng.gen_range(0..self.total))
    }

    pub fn iter(&self) -> impl Iterator<Item = HermiteForm> + '_ {
        (0..self.total).map(|i| self.form(i))
    }
}

fn too_large() -> CensusError {
    CensusError::InvalidParameters("sample space too large to index".into())
}

/// Tuples of monic polynomials with fixed degrees; hit when coprime.
pub struct ScalarCoprimeSpace {
    field: Field,
    degrees: Vec<usize>,
}

impl ScalarCoprimeSpace {
    pub fn new(field: &Field, degrees: &[usize]) -> Result<Self> {
        if degrees.len() < 2 {
            return Err(CensusError::InvalidParameters(
                "need N >= 2 polynomials".into(),
            ));
        }
        Ok(ScalarCoprimeSpace {
            field: field.clone(),
            degrees: degrees.to_vec(),
        })
    }
}

impl SampleSpace for ScalarCoprimeSpace {
    fn size(&self) -> Option<u128> {
        let q = self.field.size() as u64;
        product(self.degrees.iter().map(|&d| pow(q, d)))
    }

    fn check_index(&self, idx: u128) -> Result<Option<bool>> {
        let mut digits = Digits::new(&self.field, idx);
        let mut g = Poly::zero(&self.field);
        for &d in &self.degrees {
            g = g.gcd(&digits.monic(d))?;
        }
        Ok(Some(g.is_one()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TupleTest {
    /// `[D_1 D_2]` left prime.
    LeftCoprime,
    Pairwise,
    Mutual,
}

/// Tuples of Hermite forms with fixed determinant degrees.
pub struct HermiteTupleSpace {
    indexers: Vec<HermiteIndexer>,
    test: TupleTest,
}

impl HermiteTupleSpace {
    pub fn new(field: &Field, m: usize, degrees: &[usize], test: TupleTest) -> Result<Self> {
        if degrees.len() < 2 {
            return Err(CensusError::InvalidParameters(
                "need N >= 2 matrices".into(),
            ));
        }
        if test == TupleTest::LeftCoprime && degrees.len() != 2 {
            return Err(CensusError::InvalidParameters(
                "left coprimeness compares exactly two matrices".into(),
            ));
        }
        let indexers = degrees
            .iter()
            .map(|&n| HermiteIndexer::new(field, m, n))
            .collect::<Result<_>>()?;
        Ok(HermiteTupleSpace { indexers, test })
    }

    fn check(&self, ds: &[PolyMatrix]) -> Result<bool> {
        Ok(match self.test {
            TupleTest::LeftCoprime => are_left_coprime(ds)?,
            TupleTest::Pairwise => pairwise_left_coprime(ds)?,
            TupleTest::Mutual => mutually_left_coprime(ds)?,
        })
    }
}

impl SampleSpace for HermiteTupleSpace {
    fn size(&self) -> Option<u128> {
        product(self.indexers.iter().map(|h| Some(h.len())))
    }

    fn check_index(&self, idx: u128) -> Result<Option<bool>> {
        let radices: Vec<u128> = self.indexers.iter().map(HermiteIndexer::len).collect();
        let ds: Vec<PolyMatrix> = split(idx, &radices)
            .into_iter()
            .zip(&self.indexers)
            .map(|(i, h)| h.decode(i))
            .collect();
        self.check(&ds).map(Some)
    }

    fn check_random(&self, rng: &mut dyn RngCore) -> Result<Option<bool>> {
        let ds: Vec<PolyMatrix> = self.indexers.iter().map(|h| h.random(rng)).collect();
        self.check(&ds).map(Some)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemTest {
    Reachable,
    Observable,
    Minimal,
}

/// All `(A, B, C, D)` of the given shape (`B` omitted for observability,
/// `C` and `D` omitted for reachability).
pub struct SystemSpace {
    field: Field,
    n: usize,
    m: usize,
    p: usize,
    test: SystemTest,
}

impl SystemSpace {
    pub fn new(field: &Field, n: usize, m: usize, p: usize, test: SystemTest) -> Self {
        SystemSpace {
            field: field.clone(),
            n,
            m,
            p,
            test,
        }
    }

    fn entries(&self) -> usize {
        let (n, m, p) = (self.n, self.m, self.p);
        match self.test {
            SystemTest::Reachable => n * n + n * m,
            SystemTest::Observable => n * n + p * n,
            SystemTest::Minimal => n * n + n * m + p * n + p * m,
        }
    }
}

impl SampleSpace for SystemSpace {
    fn size(&self) -> Option<u128> {
        pow(self.field.size() as u64, self.entries())
    }

    fn check_index(&self, idx: u128) -> Result<Option<bool>> {
        let mut d = Digits::new(&self.field, idx);
        let (n, m, p) = (self.n, self.m, self.p);
        let a = d.matrix(n, n);
        Ok(Some(match self.test {
            SystemTest::Reachable => is_reachable(&a, &d.matrix(n, m))?,
            SystemTest::Observable => is_observable(&a, &d.matrix(p, n))?,
            SystemTest::Minimal => {
                let b = d.matrix(n, m);
                let c = d.matrix(p, n);
                let _ = d.matrix(p, m);
                is_reachable(&a, &b)? && is_observable(&a, &c)?
            }
        }))
    }
}

/// Tuples of node pairs `(A_i, B_i)` with state dimensions `n_i` sharing
/// `m` inputs; hit when the parallel connection is reachable.
pub struct ParallelSpace {
    field: Field,
    m: usize,
    nodes: Vec<usize>,
}

impl ParallelSpace {
    pub fn new(field: &Field, m: usize, nodes: &[usize]) -> Result<Self> {
        if nodes.is_empty() || m == 0 {
            return Err(CensusError::InvalidParameters(
                "need at least one node and one input".into(),
            ));
        }
        Ok(ParallelSpace {
            field: field.clone(),
            m,
            nodes: nodes.to_vec(),
        })
    }
}

impl SampleSpace for ParallelSpace {
    fn size(&self) -> Option<u128> {
        let e: usize = self.nodes.iter().map(|n| n * n + n * self.m).sum();
        pow(self.field.size() as u64, e)
    }

    fn check_index(&self, idx: u128) -> Result<Option<bool>> {
        let mut d = Digits::new(&self.field, idx);
        let nodes: Vec<(Matrix, Matrix)> = self
            .nodes
            .iter()
            .map(|&n| (d.matrix(n, n), d.matrix(n, self.m)))
            .collect();
        let s = parallel_connect(&nodes)?;
        Ok(Some(is_reachable(s.a(), s.b())?))
    }
}

/// Systems `(A, B, C)` with `s` states, `k` inputs and `n - k` outputs,
/// conditioned on `(A, B)` reachable; hit when the induced code is
/// non-catastrophic.
pub struct NoncatastrophicSpace {
    field: Field,
    s: usize,
    k: usize,
    outputs: usize,
}

impl NoncatastrophicSpace {
    pub fn new(field: &Field, s: usize, k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(CensusError::InvalidParameters("need 1 <= k < n".into()));
        }
        if s == 0 {
            return Err(CensusError::InvalidParameters(
                "code degree s must be at least 1".into(),
            ));
        }
        Ok(NoncatastrophicSpace {
            field: field.clone(),
            s,
            k,
            outputs: n - k,
        })
    }
}

impl SampleSpace for NoncatastrophicSpace {
    fn size(&self) -> Option<u128> {
        let s = self.s;
        pow(
            self.field.size() as u64,
            s * s + s * self.k + self.outputs * s,
        )
    }

    fn check_index(&self, idx: u128) -> Result<Option<bool>> {
        let mut d = Digits::new(&self.field, idx);
        let a = d.matrix(self.s, self.s);
        let b = d.matrix(self.s, self.k);
        if !is_reachable(&a, &b)? {
            return Ok(None);
        }
        let c = d.matrix(self.outputs, self.s);
        let zero = Matrix::zeros(&self.field, self.outputs, self.k);
        let code = code_from_system(&StateSpace::new(a, b, c, zero)?)?;
        Ok(Some(code.is_noncatastrophic()))
    }
}

/// `G = [Q; P]` with `Q` in Kronecker-Hermite form, `deg det Q = n`, and
/// `P` (p x m) with column degrees bounded by those of `Q`; hit when `G` is
/// right prime.
pub struct RightPrimeFractionSpace {
    hermite: HermiteIndexer,
    p: usize,
}

impl RightPrimeFractionSpace {
    pub fn new(field: &Field, p: usize, n: usize, m: usize) -> Result<Self> {
        Ok(RightPrimeFractionSpace {
            hermite: HermiteIndexer::new(field, m, n)?,
            p,
        })
    }

    fn numerators(&self) -> usize {
        self.p * (self.hermite.n() + self.hermite.m())
    }
}

impl SampleSpace for RightPrimeFractionSpace {
    fn size(&self) -> Option<u128> {
        let q = self.hermite.field.size() as u64;
        self.hermite.len().checked_mul(pow(q, self.numerators())?)
    }

    fn check_index(&self, idx: u128) -> Result<Option<bool>> {
        let h = self.hermite.len();
        let q = self.hermite.decode(idx % h);
        let (kh, _) = kronecker_hermite_form(&q)?;
        let field = &self.hermite.field;
        let mut d = Digits::new(field, idx / h);
        let m = self.hermite.m();
        let mut p = PolyMatrix::zeros(field, self.p, m);
        for (j, deg) in kh.column_degrees().into_iter().enumerate() {
            for i in 0..self.p {
                p.set(i, j, d.poly_below(deg + 1));
            }
        }
        Ok(Some(kh.matrix().vstack(&p)?.is_right_prime()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyprime_core::canonical::is_hermite;
    use std::collections::HashSet;

    #[test]
    fn hermite_indexer_counts_and_uniqueness() {
        for (q, m, n, expected) in [(2, 1, 2, 4u128), (2, 2, 1, 6), (3, 2, 2, 117), (2, 2, 0, 1)] {
            let f = Field::prime(q).unwrap();
            let h = HermiteIndexer::new(&f, m, n).unwrap();
            assert_eq!(h.len(), expected);
            let mut seen = HashSet::new();
            for i in 0..h.len() {
                let d = h.decode(i);
                assert!(is_hermite(&d));
                assert_eq!(d.det().unwrap().degree(), Some(n));
                assert!(seen.insert(d));
            }
        }
    }

    #[test]
    fn scalar_examples() {
        let f2 = Field::prime(2).unwrap();
        let s = ScalarCoprimeSpace::new(&f2, &[1, 1, 1]).unwrap();
        let hits = (0..s.size().unwrap())
            .filter(|&i| s.check_index(i).unwrap() == Some(true))
            .count();
        assert_eq!(hits, 6);
    }

    #[test]
    fn split_is_mixed_radix() {
        assert_eq!(split(7, &[2, 3, 4]), vec![1, 0, 1]);
    }
}
