//! Discrete-time linear systems `x(t+1) = A x(t) + B u(t)`,
//! `y(t) = C x(t) + D u(t)` over a finite field.

use rand::Rng;

use crate::canonical::{
    gcrd, hermite_form, kronecker_hermite_form, HermiteForm, KroneckerHermiteForm,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::polymatrix::{mutually_left_coprime, PolyMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    a: Matrix,
    b: Matrix,
    c: Matrix,
    d: Matrix,
}

impl StateSpace {
    pub fn new(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Result<StateSpace> {
        let n = a.rows();
        let m = b.cols();
        let p = c.rows();
        if a.cols() != n || b.rows() != n || c.cols() != n || d.rows() != p || d.cols() != m {
            return Err(Error::Dimension(format!(
                "inconsistent system shapes A {}x{}, B {}x{}, C {}x{}, D {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols(),
                d.rows(),
                d.cols()
            )));
        }
        if m == 0 {
            return Err(Error::Dimension("a system needs at least one input".into()));
        }
        let f = a.field();
        if ![&b, &c, &d].iter().all(|x| x.field().same(f)) {
            return Err(Error::FieldMismatch);
        }
        Ok(StateSpace { a, b, c, d })
    }

    /// The pair `(A, B)` with `C = I`, `D = 0`.
    pub fn from_pair(a: Matrix, b: Matrix) -> Result<StateSpace> {
        let f = a.field().clone();
        let n = a.rows();
        let m = b.cols();
        StateSpace::new(a, b, Matrix::identity(&f, n), Matrix::zeros(&f, n, m))
    }

    pub fn random<R: Rng + ?Sized>(
        field: &Field,
        n: usize,
        m: usize,
        p: usize,
        rng: &mut R,
    ) -> StateSpace {
        StateSpace::new(
            Matrix::random(field, n, n, rng),
            Matrix::random(field, n, m, rng),
            Matrix::random(field, p, n, rng),
            Matrix::random(field, p, m, rng),
        )
        .expect("shapes agree by construction")
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn c(&self) -> &Matrix {
        &self.c
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    /// State dimension.
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// Input dimension.
    pub fn m(&self) -> usize {
        self.b.cols()
    }

    /// Output dimension.
    pub fn p(&self) -> usize {
        self.c.rows()
    }

    /// `(S A S^-1, S B, C S^-1, D)`.
    pub fn conjugate(&self, s: &Matrix) -> Result<StateSpace> {
        if s.rows() != self.n() || s.cols() != self.n() {
            return Err(Error::Dimension(
                "conjugating matrix has the wrong size".into(),
            ));
        }
        let si = s.inverse()?;
        StateSpace::new(
            s.mul(&self.a)?.mul(&si)?,
            s.mul(&self.b)?,
            self.c.mul(&si)?,
            self.d.clone(),
        )
    }
}

/// Right coprime fraction `T(z) = P(z) Q(z)^-1` with `Q` in
/// Kronecker-Hermite form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFraction {
    pub p: PolyMatrix,
    pub q: KroneckerHermiteForm,
}

impl MatrixFraction {
    /// McMillan degree, `deg det Q`.
    pub fn degree(&self) -> usize {
        self.q.det_degree()
    }
}

/// Kalman controllability matrix `[B, AB, ..., A^{n-1} B]`.
pub fn controllability_matrix(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    if a.cols() != n || b.rows() != n {
        return Err(Error::Dimension(
            "pair (A, B) has inconsistent shapes".into(),
        ));
    }
    let mut out = b.clone();
    let mut block = b.clone();
    for _ in 1..n {
        block = a.mul(&block)?;
        out = out.hstack(&block)?;
    }
    Ok(out)
}

pub fn is_reachable(a: &Matrix, b: &Matrix) -> Result<bool> {
    Ok(controllability_matrix(a, b)?.rank() == a.rows())
}

pub fn is_observable(a: &Matrix, c: &Matrix) -> Result<bool> {
    is_reachable(&a.transpose(), &c.transpose())
}

pub fn is_minimal(sys: &StateSpace) -> bool {
    is_reachable(sys.a(), sys.b()).expect("validated shapes")
        && is_observable(sys.a(), sys.c()).expect("validated shapes")
}

/// Classical adjugate by cofactors; the determinant routine switches to
/// fraction-free elimination for larger minors.
fn adjugate(m: &PolyMatrix) -> Result<PolyMatrix> {
    let n = m.rows();
    let f = m.field().clone();
    let mut adj = PolyMatrix::zeros(&f, n, n);
    if n == 1 {
        adj.set(0, 0, Poly::one(&f));
        return Ok(adj);
    }
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = m.submatrix(&rows, &cols).det()?;
            adj.set(i, j, if (i + j) % 2 == 0 { minor } else { -minor });
        }
    }
    Ok(adj)
}

/// `d(z) = det(zI - A)` and `N(z) = C adj(zI - A) B + d(z) D`, so that the
/// transfer function is `N / d`.
pub fn transfer_numerator(sys: &StateSpace) -> Result<(Poly, PolyMatrix)> {
    let zi_a = PolyMatrix::z_minus(sys.a());
    let d = zi_a.det()?;
    let adj = adjugate(&zi_a)?;
    let n = PolyMatrix::from_scalar(sys.c())
        .mul(&adj)?
        .mul(&PolyMatrix::from_scalar(sys.b()))?
        .add(&PolyMatrix::from_scalar(sys.d()).scale(&d))?;
    Ok((d, n))
}

/// `Q_0` (before canonicalization) and `P_0` with `N / d = P_0 Q_0^-1`
/// right coprime.
fn coprime_pair(sys: &StateSpace) -> Result<(PolyMatrix, PolyMatrix, Poly, PolyMatrix)> {
    let (d, num) = transfer_numerator(sys)?;
    let f = sys.field();
    let di = PolyMatrix::identity(f, sys.m()).scale(&d);
    let r = gcrd(&di, &num)?;
    Ok((r.b_quotient, r.a_quotient, d, num))
}

pub fn right_coprime_factorization(sys: &StateSpace) -> Result<MatrixFraction> {
    let (p0, q0, d, num) = coprime_pair(sys)?;
    let (q, u) = kronecker_hermite_form(&q0)?;
    let p = p0.mul(&u)?;
    // N Q = d P
    if num.mul(q.matrix())? != p.scale(&d) {
        return Err(Error::Internal(
            "coprime factorization does not reproduce the transfer function".into(),
        ));
    }
    Ok(MatrixFraction { p, q })
}

/// The Hermite-form denominator of `(zI - A)^-1 B`.
pub fn denominator_in_hermite_form(a: &Matrix, b: &Matrix) -> Result<HermiteForm> {
    let sys = StateSpace::from_pair(a.clone(), b.clone())?;
    let (_, q0, _, _) = coprime_pair(&sys)?;
    Ok(hermite_form(&q0)?.0)
}

/// Parallel connection driven by a common input: block-diagonal `A`,
/// stacked `B`, `C = I`, `D = 0`.
pub fn parallel_connect(nodes: &[(Matrix, Matrix)]) -> Result<StateSpace> {
    let Some((a0, b0)) = nodes.first() else {
        return Err(Error::InvalidArgument("no systems to connect".into()));
    };
    let f = a0.field().clone();
    let m = b0.cols();
    if nodes.iter().any(|(_, b)| b.cols() != m) {
        return Err(Error::Dimension("systems differ in input dimension".into()));
    }
    let a = Matrix::block_diag(
        &f,
        &nodes.iter().map(|(a, _)| a.clone()).collect::<Vec<_>>(),
    );
    let mut b = Matrix::zeros(&f, 0, m);
    for (_, bi) in nodes {
        b = b.vstack(bi)?;
    }
    StateSpace::from_pair(a, b)
}

/// Reachability of the parallel connection decided node by node: every
/// node reachable and the Hermite denominators mutually left coprime.
pub fn parallel_reachable_via_criterion(nodes: &[(Matrix, Matrix)]) -> Result<bool> {
    parallel_connect(nodes)?;
    for (a, b) in nodes {
        if !is_reachable(a, b)? {
            return Ok(false);
        }
    }
    if nodes.len() == 1 {
        return Ok(true);
    }
    let dens = nodes
        .iter()
        .map(|(a, b)| denominator_in_hermite_form(a, b).map(HermiteForm::into_matrix))
        .collect::<Result<Vec<_>>>()?;
    mutually_left_coprime(&dens)
}

/// Number of reachable pairs `(A, B)` with `A` n x n and `B` n x m, by
/// exhaustive enumeration.
pub fn count_reachable_pairs(field: &Field, n: usize, m: usize) -> u64 {
    let q = field.size() as u64;
    let entries = n * n + n * m;
    let total = q
        .checked_pow(entries as u32)
        .expect("enumeration too large");
    let mut values = vec![0u32; entries];
    let mut hits = 0;
    for mut code in 0..total {
        for v in values.iter_mut() {
            *v = (code % q) as u32;
            code /= q;
        }
        let a = Matrix::from_values(field, n, n, &values[..n * n]);
        let b = Matrix::from_values(field, n, m, &values[n * n..]);
        if is_reachable(&a, &b).expect("shapes agree") {
            hits += 1;
        }
    }
    hits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::general_linear_group;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn sys(f: &Field, n: usize, m: usize, p: usize, v: &[u32]) -> StateSpace {
        let (a, rest) = v.split_at(n * n);
        let (b, rest) = rest.split_at(n * m);
        let (c, d) = rest.split_at(p * n);
        StateSpace::new(
            Matrix::from_values(f, n, n, a),
            Matrix::from_values(f, n, m, b),
            Matrix::from_values(f, p, n, c),
            Matrix::from_values(f, p, m, d),
        )
        .unwrap()
    }

    #[test]
    fn kalman_examples() {
        let f2 = gf(2);
        let a = Matrix::from_values(&f2, 1, 1, &[0]);
        assert!(is_reachable(&a, &Matrix::from_values(&f2, 1, 1, &[1])).unwrap());
        let i2 = Matrix::identity(&f2, 2);
        assert!(!is_reachable(&i2, &Matrix::from_values(&f2, 2, 1, &[1, 1])).unwrap());
        assert!(is_observable(&a, &Matrix::from_values(&f2, 1, 1, &[1])).unwrap());
        assert!(!is_observable(&a, &Matrix::zeros(&f2, 1, 1)).unwrap());
        assert_eq!(count_reachable_pairs(&f2, 2, 1), 24);
    }

    #[test]
    fn minimality_fraction() {
        let f2 = gf(2);
        let mut hits = 0;
        for code in 0..16u32 {
            let v: Vec<u32> = (0..4).map(|i| (code >> i) & 1).collect();
            if is_minimal(&sys(&f2, 1, 1, 1, &v)) {
                hits += 1;
            }
        }
        assert_eq!(hits, 4);
        assert!(!is_minimal(&sys(&f2, 1, 1, 1, &[1, 0, 1, 0])));
    }

    #[test]
    fn factorization_examples() {
        let f2 = gf(2);
        let fr = right_coprime_factorization(&sys(&f2, 1, 1, 1, &[0, 1, 1, 0])).unwrap();
        assert_eq!(fr.p, PolyMatrix::from_coeff_rows(&f2, &[&[&[1]]]));
        assert_eq!(
            fr.q.matrix(),
            &PolyMatrix::from_coeff_rows(&f2, &[&[&[0, 1]]])
        );

        let fr = right_coprime_factorization(&sys(&f2, 1, 1, 1, &[0, 1, 0, 1])).unwrap();
        assert_eq!(fr.p, PolyMatrix::identity(&f2, 1));
        assert_eq!(fr.q.matrix(), &PolyMatrix::identity(&f2, 1));
        assert_eq!(fr.degree(), 0);

        let empty = StateSpace::new(
            Matrix::zeros(&f2, 0, 0),
            Matrix::zeros(&f2, 0, 2),
            Matrix::zeros(&f2, 1, 0),
            Matrix::from_values(&f2, 1, 2, &[1, 0]),
        )
        .unwrap();
        let fr = right_coprime_factorization(&empty).unwrap();
        assert_eq!(fr.q.matrix(), &PolyMatrix::identity(&f2, 2));
        assert_eq!(fr.p, PolyMatrix::from_coeff_rows(&f2, &[&[&[1], &[]]]));
    }

    #[test]
    fn minimal_systems_have_full_degree() {
        let f3 = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen = 0;
        while seen < 40 {
            let s = StateSpace::random(&f3, 2, 1, 1, &mut rng);
            if !is_minimal(&s) {
                continue;
            }
            seen += 1;
            let fr = right_coprime_factorization(&s).unwrap();
            assert_eq!(fr.degree(), 2);
            assert!(
                crate::polymatrix::are_right_coprime(&[fr.p.clone(), fr.q.matrix().clone()])
                    .unwrap()
            );
        }
    }

    #[test]
    fn hermite_denominators() {
        let f2 = gf(2);
        let one = Matrix::from_values(&f2, 1, 1, &[1]);
        let h = denominator_in_hermite_form(&Matrix::from_values(&f2, 1, 1, &[0]), &one).unwrap();
        assert_eq!(h.matrix(), &PolyMatrix::from_coeff_rows(&f2, &[&[&[0, 1]]]));
        let h = denominator_in_hermite_form(&one, &one).unwrap();
        assert_eq!(h.matrix(), &PolyMatrix::from_coeff_rows(&f2, &[&[&[1, 1]]]));
        let h = denominator_in_hermite_form(&Matrix::zeros(&f2, 0, 0), &Matrix::zeros(&f2, 0, 2))
            .unwrap();
        assert_eq!(h.matrix(), &PolyMatrix::identity(&f2, 2));
    }

    #[test]
    fn parallel_examples() {
        let f2 = gf(2);
        let zero = Matrix::from_values(&f2, 1, 1, &[0]);
        let one = Matrix::from_values(&f2, 1, 1, &[1]);
        let twin = [(zero.clone(), one.clone()), (zero.clone(), one.clone())];
        let s = parallel_connect(&twin).unwrap();
        assert_eq!(s.a(), &Matrix::zeros(&f2, 2, 2));
        assert_eq!(s.b(), &Matrix::from_values(&f2, 2, 1, &[1, 1]));
        assert!(!parallel_reachable_via_criterion(&twin).unwrap());
        assert!(!is_reachable(s.a(), s.b()).unwrap());

        let pair = [(zero.clone(), one.clone()), (one.clone(), one.clone())];
        assert!(parallel_reachable_via_criterion(&pair).unwrap());
        let s = parallel_connect(&pair).unwrap();
        assert!(is_reachable(s.a(), s.b()).unwrap());

        assert!(parallel_reachable_via_criterion(&[(zero.clone(), one.clone())]).unwrap());
        let wide = Matrix::from_values(&f2, 1, 2, &[1, 0]);
        assert!(parallel_connect(&[(zero.clone(), one), (zero, wide)]).is_err());
    }

    #[test]
    fn conjugation_preserves_denominator() {
        let f2 = gf(2);
        let a = Matrix::from_values(&f2, 2, 2, &[0, 1, 1, 1]);
        let b = Matrix::from_values(&f2, 2, 1, &[0, 1]);
        assert!(is_reachable(&a, &b).unwrap());
        let h = denominator_in_hermite_form(&a, &b).unwrap();
        let base = StateSpace::from_pair(a, b).unwrap();
        for s in general_linear_group(&f2, 2) {
            let c = base.conjugate(&s).unwrap();
            assert!(is_reachable(c.a(), c.b()).unwrap());
            assert_eq!(denominator_in_hermite_form(c.a(), c.b()).unwrap(), h);
        }
    }
}
