//! Matrices with polynomial entries: arithmetic, determinants, minors and
//! the primeness/coprimeness tests built on maximal-minor gcds.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldElem};
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Row-major matrix of polynomials over one field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
    field: FieldTag,
}

/// Wrapper so the field participates in `Eq`/`Hash` by identity only
/// through the entries.
#[derive(Clone)]
struct FieldTag(Field);

impl PartialEq for FieldTag {
    fn eq(&self, other: &Self) -> bool {
        self.0.same(&other.0)
    }
}

impl Eq for FieldTag {}

impl std::hash::Hash for FieldTag {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.size().hash(state);
    }
}

impl PolyMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            rows,
            cols,
            entries: vec![Poly::zero(field); rows * cols],
            field: FieldTag(field.clone()),
        }
    }

    pub fn identity(field: &Field, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(field));
        }
        m
    }

    /// Builds a matrix from row-major entries, checking shape and field.
    pub fn new(field: &Field, rows: usize, cols: usize, entries: Vec<Poly>) -> Result<PolyMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|p| !p.field().same(field)) {
            return Err(Error::FieldMismatch);
        }
        Ok(PolyMatrix {
            rows,
            cols,
            entries,
            field: FieldTag(field.clone()),
        })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Poly>>) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        PolyMatrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Shorthand for tests and literals: entries given as coefficient-value
    /// lists, row-major. Panics on bad values.
    pub fn from_coeff_rows(field: &Field, rows: &[&[&[u32]]]) -> PolyMatrix {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|c| Poly::from_values(field, c)).collect())
            .collect();
        PolyMatrix::from_rows(field, rows).expect("well-formed literal")
    }

    /// Constant polynomial matrix from a scalar matrix.
    pub fn from_scalar(m: &Matrix) -> PolyMatrix {
        let f = m.field();
        let entries = m.data().iter().map(|&e| Poly::constant(f, e)).collect();
        PolyMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries,
            field: FieldTag(f.clone()),
        }
    }

    /// `z I - A` for a square scalar matrix `A`.
    pub fn z_minus(a: &Matrix) -> PolyMatrix {
        let f = a.field();
        let mut m = PolyMatrix::from_scalar(&a.neg());
        for i in 0..a.rows() {
            let v = m.get(i, i) + &Poly::z(f);
            m.set(i, i, v);
        }
        m
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field.0
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Largest entry degree, `None` for the zero matrix.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            field: self.field.clone(),
        }
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field();
        let mut out = PolyMatrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Poly::zero(f);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip(rhs, |a, b| a - b)
    }

    fn zip(&self, rhs: &PolyMatrix, op: impl Fn(&Poly, &Poly) -> Poly) -> Result<PolyMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| op(a, b))
            .collect();
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            field: self.field.clone(),
        })
    }

    /// Every entry multiplied by the polynomial `p`.
    pub fn scale(&self, p: &Poly) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * p).collect(),
            field: self.field.clone(),
        }
    }

    pub fn hstack(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::Dimension("hstack with different row counts".into()));
        }
        let mut entries = Vec::with_capacity(self.entries.len() + rhs.entries.len());
        for i in 0..self.rows {
            entries.extend_from_slice(&self.entries[i * self.cols..(i + 1) * self.cols]);
            entries.extend_from_slice(&rhs.entries[i * rhs.cols..(i + 1) * rhs.cols]);
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols + rhs.cols,
            entries,
            field: self.field.clone(),
        })
    }

    pub fn vstack(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.cols {
            return Err(Error::Dimension(
                "vstack with different column counts".into(),
            ));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&rhs.entries);
        Ok(PolyMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            entries,
            field: self.field.clone(),
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
            field: self.field.clone(),
        }
    }

    /// Scalar matrix of the values at `x`.
    pub fn eval(&self, x: Elem) -> Matrix {
        Matrix::from_fn(self.field(), self.rows, self.cols, |i, j| {
            self.get(i, j).eval(x)
        })
    }

    /// Determinant: cofactor expansion up to size 4, fraction-free
    /// (Bareiss) elimination above.
    pub fn det(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows <= 4 {
            let idx: Vec<usize> = (0..self.rows).collect();
            Ok(self.cofactor_det(&idx, &idx))
        } else {
            self.bareiss_det()
        }
    }

    fn cofactor_det(&self, rows: &[usize], cols: &[usize]) -> Poly {
        let f = self.field();
        match rows.len() {
            0 => Poly::one(f),
            1 => self.get(rows[0], cols[0]).clone(),
            2 => {
                let (r0, r1, c0, c1) = (rows[0], rows[1], cols[0], cols[1]);
                self.get(r0, c0) * self.get(r1, c1) - self.get(r0, c1) * self.get(r1, c0)
            }
            _ => {
                let r0 = rows[0];
                let rest = &rows[1..];
                let mut acc = Poly::zero(f);
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(r0, c);
                    if a.is_zero() {
                        continue;
                    }
                    let minor_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = a * &self.cofactor_det(rest, &minor_cols);
                    acc = if k % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    fn bareiss_det(&self) -> Result<Poly> {
        let f = self.field().clone();
        let n = self.rows;
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut prev = Poly::one(&f);
        let mut negate = false;
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                let Some(pr) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(Poly::zero(&f));
                };
                m.swap(k, pr);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num.exact_div(&prev)?;
                }
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    pub fn is_nonsingular(&self) -> bool {
        self.det().map(|d| !d.is_zero()).unwrap_or(false)
    }

    /// True iff the determinant is a nonzero constant.
    pub fn is_unimodular(&self) -> bool {
        self.det().map(|d| d.is_unit()).unwrap_or(false)
    }

    /// Column degrees; `None` marks an identically zero column.
    pub fn column_degrees(&self) -> Vec<Option<usize>> {
        (0..self.cols)
            .map(|j| (0..self.rows).filter_map(|i| self.get(i, j).degree()).max())
            .collect()
    }

    /// Row degrees; `None` marks an identically zero row.
    pub fn row_degrees(&self) -> Vec<Option<usize>> {
        (0..self.rows)
            .map(|i| (0..self.cols).filter_map(|j| self.get(i, j).degree()).max())
            .collect()
    }

    /// Highest-column-degree coefficient matrix. Zero columns give zero
    /// columns.
    pub fn hc_matrix(&self) -> Matrix {
        let degs = self.column_degrees();
        Matrix::from_fn(self.field(), self.rows, self.cols, |i, j| match degs[j] {
            Some(d) => self.get(i, j).coeff(d),
            None => Elem::ZERO,
        })
    }

    /// The highest-column-degree coefficient matrix has full column rank
    /// (for square matrices: is invertible).
    pub fn is_column_proper(&self) -> bool {
        self.cols <= self.rows && self.hc_matrix().rank() == self.cols
    }

    /// All k x k minors: row subsets in lexicographic order, and for each of
    /// them the column subsets in lexicographic order.
    pub fn minors(&self, k: usize) -> Result<Vec<Poly>> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(Error::InvalidArgument(format!(
                "minor size {k} out of range for a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut out = Vec::new();
        for rs in (0..self.rows).combinations(k) {
            for cs in (0..self.cols).combinations(k) {
                out.push(self.cofactor_or_det(&rs, &cs)?);
            }
        }
        Ok(out)
    }

    fn cofactor_or_det(&self, rs: &[usize], cs: &[usize]) -> Result<Poly> {
        if rs.len() <= 4 {
            Ok(self.cofactor_det(rs, cs))
        } else {
            self.submatrix(rs, cs).det()
        }
    }

    /// Monic gcd of all maximal minors; zero when every maximal minor
    /// vanishes. Stops early once the gcd reaches 1.
    pub fn maximal_minor_gcd(&self) -> Poly {
        let f = self.field();
        let k = self.rows.min(self.cols);
        if k == 0 {
            return Poly::one(f);
        }
        let mut g = Poly::zero(f);
        let (long, short) = if self.rows <= self.cols {
            (self.cols, self.rows)
        } else {
            (self.rows, self.cols)
        };
        let all_short: Vec<usize> = (0..short).collect();
        for pick in (0..long).combinations(k) {
            let minor = if self.rows <= self.cols {
                self.cofactor_or_det(&all_short, &pick)
            } else {
                self.cofactor_or_det(&pick, &all_short)
            }
            .expect("square minor");
            if minor.is_zero() {
                continue;
            }
            g = if g.is_zero() {
                minor.monic()
            } else {
                g.gcd(&minor).expect("nonzero operand")
            };
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Full row rank at every point of the algebraic closure, decided by
    /// the gcd of the maximal minors being 1.
    pub fn is_left_prime(&self) -> Result<bool> {
        if self.rows > self.cols {
            return Err(Error::InvalidArgument(format!(
                "left primeness needs rows <= cols, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.maximal_minor_gcd().is_one())
    }

    pub fn is_right_prime(&self) -> Result<bool> {
        if self.cols > self.rows {
            return Err(Error::InvalidArgument(format!(
                "right primeness needs cols <= rows, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(self.maximal_minor_gcd().is_one())
    }

    /// Coefficient lists of each entry, row by row.
    pub fn to_coeff_rows(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).values()).collect())
            .collect()
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Left coprimeness of matrices sharing a row count: left primeness of
/// their horizontal concatenation.
pub fn are_left_coprime(mats: &[PolyMatrix]) -> Result<bool> {
    let joined = concat(mats, PolyMatrix::hstack)?;
    if joined.cols() < joined.rows() {
        return Err(Error::InvalidArgument(
            "total column count is below the common row count".into(),
        ));
    }
    joined.is_left_prime()
}

/// Right coprimeness of matrices sharing a column count.
pub fn are_right_coprime(mats: &[PolyMatrix]) -> Result<bool> {
    let joined = concat(mats, PolyMatrix::vstack)?;
    if joined.rows() < joined.cols() {
        return Err(Error::InvalidArgument(
            "total row count is below the common column count".into(),
        ));
    }
    joined.is_right_prime()
}

fn concat(
    mats: &[PolyMatrix],
    join: impl Fn(&PolyMatrix, &PolyMatrix) -> Result<PolyMatrix>,
) -> Result<PolyMatrix> {
    let (first, rest) = mats
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("empty matrix family".into()))?;
    rest.iter().try_fold(first.clone(), |acc, m| join(&acc, m))
}

/// The `(N-1)m x Nm` block matrix with `D_i` at block `(i, i)` and
/// `D_{i+1}` at block `(i, i+1)`.
pub fn block_bidiagonal(blocks: &[PolyMatrix]) -> Result<PolyMatrix> {
    if blocks.len() < 2 {
        return Err(Error::InvalidArgument("need at least two blocks".into()));
    }
    let m = blocks[0].rows();
    let field = blocks[0].field().clone();
    for b in blocks {
        if b.rows() != m || b.cols() != m {
            return Err(Error::Dimension("blocks must share one square size".into()));
        }
        if !b.field().same(&field) {
            return Err(Error::FieldMismatch);
        }
    }
    let n = blocks.len();
    let mut out = PolyMatrix::zeros(&field, (n - 1) * m, n * m);
    for bi in 0..n - 1 {
        for (off, block) in [(bi, &blocks[bi]), (bi + 1, &blocks[bi + 1])] {
            for i in 0..m {
                for j in 0..m {
                    out.set(bi * m + i, off * m + j, block.get(i, j).clone());
                }
            }
        }
    }
    Ok(out)
}

/// Mutual left coprimeness of nonsingular square matrices through left
/// primeness of [`block_bidiagonal`].
pub fn mutually_left_coprime(blocks: &[PolyMatrix]) -> Result<bool> {
    let bd = block_bidiagonal(blocks)?;
    if blocks.iter().any(|b| !b.is_nonsingular()) {
        return Err(Error::Singular);
    }
    bd.is_left_prime()
}

/// Every unordered pair is left coprime.
pub fn pairwise_left_coprime(blocks: &[PolyMatrix]) -> Result<bool> {
    for (a, b) in blocks.iter().tuple_combinations() {
        if !are_left_coprime(&[a.clone(), b.clone()])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A point of an extension GF(p^k) where the maximal minors all vanish,
/// found by exhaustive evaluation of their gcd over GF(p^k) for
/// `k = 1..=deg gcd`. `None` means the matrix has full rank everywhere.
pub fn rank_drop_witness(m: &PolyMatrix) -> Result<Option<FieldElem>> {
    let base = m.field();
    if !base.is_prime_field() {
        return Err(Error::NotPrimeField);
    }
    let g = m.maximal_minor_gcd();
    let Some(d) = g.degree() else {
        // Every maximal minor vanishes identically: rank drops at z = 0.
        return Ok(Some(base.wrap(Elem::ZERO)));
    };
    let p = base.characteristic() as u64;
    for k in 1..=d as u32 {
        let ext = Field::new(p, k, None)?;
        for x in ext.elements() {
            let pt = ext.wrap(x);
            if crate::field::extension_eval(&g, &pt)?.is_zero() {
                return Ok(Some(pt));
            }
        }
    }
    Ok(None)
}

/// Brute-force left primeness: no point of GF(p^k), `k <= deg gcd`, makes
/// the maximal minors vanish together.
pub fn left_prime_oracle(m: &PolyMatrix) -> Result<bool> {
    if m.rows() > m.cols() {
        return Err(Error::InvalidArgument(format!(
            "left primeness needs rows <= cols, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(rank_drop_witness(m)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn determinants() {
        let f2 = gf(2);
        assert!(PolyMatrix::identity(&f2, 3).det().unwrap().is_one());
        let m = PolyMatrix::from_coeff_rows(&f2, &[&[&[0, 1], &[]], &[&[], &[1]]]);
        assert_eq!(m.det().unwrap(), Poly::z(&f2));
        let m = PolyMatrix::from_coeff_rows(&f2, &[&[&[0, 1], &[1]], &[&[1], &[0, 1]]]);
        assert_eq!(m.det().unwrap(), Poly::from_values(&f2, &[1, 0, 1]));
        assert!(PolyMatrix::zeros(&f2, 2, 3).det().is_err());
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let f3 = gf(3);
        // 5x5 lower bidiagonal with z on the diagonal and 1 below: det = z^5
        let mut m = PolyMatrix::zeros(&f3, 5, 5);
        for i in 0..5 {
            m.set(i, i, Poly::z(&f3));
            if i > 0 {
                m.set(i, i - 1, Poly::one(&f3));
            }
        }
        m.set(0, 4, Poly::from_values(&f3, &[2]));
        let d = m.det().unwrap();
        let idx: Vec<usize> = (0..5).collect();
        assert_eq!(d, m.cofactor_det(&idx, &idx));
        // z^5 + 2 * (+1 from the cyclic permutation sign)
        assert_eq!(d, Poly::from_values(&f3, &[2, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn unimodularity() {
        let f3 = gf(3);
        assert!(PolyMatrix::identity(&f3, 2).is_unimodular());
        let u = PolyMatrix::from_coeff_rows(&f3, &[&[&[1], &[0, 1]], &[&[], &[1]]]);
        assert!(u.is_unimodular());
        let d = PolyMatrix::from_coeff_rows(&f3, &[&[&[0, 1], &[]], &[&[], &[1]]]);
        assert!(!d.is_unimodular());
    }

    #[test]
    fn column_degree_data() {
        let f2 = gf(2);
        let h = PolyMatrix::from_coeff_rows(&f2, &[&[&[0, 1], &[1]], &[&[1], &[0, 1]]]);
        assert_eq!(h.column_degrees(), vec![Some(1), Some(1)]);
        assert_eq!(h.hc_matrix(), Matrix::identity(&f2, 2));
        assert!(h.is_column_proper());

        let h = PolyMatrix::from_coeff_rows(&f2, &[&[&[0, 1], &[0, 1]], &[&[1], &[1]]]);
        assert_eq!(h.hc_matrix(), Matrix::from_values(&f2, 2, 2, &[1, 1, 0, 0]));
        assert!(!h.is_column_proper());
        assert!(PolyMatrix::identity(&f2, 3).is_column_proper());

        let zc = PolyMatrix::from_coeff_rows(&f2, &[&[&[1], &[]], &[&[0, 1], &[]]]);
        assert_eq!(zc.column_degrees(), vec![Some(1), None]);
        assert_eq!(
            zc.hc_matrix(),
            Matrix::from_values(&f2, 2, 2, &[0, 0, 1, 0])
        );
    }

    #[test]
    fn minors_in_lexicographic_order() {
        let f2 = gf(2);
        let m = PolyMatrix::from_coeff_rows(&f2, &[&[&[1], &[]], &[&[], &[1]], &[&[], &[]]]);
        let minors = m.minors(2).unwrap();
        assert_eq!(
            minors,
            vec![Poly::one(&f2), Poly::zero(&f2), Poly::zero(&f2)]
        );
        assert_eq!(m.minors(1).unwrap().len(), 6);
        assert!(m.minors(3).is_err());
        assert!(m.minors(0).is_err());
    }

    #[test]
    fn primeness() {
        let f2 = gf(2);
        let row = PolyMatrix::from_coeff_rows(&f2, &[&[&[0, 1], &[1, 1]]]);
        assert!(row.is_left_prime().unwrap());
        let row = PolyMatrix::from_coeff_rows(&f2, &[&[&[0, 1], &[0, 0, 1]]]);
        assert!(!row.is_left_prime().unwrap());
        let col = PolyMatrix::from_coeff_rows(&f2, &[&[&[1]], &[&[0, 1]]]);
        assert!(col.is_right_prime().unwrap());
        assert!(col.is_left_prime().is_err());
    }

    #[test]
    fn coprime_families() {
        let f2 = gf(2);
        let z = PolyMatrix::from_coeff_rows(&f2, &[&[&[0, 1]]]);
        let zp1 = PolyMatrix::from_coeff_rows(&f2, &[&[&[1, 1]]]);
        assert!(are_left_coprime(&[z.clone(), zp1.clone()]).unwrap());
        assert!(!are_left_coprime(&[z.clone(), z.clone()]).unwrap());
        assert!(are_right_coprime(&[z.clone(), zp1]).unwrap());
        let two = PolyMatrix::identity(&f2, 2);
        assert!(matches!(
            are_left_coprime(&[z, two]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn block_layout() {
        let f2 = gf(2);
        let d1 = PolyMatrix::from_coeff_rows(&f2, &[&[&[1], &[]], &[&[1], &[0, 1]]]);
        let d2 = PolyMatrix::from_coeff_rows(&f2, &[&[&[1], &[]], &[&[], &[0, 1]]]);
        let d3 = PolyMatrix::from_coeff_rows(&f2, &[&[&[0, 1], &[]], &[&[], &[1]]]);
        let bd = block_bidiagonal(&[d1, d2, d3]).unwrap();
        let expected = PolyMatrix::from_coeff_rows(
            &f2,
            &[
                &[&[1], &[], &[1], &[], &[], &[]],
                &[&[1], &[0, 1], &[], &[0, 1], &[], &[]],
                &[&[], &[], &[1], &[], &[0, 1], &[]],
                &[&[], &[], &[], &[0, 1], &[], &[1]],
            ],
        );
        assert_eq!(bd, expected);
    }

    #[test]
    fn mutual_coprimeness_errors() {
        let f2 = gf(2);
        let i2 = PolyMatrix::identity(&f2, 2);
        assert!(mutually_left_coprime(&[i2.clone(), i2.clone(), i2.clone()]).unwrap());
        assert!(mutually_left_coprime(std::slice::from_ref(&i2)).is_err());
        let singular = PolyMatrix::zeros(&f2, 2, 2);
        assert_eq!(
            mutually_left_coprime(&[i2.clone(), singular]).unwrap_err(),
            Error::Singular
        );
        assert!(mutually_left_coprime(&[i2, PolyMatrix::identity(&f2, 3)]).is_err());
    }

    #[test]
    fn oracle_examples() {
        let f2 = gf(2);
        let m = PolyMatrix::from_coeff_rows(&f2, &[&[&[0, 1], &[1, 1]]]);
        assert!(left_prime_oracle(&m).unwrap());

        let m = PolyMatrix::from_coeff_rows(&f2, &[&[&[1, 1, 1], &[1, 1, 1]]]);
        let w = rank_drop_witness(&m).unwrap().expect("root in GF(4)");
        assert_eq!(w.field().size(), 4);
        assert!(!left_prime_oracle(&m).unwrap());

        let m = PolyMatrix::from_coeff_rows(&f2, &[&[&[0, 1], &[0, 0, 1]]]);
        let w = rank_drop_witness(&m).unwrap().unwrap();
        assert_eq!((w.field().size(), w.elem()), (2, Elem::ZERO));

        let f4 = Field::new(2, 2, None).unwrap();
        let m = PolyMatrix::from_coeff_rows(&f4, &[&[&[0, 1], &[1]]]);
        assert_eq!(left_prime_oracle(&m).unwrap_err(), Error::NotPrimeField);
    }
}
