//! Canonical forms under unimodular column (or row) operations.
//!
//! One elementary-operation engine, [`ColumnReducer`], works on columns and
//! records every operation in a unimodular transform. Row reductions
//! (gcrd extraction) run the same engine on the transpose.

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::poly::Poly;
use crate::polymatrix::PolyMatrix;

/// Column operations on a matrix with an optional record `U` such that
/// `original * U == current`.
struct ColumnReducer {
    m: PolyMatrix,
    u: Option<PolyMatrix>,
}

impl ColumnReducer {
    fn new(m: &PolyMatrix, track: bool) -> Self {
        let u = track.then(|| PolyMatrix::identity(m.field(), m.cols()));
        ColumnReducer { m: m.clone(), u }
    }

    fn swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for mat in std::iter::once(&mut self.m).chain(self.u.as_mut()) {
            for i in 0..mat.rows() {
                let tmp = mat.get(i, a).clone();
                let other = mat.get(i, b).clone();
                mat.set(i, a, other);
                mat.set(i, b, tmp);
            }
        }
    }

    /// column `target` -= `c * z^k * column source`.
    fn sub_multiple(&mut self, target: usize, source: usize, c: Elem, k: usize) {
        if c.is_zero() {
            return;
        }
        for mat in std::iter::once(&mut self.m).chain(self.u.as_mut()) {
            for i in 0..mat.rows() {
                let src = mat.get(i, source).clone();
                mat.get_mut(i, target).sub_scaled_shift(&src, c, k);
            }
        }
    }

    /// column `target` -= `q * column source` for a polynomial `q`.
    fn sub_poly_multiple(&mut self, target: usize, source: usize, q: &Poly) {
        for (k, &c) in q.coeffs().iter().enumerate() {
            self.sub_multiple(target, source, c, k);
        }
    }

    fn scale(&mut self, col: usize, c: Elem) {
        for mat in std::iter::once(&mut self.m).chain(self.u.as_mut()) {
            for i in 0..mat.rows() {
                let v = mat.get(i, col).scale(c);
                mat.set(i, col, v);
            }
        }
    }

    /// Reduces a full-row-rank `p x q` matrix (`p <= q`) to `[L 0]` with `L`
    /// lower triangular, monic diagonal and `deg L[i][j] < deg L[i][i]` for
    /// `j < i`. Pivot: lowest-index column with a minimal-degree entry.
    fn lower_hermite(&mut self) -> Result<()> {
        let (p, q) = (self.m.rows(), self.m.cols());
        let f = self.m.field().clone();
        for i in 0..p {
            loop {
                let pivot = (i..q)
                    .filter_map(|c| self.m.get(i, c).degree().map(|d| (d, c)))
                    .min();
                let Some((_, pc)) = pivot else {
                    return Err(Error::Singular);
                };
                self.swap(i, pc);
                let mut clean = true;
                for c in i + 1..q {
                    if self.m.get(i, c).is_zero() {
                        continue;
                    }
                    let (quot, rem) = self.m.get(i, c).divmod(self.m.get(i, i))?;
                    self.sub_poly_multiple(c, i, &quot);
                    if !rem.is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            let lc = self.m.get(i, i).leading_coeff().expect("nonzero pivot");
            self.scale(i, f.inv(lc)?);
            for j in 0..i {
                if self.m.get(i, j).is_zero() {
                    continue;
                }
                let quot = self.m.get(i, j).divmod(self.m.get(i, i))?.0;
                self.sub_poly_multiple(j, i, &quot);
            }
        }
        Ok(())
    }

    /// Degree and top-most row reaching it, per column.
    fn pivot(&self, col: usize) -> Option<(usize, usize)> {
        let d = (0..self.m.rows())
            .filter_map(|i| self.m.get(i, col).degree())
            .max()?;
        let row = (0..self.m.rows())
            .find(|&i| self.m.get(i, col).degree() == Some(d))
            .expect("a row attains the column degree");
        Some((d, row))
    }

    /// Column reduction of a nonsingular square matrix until all pivot rows
    /// (top-most entry of maximal degree in each column) are distinct.
    fn weak_popov(&mut self) -> Result<Vec<(usize, usize)>> {
        let n = self.m.cols();
        let f = self.m.field().clone();
        loop {
            let pivots: Vec<(usize, usize)> = (0..n)
                .map(|c| self.pivot(c).ok_or(Error::Singular))
                .collect::<Result<_>>()?;
            let conflict = (0..n).find_map(|a| {
                (a + 1..n)
                    .find(|&b| pivots[a].1 == pivots[b].1)
                    .map(|b| (a, b))
            });
            let Some((a, b)) = conflict else {
                return Ok(pivots);
            };
            // Reduce the higher-degree column by the lower one.
            let (src, tgt) = if pivots[a].0 <= pivots[b].0 {
                (a, b)
            } else {
                (b, a)
            };
            let row = pivots[src].1;
            let c = f.div(
                self.m.get(row, tgt).leading_coeff().expect("pivot entry"),
                self.m.get(row, src).leading_coeff().expect("pivot entry"),
            )?;
            self.sub_multiple(tgt, src, c, pivots[tgt].0 - pivots[src].0);
        }
    }
}

/// Lower-triangular column Hermite form: `Q U = H`, `U` unimodular, `H`
/// with monic diagonal and each sub-diagonal entry of lower degree than the
/// diagonal entry of its row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    matrix: PolyMatrix,
}

impl HermiteForm {
    /// Accepts a matrix already satisfying every Hermite invariant.
    pub fn new(matrix: PolyMatrix) -> Result<HermiteForm> {
        if is_hermite(&matrix) {
            Ok(HermiteForm { matrix })
        } else {
            Err(Error::InvalidArgument(
                "matrix is not in Hermite form".into(),
            ))
        }
    }

    pub(crate) fn new_unchecked(matrix: PolyMatrix) -> HermiteForm {
        debug_assert!(is_hermite(&matrix));
        HermiteForm { matrix }
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> PolyMatrix {
        self.matrix
    }

    /// Diagonal degrees, row by row.
    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.matrix.rows())
            .map(|i| self.matrix.get(i, i).degree().expect("monic diagonal"))
            .collect()
    }

    /// The degree tuple `kappa_1..kappa_m`, where row `i` (1-based) has
    /// diagonal degree `kappa_{m+1-i}`; i.e. the row degrees reversed.
    pub fn kappa(&self) -> Vec<usize> {
        let mut k = self.row_degrees();
        k.reverse();
        k
    }

    /// Degree of the determinant.
    pub fn det_degree(&self) -> usize {
        self.row_degrees().iter().sum()
    }

    /// All determinant degree sits in the last row.
    pub fn is_simple(&self) -> bool {
        self.kappa().iter().skip(1).all(|&k| k == 0)
    }
}

/// Checks the lower-triangular Hermite invariants.
pub fn is_hermite(m: &PolyMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    for i in 0..n {
        let diag = m.get(i, i);
        if !diag.is_monic() {
            return false;
        }
        for j in 0..n {
            let e = m.get(i, j);
            if j > i && !e.is_zero() {
                return false;
            }
            if j < i && e.deg_i() >= diag.deg_i() {
                return false;
            }
        }
    }
    true
}

/// Column Hermite form of a nonsingular square matrix and the unimodular
/// `U` with `Q U = H`.
pub fn hermite_form(q: &PolyMatrix) -> Result<(HermiteForm, PolyMatrix)> {
    if !q.is_square() {
        return Err(Error::Dimension(
            "Hermite form needs a square matrix".into(),
        ));
    }
    let mut red = ColumnReducer::new(q, true);
    red.lower_hermite()?;
    let u = red.u.expect("tracked");
    Ok((HermiteForm::new_unchecked(red.m), u))
}

/// Hermite form without the transform.
pub fn hermite_matrix(q: &PolyMatrix) -> Result<HermiteForm> {
    if !q.is_square() {
        return Err(Error::Dimension(
            "Hermite form needs a square matrix".into(),
        ));
    }
    let mut red = ColumnReducer::new(q, false);
    red.lower_hermite()?;
    Ok(HermiteForm::new_unchecked(red.m))
}

/// Column-proper canonical form: monic diagonal, every other entry of row
/// `i` of lower degree than `q_ii`, entries above the diagonal in column `i`
/// of lower degree and entries below of at most the same degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KroneckerHermiteForm {
    matrix: PolyMatrix,
}

impl KroneckerHermiteForm {
    pub fn new(matrix: PolyMatrix) -> Result<KroneckerHermiteForm> {
        if is_kronecker_hermite(&matrix) {
            Ok(KroneckerHermiteForm { matrix })
        } else {
            Err(Error::InvalidArgument(
                "matrix is not in Kronecker-Hermite form".into(),
            ))
        }
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> PolyMatrix {
        self.matrix
    }

    /// Column degrees, equal to the diagonal degrees.
    pub fn column_degrees(&self) -> Vec<usize> {
        (0..self.matrix.cols())
            .map(|i| self.matrix.get(i, i).degree().expect("monic diagonal"))
            .collect()
    }

    pub fn det_degree(&self) -> usize {
        self.column_degrees().iter().sum()
    }
}

/// Checks the Kronecker-Hermite degree pattern.
pub fn is_kronecker_hermite(m: &PolyMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    for i in 0..n {
        let diag = m.get(i, i);
        if !diag.is_monic() {
            return false;
        }
        let d = diag.deg_i();
        for j in 0..n {
            if j == i {
                continue;
            }
            // row dominance
            if m.get(i, j).deg_i() >= d {
                return false;
            }
            // column pattern: strictly lower above, at most equal below
            let below = m.get(j, i).deg_i();
            if (j < i && below >= d) || (j > i && below > d) {
                return false;
            }
        }
    }
    true
}

/// Kronecker-Hermite form of a nonsingular square matrix and the unimodular
/// `U` with `Q U = Q^KH`.
///
/// Column-reduces to distinct pivot rows, then clears every entry that
/// violates row dominance by monomial column steps (largest degree first,
/// top-most pivot row on ties), normalizes pivots to monic and finally
/// permutes columns so that pivots sit on the diagonal.
pub fn kronecker_hermite_form(q: &PolyMatrix) -> Result<(KroneckerHermiteForm, PolyMatrix)> {
    if !q.is_square() {
        return Err(Error::Dimension(
            "Kronecker-Hermite form needs a square matrix".into(),
        ));
    }
    if !q.is_nonsingular() {
        return Err(Error::Singular);
    }
    let n = q.cols();
    let f = q.field().clone();
    let mut red = ColumnReducer::new(q, true);
    let pivots = red.weak_popov()?;

    for j in 0..n {
        loop {
            // (absolute degree, pivot row, pivot column) of the worst violation
            let worst = (0..n)
                .filter(|&c| c != j)
                .filter_map(|c| {
                    let (dc, rc) = pivots[c];
                    let a = red.m.get(rc, j).degree()?;
                    (a >= dc).then_some((a, rc, c))
                })
                .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
            let Some((a, rc, c)) = worst else { break };
            let dc = pivots[c].0;
            let coef = f.div(
                red.m.get(rc, j).coeff(a),
                red.m.get(rc, c).leading_coeff().expect("pivot entry"),
            )?;
            red.sub_multiple(j, c, coef, a - dc);
        }
    }

    for (c, &(d, r)) in pivots.iter().enumerate() {
        let lc = red.m.get(r, c).coeff(d);
        red.scale(c, f.inv(lc)?);
    }

    // Column with pivot row i goes to position i.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&c| pivots[c].1);
    let m = red.m.submatrix(&(0..n).collect::<Vec<_>>(), &order);
    let u = red.u.expect("tracked");
    let u = u.submatrix(&(0..n).collect::<Vec<_>>(), &order);
    let form = KroneckerHermiteForm::new(m)
        .map_err(|_| Error::Internal("Kronecker-Hermite reduction missed an invariant".into()))?;
    Ok((form, u))
}

/// Greatest common right divisor with its row transform.
#[derive(Clone, Debug)]
pub struct Gcrd {
    /// Upper triangular, monic diagonal, entries above the diagonal of lower
    /// degree than the diagonal entry of their column.
    pub divisor: PolyMatrix,
    /// Unimodular `W` with `W [A; B] = [R; 0]`.
    pub transform: PolyMatrix,
    /// `A = a_quotient * R`.
    pub a_quotient: PolyMatrix,
    /// `B = b_quotient * R`.
    pub b_quotient: PolyMatrix,
}

/// gcrd of `A` (m x m) and `B` (p x m) by unimodular row reduction of the
/// stack `[A; B]` to `[R; 0]`.
pub fn gcrd(a: &PolyMatrix, b: &PolyMatrix) -> Result<Gcrd> {
    if !a.is_square() {
        return Err(Error::Dimension(
            "gcrd expects a square first argument".into(),
        ));
    }
    let stack = a.vstack(b)?;
    let m = a.cols();
    let mut red = ColumnReducer::new(&stack.transpose(), true);
    red.lower_hermite().map_err(|e| match e {
        Error::Singular => Error::RankDeficient,
        other => other,
    })?;
    let reduced = red.m.transpose();
    let idx: Vec<usize> = (0..m).collect();
    let divisor = reduced.submatrix(&idx, &idx);
    if reduced.rows() > m {
        let rest: Vec<usize> = (m..reduced.rows()).collect();
        if !reduced.submatrix(&rest, &idx).is_zero() {
            return Err(Error::Internal("row reduction left a nonzero tail".into()));
        }
    }
    let transform = red.u.expect("tracked").transpose();
    let a_quotient = exact_right_divide(a, &divisor)?;
    let b_quotient = exact_right_divide(b, &divisor)?;
    Ok(Gcrd {
        divisor,
        transform,
        a_quotient,
        b_quotient,
    })
}

/// `X` with `X R = M`, for nonsingular `R`. Fails with
/// [`Error::InexactDivision`] when `M R^{-1}` is not polynomial.
pub fn exact_right_divide(m: &PolyMatrix, r: &PolyMatrix) -> Result<PolyMatrix> {
    if !r.is_square() || m.cols() != r.rows() {
        return Err(Error::Dimension(format!(
            "cannot right-divide {}x{} by {}x{}",
            m.rows(),
            m.cols(),
            r.rows(),
            r.cols()
        )));
    }
    let n = r.cols();
    let f = m.field().clone();
    // R V = H lower triangular, so X H = M V.
    let mut red = ColumnReducer::new(r, true);
    red.lower_hermite()?;
    let h = red.m;
    let mv = m.mul(&red.u.expect("tracked"))?;
    let mut x = PolyMatrix::zeros(&f, m.rows(), n);
    for row in 0..m.rows() {
        for j in (0..n).rev() {
            let mut acc = mv.get(row, j).clone();
            for i in j + 1..n {
                acc = acc - x.get(row, i) * h.get(i, j);
            }
            x.set(row, j, acc.exact_div(h.get(j, j))?);
        }
    }
    if x.mul(r)? != *m {
        return Err(Error::InexactDivision);
    }
    Ok(x)
}
