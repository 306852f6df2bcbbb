//! Convolutional codes given by polynomial generator matrices.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::polymatrix::PolyMatrix;
use crate::systems::{right_coprime_factorization, StateSpace};

/// A rate `k/n` code with an `n x k` full-column-rank generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvCode {
    generator: PolyMatrix,
    degree: usize,
}

impl ConvCode {
    pub fn new(generator: PolyMatrix) -> Result<ConvCode> {
        let degree = code_degree(&generator)?;
        Ok(ConvCode { generator, degree })
    }

    pub fn generator(&self) -> &PolyMatrix {
        &self.generator
    }

    /// `n`, the length.
    pub fn length(&self) -> usize {
        self.generator.rows()
    }

    /// `k`, the dimension.
    pub fn dimension(&self) -> usize {
        self.generator.cols()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        code_order(&self.generator).expect("validated generator")
    }

    pub fn is_noncatastrophic(&self) -> bool {
        is_noncatastrophic(&self.generator).expect("validated generator")
    }

    pub fn is_minimal_basis(&self) -> bool {
        self.generator.is_column_proper()
    }
}

fn max_minor_degree(g: &PolyMatrix) -> Result<usize> {
    if g.cols() == 0 || g.cols() > g.rows() {
        return Err(Error::Dimension(format!(
            "a generator needs 1 <= k <= n, got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    g.minors(g.cols())?
        .iter()
        .filter_map(|m| m.degree())
        .max()
        .ok_or(Error::RankDeficient)
}

/// Maximal degree of the `k x k` minors.
pub fn code_degree(g: &PolyMatrix) -> Result<usize> {
    max_minor_degree(g)
}

/// Sum of the column degrees.
pub fn code_order(g: &PolyMatrix) -> Result<usize> {
    max_minor_degree(g)?;
    Ok(g.column_degrees()
        .iter()
        .map(|d| d.expect("full rank"))
        .sum())
}

/// Order equals degree exactly when the generator is column proper.
pub fn is_minimal_basis(g: &PolyMatrix) -> Result<bool> {
    max_minor_degree(g)?;
    Ok(g.is_column_proper())
}

pub fn is_noncatastrophic(g: &PolyMatrix) -> Result<bool> {
    max_minor_degree(g)?;
    g.is_right_prime()
}

/// The code of a system with `k` inputs and `n - k` outputs: the
/// trajectories `(y, u)` generated by `G = [Y; U]`, where `X U^-1` is the
/// coprime fraction of `(zI - A)^-1 B` with `U` in Kronecker-Hermite form
/// and `Y = C X + D U`. Then `C (zI - A)^-1 B + D = Y U^-1`.
pub fn code_from_system(sys: &StateSpace) -> Result<ConvCode> {
    let pair = StateSpace::from_pair(sys.a().clone(), sys.b().clone())?;
    let frac = right_coprime_factorization(&pair)?;
    let u = frac.q.into_matrix();
    let y = PolyMatrix::from_scalar(sys.c())
        .mul(&frac.p)?
        .add(&PolyMatrix::from_scalar(sys.d()).mul(&u)?)?;
    ConvCode::new(y.vstack(&u)?)
}

/// Whether `sys` and `(S A S^-1, S B, C S^-1, D)` produce the same
/// canonical generator.
pub fn minimal_representation_orbit_check(sys: &StateSpace, s: &Matrix) -> Result<bool> {
    let other = sys.conjugate(s)?;
    Ok(code_from_system(sys)?.generator == code_from_system(&other)?.generator)
}
