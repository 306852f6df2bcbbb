//! Brute-force enumerations used as independent oracles for the counting
//! formulas.

use polyprime_core::canonical::{is_hermite, HermiteForm};
use polyprime_core::matrix::general_linear_group;
use polyprime_core::poly::monic_polys;
use polyprime_core::{Field, Poly, PolyMatrix};

use crate::error::{CensusError, Result};
use crate::spaces::HermiteIndexer;

/// Streams every `m x m` Hermite form with determinant degree `n` once.
pub fn enumerate_hermite_forms(
    field: &Field,
    m: usize,
    n: usize,
    budget: u128,
) -> Result<impl Iterator<Item = HermiteForm>> {
    let idx = HermiteIndexer::new(field, m, n)?;
    if idx.len() > budget {
        return Err(CensusError::BudgetExceeded {
            needed: idx.len().to_string(),
            budget,
        });
    }
    Ok((0..idx.len()).map(move |i| idx.form(i)))
}

/// All lower-triangular `m x m` matrices whose entries have degree at most
/// `max_deg`, filtered by `keep`.
fn count_lower_triangular(
    field: &Field,
    m: usize,
    max_deg: usize,
    mut keep: impl FnMut(&PolyMatrix) -> bool,
) -> u128 {
    let q = field.size() as u128;
    let slots = m * (m + 1) / 2;
    let per = q.pow((max_deg + 1) as u32);
    let total = per.pow(slots as u32);
    let mut count = 0;
    for code in 0..total {
        let mut rest = code;
        let mut mat = PolyMatrix::zeros(field, m, m);
        for i in 0..m {
            for j in 0..=i {
                let mut coeffs = Vec::with_capacity(max_deg + 1);
                let mut c = rest % per;
                rest /= per;
                for _ in 0..=max_deg {
                    coeffs.push(field.elem((c % q) as u64).expect("digit"));
                    c /= q;
                }
                mat.set(i, j, Poly::from_elems(field, coeffs));
            }
        }
        if keep(&mat) {
            count += 1;
        }
    }
    count
}

/// Hermite forms with determinant degree `n`, found by filtering all
/// lower-triangular matrices of bounded degree.
pub fn count_hermite_forms_bruteforce(field: &Field, m: usize, n: usize) -> u128 {
    count_lower_triangular(field, m, n, |mat| {
        is_hermite(mat) && mat.det().expect("square").degree() == Some(n)
    })
}

/// `|X_kappa|` for one or more matrices by brute force; `kappa[i]` lists
/// `kappa_1..kappa_m` of matrix `i`, where row `j` (1-based) has diagonal
/// degree `kappa_{m+1-j}`.
pub fn enumerate_x_kappa_count(field: &Field, m: usize, kappa: &[Vec<usize>]) -> Result<u128> {
    let mut total: u128 = 1;
    for k in kappa {
        if k.len() != m {
            return Err(CensusError::InvalidParameters(format!(
                "kappa tuple {k:?} does not have m = {m} entries"
            )));
        }
        let rows: Vec<usize> = k.iter().rev().copied().collect();
        let max_deg = rows.iter().copied().max().unwrap_or(0);
        let count = count_lower_triangular(field, m, max_deg, |mat| {
            is_hermite(mat) && (0..m).all(|i| mat.get(i, i).degree() == Some(rows[i]))
        });
        total *= count;
    }
    Ok(total)
}

pub fn count_gl_bruteforce(field: &Field, n: usize) -> u128 {
    general_linear_group(field, n).len() as u128
}

pub fn count_irreducibles_bruteforce(field: &Field, j: usize) -> u128 {
    monic_polys(field, j)
        .filter(|p| p.is_irreducible().expect("positive degree"))
        .count() as u128
}
