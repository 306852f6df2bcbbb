//! Convergence of the scaled defect `c(q) = (1 - P(q)) q^k` toward the
//! predicted leading coefficient.

use serde::Serialize;

use crate::engine::{exact_probability, mc_estimate, RunOptions};
use crate::error::{CensusError, Result};
use crate::formulas::{FormulaCatalog, FormulaValue};
use crate::params::Params;
use crate::properties::Property;

#[derive(Clone, Debug, Serialize)]
pub struct FitPoint {
    pub q: u64,
    pub probability: f64,
    /// Standard error of `probability`; zero for exact censuses.
    pub stderr: f64,
    pub c: f64,
}

impl FitPoint {
    pub fn new(q: u64, probability: f64, stderr: f64, k: u32) -> FitPoint {
        let scale = (q as f64).powi(k as i32);
        FitPoint {
            q,
            probability,
            stderr,
            c: (1.0 - probability) * scale,
        }
    }

    /// Standard error of `c`.
    pub fn c_stderr(&self, k: u32) -> f64 {
        self.stderr * (self.q as f64).powi(k as i32)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FitReport {
    pub order: u32,
    pub predicted: f64,
    pub points: Vec<FitPoint>,
    pub residuals: Vec<f64>,
    pub tolerance: f64,
    pub final_deviation: f64,
    pub improved: bool,
    pub monotone: bool,
    pub pass: bool,
}

/// Trend tolerance at the largest field size: `max(0.5, 5 c_pred / q_max)`.
pub fn default_tolerance(predicted: f64, q_max: u64) -> f64 {
    0.5f64.max(5.0 * predicted.abs() / q_max as f64)
}

/// Checks that `c(q)` approaches `predicted`: the deviation at the largest
/// `q` is within `tolerance` (plus three standard errors for estimates) and
/// no larger than at the smallest `q`.
pub fn asymptotic_coefficient_fit(
    points: &[FitPoint],
    order: u32,
    predicted: f64,
    tolerance: Option<f64>,
    min_points: usize,
) -> Result<FitReport> {
    if points.len() < min_points.max(2) {
        return Err(CensusError::InvalidParameters(format!(
            "need at least {} field sizes, got {}",
            min_points.max(2),
            points.len()
        )));
    }
    let mut points = points.to_vec();
    points.sort_by_key(|p| p.q);
    let first = &points[0];
    let last = points.last().expect("nonempty");
    let tolerance = tolerance.unwrap_or_else(|| default_tolerance(predicted, last.q));
    let residuals: Vec<f64> = points.iter().map(|p| p.c - predicted).collect();
    let final_deviation = residuals.last().expect("nonempty").abs();
    let noise = 3.0 * last.c_stderr(order) + 3.0 * first.c_stderr(order);
    let improved = final_deviation <= residuals[0].abs() + noise + 1e-9;
    let monotone = residuals
        .windows(2)
        .all(|w| w[1].abs() <= w[0].abs() + 1e-12);
    let pass = final_deviation <= tolerance + 3.0 * last.c_stderr(order) && improved;
    Ok(FitReport {
        order,
        predicted,
        points,
        residuals,
        tolerance,
        final_deviation,
        improved,
        monotone,
        pass,
    })
}

/// How each field size is measured.
#[derive(Clone, Copy, Debug)]
pub enum FitMode {
    Exact,
    MonteCarlo { trials: u64, seed: u64 },
}

/// Measures `property` at every field size and fits the scaled defect
/// against the catalog's leading coefficient.
pub fn fit_property(
    property: &dyn Property,
    catalog: &FormulaCatalog,
    params: &[Params],
    mode: FitMode,
    tolerance: Option<f64>,
    opts: &RunOptions,
) -> Result<FitReport> {
    let first = params
        .first()
        .ok_or_else(|| CensusError::InvalidParameters("no field sizes given".into()))?;
    let order = property.defect_order(first)?;
    let predicted = match catalog.eval(property.formula(), first)? {
        FormulaValue::Leading { coeff, power } if power == order => {
            coeff.to_string().parse::<f64>().unwrap_or(f64::NAN)
        }
        FormulaValue::Leading { .. } => 0.0,
        FormulaValue::Exact(v) => {
            // exact formulas: predicted coefficient of t^k in 1 - P
            let q = first.q();
            (1.0 - crate::formulas::to_f64(&v)) * (q as f64).powi(order as i32)
        }
    };
    let mut points = Vec::new();
    for p in params {
        let point = match mode {
            FitMode::Exact => {
                let r = exact_probability(property, p, opts)?;
                FitPoint::new(p.q(), r.probability_f64(), 0.0, order)
            }
            FitMode::MonteCarlo { trials, seed } => {
                let e = mc_estimate(property, p, trials, seed, opts)?;
                FitPoint::new(p.q(), e.point, e.stderr(), order)
            }
        };
        points.push(point);
    }
    asymptotic_coefficient_fit(&points, order, predicted, tolerance, 3)
}
