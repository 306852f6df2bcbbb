//! Exhaustive and Monte Carlo probability estimation.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CensusError, Result};
use crate::formulas::to_f64;
use crate::params::{ParamRecord, Params};
use crate::properties::Property;
use crate::spaces::SampleSpace;

/// Default cap on the number of predicate evaluations in a census.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// Trials per random stream. Chunk `c` draws from stream `c` of the seed,
/// so results do not depend on how chunks are spread over workers.
pub const MC_CHUNK: u64 = 1024;

/// Draws allowed per trial when sampling a conditioned space.
pub const MAX_REJECTIONS: u64 = 100_000;

const INDEX_CHUNK: u128 = 4096;

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub budget: u128,
    /// Worker threads; 0 uses one per logical core.
    pub workers: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            budget: DEFAULT_BUDGET,
            workers: 0,
        }
    }
}

impl RunOptions {
    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| CensusError::InvalidParameters(format!("worker pool: {e}")))?;
        Ok(pool.install(f))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusResult {
    pub property: String,
    pub params: ParamRecord,
    pub total: u64,
    pub hits: u64,
}

impl CensusResult {
    /// `hits / total`, reduced.
    pub fn probability(&self) -> BigRational {
        BigRational::new(BigInt::from(self.hits), BigInt::from(self.total))
    }

    pub fn probability_f64(&self) -> f64 {
        to_f64(&self.probability())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct McEstimate {
    pub property: String,
    pub params: ParamRecord,
    pub trials: u64,
    pub hits: u64,
    pub point: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl McEstimate {
    pub fn point_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.hits), BigInt::from(self.trials))
    }

    /// Binomial standard error of the point estimate.
    pub fn stderr(&self) -> f64 {
        (self.point * (1.0 - self.point) / self.trials as f64).sqrt()
    }

    pub fn contains(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }
}

/// Wilson score interval at the normal quantile `z`.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    (
        (center - half).max(0.0).min(p),
        (center + half).min(1.0).max(p),
    )
}

/// 95% two-sided normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Checks a space against the budget and returns its size.
pub fn census_size(space: &dyn SampleSpace, budget: u128) -> Result<u64> {
    match space.size() {
        Some(s) if s <= budget => Ok(s as u64),
        Some(s) => Err(CensusError::BudgetExceeded {
            needed: s.to_string(),
            budget,
        }),
        None => Err(CensusError::BudgetExceeded {
            needed: "more than 2^128".into(),
            budget,
        }),
    }
}

/// Exact hits and admissible total over a whole space.
pub fn count_space(space: &dyn SampleSpace, opts: &RunOptions) -> Result<(u64, u64)> {
    let size = census_size(space, opts.budget)? as u128;
    let chunks = size.div_ceil(INDEX_CHUNK);
    opts.install(|| {
        (0..chunks as u64)
            .into_par_iter()
            .map(|c| {
                let lo = c as u128 * INDEX_CHUNK;
                let hi = (lo + INDEX_CHUNK).min(size);
                let (mut hits, mut total) = (0u64, 0u64);
                for idx in lo..hi {
                    if let Some(hit) = space.check_index(idx)? {
                        total += 1;
                        hits += hit as u64;
                    }
                }
                Ok((hits, total))
            })
            .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))
    })?
}

pub fn exact_probability(
    property: &dyn Property,
    params: &Params,
    opts: &RunOptions,
) -> Result<CensusResult> {
    let space = property.space(params)?;
    let (hits, total) = count_space(space.as_ref(), opts)?;
    if total == 0 {
        return Err(CensusError::InvalidParameters(
            "no admissible samples in this space".into(),
        ));
    }
    Ok(CensusResult {
        property: property.name().to_string(),
        params: params.record(),
        total,
        hits,
    })
}

/// Hits among `trials` uniform draws from `space`, reproducible from `seed`.
pub fn sample_space(
    space: &dyn SampleSpace,
    trials: u64,
    seed: u64,
    opts: &RunOptions,
) -> Result<u64> {
    let chunks = trials.div_ceil(MC_CHUNK);
    opts.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(c);
                let n = MC_CHUNK.min(trials - c * MC_CHUNK);
                let mut hits = 0u64;
                for _ in 0..n {
                    let mut draws = 0;
                    let hit = loop {
                        if let Some(h) = space.check_random(&mut rng)? {
                            break h;
                        }
                        draws += 1;
                        if draws >= MAX_REJECTIONS {
                            return Err(CensusError::RejectionExhausted(MAX_REJECTIONS));
                        }
                    };
                    hits += hit as u64;
                }
                Ok(hits)
            })
            .try_reduce(|| 0, |a, b| Ok(a + b))
    })?
}

pub fn mc_estimate(
    property: &dyn Property,
    params: &Params,
    trials: u64,
    seed: u64,
    opts: &RunOptions,
) -> Result<McEstimate> {
    if trials < 100 {
        return Err(CensusError::InvalidParameters(format!(
            "need at least 100 trials, got {trials}"
        )));
    }
    let space = property.space(params)?;
    let hits = sample_space(space.as_ref(), trials, seed, opts)?;
    let (ci_low, ci_high) = wilson_interval(hits, trials, Z95);
    Ok(McEstimate {
        property: property.name().to_string(),
        params: params.record(),
        trials,
        hits,
        point: hits as f64 / trials as f64,
        ci_low,
        ci_high,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_brackets_point() {
        for (h, n) in [(0, 100), (50, 100), (100, 100), (3, 1000)] {
            let (lo, hi) = wilson_interval(h, n, Z95);
            let p = h as f64 / n as f64;
            assert!(lo <= p && p <= hi);
            assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
        }
        let (lo, hi) = wilson_interval(50, 100, Z95);
        assert!((lo - 0.4038).abs() < 1e-3 && (hi - 0.5962).abs() < 1e-3);
    }
}
