//! CSV and JSON reports.

use std::io::Write;

use serde::Serialize;

use crate::engine::{CensusResult, McEstimate};
use crate::error::{CensusError, Result};
use crate::formulas::{abs_diff, to_f64, FormulaValue};
use crate::params::ParamRecord;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One result line.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub property: String,
    pub q: u64,
    pub m: Option<usize>,
    pub n: Option<usize>,
    #[serde(rename = "N")]
    pub big_n: Option<usize>,
    pub deg: String,
    pub p: Option<usize>,
    pub k: Option<usize>,
    pub s: Option<usize>,
    pub total: u64,
    pub hits: u64,
    pub probability: f64,
    pub probability_exact: String,
    pub formula: String,
    pub formula_value: Option<f64>,
    pub abs_error: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub seed: Option<u64>,
    pub version: String,
}

fn deg_text(r: &ParamRecord) -> String {
    r.degrees
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn base(property: &str, r: &ParamRecord) -> ReportRow {
    ReportRow {
        property: property.to_string(),
        q: r.q,
        m: r.m,
        n: r.n,
        big_n: r.big_n,
        deg: deg_text(r),
        p: r.p,
        k: r.k,
        s: r.s,
        total: 0,
        hits: 0,
        probability: 0.0,
        probability_exact: String::new(),
        formula: String::new(),
        formula_value: None,
        abs_error: None,
        ci_low: None,
        ci_high: None,
        seed: None,
        version: VERSION.to_string(),
    }
}

impl ReportRow {
    pub fn from_census(r: &CensusResult, formula: &str, value: Option<&FormulaValue>) -> ReportRow {
        let mut row = base(&r.property, &r.params);
        row.total = r.total;
        row.hits = r.hits;
        let prob = r.probability();
        row.probability = to_f64(&prob);
        row.probability_exact = prob.to_string();
        row.formula = formula.to_string();
        if let Some(v) = value {
            let at = v.at(r.params.q);
            row.formula_value = Some(to_f64(&at));
            row.abs_error = Some(abs_diff(&prob, &at));
        }
        row
    }

    pub fn from_mc(e: &McEstimate, formula: &str, value: Option<&FormulaValue>) -> ReportRow {
        let mut row = base(&e.property, &e.params);
        row.total = e.trials;
        row.hits = e.hits;
        row.probability = e.point;
        row.probability_exact = e.point_rational().to_string();
        row.formula = formula.to_string();
        if let Some(v) = value {
            let fv = v.approx(e.params.q);
            row.formula_value = Some(fv);
            row.abs_error = Some((e.point - fv).abs());
        }
        row.ci_low = Some(e.ci_low);
        row.ci_high = Some(e.ci_high);
        row.seed = Some(e.seed);
        row
    }

    /// `probability, formula prediction, absolute error` in one line.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} q={}: probability {} ({}/{} = {:.6})",
            self.property, self.q, self.probability_exact, self.hits, self.total, self.probability
        );
        if let (Some(lo), Some(hi)) = (self.ci_low, self.ci_high) {
            s.push_str(&format!(" 95% CI [{lo:.6}, {hi:.6}]"));
        }
        if let (Some(v), Some(e)) = (self.formula_value, self.abs_error) {
            s.push_str(&format!(
                ", {} predicts {v:.6}, abs error {e:.6}",
                self.formula
            ));
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub seed: Option<u64>,
    pub parameters: Vec<ParamRecord>,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn new(command: &str, seed: Option<u64>) -> Report {
        Report {
            version: VERSION.to_string(),
            command: command.to_string(),
            seed,
            parameters: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, params: ParamRecord, row: ReportRow) {
        self.parameters.push(params);
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)
                .map_err(|e| CensusError::Encoding(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, self)
            .map_err(|e| CensusError::Encoding(e.to_string()))?;
        writeln!(out)?;
        Ok(())
    }
}
