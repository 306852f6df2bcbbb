//! Parameter record shared by sample spaces, formulas and reports.

use polyprime_core::Field;
use serde::Serialize;

use crate::error::{CensusError, Result};

/// Dimensions of an experiment. Each property and formula reads the fields
/// it needs and rejects missing ones.
#[derive(Clone, Debug)]
pub struct Params {
    pub field: Field,
    /// Matrix size / number of inputs.
    pub m: Option<usize>,
    /// State dimension, determinant degree, code length or irreducible degree.
    pub n: Option<usize>,
    /// Number of outputs.
    pub p: Option<usize>,
    /// Code dimension.
    pub k: Option<usize>,
    /// Number of states of a code realization (the code degree).
    pub s: Option<usize>,
    /// Per-member degrees (polynomial degrees, determinant degrees or node
    /// state dimensions); its length is `N`.
    pub degrees: Vec<usize>,
    /// Per-matrix row-degree tuples `kappa_1..kappa_m`.
    pub kappa: Vec<Vec<usize>>,
    /// Member count when no degree tuple is given.
    pub count: Option<usize>,
}

impl Params {
    pub fn new(field: Field) -> Params {
        Params {
            field,
            m: None,
            n: None,
            p: None,
            k: None,
            s: None,
            degrees: Vec::new(),
            kappa: Vec::new(),
            count: None,
        }
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_p(mut self, p: usize) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_s(mut self, s: usize) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_degrees(mut self, degrees: &[usize]) -> Self {
        self.degrees = degrees.to_vec();
        self
    }

    pub fn with_kappa(mut self, kappa: Vec<Vec<usize>>) -> Self {
        self.kappa = kappa;
        self
    }

    pub fn with_count(mut self, count: usize) -> Self {
        self.count = Some(count);
        self
    }

    pub fn q(&self) -> u64 {
        self.field.size() as u64
    }

    /// `N`: the length of the degree tuple, else the explicit count.
    pub fn big_n(&self) -> Option<usize> {
        if self.degrees.is_empty() {
            self.count
        } else {
            Some(self.degrees.len())
        }
    }

    pub fn need_m(&self) -> Result<usize> {
        need(self.m, "m")
    }

    pub fn need_n(&self) -> Result<usize> {
        need(self.n, "n")
    }

    pub fn need_p(&self) -> Result<usize> {
        need(self.p, "p")
    }

    pub fn need_k(&self) -> Result<usize> {
        need(self.k, "k")
    }

    pub fn need_s(&self) -> Result<usize> {
        need(self.s, "s")
    }

    pub fn need_big_n(&self) -> Result<usize> {
        need(self.big_n(), "N")
    }

    pub fn need_degrees(&self) -> Result<&[usize]> {
        if self.degrees.is_empty() {
            return Err(CensusError::InvalidParameters(
                "a degree tuple (--deg) is required".into(),
            ));
        }
        Ok(&self.degrees)
    }

    pub fn record(&self) -> ParamRecord {
        ParamRecord {
            field: self.field.notation(),
            q: self.q(),
            m: self.m,
            n: self.n,
            p: self.p,
            k: self.k,
            s: self.s,
            big_n: self.big_n(),
            degrees: self.degrees.clone(),
            kappa: self.kappa.clone(),
        }
    }
}

fn need(v: Option<usize>, name: &str) -> Result<usize> {
    v.ok_or_else(|| CensusError::InvalidParameters(format!("parameter {name} is required")))
}

/// Serializable snapshot of [`Params`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamRecord {
    pub field: String,
    pub q: u64,
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub k: Option<usize>,
    pub s: Option<usize>,
    #[serde(rename = "N")]
    pub big_n: Option<usize>,
    pub degrees: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub kappa: Vec<Vec<usize>>,
}

impl ParamRecord {
    /// Compact text form, e.g. `m=2 N=3 deg=(1,1,1)`.
    pub fn dims(&self) -> String {
        let mut parts = Vec::new();
        for (name, v) in [
            ("m", self.m),
            ("n", self.n),
            ("p", self.p),
            ("k", self.k),
            ("s", self.s),
            ("N", self.big_n),
        ] {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        }
        if !self.degrees.is_empty() {
            let d: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
            parts.push(format!("deg=({})", d.join(",")));
        }
        parts.join(" ")
    }
}
