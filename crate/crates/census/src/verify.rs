//! Exact-equality checks of the counting formulas against enumeration.

use num_bigint::BigInt;
use num_rational::BigRational;
use polyprime_core::Field;
use serde::Serialize;

use crate::engine::{exact_probability, RunOptions};
use crate::enumerate::{
    count_gl_bruteforce, count_hermite_forms_bruteforce, count_irreducibles_bruteforce,
    enumerate_x_kappa_count,
};
use crate::error::Result;
use crate::formulas::{
    mutual_coefficient, mutual_coefficient_recursive, FormulaCatalog, FormulaValue,
};
use crate::params::Params;
use crate::properties::PropertyRegistry;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub formula: String,
    pub parameters: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Formula-by-formula table.
    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<16} {:<28} {:>14} {:>14}  result\n",
            "formula", "parameters", "formula", "enumeration"
        );
        for c in &self.checks {
            out.push_str(&format!(
                "{:<16} {:<28} {:>14} {:>14}  {}\n",
                c.formula,
                c.parameters,
                c.expected,
                c.observed,
                if c.pass { "ok" } else { "MISMATCH" }
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            self.checks.len(),
            self.checks.len() - failed,
            failed
        ));
        out
    }

    fn push(&mut self, formula: &str, parameters: String, expected: String, observed: String) {
        let pass = expected == observed;
        self.checks.push(Check {
            formula: formula.to_string(),
            parameters,
            expected,
            observed,
            pass,
        });
    }
}

fn field(q: u64) -> Field {
    Field::prime(q).expect("prime")
}

fn exact_value(catalog: &FormulaCatalog, name: &str, p: &Params) -> Result<BigRational> {
    Ok(match catalog.eval(name, p)? {
        FormulaValue::Exact(v) => v,
        other => other.at(p.q()),
    })
}

/// Runs every exact check, reading predictions from `catalog`.
pub fn run_verify(catalog: &FormulaCatalog, opts: &RunOptions) -> Result<VerifyReport> {
    let registry = PropertyRegistry::standard();
    let mut report = VerifyReport::default();

    for q in [2, 3] {
        for m in 1..=2 {
            for n in 0..=2 {
                let f = field(q);
                let p = Params::new(f.clone()).with_m(m).with_n(n);
                let expected = exact_value(catalog, "H_{n,m}", &p)?;
                let observed = count_hermite_forms_bruteforce(&f, m, n);
                report.push(
                    "H_{n,m}",
                    format!("q={q} m={m} n={n}"),
                    expected.to_string(),
                    observed.to_string(),
                );
            }
        }
    }

    let reachable = registry.get("reachable")?;
    for q in [2, 3] {
        for n in 1..=2 {
            for m in 1..=2 {
                let p = Params::new(field(q)).with_n(n).with_m(m);
                let expected = exact_value(catalog, "P_{n,m}", &p)?;
                let observed = exact_probability(reachable, &p, opts)?.probability();
                report.push(
                    "P_{n,m}",
                    format!("q={q} n={n} m={m}"),
                    expected.to_string(),
                    observed.to_string(),
                );
            }
        }
    }

    let observable = registry.get("observable")?;
    for (n, pp) in [(1, 1), (2, 1), (1, 2)] {
        let p = Params::new(field(2)).with_n(n).with_p(pp);
        let expected = exact_value(catalog, "O_{n,p}", &p)?;
        let observed = exact_probability(observable, &p, opts)?.probability();
        report.push(
            "O_{n,p}",
            format!("q=2 n={n} p={pp}"),
            expected.to_string(),
            observed.to_string(),
        );
    }

    for q in [2, 3] {
        for n in 1..=3 {
            let f = field(q);
            let p = Params::new(f.clone()).with_n(n);
            report.push(
                "|GL_n|",
                format!("q={q} n={n}"),
                exact_value(catalog, "|GL_n|", &p)?.to_string(),
                count_gl_bruteforce(&f, n).to_string(),
            );
        }
    }

    for q in [2, 3] {
        for j in 1..=6 {
            let f = field(q);
            let p = Params::new(f.clone()).with_n(j);
            report.push(
                "phi_j",
                format!("q={q} j={j}"),
                exact_value(catalog, "phi_j", &p)?.to_string(),
                count_irreducibles_bruteforce(&f, j).to_string(),
            );
        }
    }

    for q in [2, 3] {
        for m in 1..=2usize {
            let singles: Vec<Vec<usize>> = (0..3usize.pow(m as u32))
                .map(|c| (0..m).map(|j| c / 3usize.pow(j as u32) % 3).collect())
                .collect();
            for count in 1..=2usize {
                let f = field(q);
                let tuples: Vec<Vec<Vec<usize>>> = if count == 1 {
                    singles.iter().map(|k| vec![k.clone()]).collect()
                } else {
                    singles
                        .iter()
                        .flat_map(|a| singles.iter().map(move |b| vec![a.clone(), b.clone()]))
                        .collect()
                };
                let mut mismatch = None;
                for kappa in &tuples {
                    let p = Params::new(f.clone()).with_m(m).with_kappa(kappa.clone());
                    let expected = exact_value(catalog, "|X_kappa|", &p)?;
                    let observed = BigRational::from_integer(BigInt::from(
                        enumerate_x_kappa_count(&f, m, kappa)?,
                    ));
                    if expected != observed && mismatch.is_none() {
                        mismatch = Some((kappa.clone(), expected, observed));
                    }
                }
                let label = format!("q={q} m={m} N={count} ({} kappa)", tuples.len());
                match mismatch {
                    None => report.push("|X_kappa|", label, "all".into(), "all".into()),
                    Some((k, e, o)) => report.push(
                        "|X_kappa|",
                        format!("{label} kappa={k:?}"),
                        e.to_string(),
                        o.to_string(),
                    ),
                }
            }
        }
    }

    let scalar = registry.get("scalar-coprime")?;
    for q in [2, 3] {
        for count in 2..=3usize {
            for code in 0..(1usize << count) {
                let degrees: Vec<usize> = (0..count).map(|i| 1 + (code >> i & 1)).collect();
                let p = Params::new(field(q)).with_degrees(&degrees);
                let expected = exact_value(catalog, "scalar-coprime", &p)?;
                let observed = exact_probability(scalar, &p, opts)?.probability();
                report.push(
                    "scalar-coprime",
                    format!("q={q} deg={degrees:?}"),
                    expected.to_string(),
                    observed.to_string(),
                );
            }
        }
    }

    for m in 1..=8 {
        let mut bad = None;
        for n in 2..=12 {
            let p = Params::new(field(2)).with_m(m).with_count(n);
            let closed = exact_value(catalog, "C(N)", &p)?;
            let rec = BigRational::from_integer(mutual_coefficient_recursive(m, n));
            if closed != rec && bad.is_none() {
                bad = Some((n, closed, rec));
            }
        }
        match bad {
            None => report.push(
                "C(N)",
                format!("m={m} N=2..12"),
                format!("C(12)={}", mutual_coefficient(m, 12)),
                format!("C(12)={}", mutual_coefficient_recursive(m, 12)),
            ),
            Some((n, c, r)) => {
                report.push("C(N)", format!("m={m} N={n}"), c.to_string(), r.to_string())
            }
        }
    }

    Ok(report)
}
