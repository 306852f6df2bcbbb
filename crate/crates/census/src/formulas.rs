//! Closed-form and leading-order probability and cardinality formulas,
//! evaluated exactly in rational arithmetic with `t = 1/q`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use polyprime_core::poly::count_monic_irreducibles;
use serde::Serialize;

use crate::error::{CensusError, Result};
use crate::params::Params;

/// Either an exact value or the leading expansion `1 - coeff * t^power`
/// with an error of order `t^(power+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormulaValue {
    Exact(BigRational),
    Leading { coeff: BigInt, power: u32 },
}

impl FormulaValue {
    pub fn is_exact(&self) -> bool {
        matches!(self, FormulaValue::Exact(_))
    }

    /// Value at field size `q`; leading expansions drop the error term.
    pub fn at(&self, q: u64) -> BigRational {
        match self {
            FormulaValue::Exact(v) => v.clone(),
            FormulaValue::Leading { coeff, power } => {
                BigRational::one() - BigRational::from_integer(coeff.clone()) * t_pow(q, *power)
            }
        }
    }

    pub fn approx(&self, q: u64) -> f64 {
        to_f64(&self.at(q))
    }

    /// Exact value as an integer, when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            FormulaValue::Exact(v) if v.is_integer() => Some(v.to_integer()),
            _ => None,
        }
    }
}

impl fmt::Display for FormulaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaValue::Exact(v) => write!(f, "{v}"),
            FormulaValue::Leading { coeff, power } => {
                write!(f, "1 - {coeff}*t^{power} + O(t^{})", power + 1)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormulaKind {
    Exact,
    Asymptotic,
}

/// A named evaluator.
pub trait Formula: Send + Sync {
    fn name(&self) -> &str;
    fn description(&self) -> &str;
    fn kind(&self) -> FormulaKind;
    fn eval(&self, params: &Params) -> Result<FormulaValue>;
}

struct FnFormula {
    name: &'static str,
    description: &'static str,
    kind: FormulaKind,
    eval: fn(&Params) -> Result<FormulaValue>,
}

impl Formula for FnFormula {
    fn name(&self) -> &str {
        self.name
    }

    fn description(&self) -> &str {
        self.description
    }

    fn kind(&self) -> FormulaKind {
        self.kind
    }

    fn eval(&self, params: &Params) -> Result<FormulaValue> {
        (self.eval)(params)
    }
}

/// Formulas by name. Registering a name again replaces the entry.
pub struct FormulaCatalog {
    entries: BTreeMap<String, Box<dyn Formula>>,
}

impl FormulaCatalog {
    pub fn empty() -> FormulaCatalog {
        FormulaCatalog {
            entries: BTreeMap::new(),
        }
    }

    pub fn standard() -> FormulaCatalog {
        let mut c = FormulaCatalog::empty();
        for f in standard_formulas() {
            c.register(Box::new(f));
        }
        c
    }

    pub fn register(&mut self, formula: Box<dyn Formula>) {
        self.entries.insert(formula.name().to_string(), formula);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Formula> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| CensusError::UnknownFormula(name.to_string()))
    }

    pub fn eval(&self, name: &str, params: &Params) -> Result<FormulaValue> {
        self.get(name)?.eval(params)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Formula> {
        self.entries.values().map(|b| b.as_ref())
    }
}

impl Default for FormulaCatalog {
    fn default() -> Self {
        FormulaCatalog::standard()
    }
}

fn exact(v: BigRational) -> Result<FormulaValue> {
    Ok(FormulaValue::Exact(v))
}

fn leading(coeff: impl Into<BigInt>, power: usize) -> Result<FormulaValue> {
    Ok(FormulaValue::Leading {
        coeff: coeff.into(),
        power: power as u32,
    })
}

fn positive(v: usize, name: &str) -> Result<usize> {
    if v == 0 {
        Err(CensusError::InvalidParameters(format!(
            "{name} must be at least 1"
        )))
    } else {
        Ok(v)
    }
}

fn standard_formulas() -> Vec<FnFormula> {
    use FormulaKind::*;
    vec![
        FnFormula {
            name: "P_{n,m}",
            description: "probability that (A,B) is reachable: prod_{j=m}^{n+m-1} (1-t^j)",
            kind: Exact,
            eval: |p| exact(reachable_probability(p.q(), p.need_n()?, positive(p.need_m()?, "m")?)),
        },
        FnFormula {
            name: "O_{n,p}",
            description: "probability that (A,C) is observable: prod_{j=p}^{n+p-1} (1-t^j)",
            kind: Exact,
            eval: |p| exact(reachable_probability(p.q(), p.need_n()?, positive(p.need_p()?, "p")?)),
        },
        FnFormula {
            name: "H_{n,m}",
            description: "number of m x m Hermite forms with determinant degree n",
            kind: Exact,
            eval: |p| {
                exact(BigRational::from_integer(hermite_count(
                    p.q(),
                    p.need_n()?,
                    positive(p.need_m()?, "m")?,
                )))
            },
        },
        FnFormula {
            name: "|GL_n|",
            description: "number of invertible n x n matrices: t^{-n^2} prod_{j=1}^n (1-t^j)",
            kind: Exact,
            eval: |p| exact(BigRational::from_integer(gl_count(p.q(), p.need_n()?))),
        },
        FnFormula {
            name: "phi_j",
            description: "number of monic irreducible polynomials of degree j = n",
            kind: Exact,
            eval: |p| {
                let j = positive(p.need_n()?, "n")?;
                exact(BigRational::from_integer(BigInt::from(
                    count_monic_irreducibles(p.q(), j as u32),
                )))
            },
        },
        FnFormula {
            name: "|X_kappa|",
            description: "number of Hermite tuples with prescribed row degrees kappa",
            kind: Exact,
            eval: |p| {
                exact(BigRational::from_integer(x_kappa_count(
                    p.q(),
                    positive(p.need_m()?, "m")?,
                    &p.kappa,
                )))
            },
        },
        FnFormula {
            name: "|X(n)|",
            description: "number of Hermite tuples with determinant degrees n_1..n_N",
            kind: Exact,
            eval: |p| {
                exact(BigRational::from_integer(x_count(
                    p.q(),
                    positive(p.need_m()?, "m")?,
                    p.need_degrees()?,
                )))
            },
        },
        FnFormula {
            name: "c_kappa",
            description: "codimension exponent sum_i sum_j (j-1) kappa_j",
            kind: Exact,
            eval: |p| {
                exact(BigRational::from_integer(BigInt::from(c_kappa(&p.kappa))))
            },
        },
        FnFormula {
            name: "scalar-coprime",
            description: "probability that N monic polynomials are coprime: 1 - t^{N-1}",
            kind: Exact,
            eval: |p| {
                let n = p.need_big_n()?;
                if n < 2 {
                    return Err(CensusError::InvalidParameters("N must be at least 2".into()));
                }
                exact(BigRational::one() - t_pow(p.q(), (n - 1) as u32))
            },
        },
        FnFormula {
            name: "right-prime-fraction",
            description: "probability that [Q; P] in M(p,n,m) is right prime: 1 - t^p",
            kind: Asymptotic,
            eval: |p| leading(1, positive(p.need_p()?, "p")?),
        },
        FnFormula {
            name: "minimal",
            description: "probability that (A,B,C,D) is minimal: 1 - t^m - t^p",
            kind: Asymptotic,
            eval: |p| {
                let m = positive(p.need_m()?, "m")?;
                let pp = positive(p.need_p()?, "p")?;
                if m == pp {
                    leading(2, m)
                } else {
                    leading(1, m.min(pp))
                }
            },
        },
        FnFormula {
            name: "left-coprime",
            description: "probability that two Hermite forms are left coprime: 1 - t^m",
            kind: Asymptotic,
            eval: |p| leading(1, positive(p.need_m()?, "m")?),
        },
        FnFormula {
            name: "pairwise-coprime",
            description: "probability that N Hermite forms are pairwise left coprime: 1 - N(N-1)/2 t^m",
            kind: Asymptotic,
            eval: |p| {
                let n = p.need_big_n()?;
                leading(n * n.saturating_sub(1) / 2, positive(p.need_m()?, "m")?)
            },
        },
        FnFormula {
            name: "C(N)",
            description: "t^m coefficient of the mutual coprimeness probability: -sum_{y=2}^{m+1} binom(N,y)",
            kind: Exact,
            eval: |p| {
                exact(BigRational::from_integer(mutual_coefficient(
                    positive(p.need_m()?, "m")?,
                    p.need_big_n()?,
                )))
            },
        },
        FnFormula {
            name: "mutual-coprime",
            description: "probability that N Hermite forms are mutually left coprime: 1 - sum_{y=2}^{m+1} binom(N,y) t^m",
            kind: Asymptotic,
            eval: |p| {
                let m = positive(p.need_m()?, "m")?;
                leading(-mutual_coefficient(m, p.need_big_n()?), m)
            },
        },
        FnFormula {
            name: "parallel-reachable",
            description: "probability that a parallel connection is reachable: 1 - sum_{y=1}^{m+1} binom(N,y) t^m",
            kind: Asymptotic,
            eval: |p| {
                let m = positive(p.need_m()?, "m")?;
                let n = p.need_big_n()?;
                let c: BigInt = (1..=m + 1).map(|y| binom(n, y)).sum();
                leading(c, m)
            },
        },
        FnFormula {
            name: "noncatastrophic",
            description: "probability that a rate k/n code of degree s is non-catastrophic: 1 - t^{n-k}",
            kind: Asymptotic,
            eval: |p| {
                let n = p.need_n()?;
                let k = p.need_k()?;
                if k == 0 || k >= n {
                    return Err(CensusError::InvalidParameters("need 1 <= k < n".into()));
                }
                leading(1, n - k)
            },
        },
    ]
}

pub fn t_pow(q: u64, k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(q).pow(k))
}

pub fn to_f64(v: &BigRational) -> f64 {
    let n = v.numer().to_f64().unwrap_or(f64::NAN);
    let d = v.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // scale down huge operands
        let shift = v.denom().bits().max(v.numer().bits()).saturating_sub(1000);
        let n = (v.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (v.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    }
}

/// `prod_{j=m}^{n+m-1} (1 - t^j)`.
pub fn reachable_probability(q: u64, n: usize, m: usize) -> BigRational {
    (m..n + m).fold(BigRational::one(), |acc, j| {
        acc * (BigRational::one() - t_pow(q, j as u32))
    })
}

/// `t^{-mn} prod_{j=1}^n (1 - t^{m+j-1}) / (1 - t^j)`.
pub fn hermite_count(q: u64, n: usize, m: usize) -> BigInt {
    let mut v = BigRational::from_integer(BigInt::from(q).pow((m * n) as u32));
    for j in 1..=n {
        v = v * (BigRational::one() - t_pow(q, (m + j - 1) as u32))
            / (BigRational::one() - t_pow(q, j as u32));
    }
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// `t^{-n^2} prod_{j=1}^n (1 - t^j)`.
pub fn gl_count(q: u64, n: usize) -> BigInt {
    let v = BigRational::from_integer(BigInt::from(q).pow((n * n) as u32))
        * (1..=n).fold(BigRational::one(), |acc, j| {
            acc * (BigRational::one() - t_pow(q, j as u32))
        });
    v.to_integer()
}

/// `prod_i prod_j t^{-(m-j+1) kappa_j^{(i)}}` with `kappa[i][j-1] = kappa_j`.
pub fn x_kappa_count(q: u64, m: usize, kappa: &[Vec<usize>]) -> BigInt {
    let exponent: usize = kappa
        .iter()
        .flat_map(|k| k.iter().enumerate().map(move |(j, &kj)| (m - j) * kj))
        .sum();
    BigInt::from(q).pow(exponent as u32)
}

/// `|X(n_1..n_N)| = prod_i H_{n_i,m}`.
pub fn x_count(q: u64, m: usize, degrees: &[usize]) -> BigInt {
    degrees.iter().map(|&n| hermite_count(q, n, m)).product()
}

/// `sum_i sum_j (j-1) kappa_j^{(i)}`.
pub fn c_kappa(kappa: &[Vec<usize>]) -> usize {
    kappa
        .iter()
        .flat_map(|k| k.iter().enumerate().map(|(j, &kj)| j * kj))
        .sum()
}

pub fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Closed form `C(N) = -sum_{y=2}^{m+1} binom(N, y)`.
pub fn mutual_coefficient(m: usize, n: usize) -> BigInt {
    -(2..=m + 1).map(|y| binom(n, y)).sum::<BigInt>()
}

/// `C(N)` from the recursion
/// `C(N) = sum_{k=1}^{N-2} (-1)^{k+1} binom(N,k) C(N-k) - [m >= N-1]`.
pub fn mutual_coefficient_recursive(m: usize, n: usize) -> BigInt {
    let mut c: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    for big in 2..=n {
        let mut v = BigInt::zero();
        for k in 1..=big.saturating_sub(2) {
            let term = binom(big, k) * &c[big - k];
            if k % 2 == 1 {
                v += term;
            } else {
                v -= term;
            }
        }
        if m + 1 >= big {
            v -= 1;
        }
        c[big] = v;
    }
    c[n].clone()
}

/// Whether the closed form satisfies the recursion for one `(m, N)`.
pub fn recursion_check(m: usize, n: usize) -> bool {
    n >= 2 && mutual_coefficient(m, n) == mutual_coefficient_recursive(m, n)
}

/// Parallel reachability as the product of node reachability
/// probabilities and the mutual coprimeness probability `pm`.
pub fn parallel_product(q: u64, m: usize, nodes: &[usize], pm: &BigRational) -> BigRational {
    nodes
        .iter()
        .fold(pm.clone(), |acc, &n| acc * reachable_probability(q, n, m))
}

/// Scaled defect `(1 - P) q^k`.
pub fn scaled_defect(probability: f64, q: u64, k: u32) -> f64 {
    (1.0 - probability) * (q as f64).powi(k as i32)
}

/// Absolute difference of two rationals as a float.
pub fn abs_diff(a: &BigRational, b: &BigRational) -> f64 {
    to_f64(&(a - b).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyprime_core::Field;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn catalog_examples() {
        let cat = FormulaCatalog::standard();
        let f2 = Field::prime(2).unwrap();
        let p = Params::new(f2.clone()).with_n(1).with_m(1);
        assert_eq!(
            cat.eval("P_{n,m}", &p).unwrap(),
            FormulaValue::Exact(r(1, 2))
        );
        let p = Params::new(f2.clone()).with_n(1).with_m(2);
        assert_eq!(
            cat.eval("H_{n,m}", &p).unwrap().as_integer().unwrap(),
            6.into()
        );
        let p = Params::new(f2).with_m(1).with_count(2);
        let v = cat.eval("parallel-reachable", &p).unwrap();
        assert_eq!(
            v,
            FormulaValue::Leading {
                coeff: 3.into(),
                power: 1
            }
        );
        assert!(matches!(
            cat.eval("nope", &p),
            Err(CensusError::UnknownFormula(_))
        ));
    }

    #[test]
    fn counts() {
        assert_eq!(hermite_count(3, 2, 2), 117.into());
        assert_eq!(hermite_count(2, 2, 1), 4.into());
        assert_eq!(hermite_count(2, 0, 2), 1.into());
        assert_eq!(gl_count(2, 2), 6.into());
        assert_eq!(gl_count(3, 2), 48.into());
        assert_eq!(x_kappa_count(2, 2, &[vec![1, 0]]), 4.into());
        assert_eq!(x_kappa_count(5, 1, &[vec![3]]), 125.into());
        assert_eq!(x_kappa_count(3, 2, &[vec![0, 0]]), 1.into());
        assert_eq!(c_kappa(&[vec![1, 0], vec![0, 2]]), 2);
    }

    #[test]
    fn mutual_coefficients() {
        assert_eq!(mutual_coefficient(1, 2), (-1).into());
        assert_eq!(mutual_coefficient(2, 3), (-4).into());
        assert_eq!(mutual_coefficient(3, 4), (-11).into());
        for m in 1..=8 {
            for n in 2..=12 {
                assert!(recursion_check(m, n), "m={m} N={n}");
            }
        }
    }

    #[test]
    fn leading_values() {
        let v = FormulaValue::Leading {
            coeff: 4.into(),
            power: 2,
        };
        assert_eq!(v.at(5), r(21, 25));
        assert!((v.approx(5) - 0.84).abs() < 1e-12);
        assert_eq!(binom(5, 2), 10.into());
        assert_eq!(binom(2, 3), 0.into());
    }
}
