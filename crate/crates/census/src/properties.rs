//! Properties whose probability is measured, registered by name.

use std::collections::BTreeMap;

use crate::error::{CensusError, Result};
use crate::params::Params;
use crate::spaces::{
    HermiteTupleSpace, NoncatastrophicSpace, ParallelSpace, RightPrimeFractionSpace, SampleSpace,
    ScalarCoprimeSpace, SystemSpace, SystemTest, TupleTest,
};

pub trait Property: Send + Sync {
    fn name(&self) -> &str;
    fn description(&self) -> &str;
    /// Catalog entry predicting the probability.
    fn formula(&self) -> &str;
    /// Exponent `k` of the leading defect `c t^k`, for coefficient fits.
    fn defect_order(&self, params: &Params) -> Result<u32>;
    fn space(&self, params: &Params) -> Result<Box<dyn SampleSpace>>;
}

type SpaceFn = fn(&Params) -> Result<Box<dyn SampleSpace>>;
type OrderFn = fn(&Params) -> Result<u32>;

struct Builtin {
    name: &'static str,
    description: &'static str,
    formula: &'static str,
    order: OrderFn,
    space: SpaceFn,
}

impl Property for Builtin {
    fn name(&self) -> &str {
        self.name
    }

    fn description(&self) -> &str {
        self.description
    }

    fn formula(&self) -> &str {
        self.formula
    }

    fn defect_order(&self, params: &Params) -> Result<u32> {
        (self.order)(params)
    }

    fn space(&self, params: &Params) -> Result<Box<dyn SampleSpace>> {
        (self.space)(params)
    }
}

pub struct PropertyRegistry {
    entries: BTreeMap<String, Box<dyn Property>>,
}

impl PropertyRegistry {
    pub fn empty() -> Self {
        PropertyRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn standard() -> Self {
        let mut r = PropertyRegistry::empty();
        for p in builtins() {
            r.register(Box::new(p));
        }
        r
    }

    pub fn register(&mut self, property: Box<dyn Property>) {
        self.entries.insert(property.name().to_string(), property);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Property> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| CensusError::UnknownProperty(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Property> {
        self.entries.values().map(|b| b.as_ref())
    }
}

impl Default for PropertyRegistry {
    fn default() -> Self {
        PropertyRegistry::standard()
    }
}

fn boxed<S: SampleSpace + 'static>(s: S) -> Result<Box<dyn SampleSpace>> {
    Ok(Box::new(s))
}

fn m_order(p: &Params) -> Result<u32> {
    Ok(p.need_m()? as u32)
}

fn builtins() -> Vec<Builtin> {
    vec![
        Builtin {
            name: "scalar-coprime",
            description: "N monic polynomials of degrees --deg are coprime",
            formula: "scalar-coprime",
            order: |p| Ok(p.need_big_n()?.saturating_sub(1) as u32),
            space: |p| boxed(ScalarCoprimeSpace::new(&p.field, p.need_degrees()?)?),
        },
        Builtin {
            name: "left-coprime",
            description: "two m x m Hermite forms of determinant degrees --deg are left coprime",
            formula: "left-coprime",
            order: m_order,
            space: |p| {
                boxed(HermiteTupleSpace::new(
                    &p.field,
                    p.need_m()?,
                    p.need_degrees()?,
                    TupleTest::LeftCoprime,
                )?)
            },
        },
        Builtin {
            name: "pairwise-coprime",
            description: "N m x m Hermite forms of determinant degrees --deg are pairwise left coprime",
            formula: "pairwise-coprime",
            order: m_order,
            space: |p| {
                boxed(HermiteTupleSpace::new(
                    &p.field,
                    p.need_m()?,
                    p.need_degrees()?,
                    TupleTest::Pairwise,
                )?)
            },
        },
        Builtin {
            name: "mutual-coprime",
            description: "N m x m Hermite forms of determinant degrees --deg are mutually left coprime",
            formula: "mutual-coprime",
            order: m_order,
            space: |p| {
                boxed(HermiteTupleSpace::new(
                    &p.field,
                    p.need_m()?,
                    p.need_degrees()?,
                    TupleTest::Mutual,
                )?)
            },
        },
        Builtin {
            name: "reachable",
            description: "(A, B) with A n x n, B n x m is reachable",
            formula: "P_{n,m}",
            order: m_order,
            space: |p| {
                boxed(SystemSpace::new(&p.field, p.need_n()?, p.need_m()?, 0, SystemTest::Reachable))
            },
        },
        Builtin {
            name: "observable",
            description: "(A, C) with A n x n, C p x n is observable",
            formula: "O_{n,p}",
            order: |p| Ok(p.need_p()? as u32),
            space: |p| {
                boxed(SystemSpace::new(&p.field, p.need_n()?, 0, p.need_p()?, SystemTest::Observable))
            },
        },
        Builtin {
            name: "minimal",
            description: "(A, B, C, D) with n states, m inputs, p outputs is minimal",
            formula: "minimal",
            order: |p| Ok(p.need_m()?.min(p.need_p()?) as u32),
            space: |p| {
                boxed(SystemSpace::new(
                    &p.field,
                    p.need_n()?,
                    p.need_m()?,
                    p.need_p()?,
                    SystemTest::Minimal,
                ))
            },
        },
        Builtin {
            name: "parallel-reachable",
            description: "parallel connection of nodes (A_i, B_i) with state dimensions --deg and m inputs is reachable",
            formula: "parallel-reachable",
            order: m_order,
            space: |p| boxed(ParallelSpace::new(&p.field, p.need_m()?, p.need_degrees()?)?),
        },
        Builtin {
            name: "noncatastrophic",
            description: "code of a system with s states, k inputs, n - k outputs is non-catastrophic, given (A, B) reachable",
            formula: "noncatastrophic",
            order: |p| Ok((p.need_n()? - p.need_k()?) as u32),
            space: |p| {
                boxed(NoncatastrophicSpace::new(&p.field, p.need_s()?, p.need_k()?, p.need_n()?)?)
            },
        },
        Builtin {
            name: "right-prime-fraction",
            description: "[Q; P] with Q in Kronecker-Hermite form, deg det Q = n, P p x m column-bounded, is right prime",
            formula: "right-prime-fraction",
            order: |p| Ok(p.need_p()? as u32),
            space: |p| {
                boxed(RightPrimeFractionSpace::new(&p.field, p.need_p()?, p.need_n()?, p.need_m()?)?)
            },
        },
    ]
}
