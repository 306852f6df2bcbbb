//! Exhaustive and Monte Carlo censuses of coprimeness, reachability and
//! related properties over finite fields, together with the closed-form
//! predictions they are compared against.
//!
//! Properties and formulas are looked up by name in a
//! [`PropertyRegistry`] and a [`FormulaCatalog`].

pub mod engine;
pub mod enumerate;
pub mod error;
pub mod fit;
pub mod formulas;
pub mod params;
pub mod properties;
pub mod report;
pub mod spaces;
pub mod verify;

pub use engine::{exact_probability, mc_estimate, CensusResult, McEstimate, RunOptions};
pub use error::{CensusError, Result};
pub use formulas::{Formula, FormulaCatalog, FormulaKind, FormulaValue};
pub use params::Params;
pub use properties::{Property, PropertyRegistry};
