//! Finite fields, polynomials and polynomial matrices over finite fields,
//! with the coprimeness tests and canonical forms used to study linear
//! systems and convolutional codes.

pub mod canonical;
pub mod convcode;
pub mod error;
pub mod field;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod polymatrix;
pub mod systems;

pub use convcode::ConvCode;
pub use error::{Error, Result};
pub use field::{Elem, Field, FieldElem};
pub use matrix::Matrix;
pub use poly::Poly;
pub use polymatrix::PolyMatrix;
pub use systems::{MatrixFraction, StateSpace};
