//! Exact computer algebra for the quantum affine algebra of type A at the
//! critical level: R-matrices, PBW normal ordering, Sugawara series,
//! vacuum-module checks and Harish-Chandra images.

pub mod algebra;
pub mod coeff;
pub mod error;
pub mod harness;
pub mod hc;
pub mod sugawara;
pub mod tensor;
pub mod vacuum;

pub use error::{Error, Result};
