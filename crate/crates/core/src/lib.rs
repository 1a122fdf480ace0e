//! Modal simulation of transformation-based approximate cloaking for the
//! Helmholtz equation in two and three dimensions.

// `!(x > 0.0)` rejects NaN along with the nonpositive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod double_double;
pub mod experiments;
pub mod error;
pub mod fields;
pub mod mie;
pub mod quadrature;
pub mod scalar;
pub mod specfun;
pub mod transform;

pub use config::{CloakConfig, MaterialLayer};
pub use double_double::DoubleDouble;
pub use error::{Error, Result};
pub use scalar::{Cx, Real};
