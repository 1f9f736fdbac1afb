//! Exact scalar kernel: rationals, decimal rendering, reference constants.
//!
//! Nothing here touches floating point except [`ExactRational::to_f64`] and
//! [`ExactRational::from_f64`], the two conversion points used by the
//! float64 backend.

mod constants;
mod decimal;
mod rational;

pub use constants::{reference_value, ConstantTable, ReferenceConstant, MIN_DIGITS};
pub use decimal::{decimal_string, scientific_string};
pub use rational::{rational_arith, ArithOp, ArithOutcome, ExactRational};
