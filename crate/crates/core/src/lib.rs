//! Alternating series `a_1 - a_2 + a_3 - ...` with certified remainder
//! enclosures and Euler-transform acceleration, all in exact rationals.
//!
//! ```
//! use altsum::{bounds, euler, ExactRational, TermSource};
//!
//! let eps: ExactRational = "1/20000".parse().unwrap();
//! let n = bounds::first_n_guaranteed(&TermSource::ln2(), &eps, bounds::Method::Johnsonbaugh(0)).unwrap();
//! assert_eq!(n, 10_000);
//!
//! let e13 = euler::euler_partial_sum(&TermSource::pi4(), 13).unwrap();
//! assert_eq!(e13.value.to_string(), "1314078208/1673196525");
//! ```

pub mod bounds;
pub mod differences;
mod error;
pub mod euler;
pub mod numerics;
pub mod terms;

pub use bounds::{Method, RemainderInterval, TValue, TrueRemainder};
pub use differences::{DifferenceTable, Verdict};
pub use error::{Error, Result};
pub use euler::{AccelerationMethod, AccelerationResult};
pub use numerics::{decimal_string, ExactRational, ReferenceConstant};
pub use terms::{Backend, Family, Scalar, SeriesSpec, TermSource};
