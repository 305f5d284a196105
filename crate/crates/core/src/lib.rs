//! Zeros of the dilogarithm on every branch.
//!
//! Every branch of the dilogarithm has the form
//! `φ_{A,B}(z) = Li₂(z) + 4π²A + 2πiB·log z` for integers `A`, `B`. This crate
//! evaluates those branches, decides which of them vanish somewhere, computes
//! each zero by Newton's method with an explicit error radius, and checks the
//! results through routes that share no code with the Newton iteration
//! (argument-principle counts, curve intersections, grid scans).
//!
//! The [`polylog`] module covers the wider family `Li_s`: Eulerian
//! polynomials and their zeros, Sobolev's asymptotic formula, and spiral-seeded
//! zero hunts for complex `s`.
//!
//! ```
//! use dilog_zeros::{zero_finder, BranchIndex};
//!
//! let cert = zero_finder::find_zero(BranchIndex::new(0, -1), 1e-13).unwrap();
//! assert!((cert.zero.re - 0.916_197_816_206_862_6).abs() < 1e-13);
//! assert!((cert.zero.im + 0.182_458_897_207_141_2).abs() < 1e-13);
//! ```

// `!(x > 0.0)` guards are how NaN gets rejected here
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod branch;
pub mod cli;
pub mod error;
pub mod polylog;
pub mod special_fn;
pub mod verify;
pub mod zero_finder;

pub use branch::{BranchIndex, MonodromyElement};
pub use error::{Error, Result};
pub use special_fn::{Complex, EvalResult};
pub use verify::{CurveSample, WindingReport};
pub use zero_finder::{PolarRectangle, ZeroCertificate};
