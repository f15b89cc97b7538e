//! Heat content of open sets under Lévy semigroups.
//!
//! The crate computes `H(t) = ∫_Ω P_x(X_t ∉ Ω) dx` for a catalogue of Lévy
//! processes and a handful of domain shapes, either by deterministic
//! Fourier-inversion quadrature or by Monte Carlo, and compares the small-time
//! behaviour of `H` with its known limits.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod acceptance;
pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod heat;
pub mod levy;
pub mod quad;
pub mod sampling;
pub mod special;

pub use error::{Error, Result};
