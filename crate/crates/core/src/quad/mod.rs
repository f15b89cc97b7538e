//! Numerical integration: adaptive Gauss–Kronrod and an oscillatory
//! Fourier-type integrator for `∫ e^{iωx} A(x) dx`.

mod fourier;
mod gk;

pub use fourier::{fourier, power_tail, FourierOptions};
pub use gk::{gk21, integrate, integrate_log, Estimate, Tolerance, Value};
