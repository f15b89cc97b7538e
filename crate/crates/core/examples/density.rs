//! Transition densities by Fourier inversion, checked against closed forms
//! for the Cauchy and Gaussian laws.

use levy_heat::levy::{density_radial, tail_probability, LevyModel, TransitionLaw};
use std::f64::consts::PI;

fn main() -> levy_heat::Result<()> {
    let t = 0.5;
    let cauchy = LevyModel::isotropic_stable(1, 1.0, 1.0)?;
    let law = TransitionLaw::new(&cauchy, t)?;
    println!("Cauchy at t = {t}: density of X_t and P(|X_t| > x)");
    for x in [0.0, 0.3, 1.0, 4.0] {
        let exact = t / (PI * (t * t + x * x));
        let tail = 1.0 - 2.0 / PI * (x / t).atan();
        println!("  x = {x:<4} p = {:.12} (exact {exact:.12})  tail = {:.12} (exact {tail:.12})", law.density(x), law.tail(x));
    }

    let brownian = LevyModel::brownian(2, 1.0)?;
    let law = TransitionLaw::new(&brownian, t)?;
    println!("planar Brownian motion, η = 1, t = {t}: p_t at radius s and the density of ‖X_t‖");
    for s in [0.2, 1.0, 3.0] {
        let exact = (-s * s / (4.0 * t)).exp() / (4.0 * PI * t);
        println!(
            "  s = {s:<4} p = {:.12} (exact {exact:.12})  f = {:.12} (exact {:.12})",
            density_radial(&brownian, t, s)?,
            law.radial_density(s),
            2.0 * PI * s * exact
        );
    }

    let stable = LevyModel::isotropic_stable(1, 0.7, 1.0)?;
    println!("stable α = 0.7: P(|X_t| > 10) = {:.6e} at t = {t}", tail_probability(&stable, t, 10.0)?);
    Ok(())
}
