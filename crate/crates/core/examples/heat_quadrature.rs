//! Deterministic heat content H(t) = ∫_Ω P_x(X_t ∉ Ω) dx by quadrature.

use levy_heat::acceptance::cauchy_heat_content;
use levy_heat::geometry::Shape;
use levy_heat::heat::heat_content_quadrature;
use levy_heat::levy::LevyModel;

fn main() -> levy_heat::Result<()> {
    let interval = Shape::interval(0.0, 1.0)?;
    let cauchy = LevyModel::isotropic_stable(1, 1.0, 1.0)?;
    println!("Cauchy process on (0, 1): quadrature against the closed form");
    for t in [1e-1, 1e-3, 1e-5] {
        let h = heat_content_quadrature(&cauchy, &interval, t)?;
        println!("  t = {t:e}: H = {:.12e} ± {:.1e}, exact {:.12e}", h.value, h.error, cauchy_heat_content(1.0, t));
    }

    let disk = Shape::ball(&[0.0, 0.0], 1.0)?;
    let stable = LevyModel::isotropic_stable(2, 1.5, 1.0)?;
    println!("planar stable α = 1.5 on the unit disk");
    for t in [1e-1, 1e-2, 1e-3] {
        let h = heat_content_quadrature(&stable, &disk, t)?;
        println!("  t = {t:e}: H = {:.10e}", h.value);
    }
    Ok(())
}
