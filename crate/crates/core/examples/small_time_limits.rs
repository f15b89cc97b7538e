//! The small-time limits of H(t): the ψ⁻(1/t) rate for index α > 1, the
//! H(t)/t rate for finite variation, the t·ln(1/t) rate at α = 1 and the
//! upper and lower envelopes.

use levy_heat::asymptotics::{check_bounds_envelope, default_grid, verify_theorem2, verify_theorem3};
use levy_heat::geometry::Shape;
use levy_heat::levy::LevyModel;

fn main() -> levy_heat::Result<()> {
    let times = default_grid();
    let unit = Shape::interval(0.0, 1.0)?;

    let stable = LevyModel::isotropic_stable(1, 1.5, 1.0)?;
    println!("{}", verify_theorem2(&stable, &unit, &times)?);

    let light = LevyModel::isotropic_stable_c1(1, 0.5, 1.0)?;
    println!("{}", verify_theorem3(&light, &unit, &times)?);

    let cauchy = LevyModel::isotropic_stable(1, 1.0, 1.0)?;
    for report in check_bounds_envelope(&cauchy, &unit, &times)? {
        println!("{report}");
    }
    Ok(())
}
