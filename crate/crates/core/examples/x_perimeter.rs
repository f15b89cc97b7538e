//! Per_X(Ω) = ∫ |Ω ∩ (Ω − y)ᶜ| ν(dy) for finite-variation processes and the
//! small-time limit of H(t)/t it predicts.

use levy_heat::asymptotics::theorem3_limit;
use levy_heat::geometry::Shape;
use levy_heat::heat::x_perimeter;
use levy_heat::levy::{Atom, LevyModel};

fn main() -> levy_heat::Result<()> {
    let unit = Shape::interval(0.0, 1.0)?;
    let stable = LevyModel::isotropic_stable_c1(1, 0.5, 1.0)?;
    println!("stable α = 0.5, c₁ = 1 on (0, 1): Per_X = {:.10}", x_perimeter(&stable, &unit)?);

    let atoms = vec![Atom { location: vec![1.0], mass: 1.0 }, Atom { location: vec![-1.0], mass: 1.0 }];
    let jumps = LevyModel::compound_poisson(1, atoms, vec![0.3])?;
    let long = Shape::interval(0.0, 2.0)?;
    println!(
        "jumps ±1 with velocity 0.3 on (0, 2): Per_X = {:.6}, lim H(t)/t = {:.6}",
        x_perimeter(&jumps, &long)?,
        theorem3_limit(&jumps, &long)?
    );

    let square = Shape::rect(&[1.0, 1.0])?;
    let planar = LevyModel::isotropic_stable(2, 0.8, 1.0)?;
    println!("planar stable α = 0.8 on the unit square: Per_X = {:.8}", x_perimeter(&planar, &square)?);
    Ok(())
}
