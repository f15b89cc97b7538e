//! Characteristic exponent ψ, its running supremum ψ*, the generalized
//! inverse ψ⁻ and the Pruitt function h for a few catalogue models.

use levy_heat::levy::{LevyModel, Profile};

fn main() -> levy_heat::Result<()> {
    let models = [
        ("Brownian η=1", LevyModel::brownian(1, 1.0)?),
        ("stable α=1.5", LevyModel::isotropic_stable(1, 1.5, 1.0)?),
        ("Brownian + stable", LevyModel::brownian_plus_stable(1, 2.0, 1.0, 0.5)?),
        ("tempered stable α=1.3", LevyModel::radial(1, Profile::Tempered, 1.3, 1.0)?),
        ("dyadic atoms α=1", LevyModel::discrete_dyadic(1.0, 1.0)?),
    ];
    println!("{:<24} {:>10} {:>12} {:>12} {:>12} {:>12}", "model", "r", "ψ(r)", "ψ*(r)", "ψ⁻(ψ*(r))", "h(1/r)");
    for (name, m) in &models {
        for r in [0.1, 1.0, 10.0, 1000.0] {
            let ps = m.psi_star(r)?;
            println!(
                "{name:<24} {r:>10} {:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e}",
                m.psi(r)?,
                ps,
                m.psi_inverse(ps)?,
                m.pruitt_h(1.0 / r)?
            );
        }
    }
    Ok(())
}
