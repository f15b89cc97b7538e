//! Increment sampling and the seeded Monte Carlo heat-content estimator.

use levy_heat::geometry::Shape;
use levy_heat::heat::heat_content_quadrature;
use levy_heat::levy::LevyModel;
use levy_heat::sampling::{mc_heat_content, sample_increment, sample_stable_1d, RngStream};

fn main() -> levy_heat::Result<()> {
    let mut rng = RngStream::new(42, 0).rng();
    let draws: Vec<f64> = (0..5).map(|_| sample_stable_1d(1.5, 0.5, 1.0, &mut rng)).collect::<levy_heat::Result<_>>()?;
    println!("skewed stable draws (α = 1.5, β = 0.5): {draws:.4?}");

    let planar = LevyModel::isotropic_stable(2, 1.2, 1.0)?;
    println!("planar stable increment at t = 0.1: {:.4?}", sample_increment(&planar, 0.1, &mut rng)?);

    let model = LevyModel::isotropic_stable(1, 1.5, 1.0)?;
    let shape = Shape::interval(0.0, 1.0)?;
    let t = 1e-2;
    let exact = heat_content_quadrature(&model, &shape, t)?.value;
    for n in [10_000, 100_000, 1_000_000] {
        let est = mc_heat_content(&model, &shape, t, n, 7)?;
        println!(
            "n = {n:>8}: H = {:.6} ± {:.6} (quadrature {exact:.6}, z = {:+.2})",
            est.value,
            est.stderr,
            (est.value - exact) / est.stderr
        );
    }
    Ok(())
}
