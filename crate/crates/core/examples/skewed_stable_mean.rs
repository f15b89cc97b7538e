//! For a skewed stable process on an interval, t^{−1/α}H(t) → E|S| where S
//! is the stable law of X_1; compared with an independent sample and the
//! closed form.

use levy_heat::asymptotics::{geometric_grid, stable_abs_mean, stable_abs_mean_exact, verify_example5};
use levy_heat::geometry::Shape;

fn main() -> levy_heat::Result<()> {
    let (alpha, c1, c2) = (1.5, 1.0, 0.0);
    let (mean, se) = stable_abs_mean(alpha, c1, c2, 400_000, 3)?;
    println!("E|S|: sampled {mean:.5} ± {se:.5}, closed form {:.5}", stable_abs_mean_exact(alpha, c1, c2));

    let times = geometric_grid(1e-2, 1e-5, 7)?;
    let report = verify_example5(alpha, c1, c2, &Shape::interval(0.0, 1.0)?, &times, 100_000, 11)?;
    println!("{report}");
    println!("95% intervals overlap: {}", report.intervals_overlap(1.96));
    Ok(())
}
