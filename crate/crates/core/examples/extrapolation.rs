//! Limit extrapolation on geometric grids: automatic rate detection and
//! weighted fits with a prescribed correction basis.

use levy_heat::asymptotics::{extrapolate_limit, extrapolate_log_rate, fit_limit, geometric_grid, Basis};

fn main() -> levy_heat::Result<()> {
    let times = geometric_grid(1e-1, 1e-7, 13)?;

    // 3 + 2 t^{1/3} − t
    let pts: Vec<(f64, f64)> = times.iter().map(|&t| (t, 3.0 + 2.0 * t.powf(1.0 / 3.0) - t)).collect();
    let ex = extrapolate_limit(&pts)?;
    println!("power correction: limit {:.10} ± {:.1e}, θ̂ = {:?}", ex.limit, ex.error, ex.diagnostic.theta);

    // 1 + 1/ln(1/t), the slow approach of the Cauchy log rate
    let pts: Vec<(f64, f64)> = times.iter().map(|&t| (t, 1.0 + 1.0 / (1.0 / t).ln())).collect();
    let ex = extrapolate_log_rate(&pts)?;
    println!("logarithmic correction: limit {:.6} ± {:.1e}", ex.limit, ex.error);

    // noisy data with known shape: weighted least squares
    let noise = [0.01, -0.02, 0.015, -0.005, 0.01];
    let short = geometric_grid(1e-1, 1e-3, 5)?;
    let pts: Vec<(f64, f64)> = short.iter().zip(noise).map(|(&t, e)| (t, 8.0 - 5.0 * t + e)).collect();
    let errs = [0.02; 5];
    let ex = fit_limit(&pts, Some(&errs), &[Basis::Power(1.0)])?;
    println!("weighted fit: limit {:.4} ± {:.4}", ex.limit, ex.error);
    Ok(())
}
