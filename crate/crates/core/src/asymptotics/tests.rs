use super::*;
use crate::levy::Atom;
use approx::assert_relative_eq;

fn synthetic(f: impl Fn(f64) -> f64) -> Vec<(f64, f64)> {
    default_grid().into_iter().map(|t| (t, f(t))).collect()
}

/// Γ(x) from the Stirling series at x + 30, shifted down by the recurrence.
fn gamma_oracle(x: f64) -> f64 {
    let n = 30.0;
    let z: f64 = x + n;
    let series = 1.0 / (12.0 * z) - 1.0 / (360.0 * z.powi(3)) + 1.0 / (1260.0 * z.powi(5)) - 1.0 / (1680.0 * z.powi(7));
    let ln_g = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series;
    let shift: f64 = (0..30).map(|k| (x + k as f64).ln()).sum();
    (ln_g - shift).exp()
}

fn interval() -> Shape {
    Shape::interval(0.0, 1.0).unwrap()
}

#[test]
fn gamma_is_certified() {
    assert_relative_eq!(gamma(0.5), PI.sqrt(), max_relative = 1e-14);
    assert_relative_eq!(gamma_oracle(0.5), PI.sqrt(), max_relative = 1e-13);
    assert_relative_eq!(gamma(1.0 / 3.0), gamma_oracle(1.0 / 3.0), max_relative = 1e-12);
    assert_relative_eq!(gamma(1.0 / 3.0), 2.678_938_534_707_747_6, max_relative = 1e-14);
}

#[test]
fn constant_sequence() {
    let e = extrapolate_limit(&synthetic(|_| 7.0)).unwrap();
    assert_eq!(e.limit, 7.0);
    assert_eq!(e.diagnostic.theta, None);
    assert!(e.diagnostic.fallback);
}

#[test]
fn power_correction_is_removed() {
    let e = extrapolate_limit(&synthetic(|t| 3.0 + 2.0 * t.sqrt())).unwrap();
    assert!((e.limit - 3.0).abs() < 1e-6, "{}", e.limit);
    assert_relative_eq!(e.diagnostic.theta.unwrap(), 0.5, max_relative = 1e-9);
    assert!(!e.diagnostic.fallback);
}

#[test]
fn noisy_flat_sequence_falls_back() {
    // deterministic ±1e-9 jitter
    let pts: Vec<(f64, f64)> = default_grid()
        .into_iter()
        .enumerate()
        .map(|(k, t)| (t, 3.0 + 1e-9 * ((k * 7919 % 13) as f64 / 6.0 - 1.0)))
        .collect();
    let e = extrapolate_limit(&pts).unwrap();
    assert!(e.diagnostic.fallback);
    assert!((e.limit - 3.0).abs() < 1e-8);
}

#[test]
fn grid_must_be_geometric() {
    let pts = vec![(0.1, 1.0), (0.05, 1.0), (0.01, 1.0), (0.005, 1.0)];
    assert!(extrapolate_limit(&pts).is_err());
    assert!(extrapolate_limit(&synthetic(|t| t)[..3]).is_err());
    // order of the input does not matter
    let mut rev = synthetic(|t| 1.0 + t);
    rev.reverse();
    assert!((extrapolate_limit(&rev).unwrap().limit - 1.0).abs() < 1e-9);
}

#[test]
fn leading_points_are_trimmed_until_differences_contract() {
    // the first difference is nearly flat, so the second one grows
    let clean = |t: f64| 1.0 + t.powf(0.7);
    let mut pts = synthetic(clean);
    pts[0].1 = pts[1].1 + 1e-6;
    let e = extrapolate_limit(&pts).unwrap();
    assert!(e.diagnostic.first_used > 0);
    assert!((e.limit - 1.0).abs() < 1e-5, "{}", e.limit);
}

#[test]
fn log_rate_fit() {
    let pts = synthetic(|t| 2.0 / PI * (1.0 + 1.0 / (1.0 / t).ln()));
    let e = extrapolate_log_rate(&pts).unwrap();
    assert!((e.limit - 2.0 / PI).abs() < 1e-12);
    assert!(extrapolate_log_rate(&[(2.0, 1.0), (1.0, 1.0), (0.5, 1.0), (0.25, 1.0)]).is_err());
}

#[test]
fn weighted_fit_standard_error() {
    let pts = synthetic(|t| 5.0 - 3.0 * t);
    let errs = vec![0.1; pts.len()];
    let e = fit_limit(&pts, Some(&errs), &[Basis::Power(1.0)]).unwrap();
    assert_relative_eq!(e.limit, 5.0, max_relative = 1e-12);
    // dominated by the many points near t = 0: about 0.1/√n
    assert!(e.error > 0.1 / (pts.len() as f64).sqrt() && e.error < 0.1, "{}", e.error);
    assert!(fit_limit(&pts[..2], None, &[Basis::Power(1.0)]).is_err());
}

#[test]
fn inverse_rate_stable_interval() {
    let m = LevyModel::isotropic_stable(1, 1.5, 1.0).unwrap();
    let r = verify_theorem2(&m, &interval(), &default_grid()).unwrap();
    assert_relative_eq!(r.theoretical.unwrap(), 2.0 * gamma_oracle(1.0 / 3.0) / PI, max_relative = 1e-12);
    assert!(r.relative_error.unwrap() < 1e-3, "{r}");
    assert!(r.passes(0.02));
}

#[test]
fn inverse_rate_scaled_sequence_contracts() {
    let m = LevyModel::isotropic_stable(1, 1.5, 1.0).unwrap();
    let r = verify_theorem2(&m, &interval(), &default_grid()).unwrap();
    let fine: Vec<f64> = r.sequence.iter().filter(|p| p.t < 1e-3).map(|p| p.value).collect();
    let gaps: Vec<f64> = fine.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    for g in gaps.windows(2) {
        assert!(g[1] <= 0.9 * g[0], "{g:?}");
    }
}

#[test]
fn inverse_rate_time_change_invariance() {
    let one = LevyModel::isotropic_stable(1, 1.5, 1.0).unwrap();
    let two = LevyModel::isotropic_stable(1, 1.5, 2.0).unwrap();
    let a = verify_theorem2(&one, &interval(), &default_grid()).unwrap();
    let b = verify_theorem2(&two, &interval(), &default_grid()).unwrap();
    assert_relative_eq!(a.extrapolated, b.extrapolated, max_relative = 1e-3);
}

#[test]
fn inverse_rate_brownian_disk() {
    let eta = 0.5;
    let m = LevyModel::brownian(2, eta).unwrap();
    let disk = Shape::ball(&[0.0, 0.0], 1.0).unwrap();
    let times: Vec<f64> = default_grid().into_iter().skip(2).take(8).collect();
    let r = verify_theorem2(&m, &disk, &times).unwrap();
    assert!(r.relative_error.unwrap() < 1e-3, "{r}");
    // in the unscaled form t^{−1/2}H(t) → √(η/π)·Per
    assert_relative_eq!(r.extrapolated * eta.sqrt(), (eta / PI).sqrt() * 2.0 * PI, max_relative = 1e-3);
}

#[test]
fn inverse_rate_brownian_plus_stable_matches_brownian() {
    let disk = Shape::interval(0.0, 1.0).unwrap();
    let times = default_grid();
    let plain = verify_theorem2(&LevyModel::brownian(1, 1.0).unwrap(), &disk, &times).unwrap();
    let mixed = verify_theorem2(&LevyModel::brownian_plus_stable(1, 1.0, 1.0, 1.5).unwrap(), &disk, &times).unwrap();
    assert_eq!(plain.theoretical, mixed.theoretical);
    assert!(mixed.relative_error.unwrap() < 0.01, "{mixed}");
}

#[test]
fn inverse_rate_rejects_low_index() {
    for alpha in [0.5, 1.0] {
        let m = LevyModel::isotropic_stable(1, alpha, 1.0).unwrap();
        assert!(matches!(verify_theorem2(&m, &interval(), &default_grid()), Err(Error::Incompatible(_))));
    }
}

#[test]
fn linear_rate_stable_half() {
    let m = LevyModel::isotropic_stable_c1(1, 0.5, 1.0).unwrap();
    let r = verify_theorem3(&m, &interval(), &default_grid()).unwrap();
    assert_relative_eq!(r.theoretical.unwrap(), 8.0, max_relative = 1e-10);
    assert!(r.relative_error.unwrap() < 1e-4, "{r}");
}

#[test]
fn linear_rate_drift_only_is_exact() {
    let v = 0.3;
    let m = LevyModel::compound_poisson(1, vec![], vec![v]).unwrap();
    let r = verify_theorem3(&m, &interval(), &default_grid()).unwrap();
    assert_relative_eq!(r.theoretical.unwrap(), v, max_relative = 1e-14);
    assert!(r.sequence.iter().all(|p| (p.value - v).abs() < 1e-12));
    assert_relative_eq!(r.extrapolated, v, max_relative = 1e-12);
}

fn atoms() -> Vec<Atom> {
    vec![Atom { location: vec![1.0], mass: 1.0 }, Atom { location: vec![-1.0], mass: 1.0 }]
}

#[test]
fn linear_rate_atoms_and_additivity() {
    let shape = Shape::interval(0.0, 2.0).unwrap();
    let grid = default_grid();
    let jumps = verify_theorem3(&LevyModel::compound_poisson(1, atoms(), vec![0.0]).unwrap(), &shape, &grid).unwrap();
    assert_eq!(jumps.theoretical, Some(2.0));
    assert!(jumps.relative_error.unwrap() < 1e-6, "{jumps}");
    let drift = verify_theorem3(&LevyModel::compound_poisson(1, vec![], vec![0.3]).unwrap(), &shape, &grid).unwrap();
    let both = verify_theorem3(&LevyModel::compound_poisson(1, atoms(), vec![0.3]).unwrap(), &shape, &grid).unwrap();
    assert_relative_eq!(both.theoretical.unwrap(), 2.3, max_relative = 1e-12);
    assert_relative_eq!(both.extrapolated, jumps.extrapolated + drift.extrapolated, max_relative = 0.01);
}

#[test]
fn linear_rate_rejects_infinite_variation() {
    let m = LevyModel::isotropic_stable(1, 1.5, 1.0).unwrap();
    assert!(matches!(verify_theorem3(&m, &interval(), &default_grid()), Err(Error::Incompatible(_))));
    let b = LevyModel::brownian(1, 1.0).unwrap();
    assert!(matches!(verify_theorem3(&b, &interval(), &default_grid()), Err(Error::Incompatible(_))));
}

#[test]
fn linear_rate_monte_carlo_curve() {
    let m = LevyModel::compound_poisson(1, atoms(), vec![0.3]).unwrap();
    let shape = Shape::interval(0.0, 2.0).unwrap();
    let times = geometric_grid(0.1, 0.001, 5).unwrap();
    let curve = mc_curve(&m, &shape, &times, McSettings { samples: 200_000, seed: 4 }).unwrap();
    let r = theorem3_from_curve(&m, &shape, &curve).unwrap();
    assert_eq!(r.method, Method::MonteCarlo);
    assert!((r.extrapolated - 2.3).abs() < 4.0 * r.extrapolation_error, "{r}");
}

#[test]
fn cauchy_log_rate() {
    let m = LevyModel::isotropic_stable(1, 1.0, 1.0).unwrap();
    let reports = check_bounds_envelope(&m, &interval(), &default_grid()).unwrap();
    let tags: Vec<ReportTag> = reports.iter().map(|r| r.tag).collect();
    assert_eq!(tags, vec![ReportTag::UpperEnvelope, ReportTag::LowerEnvelope, ReportTag::LogRate]);
    let log = &reports[2];
    assert_relative_eq!(log.theoretical.unwrap(), 2.0 / PI, max_relative = 1e-15);
    assert!(log.relative_error.unwrap() < 0.03, "{log}");
    assert!(reports.iter().all(|r| r.passes(0.03)));
}

#[test]
fn envelopes_for_stable_models() {
    let grid = default_grid();
    let m = LevyModel::isotropic_stable(1, 1.5, 1.0).unwrap();
    let r = check_bounds_envelope(&m, &interval(), &grid).unwrap();
    assert_eq!(r.len(), 2);
    assert!(r[0].extrapolated.is_finite() && r[1].extrapolated > 0.0);
    let half = LevyModel::isotropic_stable(1, 0.5, 1.0).unwrap();
    let r = check_bounds_envelope(&half, &interval(), &grid).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].tag, ReportTag::UpperEnvelope);
}

#[test]
fn stable_mean_closed_form() {
    // symmetric: E|S| = σ·(2/π)Γ(1 − 1/α)
    let (sp, _) = stable_1d_params(1.5, 1.0, 1.0);
    assert_relative_eq!(
        stable_abs_mean_exact(1.5, 1.0, 1.0),
        sp.powf(1.0 / 1.5) * 2.0 / PI * gamma(1.0 / 3.0),
        max_relative = 1e-14
    );
    for (c1, c2) in [(1.0, 1.0), (1.0, 0.0), (0.3, 1.0)] {
        let (m, se) = stable_abs_mean(1.5, c1, c2, 400_000, 21).unwrap();
        let exact = stable_abs_mean_exact(1.5, c1, c2);
        assert!((m - exact).abs() < 3.0 * se, "c1={c1} c2={c2}: {m} ± {se} vs {exact}");
    }
}

#[test]
fn skewed_mean_symmetric_matches_inverse_rate() {
    let times = geometric_grid(0.1, 1e-4, 7).unwrap();
    let r = verify_example5(1.5, 1.0, 1.0, &interval(), &times, 200_000, 5).unwrap();
    let joint = (r.extrapolation_error.powi(2) + r.theoretical_error.powi(2)).sqrt();
    assert!((r.extrapolated - r.theoretical.unwrap()).abs() < 3.0 * joint, "{r}");
    // the quadrature route: t^{−1/α}H = σ·ψ⁻(1/t)H → σ·2Γ(1/3)/π
    let (sp, _) = stable_1d_params(1.5, 1.0, 1.0);
    let route = sp.powf(1.0 / 1.5) * 2.0 * gamma(1.0 / 3.0) / PI;
    assert!((r.theoretical.unwrap() - route).abs() < 3.0 * r.theoretical_error, "{r} vs {route}");
}

#[test]
fn skewed_mean_fully_skewed_overlap_rate() {
    let times = geometric_grid(0.1, 1e-4, 7).unwrap();
    let hits = (0..20u64)
        .filter(|&seed| verify_example5(1.5, 1.0, 0.0, &interval(), &times, 100_000, 1000 + seed).unwrap().passes(0.0))
        .count();
    assert!(hits >= 19, "{hits}/20");
}

#[test]
fn skewed_mean_rejects_degenerate() {
    let times = geometric_grid(0.1, 1e-4, 7).unwrap();
    assert!(verify_example5(1.5, 0.0, 0.0, &interval(), &times, 10_000, 0).is_err());
    assert!(matches!(verify_example5(0.8, 1.0, 1.0, &interval(), &times, 10_000, 0), Err(Error::Incompatible(_))));
}

#[test]
fn report_serializes_with_tag_names() {
    let m = LevyModel::compound_poisson(1, vec![], vec![0.3]).unwrap();
    let r = verify_theorem3(&m, &interval(), &default_grid()).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("\"thm3\""));
    let back: AsymptoticsReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back.tag, r.tag);
    assert_eq!(serde_json::to_string(&back).unwrap(), json);
}
