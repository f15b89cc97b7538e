//! The end-to-end acceptance suite, shared by the `acceptance` test target
//! and the `selftest` subcommand.

use crate::asymptotics::{
    check_bounds_envelope, geometric_grid, mc_curve, theorem3_from_curve, verify_theorem2, verify_theorem3,
    ReportTag,
};
use crate::error::Result;
use crate::geometry::Shape;
use crate::heat::{heat_content_quadrature, x_perimeter, McSettings};
use crate::levy::{Atom, LevyModel, Profile, TransitionLaw};
use crate::quad::{integrate, Tolerance};
use crate::sampling::mc_heat_content;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::time::Instant;

/// Wall-clock budget for the timed criteria.
pub const TIME_LIMIT_SECS: f64 = 60.0;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "AC{} {} [{:.1}s] {}: {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.seconds,
            self.title,
            self.detail
        )
    }
}

type Check = fn() -> Result<(bool, String)>;

/// `(id, title, check)` for every criterion.
pub fn criteria() -> Vec<(u8, &'static str, Check)> {
    vec![
        (1, "Brownian disk: t^(-1/2) H(t) -> 2 sqrt(pi)", brownian_disk as Check),
        (2, "stable 1.5 interval: psi^-(1/t) H(t) -> 2 Gamma(1/3)/pi", stable_interval),
        (3, "Cauchy interval: closed form and t ln(1/t) rate", cauchy_interval),
        (4, "stable 0.5 interval: t^(-1) H(t) -> Per_X = 8", finite_variation_stable),
        (5, "drift plus atoms: t^(-1) H(t) -> Per_X + v = 2.3", drift_plus_atoms),
        (6, "property suite over the catalogue", property_suite_check),
        (7, "envelope ratios over t in [1e-8, 1e-1]", envelopes),
        (8, "Monte Carlo against quadrature, 20 seeds", cross_validation),
    ]
}

pub fn run(id: u8) -> Option<Outcome> {
    let (id, title, check) = criteria().into_iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let result = check();
    let seconds = start.elapsed().as_secs_f64();
    let (pass, detail) = match result {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Some(Outcome { id, title, pass, detail, seconds })
}

pub fn run_all() -> Vec<Outcome> {
    criteria().iter().filter_map(|c| run(c.0)).collect()
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<(T, f64)> {
    let start = Instant::now();
    let v = f()?;
    Ok((v, start.elapsed().as_secs_f64()))
}

fn interval(length: f64) -> Shape {
    Shape::interval(0.0, length).expect("valid interval")
}

fn brownian_disk() -> Result<(bool, String)> {
    let (r, secs) = timed(|| {
        let model = LevyModel::brownian(2, 1.0)?;
        let disk = Shape::ball(&[0.0, 0.0], 1.0)?;
        verify_theorem2(&model, &disk, &geometric_grid(1e-2, 1e-7, 11)?)
    })?;
    let target = 2.0 * PI.sqrt();
    let rel = (r.extrapolated - target).abs() / target;
    Ok((rel < 0.01 && secs < TIME_LIMIT_SECS, format!("{:.8} vs {target:.8}, rel {rel:.2e}, {secs:.1}s", r.extrapolated)))
}

fn stable_interval() -> Result<(bool, String)> {
    let (r, secs) = timed(|| {
        let model = LevyModel::isotropic_stable(1, 1.5, 1.0)?;
        verify_theorem2(&model, &interval(1.0), &geometric_grid(1e-1, 1e-8, 15)?)
    })?;
    let target = 2.0 * crate::special::gamma(1.0 / 3.0) / PI;
    let rel = (r.extrapolated - target).abs() / target;
    Ok((rel < 0.02 && secs < TIME_LIMIT_SECS, format!("{:.8} vs {target:.8}, rel {rel:.2e}, {secs:.1}s", r.extrapolated)))
}

/// `L − (2L/π)arctan(L/t) + (t/π)ln(1 + L²/t²)`.
pub fn cauchy_heat_content(length: f64, t: f64) -> f64 {
    let q = length / t;
    // arctan(q) = π/2 − arctan(1/q) keeps the leading cancellation exact
    2.0 * length / PI * (1.0 / q).atan() + t / PI * q.powi(2).ln_1p()
}

fn cauchy_interval() -> Result<(bool, String)> {
    let model = LevyModel::isotropic_stable(1, 1.0, 1.0)?;
    let shape = interval(1.0);
    let mut worst: f64 = 0.0;
    for t in [1e-2, 1e-4, 1e-6] {
        let h = heat_content_quadrature(&model, &shape, t)?.value;
        let exact = cauchy_heat_content(1.0, t);
        worst = worst.max((h - exact).abs() / exact);
    }
    let reports = check_bounds_envelope(&model, &shape, &geometric_grid(1e-1, 1e-8, 15)?)?;
    let log = reports.iter().find(|r| r.tag == ReportTag::LogRate).expect("index-1 model");
    let rel = log.relative_error.unwrap_or(f64::INFINITY);
    Ok((
        worst < 1e-7 && rel < 0.03,
        format!("closed-form rel. error {worst:.2e}; H/(t ln 1/t) -> {:.6} vs 2/pi, rel {rel:.2e}", log.extrapolated),
    ))
}

fn finite_variation_stable() -> Result<(bool, String)> {
    let model = LevyModel::isotropic_stable_c1(1, 0.5, 1.0)?;
    let shape = interval(1.0);
    let per_x = x_perimeter(&model, &shape)?;
    let times = geometric_grid(1e-1, 1e-3, 5)?;
    let curve = mc_curve(&model, &shape, &times, McSettings { samples: 1_000_000, seed: 2024 })?;
    let mc = theorem3_from_curve(&model, &shape, &curve)?;
    let quad = verify_theorem3(&model, &shape, &geometric_grid(1e-1, 1e-7, 13)?)?;
    let rel_mc = (mc.extrapolated - 8.0).abs() / 8.0;
    let rel_x = (per_x - 8.0).abs() / 8.0;
    Ok((
        rel_mc < 0.02 && rel_x < 0.02,
        format!(
            "Monte Carlo {:.4} ± {:.4} (rel {rel_mc:.2e}); x_perimeter {per_x:.10}; quadrature {:.6}",
            mc.extrapolated, mc.extrapolation_error, quad.extrapolated
        ),
    ))
}

fn drift_plus_atoms() -> Result<(bool, String)> {
    let atoms = vec![Atom { location: vec![1.0], mass: 1.0 }, Atom { location: vec![-1.0], mass: 1.0 }];
    let model = LevyModel::compound_poisson(1, atoms, vec![0.3])?;
    let r = verify_theorem3(&model, &interval(2.0), &geometric_grid(1e-1, 1e-7, 13)?)?;
    let rel = (r.extrapolated - 2.3).abs() / 2.3;
    Ok((
        rel < 0.01 && r.theoretical == Some(2.3),
        format!("{:.10} vs 2.3 (theory {:?}), rel {rel:.2e}", r.extrapolated, r.theoretical),
    ))
}

/// One instance of every catalogue kind, in dimensions 1 and 2 where the
/// kind allows it.
pub fn catalogue_models() -> Vec<(String, LevyModel)> {
    let atoms = vec![Atom { location: vec![1.0], mass: 1.0 }, Atom { location: vec![-1.0], mass: 1.0 }];
    let mut out: Vec<(String, Result<LevyModel>)> = Vec::new();
    for dim in [1, 2] {
        out.push((format!("brownian d={dim}"), LevyModel::brownian(dim, 0.7)));
        for alpha in [0.5, 1.0, 1.5] {
            out.push((format!("isotropic_stable α={alpha} d={dim}"), LevyModel::isotropic_stable(dim, alpha, 1.0)));
        }
        out.push((format!("brownian_plus_stable d={dim}"), LevyModel::brownian_plus_stable(dim, 0.5, 1.0, 1.2)));
        for profile in [Profile::Truncated, Profile::Tempered, Profile::Lamperti { delta: 0.5 }, Profile::Layered { alpha1: 0.6 }]
        {
            out.push((
                format!("radial_density {} d={dim}", profile.name()),
                LevyModel::radial(dim, profile, 1.3, 1.0),
            ));
        }
    }
    out.push(("discrete_dyadic α=1".into(), LevyModel::discrete_dyadic(1.0, 1.0)));
    out.push(("asym_stable_1d α=1.5".into(), LevyModel::asym_stable_1d(1.5, 1.0, 0.3, 0.2)));
    out.push(("asym_stable_1d α=0.7".into(), LevyModel::asym_stable_1d(0.7, 0.5, 1.0, 0.0)));
    out.push(("compound_poisson_drift".into(), LevyModel::compound_poisson(1, atoms, vec![0.3])));
    out.push((
        "compound_poisson_drift d=2".into(),
        LevyModel::compound_poisson(
            2,
            vec![Atom { location: vec![0.5, 0.0], mass: 2.0 }, Atom { location: vec![-0.5, 0.0], mass: 2.0 }],
            vec![0.0, 0.0],
        ),
    ));
    out.into_iter().map(|(n, m)| (n, m.expect("catalogue instance"))).collect()
}

fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    let n = ((hi / lo).log10() * per_decade as f64).round() as usize;
    let mut g = geometric_grid(hi, lo, n + 1).expect("valid grid");
    g.reverse();
    g
}

/// Problems found by the property sweep for one model; empty when all hold.
pub fn model_properties(model: &LevyModel) -> Vec<String> {
    let mut bad = Vec::new();
    let d = model.dim() as f64;
    let radii = log_grid(1e-4, 1e4, 8);

    // h: positive, non-increasing, doubling
    let h: Vec<f64> = radii.iter().map(|&r| model.pruitt_h(r).unwrap_or(f64::NAN)).collect();
    for (i, (&r, &v)) in radii.iter().zip(&h).enumerate() {
        if !(v > 0.0 && v.is_finite()) {
            bad.push(format!("h({r:e}) = {v}"));
            continue;
        }
        if i > 0 && v > h[i - 1] * (1.0 + 1e-12) {
            bad.push(format!("h increases at {r:e}"));
        }
        let h2 = model.pruitt_h(2.0 * r).unwrap_or(f64::NAN);
        if !(h2 >= v / 4.0 * (1.0 - 1e-12)) {
            bad.push(format!("doubling fails at {r:e}: h(2r) = {h2:e}, h(r) = {v:e}"));
        }
    }
    if !model.is_isotropic() {
        return bad;
    }

    // ψ, ψ* and the sandwich
    if model.psi(0.0).ok() != Some(0.0) || model.psi_star(0.0).ok() != Some(0.0) {
        bad.push("ψ(0) ≠ 0".into());
    }
    let mut last = 0.0;
    for &r in &radii {
        let (Ok(p), Ok(ps)) = (model.psi(r), model.psi_star(r)) else {
            bad.push(format!("ψ fails at {r:e}"));
            continue;
        };
        if ps < p * (1.0 - 1e-12) || ps < last * (1.0 - 1e-12) {
            bad.push(format!("ψ* not a running sup at {r:e}"));
        }
        last = ps;
        let h = model.pruitt_h(1.0 / r).unwrap_or(f64::NAN);
        if !(0.5 * ps <= h * (1.0 + 1e-9) && h <= 8.0 * (1.0 + 2.0 * d) * ps * (1.0 + 1e-9)) {
            bad.push(format!("sandwich fails at r = {:e}: h = {h:e}, ψ* = {ps:e}", 1.0 / r));
        }
    }

    // generalized inverse contracts
    let top = model.psi_star(1e6).unwrap_or(0.0);
    for v in log_grid(1e-3, 1e5, 4).into_iter().filter(|v| *v < 0.999 * top) {
        match model.psi_inverse(v) {
            Ok(x) => {
                let back = model.psi_star(x).unwrap_or(f64::NAN);
                if !(back >= v * (1.0 - 1e-10)) {
                    bad.push(format!("ψ*(ψ⁻({v:e})) = {back:e} < v"));
                }
            }
            Err(e) => bad.push(format!("ψ⁻({v:e}): {e}")),
        }
    }
    for &r in radii.iter().filter(|r| **r <= 1e3) {
        let ps = model.psi_star(r).unwrap_or(f64::NAN);
        if ps > 0.0 && ps < 0.999 * top {
            let x = model.psi_inverse(ps).unwrap_or(f64::NAN);
            if !(x <= r * (1.0 + 1e-10)) {
                bad.push(format!("ψ⁻(ψ*({r:e})) = {x:e} > r"));
            }
        }
    }
    bad
}

/// `∫₀^∞ f_{‖X_t‖} = 1` and `p_t ≥ 0` on sampled radii, for models with a
/// density in dimension 1 or 2.
pub fn density_normalization(model: &LevyModel, t: f64) -> Vec<String> {
    let mut bad = Vec::new();
    let law = match TransitionLaw::new(model, t) {
        Ok(l) => l,
        Err(_) => return bad,
    };
    let scale = law.spatial_scale();
    let cut = 64.0 * scale;
    let grid = |lo: i32| {
        let mut pts = vec![0.0];
        pts.extend((lo..=6).map(|k| scale * 2f64.powi(k)).filter(|x| *x < cut));
        pts.push(cut);
        pts
    };
    let mass = integrate(|s| law.radial_density(s), &grid(-4), Tolerance::new(1e-9, 1e-8)).value + law.tail(cut);
    if (mass - 1.0).abs() > 1e-6 {
        bad.push(format!("t = {t:e}: total mass {mass:.9}"));
    }
    for s in grid(-20) {
        let p = law.radial_density(s);
        if !(p >= -1e-9) {
            bad.push(format!("t = {t:e}: density {p:e} at {s:e}"));
        }
    }
    bad
}

/// Covariance-function invariants for a fixed set of shapes.
pub fn shape_properties() -> Vec<String> {
    let mut bad = Vec::new();
    let shapes = vec![
        ("interval", Shape::interval(-0.3, 1.2)),
        ("square", Shape::rect(&[1.0, 2.0])),
        ("disk", Shape::ball(&[0.2, -0.1], 0.8)),
        ("triangle", Shape::polygon(&[[0.0, 0.0], [2.0, 0.0], [0.5, 1.5]])),
        ("cube", Shape::rect(&[1.0, 1.0, 0.5])),
    ];
    for (name, shape) in shapes {
        let shape = shape.expect("valid shape");
        let dim = shape.dim();
        let g = shape.covariance_fn();
        let dirs: Vec<Vec<f64>> = (0..6)
            .map(|k| {
                let a = 0.37 + 1.1 * k as f64;
                let mut u = vec![a.cos(), a.sin(), (0.3 * a).cos()];
                u.truncate(dim);
                let n = u.iter().map(|x| x * x).sum::<f64>().sqrt();
                u.iter().map(|x| x / n).collect()
            })
            .collect();
        for u in &dirs {
            for r in [0.01, 0.1, 0.5, 1.3] {
                let y: Vec<f64> = u.iter().map(|x| r * x).collect();
                let neg: Vec<f64> = y.iter().map(|x| -x).collect();
                let (a, b) = (g.eval(&y), g.eval(&neg));
                if (a - b).abs() > 1e-12 * shape.volume() {
                    bad.push(format!("{name}: g not symmetric at {y:?}"));
                }
                let z: Vec<f64> = y.iter().map(|x| x * 1.07).collect();
                if (g.eval(&z) - a).abs() > g.lipschitz_bound * 0.07 * r * (1.0 + 1e-9) + 1e-14 {
                    bad.push(format!("{name}: Lipschitz bound fails near {y:?}"));
                }
            }
            // (g(0) − g(ru))/r → V_u/2
            let v = shape.directional_variation(u).unwrap_or(f64::NAN);
            let r = 1e-7;
            let y: Vec<f64> = u.iter().map(|x| r * x).collect();
            let slope = shape.deficit(&y) / r;
            if (slope - 0.5 * v).abs() > 1e-5 * v.max(1.0) {
                bad.push(format!("{name}: slope {slope} vs V_u/2 = {}", 0.5 * v));
            }
        }
    }
    bad
}

/// All property checks; returns the failures.
pub fn property_suite() -> Vec<String> {
    let mut bad = shape_properties();
    let models = catalogue_models();
    let found: Vec<Vec<String>> = models
        .par_iter()
        .map(|(name, m)| {
            let mut b = model_properties(m);
            for t in [0.03, 0.1] {
                b.extend(density_normalization(m, t));
            }
            b.into_iter().map(|e| format!("{name}: {e}")).collect()
        })
        .collect();
    bad.extend(found.into_iter().flatten());
    bad
}

fn property_suite_check() -> Result<(bool, String)> {
    let bad = property_suite();
    let n = catalogue_models().len();
    if bad.is_empty() {
        Ok((true, format!("{n} models and 5 shapes, no violations")))
    } else {
        Ok((false, format!("{} violations, first: {}", bad.len(), bad[0])))
    }
}

fn envelopes() -> Result<(bool, String)> {
    let times = geometric_grid(1e-1, 1e-8, 15)?;
    let mut ok = true;
    let mut notes = Vec::new();
    for alpha in [0.5, 1.0, 1.5] {
        let model = LevyModel::isotropic_stable(1, alpha, 1.0)?;
        let reports = check_bounds_envelope(&model, &interval(1.0), &times)?;
        let upper = reports.iter().find(|r| r.tag == ReportTag::UpperEnvelope);
        let lower = reports.iter().find(|r| r.tag == ReportTag::LowerEnvelope);
        let sup = upper.map_or(f64::NAN, |r| r.extrapolated);
        ok &= sup.is_finite() && sup > 0.0;
        let mut note = format!("α={alpha}: sup H/U = {sup:.4}");
        if alpha >= 1.0 {
            let inf = lower.map_or(f64::NAN, |r| r.extrapolated);
            ok &= inf.is_finite() && inf > 0.0;
            note.push_str(&format!(", inf H/L = {inf:.4}"));
        }
        notes.push(note);
    }
    Ok((ok, notes.join("; ")))
}

/// Fraction of seeds with `|MC − quadrature| ≤ 3·stderr`, per case.
pub fn cross_validation_rates(seeds: u64, samples: u64) -> Result<Vec<(&'static str, f64, usize)>> {
    let cases: Vec<(&'static str, LevyModel, Shape, f64)> = vec![
        ("Cauchy interval", LevyModel::isotropic_stable(1, 1.0, 1.0)?, interval(1.0), 0.01),
        ("Gaussian disk", LevyModel::brownian(2, 1.0)?, Shape::ball(&[0.0, 0.0], 1.0)?, 0.01),
        ("stable-1.5 interval", LevyModel::isotropic_stable(1, 1.5, 1.0)?, interval(1.0), 0.01),
    ];
    cases
        .into_iter()
        .map(|(name, model, shape, t)| {
            let q = heat_content_quadrature(&model, &shape, t)?.value;
            let hits = (0..seeds)
                .map(|s| mc_heat_content(&model, &shape, t, samples, 7000 + s))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|e| (e.value - q).abs() <= 3.0 * e.stderr)
                .count();
            Ok((name, hits as f64 / seeds as f64, hits))
        })
        .collect()
}

fn cross_validation() -> Result<(bool, String)> {
    let rates = cross_validation_rates(20, 100_000)?;
    let ok = rates.iter().all(|r| r.1 >= 0.95);
    let notes: Vec<String> = rates.iter().map(|(n, _, h)| format!("{n} {h}/20")).collect();
    Ok((ok, notes.join(", ")))
}
