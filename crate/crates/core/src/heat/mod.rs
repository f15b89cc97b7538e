//! Heat content `H(t)`, the jump perimeter `Per_X(Ω)` and the bound
//! integrands built from the Pruitt function.

use crate::error::{Error, Result};
use crate::geometry::{Shape, ShapeKind, ShapeSpec};
use crate::levy::{LevyMeasure, LevyModel, ModelSpec, Profile, TransitionLaw};
use crate::quad::{integrate, integrate_log, Tolerance};
use crate::special::{gamma, sphere_area};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

mod poisson;

/// A computed heat content with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatValue {
    pub value: f64,
    pub error: f64,
    /// The raw quadrature left `[0, |Ω|]` by more than 1e−9 and was clipped.
    pub clipped: bool,
}

impl HeatValue {
    fn clip(raw: f64, error: f64, volume: f64) -> HeatValue {
        let value = raw.clamp(0.0, volume);
        HeatValue { value, error, clipped: (value - raw).abs() > 1e-9 }
    }
}

const HEAT_TOL: Tolerance = Tolerance::new(1e-300, 1e-10);

fn check_dims(model: &LevyModel, shape: &Shape) -> Result<()> {
    if model.dim() != shape.dim() {
        return Err(Error::Incompatible(format!(
            "model lives in dimension {} but the shape in dimension {}",
            model.dim(),
            shape.dim()
        )));
    }
    Ok(())
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("time must be positive, got {t}")));
    }
    Ok(())
}

/// Geometric breakpoints `w·2^k` inside `(0, end)`.
fn dyadic_points(w: f64, end: f64) -> Vec<f64> {
    let mut pts = vec![0.0];
    let mut k = -12;
    loop {
        let x = w * 2f64.powi(k);
        if x >= end {
            break;
        }
        pts.push(x);
        k += 1;
    }
    pts.push(end);
    pts
}

/// `H(t) = ∫(g(0) − g(y)) p_t(dy)` by quadrature of the radial law of `X_t`
/// against the angular deficit of the covariance function `g`.
///
/// Models with a finite jump rate and no diffusion are handled by exact
/// enumeration of the jump counts instead.
pub fn heat_content_quadrature(model: &LevyModel, shape: &Shape, t: f64) -> Result<HeatValue> {
    check_time(t)?;
    check_dims(model, shape)?;
    let volume = shape.volume();
    if model.has_finite_activity() {
        return poisson::heat_content(model, shape, t);
    }
    let law = TransitionLaw::new(model, t)?;
    let diam = shape.diameter();
    let sigma = sphere_area(shape.dim());
    let mut failure = None;
    let est = integrate(
        |s: f64| {
            let d = match shape.spherical_deficit(s) {
                Ok(d) => d,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            };
            if d == 0.0 {
                0.0
            } else {
                law.radial_density(s) * d / sigma
            }
        },
        &dyadic_points(law.spatial_scale(), diam),
        HEAT_TOL,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let raw = est.value + volume * law.tail(diam);
    Ok(HeatValue::clip(raw, est.error, volume))
}

/// `H(t) = ∫₀^L P(|X_t| ≥ x) dx` for an interval of length `L`.
pub fn heat_content_tail_1d(model: &LevyModel, length: f64, t: f64) -> Result<HeatValue> {
    check_time(t)?;
    if model.dim() != 1 {
        return Err(Error::Incompatible("the tail formula needs a model on the line".into()));
    }
    if !(length >= 0.0 && length.is_finite()) {
        return Err(Error::InvalidShape(format!("interval length must be ≥ 0, got {length}")));
    }
    if length == 0.0 {
        return Ok(HeatValue { value: 0.0, error: 0.0, clipped: false });
    }
    if model.has_finite_activity() {
        return poisson::tail_heat_content(model, length, t);
    }
    let law = TransitionLaw::new(model, t)?;
    let est = integrate(|x: f64| law.tail(x), &dyadic_points(law.spatial_scale(), length), HEAT_TOL);
    Ok(HeatValue::clip(est.value, est.error, length))
}

/// Average of `|⟨n, u⟩|` over the unit sphere, halved: `Γ(d/2)/(2√π Γ((d+1)/2))`.
fn linear_deficit_factor(dim: usize) -> f64 {
    let d = dim as f64;
    gamma(d / 2.0) / (2.0 * PI.sqrt() * gamma((d + 1.0) / 2.0))
}

/// `Per_X(Ω) = ∫(g(0) − g(y)) ν(dy)`.
pub fn x_perimeter(model: &LevyModel, shape: &Shape) -> Result<f64> {
    check_dims(model, shape)?;
    if !model.has_finite_variation() {
        return Err(Error::Incompatible(format!(
            "Per_X diverges for {}: it needs no Gaussian part and ∫_{{‖y‖≤1}}‖y‖ν(dy) < ∞",
            model.kind().name()
        )));
    }
    measure_perimeter(model.levy_measure(), shape)
}

fn measure_perimeter(measure: &LevyMeasure, shape: &Shape) -> Result<f64> {
    let g0 = shape.volume();
    match measure {
        LevyMeasure::Zero => Ok(0.0),
        LevyMeasure::Atomic(atoms) => Ok(atoms.iter().map(|a| a.mass * (g0 - shape.covariance(&a.location))).sum()),
        LevyMeasure::Sum(parts) => parts.iter().map(|p| measure_perimeter(p, shape)).sum(),
        LevyMeasure::Radial { c1, alpha, profile, .. } => {
            let (c1, alpha) = (*c1, *alpha);
            let phi = move |s: f64| match profile {
                Some(p) => p.phi(alpha, s),
                None => s.powf(-alpha),
            };
            let kinks: &[f64] = profile.as_ref().map_or(&[], Profile::kinks);
            radial_perimeter(measure, shape, |s| c1 * phi(s) / s, kinks)
        }
        LevyMeasure::TwoSided { alpha, c_pos, c_neg } => {
            let (w, a) = (0.5 * (c_pos + c_neg), *alpha);
            radial_perimeter(measure, shape, |s| w * s.powf(-1.0 - a), &[])
        }
        LevyMeasure::Dyadic { alpha } => {
            if shape.dim() != 1 {
                return Err(Error::Unsupported("dyadic atoms live on the line".into()));
            }
            let mut total = 0.0;
            let mut k = 1;
            loop {
                let h = 0.5f64.powi(k);
                let term = 2f64.powf(k as f64 * alpha / 2.0) * 2.0 * (g0 - shape.covariance(&[h]));
                total += term;
                if (term <= 1e-16 * total && k > 8) || k > 3000 {
                    break;
                }
                k += 1;
            }
            Ok(total)
        }
    }
}

/// `∫₀^∞ w(s) D(s) ds` with `D` the spherical deficit, for a measure whose
/// polar form is `w(s) ds σ(du)`.
fn radial_perimeter(measure: &LevyMeasure, shape: &Shape, w: impl Fn(f64) -> f64, kinks: &[f64]) -> Result<f64> {
    let diam = shape.diameter();
    let per = shape.perimeter();
    let far = shape.volume() * measure.tail_mass(diam);
    let mut failure = None;
    let mut piece = |a: f64, b: f64| {
        integrate_log(
            |s| match shape.spherical_deficit(s) {
                Ok(d) => w(s) * d,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            a,
            b,
            kinks,
            Tolerance::new(1e-300, 1e-11),
        )
        .value
    };
    // below `linear` the deficit is replaced by its first-order term, which
    // avoids cancellation in g(0) − g(y) for polygons
    let slope = per * linear_deficit_factor(shape.dim());
    let linear = 1e-6 * diam;
    let mut eps = 1e-3 * diam;
    let mut body = piece(eps, diam);
    for _ in 0..200 {
        let bound = 0.5 * per * measure.radial_moment1(eps);
        if bound < 1e-8 * (body + far) {
            break;
        }
        let next = eps * 0.1;
        body += if next >= linear {
            piece(next, eps)
        } else {
            slope * (measure.radial_moment1(eps) - measure.radial_moment1(next))
        };
        eps = next;
    }
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(body + far + slope * measure.radial_moment1(eps))
}

fn bound_integral(model: &LevyModel, lo: f64, hi: f64) -> Result<f64> {
    if lo >= hi {
        return Ok(0.0);
    }
    let mut failure = None;
    let mut h = |r: f64| {
        model.pruitt_h(r).unwrap_or_else(|e| {
            failure.get_or_insert(e);
            0.0
        })
    };
    let v = if lo > 0.0 {
        integrate_log(&mut h, lo, hi, &[1.0], Tolerance::new(1e-300, 1e-10)).value
    } else {
        let pts: Vec<f64> = std::iter::once(0.0).chain((0..=40).rev().map(|k| hi * 0.5f64.powi(k))).collect();
        integrate(&mut h, &pts, Tolerance::new(1e-300, 1e-10)).value
    };
    match failure {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// `h⁻¹(1/t)`, read as 0 when `1/t` exceeds `sup h`.
fn pruitt_radius(model: &LevyModel, t: f64) -> Result<f64> {
    match model.pruitt_h_inverse(1.0 / t) {
        Ok(r) => Ok(r),
        Err(Error::OutOfRange(_)) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// `t·Per(Ω)·∫_{R/2 ∧ h⁻¹(1/t)}^{R} h(r) dr` with `R = 2|Ω|/Per(Ω)`.
pub fn theorem1_upper_bound(model: &LevyModel, shape: &Shape, t: f64) -> Result<f64> {
    check_time(t)?;
    check_dims(model, shape)?;
    let big_r = shape.inradius_scale();
    let lo = pruitt_radius(model, t)?.min(0.5 * big_r);
    Ok(t * shape.perimeter() * bound_integral(model, lo, big_r)?)
}

/// `t·Per(Ω)·∫_{h⁻¹(1/t)}^{R} h(r) dr`, for isotropic jump models whose
/// Pruitt function is not integrable at the origin.
pub fn lower_bound_integral(model: &LevyModel, shape: &Shape, t: f64) -> Result<f64> {
    check_time(t)?;
    check_dims(model, shape)?;
    let admissible = model.is_isotropic()
        && model.gaussian_coefficient() == 0.0
        && !model.has_finite_activity()
        && model.index().is_some_and(|a| (1.0..2.0).contains(&a));
    if !admissible {
        return Err(Error::Incompatible(format!(
            "the lower bound needs an isotropic pure-jump model with index in [1, 2); {} does not qualify",
            model.kind().name()
        )));
    }
    let big_r = shape.inradius_scale();
    let lo = pruitt_radius(model, t)?;
    Ok(t * shape.perimeter() * bound_integral(model, lo, big_r)?)
}

/// How a heat-content value is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Quadrature,
    Tail1d,
    MonteCarlo,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Tail1d => "tail1d",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

/// Monte Carlo settings used when [`Method::MonteCarlo`] is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McSettings {
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatSample {
    pub t: f64,
    pub value: f64,
    pub error: f64,
    pub method: Method,
}

/// Heat content sampled along a time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatCurve {
    pub model: ModelSpec,
    pub shape: ShapeSpec,
    /// `R = 2|Ω|/Per(Ω)`
    pub inradius_scale: f64,
    /// Sorted by decreasing `t`.
    pub samples: Vec<HeatSample>,
}

/// One heat-content value by the requested method.
pub fn heat_content(model: &LevyModel, shape: &Shape, t: f64, method: Method, mc: Option<McSettings>) -> Result<HeatSample> {
    let (value, error) = match method {
        Method::Quadrature => {
            let v = heat_content_quadrature(model, shape, t)?;
            (v.value, v.error)
        }
        Method::Tail1d => {
            let length = interval_length(shape)?;
            let v = heat_content_tail_1d(model, length, t)?;
            (v.value, v.error)
        }
        Method::MonteCarlo => {
            let mc = mc.ok_or_else(|| Error::InvalidArgument("Monte Carlo needs sample count and seed".into()))?;
            let e = crate::sampling::mc_heat_content(model, shape, t, mc.samples, mc.seed)?;
            (e.value, e.stderr)
        }
    };
    Ok(HeatSample { t, value, error, method })
}

fn interval_length(shape: &Shape) -> Result<f64> {
    match shape.kind() {
        ShapeKind::Interval { a, b } => Ok(b - a),
        _ => Err(Error::Incompatible("the tail formula needs an interval".into())),
    }
}

impl HeatCurve {
    /// Evaluate `H` at every `t` (parallel across times for deterministic methods).
    pub fn compute(model: &LevyModel, shape: &Shape, times: &[f64], method: Method, mc: Option<McSettings>) -> Result<HeatCurve> {
        check_dims(model, shape)?;
        let mut ts = times.to_vec();
        ts.sort_by(|a, b| b.total_cmp(a));
        ts.dedup();
        let samples: Result<Vec<HeatSample>> = if method == Method::MonteCarlo {
            ts.iter().map(|&t| heat_content(model, shape, t, method, mc)).collect()
        } else {
            ts.par_iter().map(|&t| heat_content(model, shape, t, method, mc)).collect()
        };
        Ok(HeatCurve {
            model: model.spec(),
            shape: shape.spec(),
            inradius_scale: shape.inradius_scale(),
            samples: samples?,
        })
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.value).collect()
    }
}

#[cfg(test)]
mod tests;
