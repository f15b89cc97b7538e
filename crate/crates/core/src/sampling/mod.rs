//! Monte Carlo sampling of increments and a direct heat-content estimator.

use crate::error::{Error, Result};
use crate::geometry::{Shape, ShapeSpec};
use crate::levy::{asym_centre, stable_1d_params, LevyMeasure, LevyModel, ModelKind, ModelSpec, Profile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Poisson, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

/// Samples per independent random stream.
pub const BLOCK: u64 = 4096;

/// A reproducible random stream identified by `(root seed, stream index)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RngStream {
    pub seed: u64,
    pub index: u64,
}

impl RngStream {
    pub fn new(seed: u64, index: u64) -> RngStream {
        RngStream { seed, index }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(self.index);
        r
    }
}

/// Monte Carlo heat-content estimate with provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
    pub t: f64,
    pub model: ModelSpec,
    pub shape: ShapeSpec,
}

/// One draw of a stable law with characteristic function
/// `exp(−σ^α|ξ|^α(1 − iβ sgn(ξ) tan(πα/2)))` (α ≠ 1) or
/// `exp(−σ|ξ|(1 + iβ(2/π) sgn(ξ) ln|ξ|))` (α = 1).
pub fn sample_stable_1d<R: Rng + ?Sized>(alpha: f64, beta: f64, scale: f64, rng: &mut R) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 2.0) || !(-1.0..=1.0).contains(&beta) || !(scale >= 0.0 && scale.is_finite()) {
        return Err(Error::InvalidArgument(format!("stable parameters out of range: α={alpha}, β={beta}, scale={scale}")));
    }
    Ok(stable_draw(alpha, beta, scale, rng))
}

fn stable_draw<R: Rng + ?Sized>(alpha: f64, beta: f64, scale: f64, rng: &mut R) -> f64 {
    if alpha == 2.0 {
        let z: f64 = rng.sample(StandardNormal);
        return scale * std::f64::consts::SQRT_2 * z;
    }
    let (v, w) = loop {
        let v = PI * (rng.random::<f64>() - 0.5);
        let w: f64 = rng.sample(Exp1);
        if v > -FRAC_PI_2 && w > 0.0 {
            break (v, w);
        }
    };
    if alpha == 1.0 {
        let a = FRAC_PI_2 + beta * v;
        let x = (a * v.tan() - beta * (FRAC_PI_2 * w * v.cos() / a).ln()) / FRAC_PI_2;
        return scale * x + beta * scale.ln() * scale / FRAC_PI_2;
    }
    let tan = (PI * alpha / 2.0).tan();
    let b = (beta * tan).atan() / alpha;
    let s = (1.0 + beta * beta * tan * tan).powf(1.0 / (2.0 * alpha));
    let x = s * (alpha * (v + b)).sin() / v.cos().powf(1.0 / alpha)
        * ((v - alpha * (v + b)).cos() / w).powf((1.0 - alpha) / alpha);
    scale * x
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R, sd: f64) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    sd * z
}

fn unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R, out: &mut [f64]) {
    match dim {
        1 => out[0] = if rng.random::<bool>() { 1.0 } else { -1.0 },
        2 => {
            let th = 2.0 * PI * rng.random::<f64>();
            out[0] = th.cos();
            out[1] = th.sin();
        }
        _ => loop {
            let mut n2 = 0.0;
            for o in out.iter_mut() {
                *o = rng.sample(StandardNormal);
                n2 += *o * *o;
            }
            if n2 > 1e-300 {
                let n = n2.sqrt();
                out.iter_mut().for_each(|o| *o /= n);
                break;
            }
        },
    }
}

/// Jumps with radius in `(lo, hi)` drawn from `weight·s^{−1−a} ds`, thinned
/// by `accept(s) ∈ [0, 1]`.
#[derive(Debug, Clone)]
struct ParetoPiece {
    lo: f64,
    hi: f64,
    a: f64,
    count: Option<Poisson<f64>>,
    profile: Option<(Profile, f64, f64)>,
}

impl ParetoPiece {
    fn new(weight: f64, a: f64, lo: f64, hi: f64, t: f64, profile: Option<(Profile, f64, f64)>) -> Result<ParetoPiece> {
        let mass = weight * (lo.powf(-a) - if hi.is_finite() { hi.powf(-a) } else { 0.0 }) / a;
        let mean = mass * t;
        let count = if mean > 0.0 {
            Some(Poisson::new(mean).map_err(|e| Error::Numerical(format!("jump count law: {e}")))?)
        } else {
            None
        };
        Ok(ParetoPiece { lo, hi, a, count, profile })
    }

    fn radius<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        let top = if self.hi.is_finite() { (self.lo / self.hi).powf(self.a) } else { 0.0 };
        self.lo * (1.0 - u * (1.0 - top)).powf(-1.0 / self.a)
    }

    fn add<R: Rng + ?Sized>(&self, dim: usize, rng: &mut R, out: &mut [f64], dir: &mut [f64]) {
        let Some(count) = &self.count else { return };
        let n = count.sample(rng) as u64;
        for _ in 0..n {
            let s = self.radius(rng);
            if let Some((p, alpha, bound)) = self.profile {
                let keep = p.phi(alpha, s) * s.powf(alpha) / bound;
                if rng.random::<f64>() >= keep {
                    continue;
                }
            }
            unit_vector(dim, rng, dir);
            for (o, u) in out.iter_mut().zip(dir.iter()) {
                *o += s * u;
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Part {
    Gaussian { sd: f64 },
    /// `√A·G` with `A` positive (α/2)-stable and `G ~ N(0, 2I)`; in d = 1 a direct stable draw.
    Stable { alpha: f64, scale: f64 },
    Skewed { alpha: f64, beta: f64, scale: f64, shift: f64 },
    Jumps(Vec<ParetoPiece>),
    DyadicLevels(Vec<(f64, Poisson<f64>)>),
    Atoms { rate: Option<Poisson<f64>>, cumulative: Vec<f64>, atoms: Vec<Vec<f64>> },
    Drift(Vec<f64>),
}

/// Pre-computed sampler for `X_t`.
#[derive(Debug, Clone)]
pub struct IncrementSampler {
    dim: usize,
    parts: Vec<Part>,
    /// Small-jump cutoff for approximate samplers.
    pub cutoff: Option<f64>,
}

/// Largest cutoff the jump-count budget allows, solving `t·ν(‖y‖ > ε) = budget`.
fn cutoff_for_budget(measure: &LevyMeasure, t: f64, budget: f64) -> f64 {
    let (mut lo, mut hi) = (1e-300f64, 1e300f64);
    for _ in 0..2000 {
        let mid = (lo * hi).sqrt();
        if !(mid > lo && mid < hi) || hi / lo < 1.0 + 1e-9 {
            break;
        }
        if t * measure.tail_mass(mid) > budget {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

const JUMP_BUDGET: f64 = 1024.0;

impl IncrementSampler {
    pub fn new(model: &LevyModel, t: f64) -> Result<IncrementSampler> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(format!("time must be positive, got {t}")));
        }
        let dim = model.dim();
        let mut parts = Vec::new();
        let mut cutoff = None;
        match model.kind() {
            ModelKind::Brownian { eta } => parts.push(Part::Gaussian { sd: (2.0 * eta * t).sqrt() }),
            ModelKind::IsotropicStable { alpha, c } => {
                if *alpha == 2.0 {
                    parts.push(Part::Gaussian { sd: (2.0 * c * t).sqrt() });
                } else {
                    parts.push(Part::Stable { alpha: *alpha, scale: (c * t).powf(1.0 / alpha) });
                }
            }
            ModelKind::BrownianPlusStable { eta, c, alpha } => {
                parts.push(Part::Gaussian { sd: (2.0 * eta * t).sqrt() });
                parts.push(Part::Stable { alpha: *alpha, scale: (c * t).powf(1.0 / alpha) });
            }
            ModelKind::RadialDensity { profile, alpha, c1 } => {
                let measure = model.levy_measure();
                // spatial scale of X_t sets the acceptable substitute variance
                let r_t = model.pruitt_h_inverse(1.0 / t).unwrap_or(1.0);
                let target = 1e-6 * r_t * r_t;
                let (mut lo, mut hi) = (1e-300f64, r_t.max(1e-300));
                for _ in 0..2000 {
                    let mid = (lo * hi).sqrt();
                    if !(mid > lo && mid < hi) || hi / lo < 1.0 + 1e-9 {
                        break;
                    }
                    if t * measure.radial_moment2(mid) > target {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                let eps = lo.max(cutoff_for_budget(measure, t, JUMP_BUDGET));
                cutoff = Some(eps);
                let var = t * measure.radial_moment2(eps) / dim as f64;
                parts.push(Part::Gaussian { sd: var.sqrt() });
                let w = c1 * crate::special::sphere_area(dim);
                let (alpha, p) = (*alpha, *profile);
                let mut pieces = Vec::new();
                match p {
                    Profile::Truncated => {
                        if eps < 1.0 {
                            pieces.push(ParetoPiece::new(w, alpha, eps, 1.0, t, None)?);
                        }
                    }
                    Profile::Layered { alpha1 } => {
                        if eps < 1.0 {
                            pieces.push(ParetoPiece::new(w, alpha, eps, 1.0, t, None)?);
                        }
                        pieces.push(ParetoPiece::new(w, alpha1, eps.max(1.0), f64::INFINITY, t, None)?);
                    }
                    Profile::Tempered | Profile::Lamperti { .. } => {
                        let bound = envelope_bound(p, alpha);
                        pieces.push(ParetoPiece::new(w * bound, alpha, eps, f64::INFINITY, t, Some((p, alpha, bound)))?);
                    }
                }
                parts.push(Part::Jumps(pieces));
            }
            ModelKind::DiscreteDyadic { alpha, c } => {
                parts.push(Part::Stable { alpha: *alpha, scale: (c * t).powf(1.0 / alpha) });
                let mut levels = Vec::new();
                let mut rest = 0.0;
                for k in 1..=200 {
                    let h = 0.5f64.powi(k);
                    let mean = t * 2f64.powf(k as f64 * alpha / 2.0);
                    if k <= 64 {
                        let law = Poisson::new(mean).map_err(|e| Error::Numerical(format!("jump count law: {e}")))?;
                        levels.push((h, law));
                    } else {
                        rest += 2.0 * mean * h * h;
                    }
                }
                parts.push(Part::DyadicLevels(levels));
                parts.push(Part::Gaussian { sd: rest.sqrt() });
            }
            ModelKind::AsymStable1d { alpha, c1, c2, gamma } => {
                let (sig_a, beta) = stable_1d_params(*alpha, *c1, *c2);
                let shift = asym_centre(*alpha, *c1, *c2, *gamma) * t;
                let scale = if *alpha == 1.0 { sig_a * t } else { (sig_a * t).powf(1.0 / alpha) };
                parts.push(Part::Skewed { alpha: *alpha, beta, scale, shift });
            }
            ModelKind::CompoundPoissonDrift { atoms, velocity } => {
                parts.push(Part::Drift(velocity.iter().map(|v| v * t).collect()));
                let rate: f64 = atoms.iter().map(|a| a.mass).sum();
                let mut acc = 0.0;
                let cumulative = atoms
                    .iter()
                    .map(|a| {
                        acc += a.mass / rate;
                        acc
                    })
                    .collect();
                let law = if rate > 0.0 {
                    Some(Poisson::new(rate * t).map_err(|e| Error::Numerical(format!("jump count law: {e}")))?)
                } else {
                    None
                };
                parts.push(Part::Atoms {
                    rate: law,
                    cumulative,
                    atoms: atoms.iter().map(|a| a.location.clone()).collect(),
                });
            }
        }
        Ok(IncrementSampler { dim, parts, cutoff })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Write one draw of `X_t` into `out` (length `dim`).
    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        let mut dir = [0.0; 3];
        let dir = &mut dir[..self.dim];
        for part in &self.parts {
            match part {
                Part::Gaussian { sd } => {
                    if *sd > 0.0 {
                        out.iter_mut().for_each(|o| *o += gaussian(rng, *sd));
                    }
                }
                Part::Stable { alpha, scale } => {
                    if self.dim == 1 {
                        out[0] += stable_draw(*alpha, 0.0, *scale, rng);
                    } else {
                        let a_scale = scale.powi(2) * (PI * alpha / 4.0).cos().powf(2.0 / alpha);
                        let a = stable_draw(alpha / 2.0, 1.0, a_scale, rng).max(0.0);
                        let sd = (2.0 * a).sqrt();
                        out.iter_mut().for_each(|o| *o += gaussian(rng, sd));
                    }
                }
                Part::Skewed { alpha, beta, scale, shift } => out[0] += stable_draw(*alpha, *beta, *scale, rng) + shift,
                Part::Jumps(pieces) => pieces.iter().for_each(|p| p.add(self.dim, rng, out, dir)),
                Part::DyadicLevels(levels) => {
                    for (h, law) in levels {
                        let up = law.sample(rng);
                        let down = law.sample(rng);
                        out[0] += h * (up - down);
                    }
                }
                Part::Atoms { rate, cumulative, atoms } => {
                    if let Some(law) = rate {
                        let n = law.sample(rng) as u64;
                        for _ in 0..n {
                            let u: f64 = rng.random();
                            let i = cumulative.partition_point(|&c| c <= u).min(atoms.len() - 1);
                            out.iter_mut().zip(&atoms[i]).for_each(|(o, y)| *o += y);
                        }
                    }
                }
                Part::Drift(v) => out.iter_mut().zip(v).for_each(|(o, y)| *o += y),
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.sample_into(rng, &mut out);
        out
    }
}

/// `sup_s φ(s)s^α` with a safety margin, for thinning a Pareto envelope.
fn envelope_bound(profile: Profile, alpha: f64) -> f64 {
    let mut m: f64 = 1.0;
    for i in 0..=4000 {
        let s = 10f64.powf(-8.0 + 11.0 * i as f64 / 4000.0);
        m = m.max(profile.phi(alpha, s) * s.powf(alpha));
    }
    m * 1.01
}

/// One draw of `X_t`.
pub fn sample_increment<R: Rng + ?Sized>(model: &LevyModel, t: f64, rng: &mut R) -> Result<Vec<f64>> {
    Ok(IncrementSampler::new(model, t)?.sample(rng))
}

/// `H(t) = |Ω|·P(x + X_t ∉ Ω)` with `x` uniform in Ω, over `n` samples split
/// into fixed blocks of independent streams.
pub fn mc_heat_content(model: &LevyModel, shape: &Shape, t: f64, n: u64, seed: u64) -> Result<McEstimate> {
    if model.dim() != shape.dim() {
        return Err(Error::Incompatible("model and shape dimensions differ".into()));
    }
    if n < 1000 {
        return Err(Error::InvalidArgument(format!("need at least 1000 samples, got {n}")));
    }
    let volume = shape.volume();
    if !(volume > 0.0) {
        return Err(Error::InvalidShape("shape has zero volume".into()));
    }
    let sampler = IncrementSampler::new(model, t)?;
    let (lo, hi) = shape.bounding_box();
    let dim = shape.dim();
    let blocks = n.div_ceil(BLOCK);
    let escapes: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = RngStream::new(seed, b).rng();
            let count = BLOCK.min(n - b * BLOCK);
            let mut x = vec![0.0; dim];
            let mut jump = vec![0.0; dim];
            let mut out = 0u64;
            for _ in 0..count {
                loop {
                    for (i, xi) in x.iter_mut().enumerate() {
                        *xi = lo[i] + (hi[i] - lo[i]) * rng.random::<f64>();
                    }
                    if shape.contains(&x) {
                        break;
                    }
                }
                sampler.sample_into(&mut rng, &mut jump);
                x.iter_mut().zip(&jump).for_each(|(a, b)| *a += b);
                if !shape.contains(&x) {
                    out += 1;
                }
            }
            out
        })
        .sum();
    let p = escapes as f64 / n as f64;
    let var = if n > 1 { p * (1.0 - p) * n as f64 / (n - 1) as f64 } else { 0.0 };
    Ok(McEstimate {
        value: volume * p,
        stderr: volume * (var / n as f64).sqrt(),
        samples: n,
        seed,
        t,
        model: model.spec(),
        shape: shape.spec(),
    })
}

#[cfg(test)]
mod tests;
