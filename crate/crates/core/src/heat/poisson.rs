//! Exact heat content for compound Poisson jumps plus drift, by enumerating
//! the number of jumps.

use super::HeatValue;
use crate::error::{Error, Result};
use crate::geometry::Shape;
use crate::levy::{LevyModel, ModelKind};
use std::collections::BTreeMap;

const MAX_SUPPORT: usize = 200_000;

/// Support points of a discrete law with their probabilities.
type Atoms = Vec<(Vec<f64>, f64)>;

/// Support points and weights of `X_t`, plus the neglected Poisson mass.
fn law(model: &LevyModel, t: f64) -> Result<(Atoms, f64)> {
    let (atoms, velocity) = match model.kind() {
        ModelKind::CompoundPoissonDrift { atoms, velocity } => (atoms, velocity),
        other => return Err(Error::Incompatible(format!("{} is not a compound Poisson model", other.name()))),
    };
    let dim = model.dim();
    let shift: Vec<f64> = velocity.iter().map(|v| v * t).collect();
    let rate: f64 = atoms.iter().map(|a| a.mass).sum();
    let lt = rate * t;
    let key = |x: &[f64]| -> Vec<i64> { x.iter().map(|v| (v * 2f64.powi(36)).round() as i64).collect() };

    let mut out: BTreeMap<Vec<i64>, (Vec<f64>, f64)> = BTreeMap::new();
    let mut level: BTreeMap<Vec<i64>, (Vec<f64>, f64)> = BTreeMap::new();
    level.insert(key(&vec![0.0; dim]), (vec![0.0; dim], 1.0));
    let mut p_n = (-lt).exp();
    let mut used = 0.0;
    let mut n = 0u32;
    loop {
        for (k, (x, q)) in &level {
            let e = out.entry(k.clone()).or_insert_with(|| (x.clone(), 0.0));
            e.1 += p_n * q;
        }
        used += p_n;
        if (1.0 - used <= 1e-17 && f64::from(n) >= lt) || p_n == 0.0 || atoms.is_empty() {
            break;
        }
        let mut next: BTreeMap<Vec<i64>, (Vec<f64>, f64)> = BTreeMap::new();
        for (x, q) in level.values() {
            for a in atoms {
                let y: Vec<f64> = x.iter().zip(&a.location).map(|(u, v)| u + v).collect();
                let e = next.entry(key(&y)).or_insert_with(|| (y, 0.0));
                e.1 += q * a.mass / rate;
            }
        }
        next.retain(|_, v| v.1 > 1e-300);
        if next.len() > MAX_SUPPORT {
            return Err(Error::Unsupported("jump-count enumeration exceeds the support limit".into()));
        }
        level = next;
        n += 1;
        p_n *= lt / f64::from(n);
    }
    let pts = out
        .into_values()
        .map(|(x, q)| (x.iter().zip(&shift).map(|(u, s)| u + s).collect(), q))
        .collect();
    Ok((pts, (1.0 - used).max(0.0)))
}

pub(super) fn heat_content(model: &LevyModel, shape: &Shape, t: f64) -> Result<HeatValue> {
    let (pts, lost) = law(model, t)?;
    let g0 = shape.volume();
    let raw: f64 = pts.iter().map(|(x, q)| q * shape.deficit(x)).sum();
    Ok(HeatValue::clip(raw, lost * g0, g0))
}

/// `E min(|X_t|, L)`.
pub(super) fn tail_heat_content(model: &LevyModel, length: f64, t: f64) -> Result<HeatValue> {
    let (pts, lost) = law(model, t)?;
    let raw: f64 = pts.iter().map(|(x, q)| q * x[0].abs().min(length)).sum();
    Ok(HeatValue::clip(raw, lost * length, length))
}
