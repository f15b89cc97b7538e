//! Limits of scaled sequences sampled on geometric time grids.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Below this |θ̂| the power-law fit is not trusted.
const THETA_FLOOR: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Diagnostic {
    /// Fitted correction exponent; `None` when the sequence is constant or no power fit was made.
    pub theta: Option<f64>,
    /// Median of `|v_{k+2} − v_{k+1}| / |v_{k+1} − v_k|` over the points used.
    pub contraction: Option<f64>,
    /// RMS residual of the fit.
    pub residual: f64,
    /// The last value and spread were reported instead of a fit.
    pub fallback: bool,
    /// Index of the first grid point used (points sorted by decreasing t).
    pub first_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extrapolation {
    pub limit: f64,
    /// Heuristic for fits of exact data, standard error for weighted fits.
    pub error: f64,
    pub diagnostic: Diagnostic,
}

/// Correction term `φ(t)` in `v(t) = a + Σ bⱼφⱼ(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Basis {
    /// `t^θ`
    Power(f64),
    /// `t^θ ln(1/t)`
    PowerLog(f64),
    /// `ln(1/t)^{−p}`
    InverseLog(f64),
}

impl Basis {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Basis::Power(th) => t.powf(th),
            Basis::PowerLog(th) => t.powf(th) * (1.0 / t).ln(),
            Basis::InverseLog(p) => (1.0 / t).ln().powf(-p),
        }
    }
}

fn sorted(points: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
    if points.iter().any(|(t, v)| !(t.is_finite() && *t > 0.0) || !v.is_finite()) {
        return Err(Error::InvalidArgument("sequence needs positive finite times and finite values".into()));
    }
    let mut p = points.to_vec();
    p.sort_by(|a, b| b.0.total_cmp(&a.0));
    Ok(p)
}

/// Common ratio of a decreasing geometric grid.
pub fn grid_ratio(times: &[f64]) -> Result<f64> {
    if times.len() < 2 {
        return Err(Error::InvalidArgument("a grid needs at least two times".into()));
    }
    let rho = times[1] / times[0];
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidArgument(format!("grid ratio {rho} is not in (0, 1)")));
    }
    for w in times.windows(2) {
        let r = w[1] / w[0];
        if (r - rho).abs() > 1e-6 * rho {
            return Err(Error::InvalidArgument(format!("grid is not geometric: ratios {rho} and {r}")));
        }
    }
    Ok(rho)
}

/// Geometric grid `t_k = start·(stop/start)^{k/(points−1)}`.
pub fn geometric_grid(start: f64, stop: f64, points: usize) -> Result<Vec<f64>> {
    if !(start > stop && stop > 0.0 && start.is_finite()) || points < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid needs start > stop > 0 and at least two points, got {start}, {stop}, {points}"
        )));
    }
    let step = (stop / start).ln() / (points - 1) as f64;
    Ok((0..points)
        .map(|k| if k + 1 == points { stop } else { start * (step * k as f64).exp() })
        .collect())
}

/// The default grid `10^{−1−k/2}`, `k = 0..=12`.
pub fn default_grid() -> Vec<f64> {
    (0..=12).map(|k| 10f64.powf(-1.0 - 0.5 * k as f64)).collect()
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

fn fallback(values: &[f64], first_used: usize, contraction: Option<f64>) -> Extrapolation {
    let tail = &values[values.len() - values.len().div_ceil(2)..];
    let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Extrapolation {
        limit: *values.last().unwrap(),
        error: hi - lo,
        diagnostic: Diagnostic { theta: None, contraction, residual: hi - lo, fallback: true, first_used },
    }
}

/// Least-squares `a + b·x` on paired data; returns `(a, b, rms)`.
fn line_fit(x: &[f64], v: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let mv = v.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|xi| (xi - mx).powi(2)).sum();
    let sxv: f64 = x.iter().zip(v).map(|(xi, vi)| (xi - mx) * (vi - mv)).sum();
    let b = if sxx > 0.0 { sxv / sxx } else { 0.0 };
    let a = mv - b * mx;
    let rms = (x.iter().zip(v).map(|(xi, vi)| (vi - a - b * xi).powi(2)).sum::<f64>() / n).sqrt();
    (a, b, rms)
}

/// Limit of `v_k` as `t_k → 0` on a geometric grid, assuming
/// `v_k ≈ a + b·t_k^θ`.
///
/// θ is the median over the finer half of the grid of the log-ratio of
/// successive differences; `a` is then a least-squares fit on that half.
/// Leading points are dropped until successive differences contract. When
/// the differences change sign or θ̂ is near zero the last value is reported
/// with the spread of the finer half as its error.
pub fn extrapolate_limit(points: &[(f64, f64)]) -> Result<Extrapolation> {
    if points.len() < 4 {
        return Err(Error::InvalidArgument(format!("need at least 4 points, got {}", points.len())));
    }
    let p = sorted(points)?;
    let times: Vec<f64> = p.iter().map(|x| x.0).collect();
    let rho = grid_ratio(&times)?;
    let values: Vec<f64> = p.iter().map(|x| x.1).collect();
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    if diffs.iter().all(|d| d.abs() <= 1e-15 * scale) {
        let mut e = fallback(&values, 0, None);
        e.error = 0.0;
        return Ok(e);
    }
    let ratios: Vec<f64> = diffs.windows(2).map(|w| w[1] / w[0]).collect();

    // "t small enough": the longest suffix on which differences contract
    let mut first = ratios.len();
    while first > 0 && ratios[first - 1].is_finite() && ratios[first - 1].abs() < 1.0 {
        first -= 1;
    }
    if values.len() - first < 4 {
        first = 0;
    }
    let used_ratios = &ratios[first..];
    let contraction = if used_ratios.is_empty() {
        None
    } else {
        Some(median(used_ratios.iter().map(|r| r.abs()).collect()))
    };
    if used_ratios.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Ok(fallback(&values[first..], first, contraction));
    }
    let half = &used_ratios[used_ratios.len() / 2..];
    let theta = median(half.iter().map(|r| r.ln() / rho.ln()).collect());
    if !theta.is_finite() || theta.abs() < THETA_FLOOR {
        return Ok(fallback(&values[first..], first, contraction));
    }

    let m = (values.len() - first).div_ceil(2).max(3);
    let tail = values.len() - m;
    let x: Vec<f64> = times[tail..].iter().map(|t| t.powf(theta)).collect();
    let (a, _, rms) = line_fit(&x, &values[tail..]);
    // sensitivity: refit without the finest point
    let (a2, _, _) = line_fit(&x[..m - 1], &values[tail..values.len() - 1]);
    Ok(Extrapolation {
        limit: a,
        error: (a - a2).abs() + rms,
        diagnostic: Diagnostic { theta: Some(theta), contraction, residual: rms, fallback: false, first_used: first },
    })
}

/// Limit of a sequence whose correction decays like `1/ln(1/t)`: a
/// quadratic fit in `s = 1/ln(1/t)`. Needs every `t < 1`.
pub fn extrapolate_log_rate(points: &[(f64, f64)]) -> Result<Extrapolation> {
    if points.iter().any(|p| p.0 >= 1.0) {
        return Err(Error::InvalidArgument("log-rate extrapolation needs t < 1".into()));
    }
    fit_limit(points, None, &[Basis::InverseLog(1.0), Basis::InverseLog(2.0)])
}

/// Weighted least squares for `v(t) = a + Σ bⱼφⱼ(t)`; the error of `a` is
/// its standard error when per-point errors are given, else the RMS residual.
pub fn fit_limit(points: &[(f64, f64)], errors: Option<&[f64]>, basis: &[Basis]) -> Result<Extrapolation> {
    let k = basis.len() + 1;
    if points.len() < k + 1 {
        return Err(Error::InvalidArgument(format!("need at least {} points for {} parameters", k + 1, k)));
    }
    if let Some(e) = errors {
        if e.len() != points.len() || e.iter().any(|s| !(s.is_finite() && *s >= 0.0)) {
            return Err(Error::InvalidArgument("errors must be finite, non-negative and match the points".into()));
        }
    }
    sorted(points)?;
    // zero errors would get infinite weight; floor them at the smallest positive one
    let floor = errors
        .map(|e| e.iter().copied().filter(|s| *s > 0.0).fold(f64::INFINITY, f64::min))
        .filter(|f| f.is_finite());
    let weight = |i: usize| match (errors, floor) {
        (Some(e), Some(f)) => 1.0 / e[i].max(f).powi(2),
        _ => 1.0,
    };
    let rows: Vec<Vec<f64>> = points
        .iter()
        .map(|(t, _)| std::iter::once(1.0).chain(basis.iter().map(|b| b.eval(*t))).collect())
        .collect();
    // column scaling keeps the normal equations well conditioned
    let norms: Vec<f64> =
        (0..k).map(|j| rows.iter().fold(0.0f64, |m, r| m.max(r[j].abs())).max(f64::MIN_POSITIVE)).collect();
    let mut gram = vec![vec![0.0; k]; k];
    let mut rhs = vec![0.0; k];
    for (i, r) in rows.iter().enumerate() {
        let w = weight(i);
        for a in 0..k {
            rhs[a] += w * r[a] / norms[a] * points[i].1;
            for b in 0..k {
                gram[a][b] += w * r[a] / norms[a] * r[b] / norms[b];
            }
        }
    }
    let inv = invert(gram).ok_or_else(|| Error::Numerical("singular least-squares system".into()))?;
    let coef: Vec<f64> = (0..k).map(|a| (0..k).map(|b| inv[a][b] * rhs[b]).sum::<f64>() / norms[a]).collect();
    let resid: Vec<f64> = rows
        .iter()
        .zip(points)
        .map(|(r, p)| p.1 - r.iter().zip(&coef).map(|(x, c)| x * c).sum::<f64>())
        .collect();
    let rms = (resid.iter().map(|e| e * e).sum::<f64>() / resid.len() as f64).sqrt();
    let error = if floor.is_some() { inv[0][0].sqrt() / norms[0] } else { rms };
    Ok(Extrapolation {
        limit: coef[0],
        error,
        diagnostic: Diagnostic { theta: None, contraction: None, residual: rms, fallback: false, first_used: 0 },
    })
}

/// Gauss–Jordan inverse with partial pivoting.
fn invert(mut m: Vec<Vec<f64>>) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut inv: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        inv.swap(col, piv);
        let d = m[col][col];
        for j in 0..n {
            m[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                for j in 0..n {
                    m[r][j] -= f * m[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
    }
    Some(inv)
}
