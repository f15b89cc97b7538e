//! Lévy measures and their radial functionals.

use crate::quad::{integrate_log, Tolerance};
use crate::special::sphere_area;
use serde::{Deserialize, Serialize};

/// Small-jump profile φ of a radial Lévy density `ν(dy) = c₁‖y‖^{−d} φ(‖y‖) dy`.
/// Every profile behaves like `s^{−α}` as `s → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Profile {
    Truncated,
    Tempered,
    Lamperti { delta: f64 },
    Layered { alpha1: f64 },
}

impl Profile {
    pub fn name(&self) -> &'static str {
        match self {
            Profile::Truncated => "truncated",
            Profile::Tempered => "tempered",
            Profile::Lamperti { .. } => "lamperti",
            Profile::Layered { .. } => "layered",
        }
    }

    pub fn phi(&self, alpha: f64, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        match *self {
            Profile::Truncated => {
                if s < 1.0 {
                    s.powf(-alpha)
                } else {
                    0.0
                }
            }
            Profile::Tempered => s.powf(-alpha) * (-s).exp(),
            Profile::Lamperti { delta } => {
                let ln_em1 = if s < 30.0 { s.exp_m1().ln() } else { s + (-(-s).exp()).ln_1p() };
                (s.ln() + delta * s - (alpha + 1.0) * ln_em1).exp()
            }
            Profile::Layered { alpha1 } => {
                if s < 1.0 {
                    s.powf(-alpha)
                } else {
                    s.powf(-alpha1)
                }
            }
        }
    }

    /// Points where φ is not smooth.
    pub fn kinks(&self) -> &'static [f64] {
        match self {
            Profile::Truncated | Profile::Layered { .. } => &[1.0],
            _ => &[],
        }
    }

    /// Radius beyond which `φ(s)/s` is negligible (∞ for power tails).
    fn support_end(&self, alpha: f64, from: f64) -> f64 {
        match *self {
            Profile::Truncated => 1.0,
            Profile::Tempered => from.max(1.0) + 60.0,
            Profile::Lamperti { delta } => from.max(1.0) + 60.0 / (alpha + 1.0 - delta),
            Profile::Layered { .. } => f64::INFINITY,
        }
    }

    pub fn validate(&self, alpha: f64) -> Result<(), String> {
        match *self {
            Profile::Lamperti { delta } if !(delta.is_finite() && delta < alpha + 1.0) => {
                Err(format!("lamperti profile needs delta < alpha + 1, got delta = {delta}"))
            }
            Profile::Layered { alpha1 } if !(alpha1 > 0.0 && alpha1 < 2.0) => {
                Err(format!("layered profile needs alpha1 in (0, 2), got {alpha1}"))
            }
            _ => Ok(()),
        }
    }

    /// `∫_a^b s^{k−1} φ(s) ds`, with `b` possibly infinite. Requires `k > α`
    /// when `a = 0`.
    pub fn power_integral(&self, alpha: f64, k: f64, a: f64, b: f64) -> f64 {
        let pow_int = |e: f64, lo: f64, hi: f64| -> f64 {
            // ∫_lo^hi s^{e−1} ds
            if hi <= lo {
                return 0.0;
            }
            if e.abs() < 1e-14 {
                hi.ln() - lo.ln()
            } else if hi.is_infinite() {
                -lo.powf(e) / e
            } else {
                (hi.powf(e) - lo.powf(e)) / e
            }
        };
        match *self {
            Profile::Truncated => pow_int(k - alpha, a, b.min(1.0)),
            Profile::Layered { alpha1 } => {
                pow_int(k - alpha, a, b.min(1.0)) + pow_int(k - alpha1, a.max(1.0), b)
            }
            _ => {
                let end = b.min(self.support_end(alpha, a));
                if end <= a {
                    return 0.0;
                }
                let mut lo = a;
                let mut head = 0.0;
                if a < 1e-10 * end {
                    // φ(s) = s^{−α}(1 + O(s)) near zero
                    lo = 1e-10 * end;
                    head = pow_int(k - alpha, a, lo);
                }
                let e = integrate_log(
                    |s| s.powf(k - 1.0) * self.phi(alpha, s),
                    lo,
                    end,
                    &[1.0],
                    Tolerance::new(0.0, 1e-13),
                );
                head + e.value
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Atom {
    pub location: Vec<f64>,
    pub mass: f64,
}

/// A Lévy measure with its radial distribution functionals.
#[derive(Debug, Clone, PartialEq)]
pub enum LevyMeasure {
    Zero,
    /// `c₁‖y‖^{−d}φ(‖y‖)dy`; `profile = None` is the pure power `φ(s) = s^{−α}`.
    Radial { dim: usize, c1: f64, alpha: f64, profile: Option<Profile> },
    /// `c_pos y^{−1−α}` on y > 0 and `c_neg |y|^{−1−α}` on y < 0.
    TwoSided { alpha: f64, c_pos: f64, c_neg: f64 },
    Atomic(Vec<Atom>),
    /// `Σ_{k≥1} 2^{kα/2}(δ_{2^{−k}} + δ_{−2^{−k}})`.
    Dyadic { alpha: f64 },
    Sum(Vec<LevyMeasure>),
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl LevyMeasure {
    fn radial_weight(dim: usize, c1: f64) -> f64 {
        c1 * sphere_area(dim)
    }

    /// `∫_{‖y‖ ∈ (a, b]} ‖y‖^k ν(dy)` (power-law parts closed form).
    pub fn radial_power_integral(&self, k: f64, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let pow_int = |e: f64| -> f64 {
            if e.abs() < 1e-14 {
                b.ln() - a.ln()
            } else if b.is_infinite() {
                if e < 0.0 {
                    -a.powf(e) / e
                } else {
                    f64::INFINITY
                }
            } else if a == 0.0 && e <= 0.0 {
                f64::INFINITY
            } else {
                (b.powf(e) - a.powf(e)) / e
            }
        };
        match self {
            LevyMeasure::Zero => 0.0,
            LevyMeasure::Radial { dim, c1, alpha, profile } => {
                let w = Self::radial_weight(*dim, *c1);
                match profile {
                    None => w * pow_int(k - alpha),
                    Some(p) => {
                        if a == 0.0 && k <= *alpha {
                            return f64::INFINITY;
                        }
                        w * p.power_integral(*alpha, k, a, b)
                    }
                }
            }
            LevyMeasure::TwoSided { alpha, c_pos, c_neg } => (c_pos + c_neg) * pow_int(k - alpha),
            LevyMeasure::Atomic(atoms) => atoms
                .iter()
                .filter(|at| {
                    let r = norm(&at.location);
                    r > a && r <= b
                })
                .map(|at| at.mass * norm(&at.location).powf(k))
                .sum(),
            LevyMeasure::Dyadic { alpha } => {
                // atoms at 2^{−j}, total mass 2·2^{jα/2} each level
                let ratio = 2f64.powf(alpha / 2.0 - k);
                let first = if b.is_infinite() { 1 } else { ((-b.log2()).ceil() as i64).max(1) };
                let first = if 2f64.powi(-(first as i32)) > b { first + 1 } else { first };
                if a == 0.0 {
                    if ratio >= 1.0 {
                        return f64::INFINITY;
                    }
                    return 2.0 * ratio.powi(first as i32) / (1.0 - ratio);
                }
                let mut s = 0.0;
                let mut j = first;
                loop {
                    let r = 2f64.powi(-(j as i32));
                    if r <= a {
                        break;
                    }
                    s += 2.0 * ratio.powi(j as i32);
                    j += 1;
                }
                s
            }
            LevyMeasure::Sum(parts) => parts.iter().map(|p| p.radial_power_integral(k, a, b)).sum(),
        }
    }

    /// `ν({‖y‖ > r})`.
    pub fn tail_mass(&self, r: f64) -> f64 {
        self.radial_power_integral(0.0, r, f64::INFINITY)
    }

    /// `∫_{‖y‖≤r} ‖y‖² ν(dy)`.
    pub fn radial_moment2(&self, r: f64) -> f64 {
        self.radial_power_integral(2.0, 0.0, r)
    }

    /// `∫_{‖y‖≤r} ‖y‖ ν(dy)`; infinite for infinite-variation measures.
    pub fn radial_moment1(&self, r: f64) -> f64 {
        self.radial_power_integral(1.0, 0.0, r)
    }

    pub fn total_mass(&self) -> f64 {
        self.radial_power_integral(0.0, 0.0, f64::INFINITY)
    }

    /// `∫ y (1_{‖y‖<r} − 1_{‖y‖<1}) ν(dy)` (strict inequalities), as a vector.
    pub fn compensator_shift(&self, dim: usize, r: f64) -> Vec<f64> {
        let mut out = vec![0.0; dim];
        self.add_compensator_shift(r, &mut out);
        out
    }

    fn add_compensator_shift(&self, r: f64, out: &mut [f64]) {
        match self {
            LevyMeasure::TwoSided { alpha, c_pos, c_neg } => {
                let d = c_pos - c_neg;
                let v = if (alpha - 1.0).abs() < 1e-14 { r.ln() } else { (r.powf(1.0 - alpha) - 1.0) / (1.0 - alpha) };
                out[0] += d * v;
            }
            LevyMeasure::Atomic(atoms) => {
                for at in atoms {
                    let n = norm(&at.location);
                    let w = (n < r) as i32 as f64 - (n < 1.0) as i32 as f64;
                    for (o, y) in out.iter_mut().zip(&at.location) {
                        *o += at.mass * w * y;
                    }
                }
            }
            LevyMeasure::Sum(parts) => parts.iter().for_each(|p| p.add_compensator_shift(r, out)),
            _ => {}
        }
    }

    /// `∫_{‖y‖≤1} y ν(dy)` for finite-variation measures.
    pub fn inner_mean(&self, dim: usize) -> Vec<f64> {
        let mut out = vec![0.0; dim];
        self.add_inner_mean(&mut out);
        out
    }

    fn add_inner_mean(&self, out: &mut [f64]) {
        match self {
            LevyMeasure::TwoSided { alpha, c_pos, c_neg } => out[0] += (c_pos - c_neg) / (1.0 - alpha),
            LevyMeasure::Atomic(atoms) => {
                for at in atoms.iter().filter(|a| norm(&a.location) <= 1.0) {
                    for (o, y) in out.iter_mut().zip(&at.location) {
                        *o += at.mass * y;
                    }
                }
            }
            LevyMeasure::Sum(parts) => parts.iter().for_each(|p| p.add_inner_mean(out)),
            _ => {}
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            LevyMeasure::TwoSided { c_pos, c_neg, .. } => c_pos == c_neg,
            LevyMeasure::Atomic(atoms) => {
                let key = |a: &Atom, s: f64| -> Vec<i64> {
                    a.location.iter().map(|x| (s * x * 1e12).round() as i64).collect()
                };
                atoms.iter().all(|a| {
                    let want = key(a, -1.0);
                    let m: f64 = atoms.iter().filter(|b| key(b, 1.0) == want).map(|b| b.mass).sum();
                    let own: f64 = atoms.iter().filter(|b| key(b, 1.0) == key(a, 1.0)).map(|b| b.mass).sum();
                    (m - own).abs() <= 1e-12 * own.max(1.0)
                })
            }
            LevyMeasure::Sum(parts) => parts.iter().all(LevyMeasure::is_symmetric),
            _ => true,
        }
    }

    /// `∫ (1 ∧ ‖y‖²) ν(dy)`, finite for every Lévy measure.
    pub fn levy_integral(&self) -> f64 {
        self.radial_moment2(1.0) + self.tail_mass(1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn profile_integrals_closed_and_numeric() {
        // truncated α=0.5: ∫_0^1 s^{2-1-0.5} ds = 1/1.5
        assert_relative_eq!(Profile::Truncated.power_integral(0.5, 2.0, 0.0, 10.0), 1.0 / 1.5, max_relative = 1e-14);
        // tempered tail mass above 1 against a crude midpoint oracle
        let alpha = 0.7;
        let oracle: f64 = {
            let n = 2_000_000;
            let h = 60.0 / n as f64;
            (0..n).map(|i| {
                let s = 1.0 + (i as f64 + 0.5) * h;
                s.powf(-1.0 - alpha) * (-s).exp() * h
            }).sum()
        };
        assert_relative_eq!(Profile::Tempered.power_integral(alpha, 0.0, 1.0, f64::INFINITY), oracle, max_relative = 1e-9);
        // second moment of tempered near zero: ∫_0^∞ s^{1-α} e^{-s} ds = Γ(2-α)
        let g = crate::special::gamma(2.0 - alpha);
        assert_relative_eq!(Profile::Tempered.power_integral(alpha, 2.0, 0.0, f64::INFINITY), g, max_relative = 1e-9);
        // lamperti with δ = 0 and α = 1: φ(s) = s/(e^s − 1)^2; ∫ s^{1}·φ... compare numerically at two splits
        let p = Profile::Lamperti { delta: 0.0 };
        let whole = p.power_integral(1.0, 2.0, 0.0, f64::INFINITY);
        let parts = p.power_integral(1.0, 2.0, 0.0, 0.5) + p.power_integral(1.0, 2.0, 0.5, f64::INFINITY);
        assert_relative_eq!(whole, parts, max_relative = 1e-11);
    }

    #[test]
    fn lamperti_small_s_matches_power() {
        let p = Profile::Lamperti { delta: 0.4 };
        assert_relative_eq!(p.phi(0.8, 1e-8), 1e-8f64.powf(-0.8), max_relative = 1e-6);
        assert!(p.phi(0.8, 200.0) > 0.0);
    }

    #[test]
    fn stable_radial_functionals() {
        let m = LevyMeasure::Radial { dim: 1, c1: 1.0, alpha: 0.5, profile: None };
        assert_relative_eq!(m.tail_mass(1.0), 4.0);
        assert_relative_eq!(m.radial_moment2(1.0), 2.0 / 1.5);
        assert_relative_eq!(m.radial_moment1(1.0), 4.0);
        let m = LevyMeasure::Radial { dim: 1, c1: 1.0, alpha: 1.5, profile: None };
        assert!(m.radial_moment1(1.0).is_infinite());
    }

    #[test]
    fn dyadic_functionals() {
        let m = LevyMeasure::Dyadic { alpha: 1.0 };
        // atoms above 1/8: k = 1, 2 → 2(√2 + 2)
        assert_relative_eq!(m.tail_mass(0.125), 2.0 * (2f64.sqrt() + 2.0), max_relative = 1e-14);
        // second moment below 1/4: Σ_{k≥2} 2·2^{k/2}·4^{−k}
        let direct: f64 = (2..200).map(|k| 2.0 * 2f64.powf(k as f64 * 0.5) * 4f64.powi(-k)).sum();
        assert_relative_eq!(m.radial_moment2(0.25), direct, max_relative = 1e-14);
        assert_relative_eq!(m.radial_moment2(0.3), direct, max_relative = 1e-14);
    }

    #[test]
    fn atoms_and_symmetry() {
        let sym = LevyMeasure::Atomic(vec![
            Atom { location: vec![1.0], mass: 1.0 },
            Atom { location: vec![-1.0], mass: 1.0 },
        ]);
        assert!(sym.is_symmetric());
        assert_eq!(sym.tail_mass(0.5), 2.0);
        assert_eq!(sym.tail_mass(1.0), 0.0);
        let one = LevyMeasure::Atomic(vec![Atom { location: vec![0.5], mass: 3.0 }]);
        assert!(!one.is_symmetric());
        assert_eq!(one.inner_mean(1), vec![1.5]);
        let two = LevyMeasure::TwoSided { alpha: 0.5, c_pos: 1.0, c_neg: 0.0 };
        assert_relative_eq!(two.inner_mean(1)[0], 2.0);
    }
}
