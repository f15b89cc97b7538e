//! Exponent evaluation: radial quadrature for profile models, interpolation
//! tables, running suprema and generalized inverses.

use super::measure::Profile;
use crate::quad::{fourier, integrate, FourierOptions, Tolerance};
use crate::special::{hankel_amplitude, j0, one_minus_spherical, sphere_area, HANKEL_SWITCH};
use num_complex::Complex64;
use rayon::prelude::*;

/// `c₁σ_{d−1}∫₀^∞ φ(s)s^{−1}(1 − Φ_d(rs)) ds` by quadrature.
pub fn radial_psi_exact(dim: usize, c1: f64, alpha: f64, profile: Profile, r: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let w = c1 * sphere_area(dim);
    let s0 = 1.0 / r;
    let q = |s: f64| profile.phi(alpha, s) / s;

    // inner part s ∈ (0, s0] in v = ln(s0/s)
    let big_v = 40.0 / (2.0 - alpha) + 10.0;
    let mut pts = vec![0.0];
    let mut v = 1.0;
    while v < big_v {
        pts.push(v);
        v *= 2.0;
    }
    pts.push(big_v);
    for &k in profile.kinks() {
        if k < s0 {
            pts.push((s0 / k).ln());
        }
    }
    pts.sort_by(f64::total_cmp);
    let inner = integrate(
        |v: f64| {
            let e = (-v).exp();
            profile.phi(alpha, s0 * e) * one_minus_spherical(dim, e)
        },
        &pts,
        Tolerance::new(0.0, 1e-13),
    )
    .value
        + s0.powf(-alpha) * (-(2.0 - alpha) * big_v).exp() / ((2.0 - alpha) * 2.0 * dim as f64);

    let scale = inner.abs().max(1e-300);
    // non-oscillatory tail mass ∫_{s0}^∞ q
    let tail = profile.power_integral(alpha, 0.0, s0, f64::INFINITY);
    if tail == 0.0 {
        return w * inner;
    }
    // oscillatory part (1/r)∫_1^∞ q(z/r) Φ_d(z) dz
    let opts = FourierOptions { tol: Tolerance::new(1e-15 * scale, 1e-13), ..FourierOptions::default() };
    let breaks: Vec<f64> = profile.kinks().iter().map(|k| k * r).collect();
    let end = match profile {
        Profile::Truncated => r,
        _ => f64::INFINITY,
    };
    let osc = match dim {
        1 => fourier(|z| Complex64::new(q(z / r) / r, 0.0), 1.0, 1.0, end, &breaks, &opts).value.re,
        3 => fourier(|z| Complex64::new(q(z / r) / (r * z), 0.0), 1.0, 1.0, end, &breaks, &opts).value.im,
        _ => {
            let mid = HANKEL_SWITCH.min(end);
            let mut bp = vec![1.0];
            bp.extend(breaks.iter().copied().filter(|&b| b > 1.0 && b < mid));
            bp.extend((2..25).map(|k| k as f64).filter(|&b| b < mid));
            bp.push(mid);
            bp.sort_by(f64::total_cmp);
            let near = integrate(|z: f64| q(z / r) / r * j0(z), &bp, Tolerance::new(1e-16 * scale, 1e-13)).value;
            let far = if end > mid {
                fourier(|z| hankel_amplitude(0, z) * (q(z / r) / r), 1.0, mid, end, &breaks, &opts).value.re
            } else {
                0.0
            };
            near + far
        }
    };
    w * (inner + tail - osc)
}

/// Natural cubic spline of `ln ψ` against `ln r` on a log grid, with power-law
/// extension below and a `c·r^α + const` extension above.
#[derive(Debug, Clone)]
pub struct PsiTable {
    u0: f64,
    du: f64,
    w: Vec<f64>,
    m: Vec<f64>,
    lo_slope: f64,
    hi_coef: f64,
    hi_alpha: f64,
    hi_shift: f64,
}

impl PsiTable {
    pub const LO: f64 = 1e-8;
    pub const HI: f64 = 1e14;
    pub const PER_DECADE: usize = 256;

    /// `hi_coef·r^{hi_alpha}` is the leading behaviour of ψ at infinity.
    pub fn build<F: Fn(f64) -> f64 + Sync>(f: F, hi_coef: f64, hi_alpha: f64) -> PsiTable {
        let (u0, u1) = (Self::LO.ln(), Self::HI.ln());
        let n = ((Self::HI / Self::LO).log10() * Self::PER_DECADE as f64).round() as usize;
        let du = (u1 - u0) / n as f64;
        let w: Vec<f64> = (0..=n).into_par_iter().map(|i| f((u0 + du * i as f64).exp()).ln()).collect();
        // natural spline second derivatives
        let mut m = vec![0.0; n + 1];
        let mut c = vec![0.0; n + 1];
        let mut d = vec![0.0; n + 1];
        for i in 1..n {
            let rhs = 6.0 * (w[i + 1] - 2.0 * w[i] + w[i - 1]) / (du * du);
            let denom = 4.0 - c[i - 1];
            c[i] = 1.0 / denom;
            d[i] = (rhs - d[i - 1]) / denom;
        }
        for i in (1..n).rev() {
            m[i] = d[i] - c[i] * m[i + 1];
        }
        let lo_slope = (w[1] - w[0]) / du;
        let hi_val = w[n].exp();
        let hi_shift = hi_val - hi_coef * Self::HI.powf(hi_alpha);
        PsiTable { u0, du, w, m, lo_slope, hi_coef, hi_alpha, hi_shift }
    }

    pub fn eval(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let u = r.ln();
        let n = self.w.len() - 1;
        if u <= self.u0 {
            return (self.w[0] + self.lo_slope * (u - self.u0)).exp();
        }
        let x = (u - self.u0) / self.du;
        if x >= n as f64 {
            return self.hi_coef * r.powf(self.hi_alpha) + self.hi_shift;
        }
        let i = (x as usize).min(n - 1);
        let a = (i + 1) as f64 - x;
        let b = x - i as f64;
        let h2 = self.du * self.du / 6.0;
        let v = a * self.w[i] + b * self.w[i + 1] + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h2;
        v.exp()
    }
}

impl PsiTable {
    /// Derivative of the interpolant.
    pub fn derivative(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        let u = r.ln();
        let n = self.w.len() - 1;
        if u <= self.u0 {
            return self.lo_slope * self.eval(r) / r;
        }
        let x = (u - self.u0) / self.du;
        if x >= n as f64 {
            return self.hi_coef * self.hi_alpha * r.powf(self.hi_alpha - 1.0);
        }
        let i = (x as usize).min(n - 1);
        let a = (i + 1) as f64 - x;
        let b = x - i as f64;
        let slope = (self.w[i + 1] - self.w[i]) / self.du
            + ((1.0 - 3.0 * a * a) * self.m[i] + (3.0 * b * b - 1.0) * self.m[i + 1]) * self.du / 6.0;
        slope * self.eval(r) / r
    }
}

/// Running supremum `sup_{[0,r]} f` and generalized inverse
/// `inf{x ≥ 0 : sup_{[0,x]} f ≥ v}` backed by a log grid with golden-section
/// polishing of local maxima. Below the grid `f` is taken as nondecreasing.
#[derive(Debug, Clone)]
pub struct SupTable {
    u0: f64,
    du: f64,
    xs: Vec<f64>,
    prefix: Vec<f64>,
}

fn golden_max<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (a, b);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if (b - a) <= 1e-15 * b.abs() {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd).max(f(a)).max(f(b))
}

impl SupTable {
    pub fn build<F: Fn(f64) -> f64 + Sync>(f: &F, lo: f64, hi: f64, per_decade: usize) -> SupTable {
        let (u0, u1) = (lo.ln(), hi.ln());
        let n = ((hi / lo).log10() * per_decade as f64).ceil() as usize;
        let du = (u1 - u0) / n as f64;
        let xs: Vec<f64> = (0..=n).map(|i| (u0 + du * i as f64).exp()).collect();
        let vals: Vec<f64> = xs.par_iter().map(|&x| f(x)).collect();
        // polished peaks at interior local maxima, assigned to the cell they fall in
        let peaks: Vec<(usize, f64)> = (1..n)
            .into_par_iter()
            .filter(|&i| vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1] && vals[i] > vals[i + 1].min(vals[i - 1]))
            .map(|i| (i, golden_max(f, xs[i - 1], xs[i + 1])))
            .collect();
        let mut prefix = vals.clone();
        for (i, p) in peaks {
            // the peak lies in (x_{i−1}, x_{i+1}); credit it from x_{i+1} on to stay conservative
            prefix[i + 1] = prefix[i + 1].max(p);
        }
        for i in 1..=n {
            prefix[i] = prefix[i].max(prefix[i - 1]);
        }
        SupTable { u0, du, xs, prefix }
    }

    fn cell(&self, r: f64) -> Option<usize> {
        if r < self.xs[0] {
            return None;
        }
        let i = ((r.ln() - self.u0) / self.du).floor() as isize;
        let mut i = i.clamp(0, self.xs.len() as isize - 1) as usize;
        while i > 0 && self.xs[i] > r {
            i -= 1;
        }
        while i + 1 < self.xs.len() && self.xs[i + 1] <= r {
            i += 1;
        }
        Some(i)
    }

    pub fn sup<F: Fn(f64) -> f64>(&self, f: &F, r: f64) -> f64 {
        match self.cell(r) {
            None => f(r).max(0.0),
            Some(i) if i + 1 == self.xs.len() => {
                // beyond the grid: keep scanning at the grid density
                let mut best = self.prefix[i];
                let mut x = self.xs[i];
                let step = self.du.exp();
                while x * step < r {
                    best = best.max(golden_max(f, x, x * step));
                    x *= step;
                }
                best.max(golden_max(f, x, r))
            }
            Some(i) => {
                let mut best = self.prefix[i];
                if i > 0 {
                    best = best.max(golden_max(f, self.xs[i - 1], self.xs[i]));
                }
                if r > self.xs[i] {
                    best = best.max(golden_max(f, self.xs[i], r));
                }
                best
            }
        }
    }

    /// `inf{x : sup_{[0,x]} f ≥ v}`; `None` when `v` is not reached on the grid.
    pub fn inverse<F: Fn(f64) -> f64>(&self, f: &F, v: f64) -> Option<f64> {
        if v <= 0.0 {
            return Some(0.0);
        }
        // peaks polished over different cells agree only to a few ulps
        let v = v * (1.0 - 1e-13);
        let n = self.xs.len();
        let j = self.prefix.partition_point(|&p| p < v);
        // below the grid f is monotone
        let below = || {
            let mut lo = self.xs[0];
            while f(lo) >= v {
                lo *= 0.5;
                if lo < 1e-300 {
                    return None;
                }
            }
            Some((lo, self.xs[0]))
        };
        let bracket = if j == 0 {
            below()
        } else if j == n {
            let mut hi = self.xs[n - 1];
            let mut k = 0;
            while self.sup(f, hi) < v {
                hi *= 2.0;
                k += 1;
                if k > 200 || !hi.is_finite() {
                    return None;
                }
            }
            Some((hi * 0.5, hi))
        } else {
            // the prefix credits peaks one node late, so the crossing may sit earlier
            let mut a = j - 1;
            while a > 0 && self.sup(f, self.xs[a]) >= v {
                a -= 1;
            }
            if self.sup(f, self.xs[a]) >= v {
                below()
            } else {
                Some((self.xs[a], self.xs[j]))
            }
        };
        let Some((mut lo, mut hi)) = bracket else {
            return Some(0.0);
        };
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sup(f, mid) >= v {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    }
}

/// Running supremum of an arbitrary nonnegative function on `[0, r]`,
/// using a fresh grid of 1024 nodes per decade over `[r·1e−12, r]`.
pub fn running_sup<F: Fn(f64) -> f64 + Sync>(f: F, r: f64) -> f64 {
    if r <= 0.0 {
        return f(0.0).max(0.0);
    }
    let t = SupTable::build(&f, r * 1e-12, r, 1024);
    t.sup(&f, r)
}

/// Generalized inverse `inf{x ≥ 0 : sup_{[0,x]} f ≥ v}` searched on `[lo, hi]`.
pub fn generalized_inverse<F: Fn(f64) -> f64 + Sync>(f: F, v: f64, lo: f64, hi: f64) -> Option<f64> {
    let t = SupTable::build(&f, lo, hi, 1024);
    t.inverse(&f, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;
    use approx::assert_relative_eq;

    fn direct_d1(alpha: f64, profile: Profile, r: f64) -> f64 {
        // brute force 2∫(1 − cos(rs)) φ(s)/s ds on a fine panel grid
        let mut pts: Vec<f64> = vec![0.0];
        let top = match profile {
            Profile::Truncated => 1.0,
            _ => 80.0,
        };
        let n = ((r * top) as usize + 1) * 8;
        for k in 1..=n {
            pts.push(top * (k as f64 / n as f64).powi(3));
        }
        let e = integrate(
            |s: f64| crate::special::one_minus_cos(r * s) * profile.phi(alpha, s) / s,
            &pts,
            Tolerance::new(0.0, 1e-13),
        );
        2.0 * e.value
    }

    #[test]
    fn truncated_d1_against_direct_quadrature() {
        for &(alpha, r) in &[(0.5, 0.3), (0.5, 3.0), (1.5, 20.0), (1.0, 250.0)] {
            let q = radial_psi_exact(1, 1.0, alpha, Profile::Truncated, r);
            assert_relative_eq!(q, direct_d1(alpha, Profile::Truncated, r), max_relative = 1e-10);
        }
    }

    #[test]
    fn tempered_d1_closed_form() {
        for &alpha in &[0.3, 0.7, 1.4] {
            for &r in &[1e-3f64, 0.5, 7.0, 1e3, 1e6] {
                let exact = 2.0 * gamma(-alpha) * (1.0 - (1.0 + r * r).powf(alpha / 2.0) * (alpha * r.atan()).cos());
                let q = radial_psi_exact(1, 1.0, alpha, Profile::Tempered, r);
                assert_relative_eq!(q, exact, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn large_frequency_behaves_like_stable() {
        // truncated: ψ(r) = c r^α − 2c₁/α + o(1) in d = 1
        let alpha = 0.5;
        let c = 2.0 * gamma(1.0 - alpha) * (std::f64::consts::PI * alpha / 2.0).cos() / alpha;
        let r = 1e8;
        let q = radial_psi_exact(1, 1.0, alpha, Profile::Truncated, r);
        assert_relative_eq!(q, c * r.powf(alpha) - 2.0 / alpha, max_relative = 1e-9);
    }

    #[test]
    fn dimensions_two_and_three_small_frequency() {
        // ψ(r) ≈ r²/(2d)·∫‖y‖²ν as r → 0
        for &dim in &[2usize, 3] {
            let alpha = 0.8;
            let m2 = sphere_area(dim) * Profile::Tempered.power_integral(alpha, 2.0, 0.0, f64::INFINITY);
            let r = 1e-4;
            let q = radial_psi_exact(dim, 1.0, alpha, Profile::Tempered, r);
            assert_relative_eq!(q, r * r / (2.0 * dim as f64) * m2, max_relative = 1e-6);
        }
    }

    #[test]
    fn d2_profile_against_direct() {
        // truncated in d=2: 2π∫_0^1 (1 − J0(rs)) s^{−1−α} ds
        let alpha = 1.2;
        for &r in &[0.7, 40.0, 900.0] {
            let n = (r as usize + 1) * 16;
            let pts: Vec<f64> = (0..=n).map(|k| (k as f64 / n as f64).powi(3)).collect();
            let e = integrate(
                |s: f64| crate::special::one_minus_j0(r * s) * s.powf(-1.0 - alpha),
                &pts,
                Tolerance::new(0.0, 1e-13),
            );
            let q = radial_psi_exact(2, 1.0, alpha, Profile::Truncated, r);
            assert_relative_eq!(q, 2.0 * std::f64::consts::PI * e.value, max_relative = 1e-10);
        }
    }

    #[test]
    fn table_reproduces_exact_values() {
        let f = |r: f64| radial_psi_exact(1, 1.0, 0.7, Profile::Tempered, r);
        let c = 2.0 * gamma(0.3) * (std::f64::consts::PI * 0.35).cos() / 0.7;
        let t = PsiTable::build(f, c, 0.7);
        for &r in &[2e-8, 3.3e-5, 0.77, 12.5, 4.4e6, 9e13, 1e16] {
            assert_relative_eq!(t.eval(r), f(r), max_relative = 1e-8);
        }
    }

    #[test]
    fn oscillating_sup_matches_dense_grid() {
        let f = |s: f64| s.sqrt() * (1.5 + (3.0 * s).sin());
        for &r in &[0.4, 2.0, 7.3] {
            let dense = (0..=2_000_000).map(|k| f(r * k as f64 / 2e6)).fold(0.0, f64::max);
            assert!((running_sup(f, r) - dense).abs() <= 1e-10 * dense);
        }
    }

    #[test]
    fn plateau_inverse_hits_left_edge() {
        // ψ* flat at 1 on [1, 2]
        let f = |s: f64| if s < 1.0 { s } else if s < 2.0 { 1.0 - 0.5 * (s - 1.0) * (2.0 - s) } else { s - 1.0 };
        let x = generalized_inverse(f, 1.0, 1e-6, 10.0).unwrap();
        assert!((x - 1.0).abs() < 1e-12);
        let x = generalized_inverse(f, 1.5, 1e-6, 10.0).unwrap();
        assert!((x - 2.5).abs() < 1e-12);
    }
}
