//! Special functions: Gamma, erfc and Bessel functions of order 0 and 1.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

pub use statrs::function::erf::erfc;
pub use statrs::function::gamma::{gamma, ln_gamma};

/// Above this argument the Hankel expansion is used.
pub const HANKEL_SWITCH: f64 = 25.0;

/// Surface area of the unit sphere `S^{d-1}` (2 for d=1).
pub fn sphere_area(d: usize) -> f64 {
    match d {
        1 => 2.0,
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => 2.0 * PI.powf(d as f64 / 2.0) / gamma(d as f64 / 2.0),
    }
}

/// Volume of the unit ball in dimension `d` (κ₀ = 1, κ₁ = 2, κ₂ = π).
pub fn ball_volume(d: usize) -> f64 {
    match d {
        0 => 1.0,
        1 => 2.0,
        2 => PI,
        3 => 4.0 * PI / 3.0,
        _ => PI.powf(d as f64 / 2.0) / gamma(d as f64 / 2.0 + 1.0),
    }
}

fn miller(x: f64) -> (f64, f64) {
    if x < 1e-8 {
        return (1.0 - 0.25 * x * x, 0.5 * x);
    }
    let mut m = (1.2 * x) as usize + 40;
    if m % 2 == 1 {
        m += 1;
    }
    let (mut jp, mut j) = (0.0f64, 1e-300f64);
    let (mut j0, mut j1) = (0.0, 0.0);
    let mut sum = 0.0;
    for k in (1..=m).rev() {
        let jm = 2.0 * k as f64 / x * j - jp;
        jp = j;
        j = jm;
        if jp.abs() > 1e250 {
            j *= 1e-250;
            jp *= 1e-250;
            sum *= 1e-250;
            j0 *= 1e-250;
            j1 *= 1e-250;
        }
        // j now holds J_{k-1}
        if (k - 1) % 2 == 0 && k > 1 {
            sum += 2.0 * j;
        }
        if k == 2 {
            j1 = j;
        }
        if k == 1 {
            j0 = j;
        }
    }
    let norm = j0 + sum;
    (j0 / norm, j1 / norm)
}

/// Slowly varying Hankel amplitude `M_ν(z)` with `J_ν(z) = Re[M_ν(z) e^{iz}]`,
/// valid for `z ≥ HANKEL_SWITCH` and `ν ∈ {0, 1}`.
pub fn hankel_amplitude(order: u32, z: f64) -> Complex64 {
    let mu = 4.0 * (order * order) as f64;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        term *= Complex64::new(0.0, 1.0) * ((mu - odd * odd) / (k as f64 * 8.0 * z));
        let size = term.norm();
        if size > prev {
            break;
        }
        sum += term;
        prev = size;
        if size < 1e-17 {
            break;
        }
    }
    let phase = -(order as f64 * FRAC_PI_2 + FRAC_PI_4);
    sum * Complex64::from_polar((2.0 / (PI * z)).sqrt(), phase)
}

fn hankel_eval(order: u32, z: f64) -> f64 {
    let m = hankel_amplitude(order, z);
    m.re * z.cos() - m.im * z.sin()
}

/// Bessel function J₀.
pub fn j0(x: f64) -> f64 {
    let x = x.abs();
    if x >= HANKEL_SWITCH {
        hankel_eval(0, x)
    } else {
        miller(x).0
    }
}

/// Bessel function J₁.
pub fn j1(x: f64) -> f64 {
    let (s, a) = (x.signum(), x.abs());
    let v = if a >= HANKEL_SWITCH { hankel_eval(1, a) } else { miller(a).1 };
    s * v
}

/// `1 − J₀(x)` without cancellation for small `x`.
pub fn one_minus_j0(x: f64) -> f64 {
    let x = x.abs();
    if x < 1.0 {
        let q = -0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..30 {
            term *= q / (k * k) as f64;
            sum -= term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        1.0 - j0(x)
    }
}

/// `1 − cos x` without cancellation.
pub fn one_minus_cos(x: f64) -> f64 {
    let s = (0.5 * x).sin();
    2.0 * s * s
}

/// `1 − sin(x)/x` without cancellation for small `x`.
pub fn one_minus_sinc(x: f64) -> f64 {
    let x = x.abs();
    if x < 0.5 {
        let q = -x * x;
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..20 {
            term *= q / ((2 * k) * (2 * k + 1)) as f64;
            sum -= term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        1.0 - x.sin() / x
    }
}

/// `1 − Φ_d(x)` where `Φ_d` is the radial Fourier transform of the uniform
/// measure on `S^{d−1}`: cos for d=1, J₀ for d=2, sin x/x for d=3.
pub fn one_minus_spherical(d: usize, x: f64) -> f64 {
    match d {
        1 => one_minus_cos(x),
        2 => one_minus_j0(x),
        _ => one_minus_sinc(x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn bessel_integral(n: u32, x: f64) -> f64 {
        // J_n(x) = (1/π)∫₀^π cos(nτ − x sin τ) dτ, composite Simpson on a fine grid
        let m = 20_000;
        let h = PI / m as f64;
        let f = |tau: f64| (n as f64 * tau - x * tau.sin()).cos();
        let mut s = f(0.0) + f(PI);
        for i in 1..m {
            s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0 / PI
    }

    #[test]
    fn bessel_reference_values() {
        assert_relative_eq!(j0(2.1752), 0.12419296628748941, max_relative = 1e-13);
        assert_relative_eq!(j0(-5.1), -0.14433474706050065, max_relative = 1e-13);
        assert_relative_eq!(j0(2345.13), 0.012425605700760064, max_relative = 1e-11);
        assert_relative_eq!(j1(1.0), 0.44005058574493355, max_relative = 1e-13);
        assert_relative_eq!(j1(10.0), 0.04347274616886144, max_relative = 1e-12);
    }

    #[test]
    fn bessel_matches_integral_representation() {
        for &x in &[0.3, 1.7, 4.0, 9.5, 17.0, 24.9, 25.1, 31.0, 60.0] {
            assert!((j0(x) - bessel_integral(0, x)).abs() < 1e-13, "j0({x})");
            assert!((j1(x) - bessel_integral(1, x)).abs() < 1e-13, "j1({x})");
        }
    }

    #[test]
    fn small_argument_complements() {
        for &x in &[0.2, 0.9, 1.1, 3.0] {
            assert_relative_eq!(one_minus_j0(x), 1.0 - bessel_integral(0, x), max_relative = 1e-6);
            assert_relative_eq!(one_minus_cos(x), 2.0 * (x / 2.0).sin().powi(2));
        }
        assert_relative_eq!(one_minus_j0(1e-4), 0.25e-8 - 1e-16 / 64.0, max_relative = 1e-14);
        assert_relative_eq!(one_minus_sinc(1e-3), 1e-6 / 6.0, max_relative = 1e-6);
        assert_relative_eq!(one_minus_sinc(2.0), 1.0 - 2f64.sin() / 2.0, max_relative = 1e-14);
    }

    #[test]
    fn gamma_half_is_root_pi() {
        assert_relative_eq!(gamma(0.5), PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(sphere_area(2), 2.0 * PI);
        assert_relative_eq!(ball_volume(2), PI, max_relative = 1e-14);
        assert_relative_eq!(ball_volume(1), 2.0, max_relative = 1e-14);
    }
}
