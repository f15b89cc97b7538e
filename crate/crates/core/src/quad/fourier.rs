use super::gk::{integrate, Estimate, Tolerance};
use num_complex::Complex64;
use std::sync::OnceLock;

const N: usize = 32;

struct Tables {
    /// cos(π m / N) for m in 0..2N
    cos: [f64; 2 * N],
    /// deriv[m][k] = T_k^{(m)}(1)
    deriv: Vec<[f64; N + 1]>,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut cos = [0.0; 2 * N];
        for (m, c) in cos.iter_mut().enumerate() {
            *c = (std::f64::consts::PI * m as f64 / N as f64).cos();
        }
        let mut deriv = vec![[0.0; N + 1]; N + 1];
        for k in 0..=N {
            let mut v = 1.0;
            deriv[0][k] = 1.0;
            for m in 1..=N {
                let j = (m - 1) as f64;
                v *= ((k * k) as f64 - j * j) / (2.0 * j + 1.0);
                deriv[m][k] = v;
            }
        }
        Tables { cos, deriv }
    })
}

#[derive(Debug, Clone, Copy)]
pub struct FourierOptions {
    pub tol: Tolerance,
    /// Minimum `ω·h` for a Chebyshev panel; narrower pieces use Gauss–Kronrod.
    pub min_phase: f64,
    pub max_panels: usize,
}

impl Default for FourierOptions {
    fn default() -> Self {
        FourierOptions { tol: Tolerance::new(1e-16, 1e-12), min_phase: 128.0, max_panels: 4000 }
    }
}

struct Panel {
    value: Complex64,
    /// sup-norm estimate of the interpolation error
    tail: f64,
    scale: f64,
    /// derivatives of the interpolant at the right end
    right: [Complex64; N + 1],
}

fn cheb_panel<A: Fn(f64) -> Complex64>(amp: &A, omega: f64, p: f64, q: f64) -> Panel {
    let t = tables();
    let mid = 0.5 * (p + q);
    let half = 0.5 * (q - p);
    let mut f = [Complex64::new(0.0, 0.0); N + 1];
    for (j, fj) in f.iter_mut().enumerate() {
        *fj = if j == 0 {
            amp(q)
        } else if j == N {
            amp(p)
        } else {
            amp(mid + half * t.cos[j])
        };
    }
    let mut c = [Complex64::new(0.0, 0.0); N + 1];
    for (k, ck) in c.iter_mut().enumerate() {
        let mut s = 0.5 * (f[0] + f[N] * if k % 2 == 0 { 1.0 } else { -1.0 });
        for j in 1..N {
            s += f[j] * t.cos[(j * k) % (2 * N)];
        }
        *ck = s * (2.0 / N as f64);
    }
    c[0] *= 0.5;
    c[N] *= 0.5;
    let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tail = c[N].norm() + c[N - 1].norm() + c[N - 2].norm();

    // endpoint derivative sums: S_m(±1) = Σ_k c_k T_k^{(m)}(±1)
    let iw = Complex64::new(0.0, omega);
    let r = 1.0 / (iw * half);
    let eq = Complex64::from_polar(1.0, omega * q);
    let ep = Complex64::from_polar(1.0, omega * p);
    let mut value = Complex64::new(0.0, 0.0);
    let mut right = [Complex64::new(0.0, 0.0); N + 1];
    let mut rpow = Complex64::new(1.0, 0.0) / iw;
    let mut dscale = 1.0;
    for m in 0..=N {
        let mut sp = Complex64::new(0.0, 0.0);
        let mut sm = Complex64::new(0.0, 0.0);
        for k in 0..=N {
            let v = c[k] * t.deriv[m][k];
            sp += v;
            if (k + m) % 2 == 0 {
                sm += v;
            } else {
                sm -= v;
            }
        }
        right[m] = sp * dscale;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        value += (eq * sp - ep * sm) * rpow * sign;
        rpow *= r;
        dscale /= half;
    }
    Panel { value, tail, scale, right }
}

/// `∫_x^∞ e^{iωs} P(s) ds` from the derivatives of a smooth continuation at `x`.
fn endpoint_remainder(omega: f64, x: f64, derivs: &[Complex64]) -> Complex64 {
    let inv = Complex64::new(0.0, -1.0 / omega);
    let mut s = Complex64::new(0.0, 0.0);
    let mut pw = inv;
    let mut prev = f64::INFINITY;
    for (k, d) in derivs.iter().enumerate() {
        let term = d * pw * if k % 2 == 0 { 1.0 } else { -1.0 };
        let size = term.norm();
        if !size.is_finite() || size > prev {
            break;
        }
        prev = size;
        s += term;
        if size == 0.0 {
            break;
        }
        pw *= inv;
    }
    -Complex64::from_polar(1.0, omega * x) * s
}

/// `∫_b^∞ e^{iωx} x^{−p} dx` by its asymptotic series; needs `ω b ≳ 40`.
pub fn power_tail(omega: f64, b: f64, p: f64) -> Complex64 {
    let mut derivs = Vec::with_capacity(80);
    let mut d = b.powf(-p);
    for k in 0..80 {
        derivs.push(Complex64::new(d, 0.0));
        d *= -(p + k as f64) / b;
    }
    endpoint_remainder(omega, b, &derivs)
}

fn direct<A: Fn(f64) -> Complex64>(amp: &A, omega: f64, p: f64, q: f64, tol: Tolerance) -> Estimate<Complex64> {
    let period = 2.0 * std::f64::consts::PI / omega.abs().max(1e-300);
    let n = ((q - p) / period).ceil().clamp(1.0, 256.0) as usize;
    let pts: Vec<f64> = (0..=n).map(|k| p + (q - p) * k as f64 / n as f64).collect();
    integrate(|x| amp(x) * Complex64::from_polar(1.0, omega * x), &pts, tol)
}

/// `∫_a^b e^{iωx} A(x) dx` for a smooth (piecewise smooth between `breaks`)
/// complex amplitude `A`. `b` may be infinite when `A` decays; the march then
/// stops once `|A|` is negligible and adds an endpoint correction.
pub fn fourier<A: Fn(f64) -> Complex64>(
    amp: A,
    omega: f64,
    a: f64,
    b: f64,
    breaks: &[f64],
    opts: &FourierOptions,
) -> Estimate<Complex64> {
    let mut pts = vec![a];
    pts.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    pts.push(b);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut total = Estimate { value: Complex64::new(0.0, 0.0), error: 0.0, evaluations: 0, converged: true };
    for w in pts.windows(2) {
        let e = segment(&amp, omega, w[0], w[1], opts);
        total.value += e.value;
        total.error += e.error;
        total.evaluations += e.evaluations;
        total.converged &= e.converged;
    }
    total
}

fn segment<A: Fn(f64) -> Complex64>(amp: &A, omega: f64, p: f64, q: f64, opts: &FourierOptions) -> Estimate<Complex64> {
    let hmin = opts.min_phase / omega.abs().max(1e-300);
    if omega == 0.0 || (q.is_finite() && q - p < 2.0 * hmin) {
        return direct(amp, omega, p, q, opts.tol);
    }
    let mut out = Estimate { value: Complex64::new(0.0, 0.0), error: 0.0, evaluations: 0, converged: true };
    let mut x = p;
    let mut stack: Vec<(f64, f64)> = Vec::new();
    let mut panels = 0;
    loop {
        let mut h = hmin.max(x);
        let mut last = false;
        if q.is_finite() && x + h + 0.5 * hmin >= q {
            h = q - x;
            last = true;
        }
        let right = x + h;
        stack.push((x, right));
        let mut right_derivs = None;
        let mut panel_peak: f64 = 0.0;
        while let Some((u, v)) = stack.pop() {
            panels += 1;
            let pan = cheb_panel(amp, omega, u, v);
            out.evaluations += N + 1;
            panel_peak = panel_peak.max(pan.scale);
            let ok = pan.tail <= 1e-13 * pan.scale || pan.tail * (v - u) <= 0.05 * opts.tol.abs;
            if ok || panels > opts.max_panels {
                out.value += pan.value;
                out.error += pan.tail * (v - u).min(8.0 / omega.abs());
                if !ok {
                    out.converged = false;
                }
                if v == right {
                    right_derivs = Some(pan.right);
                }
            } else if 0.5 * (v - u) >= hmin {
                let m = 0.5 * (u + v);
                stack.push((m, v));
                stack.push((u, m));
            } else {
                let e = direct(amp, omega, u, v, opts.tol);
                out.value += e.value;
                out.error += e.error;
                out.evaluations += e.evaluations;
                out.converged &= e.converged;
            }
        }
        x = right;
        if last {
            break;
        }
        if !q.is_finite() && (panel_peak / omega.abs() <= 1e-3 * opts.tol.abs || panels > opts.max_panels) {
            if let Some(d) = right_derivs {
                out.value += endpoint_remainder(omega, x, &d);
            } else {
                let a = amp(x);
                out.value += -Complex64::from_polar(1.0, omega * x) * a / Complex64::new(0.0, omega);
            }
            out.converged &= panels <= opts.max_panels;
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_transform() {
        // ∫_0^∞ cos(ωx) e^{−x²} dx = (√π/2) e^{−ω²/4}
        for &w in &[0.5, 3.0, 20.0] {
            let e = fourier(|x| Complex64::new((-x * x).exp(), 0.0), w, 0.0, 12.0, &[], &FourierOptions::default());
            let exact = std::f64::consts::PI.sqrt() / 2.0 * (-w * w / 4.0).exp();
            assert!((e.value.re - exact).abs() < 1e-14, "w={w}: {} vs {}", e.value.re, exact);
        }
    }

    #[test]
    fn laplace_kernel_wide_range() {
        // ∫_0^∞ cos(ωx) e^{−εx} dx = ε/(ε²+ω²), large range of x
        let eps = 1e-4;
        let w = 3.0;
        let e = fourier(|x| Complex64::new((-eps * x).exp(), 0.0), w, 0.0, 4e5, &[], &FourierOptions::default());
        let tail = (-eps * 4e5f64).exp();
        let exact = eps / (eps * eps + w * w);
        assert!((e.value.re - exact).abs() < 1e-12 + tail, "{} vs {}", e.value.re, exact);
        let e = fourier(|x| Complex64::new((-eps * x).exp(), 0.0), w, 0.0, f64::INFINITY, &[], &FourierOptions::default());
        assert!((e.value.re - exact).abs() < 1e-13);
        assert_relative_eq!(e.value.im, w / (eps * eps + w * w), max_relative = 1e-12);
    }

    #[test]
    fn sine_integral_tail() {
        // ∫_b^∞ sin(x)/x dx = π/2 − Si(b); Si(100) = 1.5622254668890563
        let t = power_tail(1.0, 100.0, 1.0);
        assert!((t.im - (std::f64::consts::FRAC_PI_2 - 1.5622254668890563)).abs() < 1e-15);
    }

    #[test]
    fn singular_amplitude_near_origin() {
        // ∫_0^∞ sin(x) x^{-1/2} dx = √(π/2)
        let e = fourier(
            |x| Complex64::new(if x > 0.0 { x.powf(-0.5) } else { 0.0 }, 0.0),
            1.0,
            0.0,
            1e4,
            &[],
            &FourierOptions::default(),
        );
        let total = e.value + power_tail(1.0, 1e4, 0.5);
        assert_relative_eq!(total.im, (std::f64::consts::PI / 2.0).sqrt(), max_relative = 1e-11);
    }
}
