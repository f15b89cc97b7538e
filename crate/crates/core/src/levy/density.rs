//! Transition densities and tails by Fourier inversion.

use super::LevyModel;
use crate::error::{Error, Result};
use crate::quad::{fourier, integrate, FourierOptions, Tolerance};
use crate::special::{hankel_amplitude, j0, j1, HANKEL_SWITCH};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `tψ*` level past which `e^{−tψ}` is dropped.
const CUTOFF_LEVEL: f64 = 40.0;

/// Law of `X_t` for a fixed model and time, with its frequency scales.
#[derive(Debug, Clone)]
pub struct TransitionLaw<'a> {
    model: &'a LevyModel,
    t: f64,
    /// ψ⁻(1/t)
    xi_scale: f64,
    /// ψ⁻(40/t)
    xi_max: f64,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl<'a> TransitionLaw<'a> {
    pub fn new(model: &'a LevyModel, t: f64) -> Result<TransitionLaw<'a>> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(format!("time must be positive, got {t}")));
        }
        match model.dim() {
            1 => {}
            2 if model.is_isotropic() => {}
            2 => return Err(Error::Incompatible("planar inversion needs an isotropic model".into())),
            d => return Err(Error::Unsupported(format!("Fourier inversion in dimension {d}"))),
        }
        if model.has_finite_activity() {
            return Err(Error::Incompatible(format!(
                "{} has a bounded exponent; X_t has atoms and no density",
                model.kind().name()
            )));
        }
        let xi_scale = model.psi_inverse_unchecked(1.0 / t)?;
        let xi_max = model.psi_inverse_unchecked(CUTOFF_LEVEL / t)?.max(xi_scale);
        if !(xi_scale > 0.0 && xi_max.is_finite()) {
            return Err(Error::Numerical(format!("degenerate frequency scale at t = {t:e}")));
        }
        Ok(TransitionLaw { model, t, xi_scale, xi_max })
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    /// Spatial scale `1/ψ⁻(1/t)` of `X_t`.
    pub fn spatial_scale(&self) -> f64 {
        1.0 / self.xi_scale
    }

    /// Frequency beyond which the characteristic function is dropped.
    pub fn truncation(&self) -> f64 {
        self.xi_max
    }

    /// `E e^{iξX_t}` on the line (ξ ≥ 0) or the radial characteristic function.
    pub fn char_fn(&self, xi: f64) -> Complex64 {
        (-self.t * self.model.exponent_1d(xi)).exp()
    }

    /// `1 − Re E e^{iξX_t}` without cancellation.
    fn one_minus_re_char(&self, xi: f64) -> f64 {
        let z = self.t * self.model.exponent_1d(xi);
        let s = (0.5 * z.im).sin();
        -(-z.re).exp_m1() + (-z.re).exp() * 2.0 * s * s
    }

    fn breaks(&self, lowest: i32) -> Vec<f64> {
        let mut out = Vec::new();
        let mut k = lowest;
        loop {
            let x = self.xi_scale * 2f64.powi(k);
            if x >= self.xi_max {
                break;
            }
            out.push(x);
            k += 1;
        }
        out.push(self.xi_max);
        out
    }

    fn opts(&self, abs: f64) -> FourierOptions {
        FourierOptions { tol: Tolerance::new(abs, 1e-12), ..FourierOptions::default() }
    }

    /// `d/dξ E e^{iξX_t}`, set to 0 at the origin where it may be singular.
    fn char_fn_derivative(&self, xi: f64) -> Complex64 {
        if xi <= 0.0 {
            return c(0.0);
        }
        -self.t * self.model.exponent_derivative(xi) * self.char_fn(xi)
    }

    /// Density at `x` (signed on the line, radial in the plane).
    pub fn density(&self, x: f64) -> f64 {
        match self.model.dim() {
            1 => self.density_1d(x),
            _ => self.density_2d(x.abs()),
        }
    }

    fn at_origin(&self, weight: impl Fn(f64) -> f64) -> f64 {
        let mut pts = vec![0.0];
        pts.extend(self.breaks(-4));
        let tol = Tolerance::new(0.0, 1e-13);
        integrate(|xi| self.char_fn(xi).re * weight(xi), &pts, tol).value
    }

    // Away from the origin the transform is integrated by parts so that the
    // amplitude is Φ′ = −tψ′Φ, which is small wherever the oscillation is slow.
    fn density_1d(&self, x: f64) -> f64 {
        if x == 0.0 {
            return self.at_origin(|_| 1.0) / PI;
        }
        let br = self.breaks(-4);
        let opts = self.opts(1e-17);
        let flip = x > 0.0;
        let est = fourier(
            |xi| {
                let d = self.char_fn_derivative(xi);
                if flip {
                    d.conj()
                } else {
                    d
                }
            },
            x.abs(),
            0.0,
            self.xi_max,
            &br,
            &opts,
        );
        let j = if flip { est.value.conj() } else { est.value };
        (j / Complex64::new(0.0, x)).re / PI
    }

    /// `p(s) + p(−s)` on the line; `2πs·p(s)` in the plane, i.e. the
    /// density of `‖X_t‖`.
    pub fn radial_density(&self, s: f64) -> f64 {
        let s = s.abs();
        match self.model.dim() {
            1 => {
                if s == 0.0 {
                    return 2.0 * self.at_origin(|_| 1.0) / PI;
                }
                let br = self.breaks(-4);
                let opts = self.opts(1e-17);
                let est = fourier(|xi| c(self.char_fn_derivative(xi).re), s, 0.0, self.xi_max, &br, &opts);
                -2.0 * est.value.im / (PI * s)
            }
            _ => 2.0 * PI * s * self.density_2d(s),
        }
    }

    /// `∫₀^∞ K(rξ) A(ξ) dξ` for a Bessel kernel of order 0 or 1, switching
    /// to the Hankel amplitude once `rξ ≥ HANKEL_SWITCH`.
    fn bessel_transform(&self, order: u32, r: f64, amp: impl Fn(f64) -> f64, tol: Tolerance) -> f64 {
        let br = self.breaks(-4);
        let split = (HANKEL_SWITCH / r).min(self.xi_max);
        let mut pts = vec![0.0];
        pts.extend(br.iter().copied().filter(|&b| b < split));
        pts.push(split);
        let kernel = |z: f64| if order == 0 { j0(z) } else { j1(z) };
        let near = integrate(|xi| kernel(r * xi) * amp(xi), &pts, tol).value;
        let far = if split < self.xi_max {
            let opts = FourierOptions { tol, ..FourierOptions::default() };
            fourier(|xi| hankel_amplitude(order, r * xi) * amp(xi), r, split, self.xi_max, &br, &opts).value.re
        } else {
            0.0
        };
        near + far
    }

    fn density_2d(&self, s: f64) -> f64 {
        if s == 0.0 {
            return self.at_origin(|xi| xi) / (2.0 * PI);
        }
        let tol = Tolerance::new(1e-17 * self.xi_scale, 1e-12);
        let v = self.bessel_transform(1, s, |xi| -xi * self.char_fn_derivative(xi).re, tol);
        v / (2.0 * PI * s)
    }

    /// `P(‖X_t‖ > r)`.
    pub fn tail(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 1.0;
        }
        let v = match self.model.dim() {
            1 => self.tail_1d(r),
            _ => self.tail_2d(r),
        };
        v.clamp(0.0, 1.0)
    }

    fn tail_1d(&self, r: f64) -> f64 {
        let b = self.xi_max.max(64.0 / r);
        let mut br = self.breaks(-40);
        br.push(b);
        let opts = self.opts(1e-17);
        let est = fourier(
            |xi| if xi > 0.0 { c(self.one_minus_re_char(xi) / xi) } else { c(0.0) },
            r,
            0.0,
            b,
            &br,
            &opts,
        );
        let rest = crate::quad::power_tail(r, b, 1.0);
        2.0 / PI * (est.value.im + rest.im)
    }

    fn tail_2d(&self, r: f64) -> f64 {
        let tol = Tolerance::new(1e-17, 1e-12);
        self.bessel_transform(0, r, |xi| -self.char_fn_derivative(xi).re, tol)
    }
}

/// Transition density `p_t` at radius `s` (signed point on the line).
pub fn density_radial(model: &LevyModel, t: f64, s: f64) -> Result<f64> {
    if model.dim() == 2 && s < 0.0 {
        return Err(Error::InvalidArgument(format!("radius must be ≥ 0, got {s}")));
    }
    Ok(TransitionLaw::new(model, t)?.density(s))
}

/// `P(‖X_t‖ > r)`.
pub fn tail_probability(model: &LevyModel, t: f64, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be ≥ 0, got {r}")));
    }
    Ok(TransitionLaw::new(model, t)?.tail(r))
}
