//! Catalogue of Lévy models with their exponents, Pruitt functions and
//! transition densities.

mod density;
mod exponent;
mod measure;

pub use density::{density_radial, tail_probability, TransitionLaw};
pub use exponent::{generalized_inverse, radial_psi_exact, running_sup, PsiTable, SupTable};
pub use measure::{Atom, LevyMeasure, Profile};

use crate::error::{Error, Result};
use crate::special::{gamma, one_minus_cos};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

fn one() -> usize {
    1
}

/// Config-facing description of a model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    Brownian {
        #[serde(default = "one")]
        dim: usize,
        eta: f64,
    },
    /// ψ(ξ) = c‖ξ‖^α; give either `c` or the Lévy density constant `c1`.
    IsotropicStable {
        #[serde(default = "one")]
        dim: usize,
        alpha: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c1: Option<f64>,
    },
    BrownianPlusStable {
        #[serde(default = "one")]
        dim: usize,
        eta: f64,
        c: f64,
        alpha: f64,
    },
    RadialDensity {
        #[serde(default = "one")]
        dim: usize,
        alpha: f64,
        profile: Profile,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c1: Option<f64>,
    },
    DiscreteDyadic {
        alpha: f64,
        c: f64,
    },
    #[serde(rename = "asym_stable_1d")]
    AsymStable1d {
        alpha: f64,
        c1: f64,
        c2: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gamma: Option<f64>,
    },
    /// Finite Lévy measure plus a deterministic velocity `drift`.
    CompoundPoissonDrift {
        #[serde(default = "one")]
        dim: usize,
        #[serde(default)]
        atoms: Vec<Atom>,
        drift: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelKind {
    Brownian { eta: f64 },
    IsotropicStable { alpha: f64, c: f64 },
    BrownianPlusStable { eta: f64, c: f64, alpha: f64 },
    RadialDensity { profile: Profile, alpha: f64, c1: f64 },
    DiscreteDyadic { alpha: f64, c: f64 },
    AsymStable1d { alpha: f64, c1: f64, c2: f64, gamma: f64 },
    CompoundPoissonDrift { atoms: Vec<Atom>, velocity: Vec<f64> },
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Brownian { .. } => "brownian",
            ModelKind::IsotropicStable { .. } => "isotropic_stable",
            ModelKind::BrownianPlusStable { .. } => "brownian_plus_stable",
            ModelKind::RadialDensity { .. } => "radial_density",
            ModelKind::DiscreteDyadic { .. } => "discrete_dyadic",
            ModelKind::AsymStable1d { .. } => "asym_stable_1d",
            ModelKind::CompoundPoissonDrift { .. } => "compound_poisson_drift",
        }
    }
}

/// Exponent constant `c` of the isotropic α-stable law with Lévy density
/// `c₁‖y‖^{−d−α}` in dimension `d`.
pub fn stable_constant(dim: usize, alpha: f64, c1: f64) -> f64 {
    let d = dim as f64;
    c1 * PI.powf(d / 2.0) * gamma(1.0 - alpha / 2.0) / (alpha * 2f64.powf(alpha - 1.0) * gamma((d + alpha) / 2.0))
}

/// A Lévy process in ℝ^d given by its triplet `(ηI, γ, ν)`.
#[derive(Debug, Clone)]
pub struct LevyModel {
    dim: usize,
    kind: ModelKind,
    eta: f64,
    gamma: Vec<f64>,
    measure: LevyMeasure,
    psi_table: Arc<OnceLock<PsiTable>>,
    sup_table: Arc<OnceLock<SupTable>>,
}

impl PartialEq for LevyModel {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.kind == other.kind
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidModel(msg()))
    }
}

fn check_dim(dim: usize) -> Result<()> {
    check((1..=3).contains(&dim), || format!("dimension {dim} not in 1..=3"))
}

fn check_alpha(alpha: f64, upper_inclusive: bool) -> Result<()> {
    let ok = alpha > 0.0 && (alpha < 2.0 || (upper_inclusive && alpha == 2.0));
    check(ok, || format!("alpha = {alpha} outside {}", if upper_inclusive { "(0, 2]" } else { "(0, 2)" }))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

impl LevyModel {
    fn assemble(dim: usize, kind: ModelKind, eta: f64, gamma: Vec<f64>, measure: LevyMeasure) -> Result<LevyModel> {
        let m = LevyModel {
            dim,
            kind,
            eta,
            gamma,
            measure,
            psi_table: Arc::new(OnceLock::new()),
            sup_table: Arc::new(OnceLock::new()),
        };
        let li = m.measure.levy_integral();
        check(li.is_finite(), || format!("∫(1 ∧ ‖y‖²)ν(dy) = {li} is not finite"))?;
        Ok(m)
    }

    pub fn brownian(dim: usize, eta: f64) -> Result<LevyModel> {
        check_dim(dim)?;
        check(eta > 0.0 && eta.is_finite(), || format!("eta must be positive, got {eta}"))?;
        Self::assemble(dim, ModelKind::Brownian { eta }, eta, vec![0.0; dim], LevyMeasure::Zero)
    }

    /// ψ(ξ) = c‖ξ‖^α. For α = 2 this is Brownian motion with η = c.
    pub fn isotropic_stable(dim: usize, alpha: f64, c: f64) -> Result<LevyModel> {
        check_dim(dim)?;
        check_alpha(alpha, true)?;
        check(c > 0.0 && c.is_finite(), || format!("c must be positive, got {c}"))?;
        let kind = ModelKind::IsotropicStable { alpha, c };
        if alpha == 2.0 {
            return Self::assemble(dim, kind, c, vec![0.0; dim], LevyMeasure::Zero);
        }
        let c1 = c / stable_constant(dim, alpha, 1.0);
        Self::assemble(dim, kind, 0.0, vec![0.0; dim], LevyMeasure::Radial { dim, c1, alpha, profile: None })
    }

    /// Isotropic α-stable with Lévy density `c₁‖y‖^{−d−α}`.
    pub fn isotropic_stable_c1(dim: usize, alpha: f64, c1: f64) -> Result<LevyModel> {
        check_alpha(alpha, false)?;
        Self::isotropic_stable(dim, alpha, stable_constant(dim, alpha, c1))
    }

    pub fn brownian_plus_stable(dim: usize, eta: f64, c: f64, alpha: f64) -> Result<LevyModel> {
        check_dim(dim)?;
        check_alpha(alpha, false)?;
        check(eta > 0.0 && c > 0.0, || "eta and c must be positive".into())?;
        let c1 = c / stable_constant(dim, alpha, 1.0);
        Self::assemble(
            dim,
            ModelKind::BrownianPlusStable { eta, c, alpha },
            eta,
            vec![0.0; dim],
            LevyMeasure::Radial { dim, c1, alpha, profile: None },
        )
    }

    pub fn radial(dim: usize, profile: Profile, alpha: f64, c1: f64) -> Result<LevyModel> {
        check_dim(dim)?;
        check_alpha(alpha, false)?;
        check(c1 > 0.0 && c1.is_finite(), || format!("c1 must be positive, got {c1}"))?;
        profile.validate(alpha).map_err(Error::InvalidModel)?;
        Self::assemble(
            dim,
            ModelKind::RadialDensity { profile, alpha, c1 },
            0.0,
            vec![0.0; dim],
            LevyMeasure::Radial { dim, c1, alpha, profile: Some(profile) },
        )
    }

    /// ψ(x) = c|x|^α + 2Σ_k 2^{kα/2}(1 − cos(x2^{−k})) on the line.
    pub fn discrete_dyadic(alpha: f64, c: f64) -> Result<LevyModel> {
        check_alpha(alpha, false)?;
        check(c > 0.0 && c.is_finite(), || format!("c must be positive, got {c}"))?;
        let c1 = c / stable_constant(1, alpha, 1.0);
        Self::assemble(
            1,
            ModelKind::DiscreteDyadic { alpha, c },
            0.0,
            vec![0.0],
            LevyMeasure::Sum(vec![
                LevyMeasure::Radial { dim: 1, c1, alpha, profile: None },
                LevyMeasure::Dyadic { alpha },
            ]),
        )
    }

    /// Lévy density `c₁y^{−1−α}` on y > 0 and `c₂|y|^{−1−α}` on y < 0, with
    /// triplet drift `gamma`.
    pub fn asym_stable_1d(alpha: f64, c1: f64, c2: f64, gamma: f64) -> Result<LevyModel> {
        check_alpha(alpha, false)?;
        check(c1 >= 0.0 && c2 >= 0.0 && c1 + c2 > 0.0, || format!("need c1, c2 ≥ 0 and c1 + c2 > 0, got {c1}, {c2}"))?;
        check(gamma.is_finite(), || "gamma must be finite".into())?;
        check(alpha != 1.0 || c1 == c2, || "alpha = 1 requires c1 = c2".into())?;
        Self::assemble(
            1,
            ModelKind::AsymStable1d { alpha, c1, c2, gamma },
            0.0,
            vec![gamma],
            LevyMeasure::TwoSided { alpha, c_pos: c1, c_neg: c2 },
        )
    }

    /// Compound Poisson jumps plus deterministic motion: `X_t = t·velocity + Σ jumps`.
    pub fn compound_poisson(dim: usize, atoms: Vec<Atom>, velocity: Vec<f64>) -> Result<LevyModel> {
        check_dim(dim)?;
        check(velocity.len() == dim, || "drift has wrong dimension".into())?;
        check(velocity.iter().all(|v| v.is_finite()), || "drift must be finite".into())?;
        for a in &atoms {
            check(a.location.len() == dim, || "atom location has wrong dimension".into())?;
            check(a.mass > 0.0 && a.mass.is_finite(), || format!("atom mass must be positive, got {}", a.mass))?;
            check(norm(&a.location) > 0.0 && a.location.iter().all(|x| x.is_finite()), || {
                "atoms must sit away from the origin".into()
            })?;
        }
        let measure = if atoms.is_empty() { LevyMeasure::Zero } else { LevyMeasure::Atomic(atoms.clone()) };
        let inner = measure.inner_mean(dim);
        let gamma = velocity.iter().zip(&inner).map(|(v, m)| v + m).collect();
        Self::assemble(dim, ModelKind::CompoundPoissonDrift { atoms, velocity }, 0.0, gamma, measure)
    }

    pub fn from_spec(spec: &ModelSpec) -> Result<LevyModel> {
        match spec {
            ModelSpec::Brownian { dim, eta } => Self::brownian(*dim, *eta),
            ModelSpec::IsotropicStable { dim, alpha, c, c1 } => match (c, c1) {
                (Some(c), None) => Self::isotropic_stable(*dim, *alpha, *c),
                (None, Some(c1)) => Self::isotropic_stable_c1(*dim, *alpha, *c1),
                _ => Err(Error::InvalidModel("isotropic_stable needs exactly one of c, c1".into())),
            },
            ModelSpec::BrownianPlusStable { dim, eta, c, alpha } => Self::brownian_plus_stable(*dim, *eta, *c, *alpha),
            ModelSpec::RadialDensity { dim, alpha, profile, c1 } => {
                Self::radial(*dim, *profile, *alpha, c1.unwrap_or(1.0))
            }
            ModelSpec::DiscreteDyadic { alpha, c } => Self::discrete_dyadic(*alpha, *c),
            ModelSpec::AsymStable1d { alpha, c1, c2, gamma } => {
                Self::asym_stable_1d(*alpha, *c1, *c2, gamma.unwrap_or(0.0))
            }
            ModelSpec::CompoundPoissonDrift { dim, atoms, drift } => {
                Self::compound_poisson(*dim, atoms.clone(), drift.clone())
            }
        }
    }

    pub fn spec(&self) -> ModelSpec {
        match &self.kind {
            ModelKind::Brownian { eta } => ModelSpec::Brownian { dim: self.dim, eta: *eta },
            ModelKind::IsotropicStable { alpha, c } => {
                ModelSpec::IsotropicStable { dim: self.dim, alpha: *alpha, c: Some(*c), c1: None }
            }
            ModelKind::BrownianPlusStable { eta, c, alpha } => {
                ModelSpec::BrownianPlusStable { dim: self.dim, eta: *eta, c: *c, alpha: *alpha }
            }
            ModelKind::RadialDensity { profile, alpha, c1 } => {
                ModelSpec::RadialDensity { dim: self.dim, alpha: *alpha, profile: *profile, c1: Some(*c1) }
            }
            ModelKind::DiscreteDyadic { alpha, c } => ModelSpec::DiscreteDyadic { alpha: *alpha, c: *c },
            ModelKind::AsymStable1d { alpha, c1, c2, gamma } => {
                ModelSpec::AsymStable1d { alpha: *alpha, c1: *c1, c2: *c2, gamma: Some(*gamma) }
            }
            ModelKind::CompoundPoissonDrift { atoms, velocity } => {
                ModelSpec::CompoundPoissonDrift { dim: self.dim, atoms: atoms.clone(), drift: velocity.clone() }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    /// Gaussian coefficient η (A = ηI).
    pub fn gaussian_coefficient(&self) -> f64 {
        self.eta
    }

    /// Triplet drift γ.
    pub fn drift(&self) -> &[f64] {
        &self.gamma
    }

    pub fn levy_measure(&self) -> &LevyMeasure {
        &self.measure
    }

    /// Declared index α of regular variation of ψ at infinity, if any.
    pub fn index(&self) -> Option<f64> {
        match &self.kind {
            ModelKind::Brownian { .. } | ModelKind::BrownianPlusStable { .. } => Some(2.0),
            ModelKind::IsotropicStable { alpha, .. }
            | ModelKind::RadialDensity { alpha, .. }
            | ModelKind::DiscreteDyadic { alpha, .. }
            | ModelKind::AsymStable1d { alpha, .. } => Some(*alpha),
            ModelKind::CompoundPoissonDrift { .. } => None,
        }
    }

    /// Law of X_t symmetric under x ↦ −x.
    pub fn is_symmetric(&self) -> bool {
        self.measure.is_symmetric() && self.gamma_zero_raw().iter().all(|g| *g == 0.0)
    }

    pub fn is_isotropic(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        self.dim == 1 || !matches!(self.kind, ModelKind::CompoundPoissonDrift { ref atoms, .. } if !atoms.is_empty())
    }

    /// No Gaussian part and `∫_{‖y‖≤1}‖y‖ν(dy) < ∞`.
    pub fn has_finite_variation(&self) -> bool {
        self.eta == 0.0 && self.measure.radial_moment1(1.0).is_finite()
    }

    /// Finite Lévy measure and no Gaussian part (bounded jump rate).
    pub fn has_finite_activity(&self) -> bool {
        self.eta == 0.0 && self.measure.total_mass().is_finite()
    }

    fn gamma_zero_raw(&self) -> Vec<f64> {
        if matches!(self.kind, ModelKind::Brownian { .. } | ModelKind::BrownianPlusStable { .. } | ModelKind::IsotropicStable { .. } | ModelKind::RadialDensity { .. } | ModelKind::DiscreteDyadic { .. }) {
            return vec![0.0; self.dim];
        }
        if let ModelKind::AsymStable1d { alpha, c1, c2, gamma } = self.kind {
            if alpha >= 1.0 {
                // not of finite variation; report the effective centring instead
                return vec![if c1 == c2 { -gamma } else { f64::NAN }];
            }
        }
        let inner = self.measure.inner_mean(self.dim);
        inner.iter().zip(&self.gamma).map(|(m, g)| m - g).collect()
    }

    /// `γ₀ = ∫_{‖y‖≤1} y ν(dy) − γ`, defined for finite-variation models.
    pub fn gamma_zero(&self) -> Result<Vec<f64>> {
        if !self.has_finite_variation() {
            return Err(Error::Incompatible(format!(
                "{} does not have finite variation (needs no Gaussian part and ∫_{{‖y‖≤1}}‖y‖ν(dy) < ∞)",
                self.kind.name()
            )));
        }
        Ok(self.gamma_zero_raw())
    }

    fn need_radial(&self) -> Result<()> {
        if !self.is_isotropic() {
            return Err(Error::Incompatible(format!(
                "{} is not isotropic/symmetric; the radial exponent is undefined",
                self.kind.name()
            )));
        }
        Ok(())
    }

    fn dyadic_series(alpha: f64, r: f64) -> f64 {
        let grow = 2f64.powf(alpha / 2.0);
        let (mut total, mut h, mut weight) = (0.0, 0.5, 2.0 * grow);
        for _ in 0..2000 {
            let term = weight * one_minus_cos(r * h);
            total += term;
            if r * h < 1.0 && term <= 1e-14 * total {
                break;
            }
            h *= 0.5;
            weight *= grow;
        }
        total
    }

    fn psi_unchecked(&self, r: f64) -> f64 {
        match &self.kind {
            ModelKind::Brownian { eta } => eta * r * r,
            ModelKind::IsotropicStable { alpha, c } => c * r.powf(*alpha),
            ModelKind::BrownianPlusStable { eta, c, alpha } => eta * r * r + c * r.powf(*alpha),
            ModelKind::RadialDensity { profile, alpha, c1 } => radial_psi_exact(self.dim, *c1, *alpha, *profile, r),
            ModelKind::DiscreteDyadic { alpha, c } => c * r.powf(*alpha) + Self::dyadic_series(*alpha, r),
            ModelKind::AsymStable1d { .. } => self.exponent_1d(r).re,
            ModelKind::CompoundPoissonDrift { atoms, .. } => {
                atoms.iter().map(|a| a.mass * one_minus_cos(r * a.location[0])).sum()
            }
        }
    }

    /// Radial characteristic exponent ψ(r), `r ≥ 0`.
    pub fn psi(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::InvalidArgument(format!("frequency must be ≥ 0, got {r}")));
        }
        self.need_radial()?;
        Ok(self.psi_unchecked(r))
    }

    fn table(&self) -> Option<&PsiTable> {
        match &self.kind {
            ModelKind::RadialDensity { profile, alpha, c1 } => {
                let (dim, profile, alpha, c1) = (self.dim, *profile, *alpha, *c1);
                Some(self.psi_table.get_or_init(|| {
                    PsiTable::build(
                        |x| radial_psi_exact(dim, c1, alpha, profile, x),
                        stable_constant(dim, alpha, c1),
                        alpha,
                    )
                }))
            }
            _ => None,
        }
    }

    /// ψ through the interpolation table for quadrature-defined exponents.
    pub(crate) fn psi_fast(&self, r: f64) -> f64 {
        match self.table() {
            Some(tab) => tab.eval(r),
            None => self.psi_unchecked(r),
        }
    }

    /// d/dξ of the complex exponent on the line, or of the radial ψ.
    pub(crate) fn exponent_derivative(&self, xi: f64) -> Complex64 {
        let re = match &self.kind {
            ModelKind::Brownian { eta } => 2.0 * eta * xi,
            ModelKind::IsotropicStable { alpha, c } => c * alpha * xi.powf(alpha - 1.0),
            ModelKind::BrownianPlusStable { eta, c, alpha } => 2.0 * eta * xi + c * alpha * xi.powf(alpha - 1.0),
            ModelKind::RadialDensity { .. } => self.table().map_or(0.0, |tab| tab.derivative(xi)),
            ModelKind::DiscreteDyadic { alpha, c } => {
                let grow = 2f64.powf(alpha / 2.0);
                let (mut total, mut h, mut weight) = (c * alpha * xi.powf(alpha - 1.0), 0.5, 2.0 * grow);
                for _ in 0..2000 {
                    let term = weight * h * (xi * h).sin();
                    total += term;
                    if xi * h < 1.0 && term.abs() <= 1e-14 * total.abs() {
                        break;
                    }
                    h *= 0.5;
                    weight *= grow;
                }
                total
            }
            ModelKind::AsymStable1d { alpha, c1, c2, gamma } => {
                let (sig_a, beta) = stable_1d_params(*alpha, *c1, *c2);
                let centre = asym_centre(*alpha, *c1, *c2, *gamma);
                let skew = if *alpha == 1.0 { 0.0 } else { beta * (PI * alpha / 2.0).tan() };
                let g = sig_a * alpha * xi.powf(alpha - 1.0);
                return Complex64::new(g, -g * skew - centre);
            }
            ModelKind::CompoundPoissonDrift { atoms, velocity } => {
                let mut z = Complex64::new(0.0, -velocity[0]);
                for a in atoms {
                    let y = a.location[0];
                    let (s, c) = (xi * y).sin_cos();
                    z += Complex64::new(a.mass * y * s, -a.mass * y * c);
                }
                return z;
            }
        };
        Complex64::new(re, 0.0)
    }

    /// Complex exponent on the line: `E e^{iξX_t} = e^{−tψ(ξ)}`, ξ ≥ 0.
    pub(crate) fn exponent_1d(&self, xi: f64) -> Complex64 {
        match self.kind {
            ModelKind::AsymStable1d { alpha, c1, c2, gamma } => {
                let (sig_a, beta) = stable_1d_params(alpha, c1, c2);
                let centre = asym_centre(alpha, c1, c2, gamma);
                let skew = if alpha == 1.0 { 0.0 } else { beta * (PI * alpha / 2.0).tan() };
                Complex64::new(sig_a * xi.powf(alpha), -sig_a * xi.powf(alpha) * skew - centre * xi)
            }
            ModelKind::CompoundPoissonDrift { ref atoms, ref velocity } => {
                let mut z = Complex64::new(0.0, -velocity[0] * xi);
                for a in atoms {
                    let (s, c) = (xi * a.location[0]).sin_cos();
                    z += Complex64::new(a.mass * (1.0 - c), -a.mass * s);
                }
                z
            }
            _ => Complex64::new(self.psi_fast(xi), 0.0),
        }
    }

    fn monotone_closed(&self) -> bool {
        matches!(
            self.kind,
            ModelKind::Brownian { .. } | ModelKind::IsotropicStable { .. } | ModelKind::BrownianPlusStable { .. } | ModelKind::AsymStable1d { .. }
        )
    }

    fn sup_table(&self) -> &SupTable {
        self.sup_table.get_or_init(|| SupTable::build(&|x| self.psi_fast(x), 1e-12, 1e22, 1024))
    }

    /// `ψ*(r) = sup_{s ≤ r} ψ(s)`.
    pub fn psi_star(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::InvalidArgument(format!("frequency must be ≥ 0, got {r}")));
        }
        self.need_radial()?;
        Ok(self.psi_star_unchecked(r))
    }

    /// Running supremum of Re ψ (defined for every 1D model and isotropic models).
    pub(crate) fn psi_star_unchecked(&self, r: f64) -> f64 {
        if r == 0.0 {
            return 0.0;
        }
        if self.monotone_closed() {
            return self.exponent_1d_or_radial(r);
        }
        self.sup_table().sup(&|x| self.psi_fast(x), r)
    }

    fn exponent_1d_or_radial(&self, r: f64) -> f64 {
        match self.kind {
            ModelKind::AsymStable1d { .. } => self.exponent_1d(r).re,
            _ => self.psi_fast(r),
        }
    }

    /// Generalized inverse `ψ⁻(v) = inf{x ≥ 0 : ψ*(x) ≥ v}`.
    pub fn psi_inverse(&self, v: f64) -> Result<f64> {
        if !(v >= 0.0) {
            return Err(Error::InvalidArgument(format!("level must be ≥ 0, got {v}")));
        }
        self.need_radial()?;
        self.psi_inverse_unchecked(v)
    }

    pub(crate) fn psi_inverse_unchecked(&self, v: f64) -> Result<f64> {
        if v == 0.0 {
            return Ok(0.0);
        }
        let overflow = || Error::OutOfRange(format!("level {v:e} exceeds the reachable range of ψ*"));
        match self.kind {
            ModelKind::Brownian { eta } => Ok((v / eta).sqrt()),
            ModelKind::IsotropicStable { alpha, c } => Ok((v / c).powf(1.0 / alpha)),
            ModelKind::AsymStable1d { alpha, c1, c2, .. } => {
                let (sig_a, _) = stable_1d_params(alpha, c1, c2);
                Ok((v / sig_a).powf(1.0 / alpha))
            }
            ModelKind::BrownianPlusStable { .. } => {
                let (mut lo, mut hi) = (1e-300f64, 1.0f64);
                while self.psi_fast(hi) < v {
                    hi *= 2.0;
                    if !hi.is_finite() {
                        return Err(overflow());
                    }
                }
                for _ in 0..2000 {
                    let mid = (lo * hi).sqrt();
                    if mid <= lo || mid >= hi || hi / lo - 1.0 < 1e-15 {
                        break;
                    }
                    if self.psi_fast(mid) >= v {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                Ok(hi)
            }
            _ => self.sup_table().inverse(&|x| self.psi_fast(x), v).ok_or_else(overflow),
        }
    }

    /// Pruitt function `h(r) = ‖A‖r^{−2} + r^{−1}|γ + ∫y(1_{‖y‖<r} − 1_{‖y‖<1})ν(dy)| + ∫(1 ∧ ‖y‖²r^{−2})ν(dy)`.
    pub fn pruitt_h(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(Error::InvalidArgument(format!("radius must be > 0, got {r}")));
        }
        let shift = self.measure.compensator_shift(self.dim, r);
        let drift = norm(&self.gamma.iter().zip(&shift).map(|(g, s)| g + s).collect::<Vec<_>>());
        let over_sq = |x: f64| if x == 0.0 { 0.0 } else { x / r / r };
        let over = |x: f64| if x == 0.0 { 0.0 } else { x / r };
        Ok(over_sq(self.eta) + over(drift) + over_sq(self.measure.radial_moment2(r)) + self.measure.tail_mass(r))
    }

    /// Solve `h(r) = v` for the decreasing Pruitt function.
    pub fn pruitt_h_inverse(&self, v: f64) -> Result<f64> {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("level must be positive, got {v}")));
        }
        let h = |r: f64| self.pruitt_h(r).unwrap_or(f64::NAN);
        let (mut lo, mut hi) = (1.0f64, 1.0f64);
        while h(lo) < v {
            lo *= 0.5;
            if lo < 1e-150 {
                return Err(Error::OutOfRange(format!("level {v:e} exceeds sup h = {:e}", h(lo))));
            }
        }
        while h(hi) > v {
            hi *= 2.0;
            if hi > 1e150 {
                return Err(Error::OutOfRange(format!("level {v:e} below the range of h")));
            }
        }
        for _ in 0..400 {
            let mid = (lo * hi).sqrt();
            if mid <= lo || mid >= hi {
                break;
            }
            if h(mid) >= v {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let r = if (h(lo) - v).abs() <= (h(hi) - v).abs() { lo } else { hi };
        Ok(r)
    }
}

/// `(σ^α, β)` of the strictly α-stable law with Lévy density
/// `c₁y^{−1−α}1_{y>0} + c₂|y|^{−1−α}1_{y<0}`.
pub fn stable_1d_params(alpha: f64, c1: f64, c2: f64) -> (f64, f64) {
    let beta = (c1 - c2) / (c1 + c2);
    let sig_a = if alpha == 1.0 {
        (c1 + c2) * PI / 2.0
    } else {
        (c1 + c2) * gamma(1.0 - alpha) * (PI * alpha / 2.0).cos() / alpha
    };
    (sig_a, beta)
}

/// Deterministic velocity separating `X_t` from its strictly stable part.
pub fn asym_centre(alpha: f64, c1: f64, c2: f64, gamma: f64) -> f64 {
    if alpha > 1.0 {
        gamma + (c1 - c2) / (alpha - 1.0)
    } else if alpha < 1.0 {
        gamma - (c1 - c2) / (1.0 - alpha)
    } else {
        gamma
    }
}

/// One catalogue row for `list-models`.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogueEntry {
    pub kind: &'static str,
    pub parameters: &'static str,
    pub theorems: &'static str,
}

pub fn catalogue() -> Vec<CatalogueEntry> {
    vec![
        CatalogueEntry { kind: "brownian", parameters: "dim, eta > 0", theorems: "thm1, thm2" },
        CatalogueEntry {
            kind: "isotropic_stable",
            parameters: "dim, alpha in (0,2], c > 0 | c1 > 0",
            theorems: "thm1; prop5 (alpha in [1,2)); thm2 (alpha > 1); alpha1 (alpha = 1); thm3 (alpha < 1)",
        },
        CatalogueEntry {
            kind: "brownian_plus_stable",
            parameters: "dim, eta > 0, c > 0, alpha in (0,2)",
            theorems: "thm1, thm2",
        },
        CatalogueEntry {
            kind: "radial_density",
            parameters: "dim, alpha in (0,2), c1 (default 1), profile: truncated | tempered | lamperti{delta < alpha+1} | layered{alpha1 in (0,2)}",
            theorems: "thm1; prop5 (alpha >= 1); thm2 (alpha > 1); thm3 (alpha < 1)",
        },
        CatalogueEntry {
            kind: "discrete_dyadic",
            parameters: "alpha in (0,2), c > 0 (dim 1)",
            theorems: "thm1; thm2 (alpha > 1); thm3 (alpha < 1)",
        },
        CatalogueEntry {
            kind: "asym_stable_1d",
            parameters: "alpha in (0,2), c1, c2 >= 0 with c1 + c2 > 0, gamma (default 0)",
            theorems: "thm1; example5 (alpha in (1,2)); thm3 (alpha < 1)",
        },
        CatalogueEntry {
            kind: "compound_poisson_drift",
            parameters: "dim, atoms [{location, mass}], drift (velocity)",
            theorems: "thm1, thm3",
        },
    ]
}
