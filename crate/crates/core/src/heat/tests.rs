use super::*;
use crate::levy::Atom;
use crate::special::erfc;
use approx::assert_relative_eq;

fn cauchy_heat(l: f64, t: f64) -> f64 {
    l - 2.0 * l / PI * (l / t).atan() + t / PI * (1.0 + l * l / (t * t)).ln()
}

fn brownian_heat(eta: f64, l: f64, t: f64) -> f64 {
    let s = (eta * t).sqrt();
    2.0 * s / PI.sqrt() * (1.0 - (-l * l / (4.0 * s * s)).exp()) + l * erfc(l / (2.0 * s))
}

fn unit() -> Shape {
    Shape::interval(0.0, 1.0).unwrap()
}

#[test]
fn cauchy_interval_closed_form() {
    let m = LevyModel::isotropic_stable(1, 1.0, 1.0).unwrap();
    for &t in &[1e-1, 1e-3, 1e-5] {
        let exact = cauchy_heat(1.0, t);
        let q = heat_content_quadrature(&m, &unit(), t).unwrap();
        assert_relative_eq!(q.value, exact, max_relative = 1e-8);
        assert!(!q.clipped);
        let tl = heat_content_tail_1d(&m, 1.0, t).unwrap();
        assert_relative_eq!(tl.value, exact, max_relative = 1e-8);
    }
}

#[test]
fn brownian_interval_closed_form() {
    let eta = 0.5;
    let m = LevyModel::brownian(1, eta).unwrap();
    for &t in &[1.0, 1e-2, 1e-5] {
        let exact = brownian_heat(eta, 1.0, t);
        assert_relative_eq!(heat_content_quadrature(&m, &unit(), t).unwrap().value, exact, max_relative = 1e-8);
        assert_relative_eq!(heat_content_tail_1d(&m, 1.0, t).unwrap().value, exact, max_relative = 1e-8);
    }
}

#[test]
fn methods_agree_on_stable_interval() {
    let m = LevyModel::isotropic_stable(1, 1.5, 1.0).unwrap();
    let shape = Shape::interval(-0.3, 0.9).unwrap();
    for &t in &[1e-1, 1e-4] {
        let a = heat_content_quadrature(&m, &shape, t).unwrap().value;
        let b = heat_content_tail_1d(&m, 1.2, t).unwrap().value;
        assert_relative_eq!(a, b, max_relative = 1e-7);
    }
}

#[test]
fn asymmetric_methods_agree() {
    let m = LevyModel::asym_stable_1d(1.5, 1.0, 0.2, 0.3).unwrap();
    let a = heat_content_quadrature(&m, &unit(), 1e-3).unwrap().value;
    let b = heat_content_tail_1d(&m, 1.0, 1e-3).unwrap().value;
    assert_relative_eq!(a, b, max_relative = 1e-7);
}

#[test]
fn heat_content_is_bounded_by_volume() {
    let m = LevyModel::isotropic_stable(1, 1.0, 1.0).unwrap();
    let h = heat_content_quadrature(&m, &unit(), 1e3).unwrap();
    assert!(h.value <= 1.0 && h.value > 0.99);
    assert_eq!(heat_content_tail_1d(&m, 0.0, 0.1).unwrap().value, 0.0);
    let tiny = heat_content_tail_1d(&m, 1e-9, 0.1).unwrap().value;
    assert!(tiny > 0.0 && tiny <= 1e-9);
}

#[test]
fn drift_only_heat_is_translation_loss() {
    let m = LevyModel::compound_poisson(1, vec![], vec![0.3]).unwrap();
    for &t in &[0.1, 1.0, 5.0] {
        let h = heat_content_quadrature(&m, &unit(), t).unwrap().value;
        assert_relative_eq!(h, (0.3 * t).min(1.0), max_relative = 1e-14);
    }
}

#[test]
fn poisson_enumeration_matches_series() {
    // atoms ±1 mass 1 with velocity v on (0, 2): H = Σ_n P(N=n) E[min(|tv + S_n|, 2)]
    let atoms = vec![Atom { location: vec![1.0], mass: 1.0 }, Atom { location: vec![-1.0], mass: 1.0 }];
    let m = LevyModel::compound_poisson(1, atoms, vec![0.3]).unwrap();
    let shape = Shape::interval(0.0, 2.0).unwrap();
    let t: f64 = 0.05;
    let mut oracle = 0.0;
    let mut pn = (-2.0 * t).exp();
    for n in 0..40u32 {
        // S_n = 2k − n with k ~ Bin(n, 1/2)
        let mut binom = 0.5f64.powi(n as i32);
        for k in 0..=n {
            let x = 0.3 * t + (2 * k) as f64 - n as f64;
            oracle += pn * binom * x.abs().min(2.0);
            binom *= (n - k) as f64 / (k + 1) as f64;
        }
        pn *= 2.0 * t / (n + 1) as f64;
    }
    assert_relative_eq!(heat_content_quadrature(&m, &shape, t).unwrap().value, oracle, max_relative = 1e-13);
    assert_relative_eq!(heat_content_tail_1d(&m, 2.0, t).unwrap().value, oracle, max_relative = 1e-13);
}

#[test]
fn x_perimeter_examples() {
    let m = LevyModel::isotropic_stable_c1(1, 0.5, 1.0).unwrap();
    assert_relative_eq!(x_perimeter(&m, &unit()).unwrap(), 8.0, max_relative = 1e-8);
    let atoms = vec![Atom { location: vec![1.0], mass: 1.0 }, Atom { location: vec![-1.0], mass: 1.0 }];
    let p = LevyModel::compound_poisson(1, atoms, vec![0.0]).unwrap();
    assert_relative_eq!(x_perimeter(&p, &Shape::interval(0.0, 2.0).unwrap()).unwrap(), 2.0, max_relative = 1e-15);
    let cauchy = LevyModel::isotropic_stable(1, 1.0, 1.0).unwrap();
    assert!(matches!(x_perimeter(&cauchy, &unit()), Err(Error::Incompatible(_))));
}

#[test]
fn x_perimeter_truncated_square() {
    // inside the unit ball g(0) − g(y) = s(|u₁| + |u₂|) − s²|u₁u₂| on the unit square
    let (alpha, c1) = (0.5, 1.0);
    let m = LevyModel::radial(2, Profile::Truncated, alpha, c1).unwrap();
    let sq = Shape::rect(&[1.0, 1.0]).unwrap();
    let exact = c1 * (8.0 / (1.0 - alpha) - 2.0 / (2.0 - alpha));
    assert_relative_eq!(x_perimeter(&m, &sq).unwrap(), exact, max_relative = 1e-6);
}

#[test]
fn x_perimeter_scaling_and_translation() {
    let alpha = 0.6;
    let m = LevyModel::isotropic_stable(2, alpha, 1.0).unwrap();
    let sq = Shape::rect(&[1.0, 0.5]).unwrap();
    let base = x_perimeter(&m, &sq).unwrap();
    let moved = x_perimeter(&m, &sq.translated(&[3.0, -2.0])).unwrap();
    assert_relative_eq!(base, moved, max_relative = 1e-10);
    for &lam in &[0.5, 2.0] {
        let v = x_perimeter(&m, &sq.scaled(lam)).unwrap();
        assert_relative_eq!(v, base * lam.powf(2.0 - alpha), max_relative = 1e-6);
    }
}

#[test]
fn two_sided_perimeter_uses_both_sides() {
    // c₁ = 1, c₂ = 0.5, α = 0.5 on (0, 1): (c₁ + c₂)·(2 + 2)
    let m = LevyModel::asym_stable_1d(0.5, 1.0, 0.5, 0.0).unwrap();
    assert_relative_eq!(x_perimeter(&m, &unit()).unwrap(), 6.0, max_relative = 1e-8);
}

#[test]
fn theorem1_factor_examples() {
    let b = LevyModel::brownian(1, 1.0).unwrap();
    let shape = unit();
    let big_r = shape.inradius_scale();
    let t: f64 = 1e-4;
    // h = r^{−2}, h⁻¹(1/t) = √t
    let exact = t * 2.0 * (1.0 / t.sqrt() - 1.0 / big_r);
    assert_relative_eq!(theorem1_upper_bound(&b, &shape, t).unwrap(), exact, max_relative = 1e-8);
    // large t: the lower limit clamps to R/2
    let t = 10.0;
    let exact = t * 2.0 * (2.0 / big_r - 1.0 / big_r);
    assert_relative_eq!(theorem1_upper_bound(&b, &shape, t).unwrap(), exact, max_relative = 1e-8);

    let a = 1.5;
    let s = LevyModel::isotropic_stable_c1(1, a, 1.0).unwrap();
    let cst = 2.0 * (1.0 / (2.0 - a) + 1.0 / a);
    let t: f64 = 1e-5;
    let lo = (cst * t).powf(1.0 / a);
    let exact = t * 2.0 * cst * (big_r.powf(1.0 - a) - lo.powf(1.0 - a)) / (1.0 - a);
    assert_relative_eq!(theorem1_upper_bound(&s, &shape, t).unwrap(), exact, max_relative = 1e-8);
    assert_relative_eq!(lower_bound_integral(&s, &shape, t).unwrap(), exact, max_relative = 1e-8);
}

#[test]
fn lower_bound_gating() {
    let shape = unit();
    let half = LevyModel::isotropic_stable(1, 0.5, 1.0).unwrap();
    assert!(matches!(lower_bound_integral(&half, &shape, 1e-3), Err(Error::Incompatible(_))));
    let cauchy = LevyModel::isotropic_stable(1, 1.0, 1.0).unwrap();
    let t: f64 = 1e-6;
    let v = lower_bound_integral(&cauchy, &shape, t).unwrap();
    // h(r) = C/r with C = 2c₁(1 + 1), c₁ = 1/π
    let cst = 4.0 / PI;
    let exact = t * 2.0 * cst * (shape.inradius_scale() / (cst * t)).ln();
    assert_relative_eq!(v, exact, max_relative = 1e-8);
}

#[test]
fn curve_is_sorted_and_bounded() {
    let m = LevyModel::isotropic_stable(1, 1.5, 1.0).unwrap();
    let c = HeatCurve::compute(&m, &unit(), &[1e-3, 1e-1, 1e-2], Method::Quadrature, None).unwrap();
    let ts = c.times();
    assert!(ts.windows(2).all(|w| w[0] > w[1]));
    assert!(c.values().iter().all(|&h| (0.0..=1.0).contains(&h)));
}
