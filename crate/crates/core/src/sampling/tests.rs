use super::*;
use crate::levy::{tail_probability, Atom};

fn ks_distance(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max)
}

fn draws(alpha: f64, beta: f64, scale: f64, n: usize, seed: u64) -> Vec<f64> {
    let mut rng = RngStream::new(seed, 0).rng();
    (0..n).map(|_| sample_stable_1d(alpha, beta, scale, &mut rng).unwrap()).collect()
}

#[test]
fn gaussian_branch() {
    let scale = 0.7;
    let sd = scale * 2f64.sqrt();
    let d = ks_distance(draws(2.0, 0.0, scale, 100_000, 1), |x| 0.5 * crate::special::erfc(-x / (sd * 2f64.sqrt())));
    assert!(d < 0.01, "KS {d}");
}

#[test]
fn cauchy_branch() {
    let d = ks_distance(draws(1.0, 0.0, 1.0, 100_000, 2), |x| 0.5 + x.atan() / PI);
    assert!(d < 0.01, "KS {d}");
}

#[test]
fn stable_tail_matches_inversion() {
    let xs = draws(1.5, 0.0, 1.0, 100_000, 3);
    let model = LevyModel::isotropic_stable(1, 1.5, 1.0).unwrap();
    for &q in &[1.0, 2.0, 4.0] {
        let p = tail_probability(&model, 1.0, q).unwrap();
        let emp = xs.iter().filter(|x| x.abs() > q).count() as f64 / xs.len() as f64;
        let sigma = (p * (1.0 - p) / xs.len() as f64).sqrt();
        assert!((emp - p).abs() < 3.0 * sigma, "q={q}: {emp} vs {p}");
    }
}

#[test]
fn rejects_bad_parameters() {
    let mut rng = RngStream::new(0, 0).rng();
    assert!(sample_stable_1d(2.5, 0.0, 1.0, &mut rng).is_err());
    assert!(sample_stable_1d(1.5, 1.5, 1.0, &mut rng).is_err());
}

#[test]
fn skewed_stable_mean_is_the_centre() {
    // E X_t = t(γ + (c₁ − c₂)/(α − 1)) for α > 1
    let m = LevyModel::asym_stable_1d(1.5, 1.0, 0.0, 0.2).unwrap();
    let s = IncrementSampler::new(&m, 0.5).unwrap();
    let mut rng = RngStream::new(9, 0).rng();
    let n = 400_000;
    let xs: Vec<f64> = (0..n).map(|_| s.sample(&mut rng)[0]).collect();
    // heavy tails: compare medians of block means instead of the raw mean
    let mut means: Vec<f64> = xs.chunks(4000).map(|c| c.iter().sum::<f64>() / c.len() as f64).collect();
    means.sort_by(f64::total_cmp);
    let med = means[means.len() / 2];
    assert!((med - 0.5 * (0.2 + 2.0)).abs() < 0.05, "median block mean {med}");
}

#[test]
fn drift_only_is_deterministic() {
    let m = LevyModel::compound_poisson(2, vec![], vec![0.3, -0.1]).unwrap();
    let mut rng = RngStream::new(5, 0).rng();
    assert_eq!(sample_increment(&m, 2.0, &mut rng).unwrap(), vec![0.6, -0.2]);
}

#[test]
fn brownian_variance() {
    let m = LevyModel::brownian(2, 0.5).unwrap();
    let s = IncrementSampler::new(&m, 0.1).unwrap();
    let mut rng = RngStream::new(6, 0).rng();
    let n = 100_000;
    let v: f64 = (0..n).map(|_| s.sample(&mut rng)[1].powi(2)).sum::<f64>() / n as f64;
    // N(0, 2ηt) per coordinate; the sample variance has sd ≈ var·√(2/n)
    let var = 2.0 * 0.5 * 0.1;
    assert!((v - var).abs() < 3.0 * var * (2.0 / n as f64).sqrt(), "{v}");
}

#[test]
fn poisson_no_jump_frequency() {
    let atoms = vec![Atom { location: vec![1.0], mass: 1.0 }, Atom { location: vec![-1.0], mass: 1.0 }];
    let m = LevyModel::compound_poisson(1, atoms, vec![0.0]).unwrap();
    let s = IncrementSampler::new(&m, 0.1).unwrap();
    let mut rng = RngStream::new(7, 0).rng();
    let n = 100_000;
    // zero net displacement also happens with two opposite jumps; count those out via P(N=0) + P(two cancelling)
    let zero = (0..n).filter(|_| s.sample(&mut rng)[0] == 0.0).count() as f64 / n as f64;
    let lt: f64 = 0.2;
    let p0 = (-lt).exp();
    let p = p0 * (1.0 + lt * lt / 2.0 * 0.5 + lt.powi(4) / 24.0 * 6.0 / 16.0);
    let sigma = (p * (1.0 - p) / n as f64).sqrt();
    assert!((zero - p).abs() < 3.0 * sigma, "{zero} vs {p}");
}

#[test]
fn planar_cauchy_by_subordination() {
    let m = LevyModel::isotropic_stable(2, 1.0, 1.0).unwrap();
    let t = 0.5;
    let s = IncrementSampler::new(&m, t).unwrap();
    let mut rng = RngStream::new(8, 0).rng();
    let n = 100_000;
    let xs: Vec<f64> = (0..n).map(|_| {
        let v = s.sample(&mut rng);
        (v[0] * v[0] + v[1] * v[1]).sqrt()
    }).collect();
    for &r in &[0.2, 1.0, 3.0] {
        let p = t / (t * t + r * r).sqrt();
        let emp = xs.iter().filter(|&&x| x > r).count() as f64 / n as f64;
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        assert!((emp - p).abs() < 3.5 * sigma, "r={r}: {emp} vs {p}");
    }
}

#[test]
fn radial_profile_second_moment() {
    // E‖X_t‖² = t∫‖y‖²ν(dy) for the truncated profile
    let m = LevyModel::radial(2, Profile::Truncated, 1.2, 1.0).unwrap();
    let t = 0.01;
    let s = IncrementSampler::new(&m, t).unwrap();
    assert!(s.cutoff.unwrap() > 0.0);
    let mut rng = RngStream::new(10, 0).rng();
    let n = 50_000;
    let sq: Vec<f64> = (0..n).map(|_| s.sample(&mut rng).iter().map(|v| v * v).sum()).collect();
    let mean = sq.iter().sum::<f64>() / n as f64;
    let sd = (sq.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64).sqrt();
    let exact = t * m.levy_measure().radial_moment2(f64::INFINITY);
    assert!((mean - exact).abs() < 3.5 * sd / (n as f64).sqrt(), "{mean} vs {exact}");
}

#[test]
fn mc_drift_only_interval() {
    let m = LevyModel::compound_poisson(1, vec![], vec![0.25]).unwrap();
    let shape = Shape::interval(0.0, 1.0).unwrap();
    let e = mc_heat_content(&m, &shape, 0.8, 20_000, 11).unwrap();
    assert!((e.value - 0.2).abs() <= 3.0 * e.stderr + 1e-12, "{} ± {}", e.value, e.stderr);
}

#[test]
fn mc_cauchy_interval() {
    let m = LevyModel::isotropic_stable(1, 1.0, 1.0).unwrap();
    let shape = Shape::interval(0.0, 1.0).unwrap();
    let t: f64 = 0.01;
    let exact = 1.0 - 2.0 / PI * (1.0 / t).atan() + t / PI * (1.0 + 1.0 / (t * t)).ln();
    let e = mc_heat_content(&m, &shape, t, 100_000, 12).unwrap();
    assert!((e.value - exact).abs() <= 3.0 * e.stderr, "{} ± {} vs {exact}", e.value, e.stderr);
}

#[test]
fn mc_brownian_disk_against_quadrature() {
    let m = LevyModel::brownian(2, 1.0).unwrap();
    let disk = Shape::ball(&[0.0, 0.0], 1.0).unwrap();
    let t = 1e-3;
    let q = crate::heat::heat_content_quadrature(&m, &disk, t).unwrap().value;
    let e = mc_heat_content(&m, &disk, t, 100_000, 13).unwrap();
    assert!((e.value - q).abs() <= 3.0 * e.stderr, "{} ± {} vs {q}", e.value, e.stderr);
}

#[test]
fn reproducible_across_thread_counts() {
    let m = LevyModel::isotropic_stable(1, 1.5, 1.0).unwrap();
    let shape = Shape::interval(0.0, 1.0).unwrap();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| mc_heat_content(&m, &shape, 0.01, 30_000, 99).unwrap())
    };
    let a = run(1);
    let b = run(8);
    assert_eq!(a.value.to_bits(), b.value.to_bits());
    assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
}

#[test]
fn stderr_shrinks_like_root_n() {
    let m = LevyModel::isotropic_stable(1, 1.0, 1.0).unwrap();
    let shape = Shape::interval(0.0, 1.0).unwrap();
    let a = mc_heat_content(&m, &shape, 0.05, 20_000, 3).unwrap();
    let b = mc_heat_content(&m, &shape, 0.05, 80_000, 3).unwrap();
    let ratio = a.stderr / b.stderr;
    assert!((ratio - 2.0).abs() < 0.4, "{ratio}");
}

#[test]
fn mc_rejects_small_samples() {
    let m = LevyModel::brownian(1, 1.0).unwrap();
    let shape = Shape::interval(0.0, 1.0).unwrap();
    assert!(mc_heat_content(&m, &shape, 0.1, 10, 0).is_err());
}
