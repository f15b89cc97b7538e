use super::*;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("levy-heat-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn config(model: &str, shape: &str, checks: &str, extra: &str) -> ExperimentConfig {
    let text = format!(
        r#"{{"model": {model}, "shape": {shape},
            "t_grid": {{"start": 0.1, "stop": 1e-7, "points": 13, "spacing": "geometric"}},
            "checks": {checks}, "output": "run"{extra}}}"#
    );
    parse_config(&text).unwrap()
}

const INTERVAL: &str = r#"{"kind": "interval", "a": 0.0, "b": 1.0}"#;

#[test]
fn config_round_trip() {
    let cfg = config(
        r#"{"kind": "asym_stable_1d", "alpha": 1.5, "c1": 1.0, "c2": 0.5}"#,
        INTERVAL,
        r#"["thm1", "example5"]"#,
        r#", "methods": ["quadrature", "monte_carlo"], "mc": {"samples": 5000, "seed": 3}, "tolerances": {"thm2": 0.01}"#,
    );
    assert_eq!(cfg.tolerances.thm3, 0.02);
    let back = parse_config(&cfg.to_json()).unwrap();
    assert_eq!(back, cfg);
    assert_eq!(back.to_json(), cfg.to_json());
}

#[test]
fn stable_inverse_rate_passes() {
    let dir = scratch("thm2");
    let cfg = config(r#"{"kind": "isotropic_stable", "alpha": 1.5, "c": 1.0}"#, INTERVAL, r#"["thm2", "thm1", "prop5"]"#, "");
    let out = run(&cfg, None, Some(&dir)).unwrap();
    assert_eq!(out.exit, Exit::Pass, "{:?}", out.reports);
    let thm2 = out.reports.iter().find(|r| r.tag == ReportTag::Theorem2).unwrap();
    assert!(thm2.relative_error.unwrap() < 0.02);
    let report = std::fs::read_to_string(dir.join("run_report.csv")).unwrap();
    assert!(report.starts_with("check,method,extrapolated,theoretical,rel_error,pass\nthm2,quadrature,"));
    let curve = std::fs::read_to_string(dir.join("run_curve.csv")).unwrap();
    assert_eq!(curve.lines().count(), 14);
    let row: Vec<&str> = curve.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row.len(), 8);
    assert!(row.iter().all(|c| !c.is_empty()), "{row:?}");
    assert!(dir.join("run_summary.txt").exists());
}

#[test]
fn low_index_inverse_rate_is_incompatible() {
    let cfg = config(r#"{"kind": "isotropic_stable", "alpha": 0.5, "c": 1.0}"#, INTERVAL, r#"["thm2"]"#, "");
    let out = run(&cfg, None, Some(&scratch("inc"))).unwrap();
    assert_eq!(out.exit, Exit::Incompatible);
    assert!(out.diagnostics[0].contains("thm2"));
    assert_eq!(Exit::Incompatible.code(), 3);
}

#[test]
fn drift_only_linear_rate_is_exact() {
    let dir = scratch("drift");
    let cfg = config(r#"{"kind": "compound_poisson_drift", "drift": [0.25]}"#, INTERVAL, r#"["thm3"]"#, "");
    let out = run(&cfg, None, Some(&dir)).unwrap();
    assert_eq!(out.exit, Exit::Pass);
    assert_eq!(out.reports[0].theoretical, Some(0.25));
    assert!((out.reports[0].extrapolated - 0.25).abs() < 1e-12);
}

#[test]
fn invalid_configs_exit_2() {
    let mut cfg = config(r#"{"kind": "brownian", "eta": 1.0}"#, INTERVAL, r#"["thm2"]"#, "");
    cfg.t_grid.points = 2;
    cfg.t_grid.stop = 1.0;
    cfg.methods = vec![Method::MonteCarlo];
    let out = run(&cfg, None, None).unwrap();
    assert_eq!(out.exit, Exit::InvalidConfig);
    let all = out.diagnostics.join("\n");
    assert!(all.contains("t_grid.points") && all.contains("start > stop") && all.contains("mc"), "{all}");
    // unknown field names the field
    let e = parse_config(r#"{"model": {"kind": "brownian", "eta": 1}, "shape": {"kind": "interval", "a": 0, "b": 1},
        "t_grid": {"start": 0.1, "stop": 0.01, "points": 4}, "checks": ["thm2"], "output": "x", "sedd": 1}"#)
    .unwrap_err();
    assert!(e.to_string().contains("sedd"), "{e}");
    // a bad model parameter is a field-level diagnostic, not a panic
    let cfg = config(r#"{"kind": "isotropic_stable", "alpha": 2.5, "c": 1.0}"#, INTERVAL, r#"["thm2"]"#, "");
    let out = run(&cfg, None, None).unwrap();
    assert_eq!(out.exit, Exit::InvalidConfig);
    assert!(out.diagnostics.iter().any(|d| d.starts_with("model:")));
}

#[test]
fn monte_carlo_runs_are_byte_identical() {
    let mut cfg = config(
        r#"{"kind": "isotropic_stable", "alpha": 1.0, "c": 1.0}"#,
        INTERVAL,
        r#"["thm1", "alpha1"]"#,
        r#", "methods": ["monte_carlo"], "mc": {"samples": 20000, "seed": 9}"#,
    );
    cfg.t_grid = TimeGrid { start: 0.1, stop: 1e-3, points: 5, spacing: Spacing::Geometric };
    let a = scratch("det-a");
    let b = scratch("det-b");
    run(&cfg, None, Some(&a)).unwrap();
    run(&cfg, None, Some(&b)).unwrap();
    for f in ["run_curve.csv", "run_report.csv", "run_summary.txt"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
    // the seed override changes the estimates
    run(&cfg, Some(10), Some(&b)).unwrap();
    assert_ne!(std::fs::read(a.join("run_curve.csv")).unwrap(), std::fs::read(b.join("run_curve.csv")).unwrap());
}

#[test]
fn output_prefix_and_directory() {
    assert_eq!(artifact_prefix("out/exp", None), PathBuf::from("out/exp"));
    assert_eq!(artifact_prefix("out/exp", Some(Path::new("/tmp/x"))), PathBuf::from("/tmp/x/exp"));
    assert_eq!(with_suffix(Path::new("a/b"), "_curve.csv"), PathBuf::from("a/b_curve.csv"));
}

#[test]
fn catalogue_listing() {
    let s = list_models();
    assert!(s.contains("isotropic_stable"));
    assert!(s.contains("truncated"));
    for block in s.lines().collect::<Vec<_>>().chunks(3) {
        let name = block[0];
        let checks = block[2];
        if name == "brownian" || name == "brownian_plus_stable" {
            assert!(!checks.contains("thm3"), "{name}: {checks}");
        }
    }
    assert!(s.lines().any(|l| l == "compound_poisson_drift"));
}
