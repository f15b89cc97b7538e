//! Experiment driver: JSON config in, CSV curves, CSV report and a text
//! summary out.

use crate::asymptotics::{
    envelope_from_curve, geometric_grid, theorem2_from_curve, theorem3_from_curve,
    verify_example5, AsymptoticsReport, ReportTag,
};
use crate::error::{Error, Result};
use crate::geometry::{Shape, ShapeKind, ShapeSpec};
use crate::heat::{lower_bound_integral, theorem1_upper_bound, HeatCurve, McSettings, Method};
use crate::levy::{catalogue, LevyModel, ModelKind, ModelSpec};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Environment variable that redirects all artifacts to another directory.
pub const OUT_DIR_ENV: &str = "LEVY_HEAT_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Geometric,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default = "geometric")]
    pub spacing: Spacing,
}

fn geometric() -> Spacing {
    Spacing::Geometric
}

impl TimeGrid {
    pub fn times(&self) -> Result<Vec<f64>> {
        geometric_grid(self.start, self.stop, self.points)
    }
}

/// A requested theorem check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Thm1,
    Prop5,
    Thm2,
    Thm3,
    Alpha1,
    Example5,
}

impl Check {
    pub fn name(&self) -> &'static str {
        match self {
            Check::Thm1 => "thm1",
            Check::Prop5 => "prop5",
            Check::Thm2 => "thm2",
            Check::Thm3 => "thm3",
            Check::Alpha1 => "alpha1",
            Check::Example5 => "example5",
        }
    }

    fn tag(&self) -> ReportTag {
        match self {
            Check::Thm1 => ReportTag::UpperEnvelope,
            Check::Prop5 => ReportTag::LowerEnvelope,
            Check::Thm2 => ReportTag::Theorem2,
            Check::Thm3 => ReportTag::Theorem3,
            Check::Alpha1 => ReportTag::LogRate,
            Check::Example5 => ReportTag::StableMean,
        }
    }
}

/// Relative tolerances per check; envelopes and the sampled-constant check
/// have their own pass rules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub thm2: f64,
    pub thm3: f64,
    pub alpha1: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { thm2: 0.02, thm3: 0.02, alpha1: 0.03 }
    }
}

impl Tolerances {
    fn for_tag(&self, tag: ReportTag) -> f64 {
        match tag {
            ReportTag::Theorem2 => self.thm2,
            ReportTag::Theorem3 => self.thm3,
            ReportTag::LogRate => self.alpha1,
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelSpec,
    pub shape: ShapeSpec,
    pub t_grid: TimeGrid,
    #[serde(default = "default_methods")]
    pub methods: Vec<Method>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mc: Option<McSettings>,
    pub checks: Vec<Check>,
    pub output: String,
    #[serde(default)]
    pub tolerances: Tolerances,
}

fn default_methods() -> Vec<Method> {
    vec![Method::Quadrature]
}

/// Process exit status of [`run`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    Fail = 1,
    InvalidConfig = 2,
    Incompatible = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// What [`run`] produced.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit: Exit,
    /// One line per problem for exits 2 and 3.
    pub diagnostics: Vec<String>,
    pub reports: Vec<AsymptoticsReport>,
    pub files: Vec<PathBuf>,
}

impl Outcome {
    fn stop(exit: Exit, diagnostics: Vec<String>) -> Outcome {
        Outcome { exit, diagnostics, reports: Vec::new(), files: Vec::new() }
    }
}

/// Parses a config, reporting the offending field on failure.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    serde_json::from_str(text).map_err(|e| Error::Config(format!("line {}, column {}: {e}", e.line(), e.column())))
}

impl ExperimentConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configs always serialize")
    }

    /// Field-level problems; empty when the config is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let g = &self.t_grid;
        if !(g.start > g.stop && g.stop > 0.0 && g.start.is_finite()) {
            out.push(format!("t_grid: need start > stop > 0, got start = {}, stop = {}", g.start, g.stop));
        }
        if g.points < 4 {
            out.push(format!("t_grid.points: need at least 4, got {}", g.points));
        }
        if self.methods.is_empty() {
            out.push("methods: at least one method is required".into());
        }
        let wants_mc = self.methods.contains(&Method::MonteCarlo) || self.checks.contains(&Check::Example5);
        match (&self.mc, wants_mc) {
            (None, true) => out.push("mc: samples and seed are required for Monte Carlo".into()),
            (Some(mc), true) if mc.samples < 1000 => {
                out.push(format!("mc.samples: need at least 1000, got {}", mc.samples))
            }
            _ => {}
        }
        if self.checks.is_empty() {
            out.push("checks: at least one check is required".into());
        }
        if self.output.is_empty() {
            out.push("output: an output prefix is required".into());
        }
        if let Err(e) = LevyModel::from_spec(&self.model) {
            out.push(format!("model: {e}"));
        }
        if let Err(e) = Shape::from_spec(&self.shape) {
            out.push(format!("shape: {e}"));
        }
        for (name, v) in [("thm2", self.tolerances.thm2), ("thm3", self.tolerances.thm3), ("alpha1", self.tolerances.alpha1)] {
            if !(v > 0.0 && v.is_finite()) {
                out.push(format!("tolerances.{name}: must be positive, got {v}"));
            }
        }
        out
    }
}

fn is_interval(shape: &Shape) -> bool {
    matches!(shape.kind(), ShapeKind::Interval { .. })
}

/// Reasons the requested checks or methods do not apply to this model and shape.
fn incompatibilities(cfg: &ExperimentConfig, model: &LevyModel, shape: &Shape) -> Vec<String> {
    let mut out = Vec::new();
    if model.dim() != shape.dim() {
        out.push(format!("model has dimension {} but shape has dimension {}", model.dim(), shape.dim()));
        return out;
    }
    if cfg.methods.contains(&Method::Tail1d) && !is_interval(shape) {
        out.push("method tail1d needs an interval".into());
    }
    let t0 = cfg.t_grid.start;
    for check in &cfg.checks {
        let problem = match check {
            Check::Thm1 => theorem1_upper_bound(model, shape, t0).err(),
            Check::Prop5 => lower_bound_integral(model, shape, t0).err(),
            Check::Thm2 => {
                let ok = model.is_isotropic()
                    && !model.has_finite_activity()
                    && model.index().is_some_and(|a| a > 1.0);
                (!ok).then(|| Error::Incompatible("needs an isotropic model with index in (1, 2]".into()))
            }
            Check::Thm3 => {
                (!model.has_finite_variation()).then(|| Error::Incompatible("needs a finite-variation model".into()))
            }
            Check::Alpha1 => {
                (model.index() != Some(1.0)).then(|| Error::Incompatible("needs a model of index 1".into()))
            }
            Check::Example5 => match model.kind() {
                ModelKind::AsymStable1d { alpha, .. } if *alpha > 1.0 && *alpha < 2.0 && is_interval(shape) => None,
                _ => Some(Error::Incompatible("needs asym_stable_1d with alpha in (1, 2) on an interval".into())),
            },
        };
        if let Some(e) = problem {
            out.push(format!("check {}: {e}", check.name()));
        }
    }
    out
}

fn mc_settings(cfg: &ExperimentConfig, seed: Option<u64>) -> Option<McSettings> {
    cfg.mc.map(|mc| McSettings { samples: mc.samples, seed: seed.unwrap_or(mc.seed) })
}

/// Where artifacts go: `prefix` as given, or its file name under `out_dir`.
pub fn artifact_prefix(prefix: &str, out_dir: Option<&Path>) -> PathBuf {
    let p = PathBuf::from(prefix);
    match out_dir {
        Some(dir) => dir.join(p.file_name().map(PathBuf::from).unwrap_or_else(|| PathBuf::from("experiment"))),
        None => p,
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(suffix);
    prefix.with_file_name(name)
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// The scaling shown in the curve file: the first requested limit check.
fn curve_scaling(checks: &[Check]) -> Option<Check> {
    [Check::Thm2, Check::Thm3, Check::Alpha1].into_iter().find(|c| checks.contains(c))
}

fn curve_csv(
    curves: &[HeatCurve],
    reports: &[AsymptoticsReport],
    checks: &[Check],
    model: &LevyModel,
    shape: &Shape,
) -> String {
    let mut s = String::from("t,method,H,stderr,scaled_value,theoretical_limit,ratio_upper,ratio_lower\n");
    let scaling = curve_scaling(checks);
    for curve in curves {
        for sample in &curve.samples {
            let method = sample.method;
            let pick = |tag: ReportTag| {
                reports.iter().find(|r| r.tag == tag && r.method == method).and_then(|r| {
                    r.sequence.iter().find(|p| p.t == sample.t).map(|p| (p.value, r.theoretical))
                })
            };
            let (scaled, theory) = scaling.and_then(|c| pick(c.tag())).map_or((None, None), |(v, th)| (Some(v), th));
            let upper = theorem1_upper_bound(model, shape, sample.t).ok().map(|b| sample.value / b);
            let lower = lower_bound_integral(model, shape, sample.t).ok().map(|b| sample.value / b);
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                num(sample.t),
                method.name(),
                num(sample.value),
                num(sample.error),
                opt(scaled),
                opt(theory),
                opt(upper),
                opt(lower)
            );
        }
    }
    s
}

fn report_csv(reports: &[AsymptoticsReport], tol: &Tolerances) -> String {
    let mut s = String::from("check,method,extrapolated,theoretical,rel_error,pass\n");
    for r in reports {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            r.tag.name(),
            r.method.name(),
            num(r.extrapolated),
            opt(r.theoretical),
            opt(r.relative_error),
            r.passes(tol.for_tag(r.tag))
        );
    }
    s
}

fn summary(cfg: &ExperimentConfig, reports: &[AsymptoticsReport], exit: Exit) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "model: {}", serde_json::to_string(&cfg.model).unwrap_or_default());
    let _ = writeln!(s, "shape: {}", serde_json::to_string(&cfg.shape).unwrap_or_default());
    let _ = writeln!(
        s,
        "times: {} geometric points from {:e} to {:e}",
        cfg.t_grid.points, cfg.t_grid.start, cfg.t_grid.stop
    );
    let methods: Vec<&str> = cfg.methods.iter().map(|m| m.name()).collect();
    let _ = writeln!(s, "methods: {}", methods.join(", "));
    if let Some(mc) = cfg.mc {
        let _ = writeln!(s, "monte carlo: {} samples, seed {}", mc.samples, mc.seed);
    }
    let _ = writeln!(s);
    for r in reports {
        let verdict = if r.passes(cfg.tolerances.for_tag(r.tag)) { "pass" } else { "FAIL" };
        let _ = writeln!(s, "{verdict:<4}  {r}");
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "result: {}", if exit == Exit::Pass { "all checks pass" } else { "some checks failed" });
    s
}

/// Runs an experiment and writes its artifacts. `seed` overrides the config
/// seed and `out_dir` redirects the output prefix.
pub fn run(cfg: &ExperimentConfig, seed: Option<u64>, out_dir: Option<&Path>) -> Result<Outcome> {
    let problems = cfg.validate();
    if !problems.is_empty() {
        return Ok(Outcome::stop(Exit::InvalidConfig, problems));
    }
    let model = LevyModel::from_spec(&cfg.model)?;
    let shape = Shape::from_spec(&cfg.shape)?;
    let problems = incompatibilities(cfg, &model, &shape);
    if !problems.is_empty() {
        return Ok(Outcome::stop(Exit::Incompatible, problems));
    }
    let times = cfg.t_grid.times()?;
    let mc = mc_settings(cfg, seed);

    let curve_checks: Vec<Check> = cfg.checks.iter().copied().filter(|c| *c != Check::Example5).collect();
    let mut curves = Vec::new();
    let mut reports = Vec::new();
    if !curve_checks.is_empty() {
        for &method in &cfg.methods {
            let curve = HeatCurve::compute(&model, &shape, &times, method, mc)?;
            for check in &curve_checks {
                match check {
                    Check::Thm2 => reports.push(theorem2_from_curve(&model, &shape, &curve)?),
                    Check::Thm3 => reports.push(theorem3_from_curve(&model, &shape, &curve)?),
                    _ => {}
                }
            }
            let wanted: Vec<ReportTag> = curve_checks.iter().map(|c| c.tag()).collect();
            if curve_checks.iter().any(|c| matches!(c, Check::Thm1 | Check::Prop5 | Check::Alpha1)) {
                reports.extend(envelope_from_curve(&model, &shape, &curve)?.into_iter().filter(|r| wanted.contains(&r.tag)));
            }
            curves.push(curve);
        }
    }
    if cfg.checks.contains(&Check::Example5) {
        if let ModelKind::AsymStable1d { alpha, c1, c2, .. } = model.kind() {
            let mc = mc.expect("validated");
            reports.push(verify_example5(*alpha, *c1, *c2, &shape, &times, mc.samples, mc.seed)?);
        }
    }

    let pass = reports.iter().all(|r| r.passes(cfg.tolerances.for_tag(r.tag)));
    let exit = if pass { Exit::Pass } else { Exit::Fail };
    let prefix = artifact_prefix(&cfg.output, out_dir);
    if let Some(parent) = prefix.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    let files = vec![
        (with_suffix(&prefix, "_curve.csv"), curve_csv(&curves, &reports, &cfg.checks, &model, &shape)),
        (with_suffix(&prefix, "_report.csv"), report_csv(&reports, &cfg.tolerances)),
        (with_suffix(&prefix, "_summary.txt"), summary(cfg, &reports, exit)),
    ];
    for (path, body) in &files {
        std::fs::write(path, body)?;
    }
    Ok(Outcome { exit, diagnostics: Vec::new(), reports, files: files.into_iter().map(|f| f.0).collect() })
}

/// Reads, parses and runs a config file; parse failures become exit 2.
pub fn run_file(path: &Path, seed: Option<u64>, out_dir: Option<&Path>) -> Result<Outcome> {
    let text = std::fs::read_to_string(path)?;
    match parse_config(&text) {
        Ok(cfg) => run(&cfg, seed, out_dir),
        Err(e) => Ok(Outcome::stop(Exit::InvalidConfig, vec![e.to_string()])),
    }
}

/// Catalogue of model kinds, their parameters and applicable checks.
pub fn list_models() -> String {
    let mut s = String::new();
    for e in catalogue() {
        let _ = writeln!(s, "{}\n  parameters: {}\n  checks:     {}", e.kind, e.parameters, e.theorems);
    }
    s
}

#[cfg(test)]
mod tests;
