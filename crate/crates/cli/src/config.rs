//! Flat `key = value` experiment configuration.
//!
//! One assignment per line; `#` starts a comment outside quotes; values may
//! be wrapped in double quotes. Keys are case-sensitive and unknown keys are
//! rejected. All problems in a file are reported together.
//!
//! | key | default | meaning |
//! |-----|---------|---------|
//! | `experiment` | `replicate` | `simulate`, `estimate`, `replicate`, `eps-curve`, `fbp`, `efficiency`, `reproduce` |
//! | `figure` | | `fig2`..`fig7`, `table1`, `table2`; implies `reproduce` |
//! | `n` | 5000 | sample size |
//! | `epsilon` | 0.01 | contamination, in `[0, 1)` |
//! | `outlier` | `single` | `single` or `distributed` |
//! | `alpha_re`, `alpha_im` | 10, 4 (single) / 10, -4 (distributed) | true amplitude |
//! | `z0_re`, `z0_im` | 15, 15 | single outlier centre |
//! | `mu1`, `sigma1`, `mu2`, `sigma2` | 0.1 each | distributed outlier centre law |
//! | `kappa0` | 0.1 | outlier dispersion |
//! | `estimators` | `mean, median, bisquare, gamma` | comma separated |
//! | `target` | `theta` | `alpha_r`, `alpha_i` or `theta` |
//! | `runs` | per experiment | Monte Carlo replications |
//! | `seed` | 1 | base seed |
//! | `output` | `out` | output directory |
//! | `data` | | dataset CSV for `estimate` |
//! | `bisquare_c_factor` | 4.68 | c = factor * MADN |
//! | `gamma_exponent` | 0.5 | gamma power |
//! | `irls_tol`, `irls_max_iter` | 1e-6, 100 | solver stopping rule |
//! | `eps_step`, `eps_stop` | 0.025, 0.35 | epsilon grid `0, step, .., stop` |
//! | `fbp_step` | 250 | replacement count increment |
//! | `replacement_mean`, `replacement_sd` | 1000, 0.1 | replaced values law |
//! | `theta_tol` | 0.006 | breakdown tolerance around pi/4 |

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use robust_qphase::estimators::IrlsConfig;
use robust_qphase::presets;
use robust_qphase::robustness::eps_grid;
use robust_qphase::{
    BreakdownRule, ComplexAmplitude, EstimatorKind, OutlierSpec, Replacement, ScenarioTemplate,
    Target, TuningPolicy,
};
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_RUNS: usize = 100;
pub const DEFAULT_OUTPUT: &str = "out";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Table1,
    Table2,
}

impl FigureId {
    pub const ALL: [FigureId; 8] = [
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Table1,
        FigureId::Table2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
            FigureId::Table1 => "table1",
            FigureId::Table2 => "table2",
        }
    }

    /// Scenario baked into the figure.
    pub fn template(&self) -> ScenarioTemplate {
        match self {
            FigureId::Fig6 | FigureId::Fig7 => presets::distributed_outliers(),
            _ => presets::single_outlier(),
        }
    }

    pub fn default_runs(&self) -> usize {
        match self {
            FigureId::Fig2 | FigureId::Fig3 | FigureId::Fig6 => presets::SWEEP_RUNS,
            FigureId::Fig4 => presets::FBP_RUNS,
            _ => presets::EPS_CURVE_RUNS,
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.as_str() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| {
                format!("unknown figure `{s}` (expected fig2..fig7, table1 or table2)")
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "figure", rename_all = "kebab-case")]
pub enum Experiment {
    Simulate,
    Estimate,
    Replicate,
    EpsCurve,
    Fbp,
    Efficiency,
    Reproduce(FigureId),
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Simulate => "simulate",
            Experiment::Estimate => "estimate",
            Experiment::Replicate => "replicate",
            Experiment::EpsCurve => "eps-curve",
            Experiment::Fbp => "fbp",
            Experiment::Efficiency => "efficiency",
            Experiment::Reproduce(_) => "reproduce",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n: usize,
    pub epsilon: f64,
    pub scenario: ScenarioTemplate,
    pub estimators: Vec<EstimatorKind>,
    pub target: Target,
    /// `None` selects the experiment's default.
    pub runs: Option<usize>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub data: Option<PathBuf>,
    pub eps_grid: Vec<f64>,
    pub fbp_step: usize,
    pub replacement: Replacement,
    pub theta_tol: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: Experiment::Replicate,
            n: presets::ROBUSTNESS_N,
            epsilon: presets::SWEEP_EPSILON,
            scenario: presets::single_outlier(),
            estimators: EstimatorKind::standard_set().to_vec(),
            target: Target::Theta,
            runs: None,
            seed: None,
            output: None,
            data: None,
            eps_grid: presets::eps_table_grid(),
            fbp_step: presets::FBP_STEP,
            replacement: presets::FBP_REPLACEMENT,
            theta_tol: BreakdownRule::DEFAULT_THETA_TOL,
        }
    }
}

impl ExperimentConfig {
    /// Scenario actually simulated; figures carry their own.
    pub fn effective_scenario(&self) -> ScenarioTemplate {
        match self.experiment {
            Experiment::Reproduce(id) => id.template(),
            _ => self.scenario,
        }
    }

    pub fn breakdown_rule(&self) -> BreakdownRule {
        BreakdownRule {
            theta_tol: self.theta_tol,
            ..BreakdownRule::for_alpha(self.effective_scenario().alpha)
        }
    }
}

const KEYS: &[&str] = &[
    "experiment",
    "figure",
    "n",
    "epsilon",
    "outlier",
    "alpha_re",
    "alpha_im",
    "z0_re",
    "z0_im",
    "mu1",
    "sigma1",
    "mu2",
    "sigma2",
    "kappa0",
    "estimators",
    "target",
    "runs",
    "seed",
    "output",
    "data",
    "bisquare_c_factor",
    "gamma_exponent",
    "irls_tol",
    "irls_max_iter",
    "eps_step",
    "eps_stop",
    "fbp_step",
    "replacement_mean",
    "replacement_sd",
    "theta_tol",
];

const SINGLE_KEYS: &[&str] = &["z0_re", "z0_im"];
const DISTRIBUTED_KEYS: &[&str] = &["mu1", "sigma1", "mu2", "sigma2"];

/// Every problem found in a configuration file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigErrors(pub Vec<String>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str(e)?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

fn split_line(raw: &str) -> Option<Result<(String, String), String>> {
    let mut in_quotes = false;
    let mut end = raw.len();
    for (i, c) in raw.char_indices() {
        match c {
            '"' => in_quotes = !in_quotes,
            '#' if !in_quotes => {
                end = i;
                break;
            }
            _ => {}
        }
    }
    if in_quotes {
        return Some(Err("unterminated quote".into()));
    }
    let line = raw[..end].trim();
    if line.is_empty() {
        return None;
    }
    let Some((key, value)) = line.split_once('=') else {
        return Some(Err(format!("expected `key = value`, got `{line}`")));
    };
    let key = key.trim();
    if key.is_empty() {
        return Some(Err("missing key before `=`".into()));
    }
    let mut value = value.trim();
    if value.len() >= 2 && value.starts_with('"') && value.ends_with('"') {
        value = &value[1..value.len() - 1];
    } else if value.contains('"') {
        return Some(Err(format!("stray quote in value `{value}`")));
    }
    Some(Ok((key.to_string(), value.to_string())))
}

/// Raw assignments keyed by name.
fn lex(text: &str, errors: &mut Vec<String>) -> BTreeMap<String, String> {
    let mut entries = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        match split_line(raw) {
            None => {}
            Some(Err(e)) => errors.push(format!("line {lineno}: {e}")),
            Some(Ok((key, value))) => {
                if !KEYS.contains(&key.as_str()) {
                    errors.push(format!("line {lineno}: unknown key `{key}`"));
                    continue;
                }
                match entries.entry(key) {
                    Entry::Occupied(e) => {
                        errors.push(format!("line {lineno}: duplicate key `{}`", e.key()))
                    }
                    Entry::Vacant(e) => {
                        e.insert(value);
                    }
                }
            }
        }
    }
    entries
}

struct Fields<'a> {
    entries: &'a BTreeMap<String, String>,
    errors: &'a mut Vec<String>,
}

impl<'a> Fields<'a> {
    fn raw(&self, key: &str) -> Option<&'a str> {
        self.entries.get(key).map(String::as_str)
    }

    fn parse<T: FromStr>(&mut self, key: &str, what: &str) -> Option<T> {
        let raw = self.raw(key)?;
        match raw.parse() {
            Ok(v) => Some(v),
            Err(_) => {
                self.errors
                    .push(format!("{key}: expected {what}, got `{raw}`"));
                None
            }
        }
    }

    fn real(&mut self, key: &str) -> Option<f64> {
        let v: f64 = self.parse(key, "a real number")?;
        if v.is_finite() {
            Some(v)
        } else {
            self.errors.push(format!("{key}: must be finite, got {v}"));
            None
        }
    }

    fn check(&mut self, key: &str, ok: bool, requirement: &str, shown: impl fmt::Display) {
        if !ok {
            self.errors
                .push(format!("{key}: {requirement}, got {shown}"));
        }
    }
}

/// Parses and validates a configuration file.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigErrors> {
    let mut errors = Vec::new();
    let entries = lex(text, &mut errors);
    let mut f = Fields {
        entries: &entries,
        errors: &mut errors,
    };
    let mut cfg = ExperimentConfig::default();

    let figure = f.raw("figure").map(FigureId::from_str);
    let figure = match figure {
        Some(Err(e)) => {
            f.errors.push(format!("figure: {e}"));
            None
        }
        Some(Ok(id)) => Some(id),
        None => None,
    };
    match (f.raw("experiment"), figure) {
        (None, None) => {}
        (None, Some(id)) | (Some("reproduce"), Some(id)) => cfg.experiment = Experiment::Reproduce(id),
        (Some("reproduce"), None) => {
            if !entries.contains_key("figure") {
                f.errors
                    .push("experiment: `reproduce` requires a `figure`".into());
            }
        }
        (Some(name), fig) => {
            let parsed = match name {
                "simulate" => Some(Experiment::Simulate),
                "estimate" => Some(Experiment::Estimate),
                "replicate" => Some(Experiment::Replicate),
                "eps-curve" | "eps_curve" => Some(Experiment::EpsCurve),
                "fbp" => Some(Experiment::Fbp),
                "efficiency" => Some(Experiment::Efficiency),
                other => {
                    f.errors.push(format!("experiment: unknown experiment `{other}`"));
                    None
                }
            };
            if let Some(e) = parsed {
                cfg.experiment = e;
                if fig.is_some() {
                    f.errors
                        .push(format!("figure: only valid with experiment = reproduce, not `{name}`"));
                }
            }
        }
    }

    if let Some(n) = f.parse::<i64>("n", "an integer") {
        f.check("n", n >= 1, "must be at least 1", n);
        if n >= 1 {
            cfg.n = n as usize;
        }
    }
    if let Some(eps) = f.real("epsilon") {
        f.check("epsilon", (0.0..1.0).contains(&eps), "must lie in [0, 1)", eps);
        cfg.epsilon = eps;
    }

    let distributed = match f.raw("outlier") {
        None => DISTRIBUTED_KEYS.iter().any(|k| entries.contains_key(*k)),
        Some("single") => false,
        Some("distributed") => true,
        Some(other) => {
            f.errors.push(format!(
                "outlier: expected `single` or `distributed`, got `{other}`"
            ));
            false
        }
    };
    let (foreign, preset) = if distributed {
        (SINGLE_KEYS, presets::distributed_outliers())
    } else {
        (DISTRIBUTED_KEYS, presets::single_outlier())
    };
    for key in foreign {
        if entries.contains_key(*key) {
            let kind = if distributed { "single" } else { "distributed" };
            f.errors
                .push(format!("{key}: only valid with outlier = {kind}"));
        }
    }
    let alpha_re = f.real("alpha_re").unwrap_or(preset.alpha.re);
    let alpha_im = f.real("alpha_im").unwrap_or(preset.alpha.im);
    let alpha = ComplexAmplitude { re: alpha_re, im: alpha_im };
    f.check(
        "alpha_re",
        alpha_re != 0.0,
        "must be nonzero for the phase to be defined",
        alpha_re,
    );
    let outliers = match preset.outliers {
        OutlierSpec::Single { z0, kappa0 } => OutlierSpec::Single {
            z0: ComplexAmplitude {
                re: f.real("z0_re").unwrap_or(z0.re),
                im: f.real("z0_im").unwrap_or(z0.im),
            },
            kappa0: f.real("kappa0").unwrap_or(kappa0),
        },
        OutlierSpec::Distributed {
            mu1,
            sigma1,
            mu2,
            sigma2,
            kappa0,
        } => {
            let s1 = f.real("sigma1").unwrap_or(sigma1);
            let s2 = f.real("sigma2").unwrap_or(sigma2);
            f.check("sigma1", s1 >= 0.0, "must be nonnegative", s1);
            f.check("sigma2", s2 >= 0.0, "must be nonnegative", s2);
            OutlierSpec::Distributed {
                mu1: f.real("mu1").unwrap_or(mu1),
                sigma1: s1,
                mu2: f.real("mu2").unwrap_or(mu2),
                sigma2: s2,
                kappa0: f.real("kappa0").unwrap_or(kappa0),
            }
        }
    };
    let kappa0 = match outliers {
        OutlierSpec::Single { kappa0, .. } | OutlierSpec::Distributed { kappa0, .. } => kappa0,
    };
    f.check("kappa0", kappa0 >= 0.0, "must be nonnegative", kappa0);
    cfg.scenario = ScenarioTemplate { alpha, outliers };

    let mut tuning = TuningPolicy::default();
    if let Some(c) = f.real("bisquare_c_factor") {
        f.check("bisquare_c_factor", c > 0.0, "must be positive", c);
        tuning.bisquare_c_factor = c;
    }
    if let Some(g) = f.real("gamma_exponent") {
        f.check("gamma_exponent", g > 0.0, "must be positive", g);
        tuning.gamma_exponent = g;
    }
    let mut irls = IrlsConfig::default();
    if let Some(t) = f.real("irls_tol") {
        f.check("irls_tol", t > 0.0, "must be positive", t);
        irls.tol = t;
    }
    if let Some(m) = f.parse::<i64>("irls_max_iter", "an integer") {
        f.check("irls_max_iter", m >= 1, "must be at least 1", m);
        irls.max_iter = m.max(1) as usize;
    }
    if let Some(list) = f.raw("estimators") {
        let mut kinds = Vec::new();
        for name in list.split(',').map(str::trim) {
            match name.parse::<EstimatorKind>() {
                Ok(k) if !kinds.contains(&k) => kinds.push(k),
                Ok(_) => f.errors.push(format!("estimators: `{name}` listed twice")),
                Err(_) => f.errors.push(format!("estimators: unknown estimator `{name}`")),
            }
        }
        cfg.estimators = kinds;
    }
    cfg.estimators = cfg
        .estimators
        .into_iter()
        .map(|k| k.with_tuning(tuning).with_irls(irls))
        .collect();

    if let Some(t) = f.raw("target") {
        match t.parse() {
            Ok(t) => cfg.target = t,
            Err(_) => f.errors.push(format!(
                "target: expected alpha_r, alpha_i or theta, got `{t}`"
            )),
        }
    }
    if let Some(r) = f.parse::<i64>("runs", "an integer") {
        f.check("runs", r >= 1, "must be at least 1", r);
        cfg.runs = Some(r.max(1) as usize);
    }
    cfg.seed = f.parse("seed", "a nonnegative integer");
    cfg.output = f.raw("output").map(PathBuf::from);
    cfg.data = f.raw("data").map(PathBuf::from);

    let step = f.real("eps_step").unwrap_or(presets::EPS_STEP);
    let stop = f.real("eps_stop").unwrap_or(presets::EPS_TABLE_STOP);
    f.check("eps_step", step > 0.0, "must be positive", step);
    f.check("eps_stop", (0.0..1.0).contains(&stop), "must lie in [0, 1)", stop);
    if step > 0.0 && (0.0..1.0).contains(&stop) {
        cfg.eps_grid = eps_grid(step, stop);
    }

    if let Some(s) = f.parse::<i64>("fbp_step", "an integer") {
        f.check("fbp_step", s >= 1, "must be at least 1", s);
        cfg.fbp_step = s.max(1) as usize;
    }
    if let Some(m) = f.real("replacement_mean") {
        cfg.replacement.mean = m;
    }
    if let Some(sd) = f.real("replacement_sd") {
        f.check("replacement_sd", sd >= 0.0, "must be nonnegative", sd);
        cfg.replacement.sd = sd;
    }
    if let Some(t) = f.real("theta_tol") {
        f.check("theta_tol", t > 0.0, "must be positive", t);
        cfg.theta_tol = t;
    }
    if errors.is_empty() {
        Ok(cfg)
    } else {
        Err(ConfigErrors(errors))
    }
}
