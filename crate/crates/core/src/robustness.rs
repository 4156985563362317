//! Monte Carlo robustness protocols: replication bias/MSE, the
//! epsilon-curve, the finite breakdown point under data replacement, and
//! relative efficiency at the normal model.
//!
//! Replication `r` always uses seed `base_seed + r`. Per-run results are
//! collected in run order before any reduction, so parallel and sequential
//! execution produce bit-identical statistics.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{estimate_amplitude, estimate_location, phase_from_amplitude, EstimatorKind};
use crate::exec::Execution;
use crate::gaussian_model::{ComplexAmplitude, ContaminatedModel, OutlierSpec};
use crate::sampling::{
    generate_dataset, rng_for, Dataset, ReplacementPlan, ScenarioConfig, DATASET_STREAM,
    REPLACEMENT_STREAM,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    AlphaR,
    AlphaI,
    Theta,
}

impl Target {
    pub const ALL: [Target; 3] = [Target::AlphaR, Target::AlphaI, Target::Theta];

    pub fn truth(&self, alpha: ComplexAmplitude) -> f64 {
        match self {
            Target::AlphaR => alpha.re,
            Target::AlphaI => alpha.im,
            Target::Theta => alpha.phase(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Target::AlphaR => "alpha_r",
            Target::AlphaI => "alpha_i",
            Target::Theta => "theta",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "alpha_r" | "alphar" | "re" => Ok(Target::AlphaR),
            "alpha_i" | "alphai" | "im" => Ok(Target::AlphaI),
            "theta" | "phase" => Ok(Target::Theta),
            other => Err(Error::InvalidConfig(format!("unknown target `{other}`"))),
        }
    }
}

/// Ideal amplitude and outlier specification, with `epsilon` and `n` left open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioTemplate {
    pub alpha: ComplexAmplitude,
    pub outliers: OutlierSpec,
}

impl ScenarioTemplate {
    pub fn at(&self, epsilon: f64, n: usize) -> Result<ScenarioConfig> {
        ScenarioConfig::new(n, ContaminatedModel::new(self.alpha, epsilon, self.outliers)?)
    }
}

/// One replication's estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReplicationSample {
    pub alpha_r: f64,
    pub alpha_i: f64,
    pub theta: f64,
    pub iterations_r: usize,
    pub iterations_i: usize,
    pub converged: bool,
}

impl ReplicationSample {
    pub fn from_dataset(dataset: &Dataset, kind: &EstimatorKind) -> Result<Self> {
        let (re, im) = estimate_amplitude(dataset, kind)?;
        Ok(Self {
            alpha_r: re.value,
            alpha_i: im.value,
            theta: phase_from_amplitude(re.value, im.value)?,
            iterations_r: re.iterations,
            iterations_i: im.iterations,
            converged: re.converged && im.converged,
        })
    }

    pub fn value(&self, target: Target) -> f64 {
        match target {
            Target::AlphaR => self.alpha_r,
            Target::AlphaI => self.alpha_i,
            Target::Theta => self.theta,
        }
    }

    /// Iterations spent on the quantity; the phase uses the average of both splits.
    pub fn iterations(&self, target: Target) -> f64 {
        match target {
            Target::AlphaR => self.iterations_r as f64,
            Target::AlphaI => self.iterations_i as f64,
            Target::Theta => 0.5 * (self.iterations_r + self.iterations_i) as f64,
        }
    }
}

/// Moments of a set of estimates around a known truth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean: f64,
    pub bias: f64,
    pub mse: f64,
    /// Population standard deviation across runs.
    pub sd: f64,
}

impl Moments {
    pub fn of(values: &[f64], truth: f64) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let mse = values.iter().map(|v| (v - truth).powi(2)).sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        Self {
            mean,
            bias: mean - truth,
            mse,
            sd: var.sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationStats {
    pub estimator: String,
    pub target: Target,
    pub n: usize,
    pub epsilon: f64,
    pub runs: usize,
    pub truth: f64,
    pub mean_estimate: f64,
    pub bias: f64,
    pub mse: f64,
    pub sd: f64,
    pub mean_iterations: f64,
    /// Runs in which some IRLS solve stopped without converging.
    pub nonconverged: usize,
}

impl ReplicationStats {
    pub fn from_samples(
        estimator: &str,
        scenario: &ScenarioConfig,
        target: Target,
        samples: &[ReplicationSample],
    ) -> Self {
        let truth = target.truth(scenario.model.alpha);
        let values: Vec<f64> = samples.iter().map(|s| s.value(target)).collect();
        let m = Moments::of(&values, truth);
        let runs = samples.len();
        Self {
            estimator: estimator.to_string(),
            target,
            n: scenario.n,
            epsilon: scenario.model.epsilon,
            runs,
            truth,
            mean_estimate: m.mean,
            bias: m.bias,
            mse: m.mse,
            sd: m.sd,
            mean_iterations: samples.iter().map(|s| s.iterations(target)).sum::<f64>()
                / runs as f64,
            nonconverged: samples.iter().filter(|s| !s.converged).count(),
        }
    }
}

fn check_runs(runs: usize) -> Result<()> {
    if runs == 0 {
        Err(Error::InvalidArgument("runs must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Per-run estimates for seeds `base_seed .. base_seed + runs`.
pub fn replicate(
    scenario: &ScenarioConfig,
    kind: &EstimatorKind,
    runs: usize,
    base_seed: u64,
    exec: Execution,
) -> Result<Vec<ReplicationSample>> {
    check_runs(runs)?;
    scenario.validate()?;
    exec.map_runs(runs, |r| {
        let dataset = generate_dataset(scenario, base_seed.wrapping_add(r as u64))?;
        ReplicationSample::from_dataset(&dataset, kind)
    })
}

pub fn run_replications(
    scenario: &ScenarioConfig,
    kind: &EstimatorKind,
    target: Target,
    runs: usize,
    base_seed: u64,
) -> Result<ReplicationStats> {
    run_replications_with(scenario, kind, target, runs, base_seed, Execution::default())
}

pub fn run_replications_with(
    scenario: &ScenarioConfig,
    kind: &EstimatorKind,
    target: Target,
    runs: usize,
    base_seed: u64,
    exec: Execution,
) -> Result<ReplicationStats> {
    let samples = replicate(scenario, kind, runs, base_seed, exec)?;
    Ok(ReplicationStats::from_samples(
        kind.label(),
        scenario,
        target,
        &samples,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsPoint {
    pub epsilon: f64,
    pub mean_estimate: f64,
    pub sd: f64,
    pub bias: f64,
    pub mse: f64,
    pub mean_iterations: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsCurve {
    pub estimator: String,
    pub target: Target,
    pub n: usize,
    pub runs: usize,
    pub truth: f64,
    pub points: Vec<EpsPoint>,
}

/// `0, 0.025, ..., 0.35`.
pub fn default_eps_grid() -> Vec<f64> {
    eps_grid(0.025, 0.35)
}

/// `0, step, 2 step, ...` up to and including `stop` (to rounding).
pub fn eps_grid(step: f64, stop: f64) -> Vec<f64> {
    let count = (stop / step + 1e-9).floor() as usize;
    // k * step, rounded to 12 decimals so labels print cleanly
    (0..=count)
        .map(|k| ((k as f64 * step) * 1e12).round() / 1e12)
        .collect()
}

/// Every point reuses seeds `base_seed + r`, so curves are paired across
/// epsilon and the epsilon = 0 point equals `run_replications` at epsilon = 0.
pub fn epsilon_curve(
    eps_grid: &[f64],
    n: usize,
    kind: &EstimatorKind,
    target: Target,
    runs: usize,
    base_seed: u64,
    template: &ScenarioTemplate,
) -> Result<EpsCurve> {
    epsilon_curve_with(
        eps_grid,
        n,
        kind,
        target,
        runs,
        base_seed,
        template,
        Execution::default(),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn epsilon_curve_with(
    eps_grid: &[f64],
    n: usize,
    kind: &EstimatorKind,
    target: Target,
    runs: usize,
    base_seed: u64,
    template: &ScenarioTemplate,
    exec: Execution,
) -> Result<EpsCurve> {
    if eps_grid.is_empty() {
        return Err(Error::InvalidArgument("epsilon grid is empty".into()));
    }
    if eps_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidArgument(
            "epsilon grid must be strictly increasing".into(),
        ));
    }
    let points = eps_grid
        .iter()
        .map(|&epsilon| {
            let scenario = template.at(epsilon, n)?;
            let stats = run_replications_with(&scenario, kind, target, runs, base_seed, exec)?;
            Ok(EpsPoint {
                epsilon,
                mean_estimate: stats.mean_estimate,
                sd: stats.sd,
                bias: stats.bias,
                mse: stats.mse,
                mean_iterations: stats.mean_iterations,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EpsCurve {
        estimator: kind.label().to_string(),
        target,
        n,
        runs,
        truth: target.truth(template.alpha),
        points,
    })
}

/// Decides when a phase estimate has left the parameter space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BreakdownRule {
    /// Phase reported once both amplitudes are dragged to the replacement value.
    pub theta_target: f64,
    pub theta_tol: f64,
    pub magnitude_bound: f64,
}

impl BreakdownRule {
    /// Calibrated so that the sample mean, whose phase approaches pi/4
    /// smoothly, first fires at 1750 of 5000 replaced records.
    pub const DEFAULT_THETA_TOL: f64 = 0.006;

    pub fn for_alpha(alpha: ComplexAmplitude) -> Self {
        Self {
            theta_target: FRAC_PI_4,
            theta_tol: Self::DEFAULT_THETA_TOL,
            magnitude_bound: 100.0 * alpha.norm(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "theta_tol must be positive, got {}",
                self.theta_tol
            )));
        }
        Ok(())
    }

    pub fn fires(&self, theta: f64, alpha_r: f64, alpha_i: f64) -> bool {
        (theta - self.theta_target).abs() <= self.theta_tol
            || alpha_r.abs() > self.magnitude_bound
            || alpha_i.abs() > self.magnitude_bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Replacement {
    pub mean: f64,
    pub sd: f64,
}

/// Averages over runs at one replacement count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FbpPoint {
    pub m: usize,
    pub theta: f64,
    pub theta_sd: f64,
    pub theta_mse: f64,
    pub alpha_r: f64,
    pub alpha_i: f64,
    pub mean_iterations: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FbpResult {
    pub estimator: String,
    pub n: usize,
    pub step: usize,
    pub runs: usize,
    /// Largest swept count before the rule fired, or `n` if it never did.
    pub m_star: usize,
    pub fbp: f64,
    /// First swept count at which the rule fired.
    pub breakdown_m: Option<usize>,
    pub rule: BreakdownRule,
    pub curve: Vec<FbpPoint>,
}

impl FbpResult {
    pub fn broke_down(&self) -> bool {
        self.breakdown_m.is_some()
    }
}

fn sweep_counts(n: usize, step: usize) -> Vec<usize> {
    let mut counts: Vec<usize> = (0..=n).step_by(step).collect();
    if counts.last() != Some(&n) {
        counts.push(n);
    }
    counts
}

/// Finite breakdown point by random replacement.
///
/// Run `r` draws a base dataset from seed `seed + r` and a nested
/// replacement plan from the second stream of the same seed; replacing the
/// first `m` planned records gives the contaminated dataset at count `m`.
/// The breakdown rule is applied to the run-averaged estimates at
/// `m = 0, step, 2 step, ..., n`, scanning upwards; `runs = 1` is a single
/// randomized replacement sweep.
#[allow(clippy::too_many_arguments)]
pub fn finite_breakdown_point(
    scenario: &ScenarioConfig,
    kind: &EstimatorKind,
    rule: &BreakdownRule,
    step: usize,
    replacement: Replacement,
    seed: u64,
    runs: usize,
) -> Result<FbpResult> {
    finite_breakdown_point_with(
        scenario,
        kind,
        rule,
        step,
        replacement,
        seed,
        runs,
        Execution::default(),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn finite_breakdown_point_with(
    scenario: &ScenarioConfig,
    kind: &EstimatorKind,
    rule: &BreakdownRule,
    step: usize,
    replacement: Replacement,
    seed: u64,
    runs: usize,
    exec: Execution,
) -> Result<FbpResult> {
    if step == 0 {
        return Err(Error::InvalidArgument("step must be at least 1".into()));
    }
    check_runs(runs)?;
    rule.validate()?;
    scenario.validate()?;
    let n = scenario.n;
    let counts = sweep_counts(n, step);

    // per_run[r][k] is the estimate of run r at counts[k]
    let per_run = exec.map_runs(runs, |r| {
        let run_seed = seed.wrapping_add(r as u64);
        let base = generate_dataset(scenario, run_seed)?;
        let plan = ReplacementPlan::draw(
            n,
            n,
            replacement.mean,
            replacement.sd,
            &mut rng_for(run_seed, REPLACEMENT_STREAM),
        )?;
        counts
            .iter()
            .map(|&m| ReplicationSample::from_dataset(&plan.apply(&base, m)?, kind))
            .collect::<Result<Vec<_>>>()
    })?;

    let truth = scenario.model.alpha.phase();
    let curve: Vec<FbpPoint> = counts
        .iter()
        .enumerate()
        .map(|(k, &m)| {
            let at_m: Vec<&ReplicationSample> = per_run.iter().map(|run| &run[k]).collect();
            let thetas: Vec<f64> = at_m.iter().map(|s| s.theta).collect();
            let theta = Moments::of(&thetas, truth);
            let avg = |f: &dyn Fn(&ReplicationSample) -> f64| {
                at_m.iter().map(|s| f(s)).sum::<f64>() / runs as f64
            };
            FbpPoint {
                m,
                theta: theta.mean,
                theta_sd: theta.sd,
                theta_mse: theta.mse,
                alpha_r: avg(&|s| s.alpha_r),
                alpha_i: avg(&|s| s.alpha_i),
                mean_iterations: avg(&|s| s.iterations(Target::Theta)),
            }
        })
        .collect();

    let breakdown = curve
        .iter()
        .position(|p| rule.fires(p.theta, p.alpha_r, p.alpha_i));
    let m_star = match breakdown {
        Some(k) if k > 0 => counts[k - 1],
        Some(_) => 0,
        None => n,
    };
    Ok(FbpResult {
        estimator: kind.label().to_string(),
        n,
        step,
        runs,
        m_star,
        fbp: m_star as f64 / n as f64,
        breakdown_m: breakdown.map(|k| counts[k]),
        rule: *rule,
        curve,
    })
}

/// Monte Carlo `var(sample mean) / var(estimator)` on standard normal samples.
pub fn relative_efficiency(kind: &EstimatorKind, n: usize, runs: usize, seed: u64) -> Result<f64> {
    relative_efficiency_with(kind, n, runs, seed, Execution::default())
}

pub fn relative_efficiency_with(
    kind: &EstimatorKind,
    n: usize,
    runs: usize,
    seed: u64,
    exec: Execution,
) -> Result<f64> {
    if runs < 2 {
        return Err(Error::InvalidArgument(
            "relative efficiency needs at least 2 runs".into(),
        ));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("sample size must be positive".into()));
    }
    let pairs = exec.map_runs(runs, |r| {
        let mut rng = rng_for(seed.wrapping_add(r as u64), DATASET_STREAM);
        let xs: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let reference = estimate_location(&xs, &EstimatorKind::Mean)?.value;
        let candidate = estimate_location(&xs, kind)?.value;
        Ok::<_, Error>((reference, candidate))
    })?;
    let (reference, candidate): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let var_ref = Moments::of(&reference, 0.0).sd.powi(2);
    let var_cand = Moments::of(&candidate, 0.0).sd.powi(2);
    Ok(var_ref / var_cand)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn template() -> ScenarioTemplate {
        ScenarioTemplate {
            alpha: ComplexAmplitude::new(10.0, 4.0).unwrap(),
            outliers: OutlierSpec::Single {
                z0: ComplexAmplitude::new(15.0, 15.0).unwrap(),
                kappa0: 0.1,
            },
        }
    }

    #[test]
    fn moments_decompose() {
        let values = [0.1, 0.4, -0.2, 0.35, 0.05];
        let m = Moments::of(&values, 0.3);
        assert!((m.mse - (m.bias * m.bias + m.sd * m.sd)).abs() < 1e-15);
        assert!(m.mse >= m.bias * m.bias);
    }

    #[test]
    fn grid_default() {
        let g = default_eps_grid();
        assert_eq!(g.len(), 15);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[1], 0.025);
        assert_eq!(g[14], 0.35);
        assert_eq!(eps_grid(0.05, 0.4).last(), Some(&0.4));
    }

    #[test]
    fn sweep_includes_n() {
        assert_eq!(sweep_counts(1000, 250), vec![0, 250, 500, 750, 1000]);
        assert_eq!(sweep_counts(1000, 300), vec![0, 300, 600, 900, 1000]);
    }

    #[test]
    fn rule_defaults() {
        let rule = BreakdownRule::for_alpha(template().alpha);
        assert_eq!(rule.theta_target, FRAC_PI_4);
        assert!((rule.magnitude_bound - 100.0 * 116f64.sqrt()).abs() < 1e-9);
        assert!(rule.fires(0.786, 1000.0, 1000.0));
        assert!(!rule.fires(0.3805, 10.0, 4.0));
        assert!(rule.fires(0.0, 5000.0, 1.0));
    }

    /// Closed-form sweep for the sample mean on the 5000-record single-outlier
    /// scenario. With a fraction f replaced by 1000, each amplitude estimate
    /// is (1 - f) * (mixture mean) + f * 1000.
    #[test]
    fn theta_tol_calibration_for_mean() {
        let base = ContaminatedModel::new(template().alpha, 0.01, template().outliers).unwrap();
        let re0 = base.mean(0.0);
        let im0 = base.mean(std::f64::consts::FRAC_PI_2);
        let rule = BreakdownRule::for_alpha(template().alpha);
        let first = (0..=20)
            .map(|k| k * 250)
            .find(|&m| {
                let f = m as f64 / 5000.0;
                let re = (1.0 - f) * re0 + f * 1000.0;
                let im = (1.0 - f) * im0 + f * 1000.0;
                rule.fires((im / re).atan(), re, im)
            })
            .unwrap();
        assert_eq!(first, 1750);
        assert_eq!(first - 250, 1500);
    }

    #[test]
    fn replications_are_deterministic_across_execution() {
        let scenario = template().at(0.01, 400).unwrap();
        let kind = EstimatorKind::gamma();
        let a = run_replications_with(&scenario, &kind, Target::Theta, 20, 5, Execution::Sequential)
            .unwrap();
        let b = run_replications(&scenario, &kind, Target::Theta, 20, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.runs, 20);
        assert!((a.mse - (a.bias.powi(2) + a.sd.powi(2))).abs() < 1e-12);
    }

    #[test]
    fn eps_curve_rejects_bad_grids() {
        let kind = EstimatorKind::Mean;
        let t = template();
        assert!(epsilon_curve(&[0.1, 0.1], 100, &kind, Target::Theta, 2, 0, &t).is_err());
        assert!(epsilon_curve(&[0.2, 0.1], 100, &kind, Target::Theta, 2, 0, &t).is_err());
        assert!(epsilon_curve(&[0.0, 1.0], 100, &kind, Target::Theta, 2, 0, &t).is_err());
        assert!(epsilon_curve(&[], 100, &kind, Target::Theta, 2, 0, &t).is_err());
    }

    #[test]
    fn eps_curve_zero_matches_replications() {
        let t = template();
        for kind in EstimatorKind::standard_set() {
            let curve = epsilon_curve(&[0.0, 0.1], 300, &kind, Target::Theta, 10, 77, &t).unwrap();
            let stats =
                run_replications(&t.at(0.0, 300).unwrap(), &kind, Target::Theta, 10, 77).unwrap();
            assert_eq!(curve.points[0].mean_estimate, stats.mean_estimate);
        }
    }

    #[test]
    fn fbp_small_sweep() {
        let scenario = template().at(0.01, 400).unwrap();
        let rule = BreakdownRule::for_alpha(scenario.model.alpha);
        let repl = Replacement {
            mean: 1000.0,
            sd: 0.1,
        };
        let res =
            finite_breakdown_point(&scenario, &EstimatorKind::Median, &rule, 40, repl, 3, 4).unwrap();
        assert_eq!(res.curve.len(), 11);
        assert_eq!(res.curve[0].m, 0);
        // the clean base never fires
        assert!(!rule.fires(res.curve[0].theta, res.curve[0].alpha_r, res.curve[0].alpha_i));
        let fired = res.breakdown_m.expect("median must break by m = n");
        assert!(res.m_star < fired);
        assert_eq!(res.m_star + 40, fired);
        assert!(res.fbp < 1.0);

        assert!(
            finite_breakdown_point(&scenario, &EstimatorKind::Median, &rule, 0, repl, 3, 1).is_err()
        );
    }

    #[test]
    fn fbp_without_breakdown() {
        let scenario = template().at(0.0, 200).unwrap();
        let rule = BreakdownRule {
            theta_target: FRAC_PI_4,
            theta_tol: 1e-9,
            magnitude_bound: f64::INFINITY,
        };
        // a tolerance far below the sampling noise of the phase never fires
        let repl = Replacement { mean: 7.0, sd: 0.1 };
        let res =
            finite_breakdown_point(&scenario, &EstimatorKind::Median, &rule, 50, repl, 1, 2).unwrap();
        assert!(!res.broke_down());
        assert_eq!(res.m_star, 200);
        assert_eq!(res.fbp, 1.0);
    }

    #[test]
    fn efficiency_of_mean_is_one() {
        let eta = relative_efficiency(&EstimatorKind::Mean, 50, 30, 1).unwrap();
        assert!((eta - 1.0).abs() < 1e-12);
        assert!(relative_efficiency(&EstimatorKind::Mean, 50, 1, 1).is_err());
    }

    #[test]
    fn target_parsing() {
        for t in Target::ALL {
            assert_eq!(t.label().parse::<Target>().unwrap(), t);
        }
        assert!("amplitude".parse::<Target>().is_err());
    }
}
