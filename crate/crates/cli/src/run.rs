//! Experiment execution. Every experiment renders its files in memory; the
//! caller writes them after all replications have been reduced.

use std::path::Path;

use robust_qphase::estimators::estimate_amplitude;
use robust_qphase::presets;
use robust_qphase::report::{write_records, write_rows, FbpRow, IterationTable, ReportRow};
use robust_qphase::robustness::{
    epsilon_curve_with, finite_breakdown_point_with, relative_efficiency_with, replicate,
    ReplicationSample,
};
use robust_qphase::{
    phase_from_amplitude, Dataset, EstimateResult, EstimatorKind, Execution, OutlierSpec,
    ReplicationStats, Result, ScenarioTemplate, Target,
};
use serde::{Deserialize, Serialize};

use crate::config::{Experiment, ExperimentConfig, FigureId, DEFAULT_RUNS};

/// A named output file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

impl Artifact {
    fn csv(name: impl Into<String>, render: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<Self> {
        let mut bytes = Vec::new();
        render(&mut bytes)?;
        Ok(Self {
            name: name.into(),
            bytes,
        })
    }

    fn rows(name: &str, rows: &[ReportRow]) -> Result<Self> {
        Self::csv(name, |b| write_rows(rows, b))
    }

    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::write(dir.join(&self.name), &self.bytes)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRow {
    pub estimator: String,
    pub alpha_r: f64,
    pub alpha_i: f64,
    pub theta: f64,
    pub iterations_r: usize,
    pub iterations_i: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateDetail {
    pub estimator: String,
    pub theta: f64,
    pub alpha_r: EstimateResult,
    pub alpha_i: EstimateResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyRow {
    pub estimator: String,
    pub n: usize,
    pub runs: usize,
    pub eta: f64,
}

pub fn default_runs(experiment: Experiment) -> usize {
    match experiment {
        Experiment::Simulate | Experiment::Estimate => 1,
        Experiment::Replicate => presets::SWEEP_RUNS,
        Experiment::EpsCurve => presets::EPS_CURVE_RUNS,
        Experiment::Fbp => presets::FBP_RUNS,
        Experiment::Efficiency => 10 * DEFAULT_RUNS,
        Experiment::Reproduce(id) => id.default_runs(),
    }
}

/// Human-readable outlier law, echoed in run summaries.
pub fn describe_outliers(spec: &OutlierSpec) -> String {
    match spec {
        OutlierSpec::Single { z0, kappa0 } => {
            format!("single outlier at z0 = {z0}, kappa0 = {kappa0}")
        }
        OutlierSpec::Distributed {
            mu1,
            sigma1,
            mu2,
            sigma2,
            kappa0,
        } => format!(
            "alpha_R ~ N({mu1}, {sigma1}), alpha_I ~ N({mu2}, {sigma2}), kappa0 = {kappa0}"
        ),
    }
}

/// Resolved inputs of one invocation.
#[derive(Debug, Clone)]
pub struct Plan<'a> {
    pub config: &'a ExperimentConfig,
    pub runs: usize,
    pub seed: u64,
    pub exec: Execution,
    /// Imported dataset for `estimate`.
    pub data: Option<&'a Dataset>,
}

pub fn run_experiment(plan: &Plan<'_>) -> Result<Vec<Artifact>> {
    let cfg = plan.config;
    let template = cfg.effective_scenario();
    match cfg.experiment {
        Experiment::Simulate => {
            let ds = robust_qphase::generate_dataset(&template.at(cfg.epsilon, cfg.n)?, plan.seed)?;
            Ok(vec![Artifact::csv("dataset.csv", |b| ds.write_csv(b))?])
        }
        Experiment::Estimate => run_estimate(plan, &template),
        Experiment::Replicate => {
            let scenario = template.at(cfg.epsilon, cfg.n)?;
            let mut rows = Vec::new();
            for kind in &cfg.estimators {
                let samples = replicate(&scenario, kind, plan.runs, plan.seed, plan.exec)?;
                let stats = ReplicationStats::from_samples(kind.label(), &scenario, cfg.target, &samples);
                rows.push(ReportRow::from(&stats));
            }
            Ok(vec![Artifact::rows("replicate.csv", &rows)?])
        }
        Experiment::EpsCurve => {
            let rows = eps_rows(plan, &template, &cfg.eps_grid, &cfg.estimators, cfg.target)?;
            Ok(vec![Artifact::rows("eps_curve.csv", &rows)?])
        }
        Experiment::Fbp => fbp_artifacts(plan, &template, cfg.n, &cfg.estimators, "fbp"),
        Experiment::Efficiency => {
            let rows = cfg
                .estimators
                .iter()
                .map(|kind| {
                    Ok(EfficiencyRow {
                        estimator: kind.label().to_string(),
                        n: cfg.n,
                        runs: plan.runs,
                        eta: relative_efficiency_with(kind, cfg.n, plan.runs, plan.seed, plan.exec)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(vec![Artifact::csv("efficiency.csv", |b| write_records(&rows, b))?])
        }
        Experiment::Reproduce(id) => run_reproduce(id, plan.runs, plan.seed, plan.exec),
    }
}

fn run_estimate(plan: &Plan<'_>, template: &ScenarioTemplate) -> Result<Vec<Artifact>> {
    let cfg = plan.config;
    let simulated;
    let ds = match plan.data {
        Some(ds) => ds,
        None => {
            simulated = robust_qphase::generate_dataset(&template.at(cfg.epsilon, cfg.n)?, plan.seed)?;
            &simulated
        }
    };
    let mut rows = Vec::new();
    let mut details = Vec::new();
    for kind in &cfg.estimators {
        let (re, im) = estimate_amplitude(ds, kind)?;
        let theta = phase_from_amplitude(re.value, im.value)?;
        rows.push(EstimateRow {
            estimator: kind.label().to_string(),
            alpha_r: re.value,
            alpha_i: im.value,
            theta,
            iterations_r: re.iterations,
            iterations_i: im.iterations,
            converged: re.converged && im.converged,
        });
        details.push(EstimateDetail {
            estimator: kind.label().to_string(),
            theta,
            alpha_r: re,
            alpha_i: im,
        });
    }
    let mut json = serde_json::to_vec_pretty(&details)?;
    json.push(b'\n');
    Ok(vec![
        Artifact::csv("estimates.csv", |b| write_records(&rows, b))?,
        Artifact {
            name: "estimates.json".into(),
            bytes: json,
        },
    ])
}

fn eps_rows(
    plan: &Plan<'_>,
    template: &ScenarioTemplate,
    grid: &[f64],
    kinds: &[EstimatorKind],
    target: Target,
) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for kind in kinds {
        let curve = epsilon_curve_with(
            grid,
            plan.config.n,
            kind,
            target,
            plan.runs,
            plan.seed,
            template,
            plan.exec,
        )?;
        rows.extend(ReportRow::from_eps_curve(&curve));
    }
    Ok(rows)
}

fn fbp_artifacts(
    plan: &Plan<'_>,
    template: &ScenarioTemplate,
    n: usize,
    kinds: &[EstimatorKind],
    stem: &str,
) -> Result<Vec<Artifact>> {
    let cfg = plan.config;
    let scenario = template.at(cfg.epsilon, n)?;
    let rule = cfg.breakdown_rule();
    let truth = template.alpha.phase();
    let mut curve = Vec::new();
    let mut summary = Vec::new();
    for kind in kinds {
        let res = finite_breakdown_point_with(
            &scenario,
            kind,
            &rule,
            cfg.fbp_step,
            cfg.replacement,
            plan.seed,
            plan.runs,
            plan.exec,
        )?;
        curve.extend(ReportRow::from_fbp(&res, truth));
        summary.push(FbpRow::from(&res));
    }
    Ok(vec![
        Artifact::rows(&format!("{stem}.csv"), &curve)?,
        Artifact::csv(format!("{stem}_fbp.csv"), |b| write_records(&summary, b))?,
    ])
}

/// Rows of a sample-size sweep for the given targets, sharing datasets
/// across targets.
fn size_sweep(
    template: &ScenarioTemplate,
    targets: &[Target],
    runs: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<ReportRow>> {
    let kinds = EstimatorKind::standard_set();
    let mut per_target: Vec<Vec<ReportRow>> = vec![Vec::new(); targets.len()];
    for kind in &kinds {
        for &n in &presets::SWEEP_SIZES {
            let scenario = template.at(presets::SWEEP_EPSILON, n)?;
            let samples: Vec<ReplicationSample> = replicate(&scenario, kind, runs, seed, exec)?;
            for (rows, &target) in per_target.iter_mut().zip(targets) {
                let stats = ReplicationStats::from_samples(kind.label(), &scenario, target, &samples);
                rows.push(ReportRow::from(&stats));
            }
        }
    }
    Ok(per_target.concat())
}

/// Regenerates the data behind one figure or table with its baked-in
/// scenario; `runs` replaces the figure's default replication count.
pub fn run_reproduce(id: FigureId, runs: usize, seed: u64, exec: Execution) -> Result<Vec<Artifact>> {
    let template = id.template();
    let name = format!("{id}.csv");
    let kinds = EstimatorKind::standard_set();
    match id {
        FigureId::Fig2 => {
            let rows = size_sweep(&template, &[Target::AlphaR, Target::AlphaI], runs, seed, exec)?;
            Ok(vec![Artifact::rows(&name, &rows)?])
        }
        FigureId::Fig3 | FigureId::Fig6 => {
            let rows = size_sweep(&template, &[Target::Theta], runs, seed, exec)?;
            Ok(vec![Artifact::rows(&name, &rows)?])
        }
        FigureId::Fig4 => {
            let cfg = ExperimentConfig {
                experiment: Experiment::Reproduce(id),
                n: presets::ROBUSTNESS_N,
                epsilon: presets::SWEEP_EPSILON,
                fbp_step: presets::FBP_STEP,
                replacement: presets::FBP_REPLACEMENT,
                ..ExperimentConfig::default()
            };
            let plan = Plan {
                config: &cfg,
                runs,
                seed,
                exec,
                data: None,
            };
            fbp_artifacts(&plan, &template, presets::ROBUSTNESS_N, &kinds, id.as_str())
        }
        FigureId::Fig5 | FigureId::Fig7 => {
            let cfg = figure_config(id);
            let plan = Plan {
                config: &cfg,
                runs,
                seed,
                exec,
                data: None,
            };
            let rows = eps_rows(&plan, &template, &presets::eps_curve_grid(), &kinds, Target::Theta)?;
            Ok(vec![Artifact::rows(&name, &rows)?])
        }
        FigureId::Table1 | FigureId::Table2 => {
            let target = if id == FigureId::Table1 {
                Target::AlphaR
            } else {
                Target::AlphaI
            };
            let grid = presets::eps_table_grid();
            let curves = [EstimatorKind::bisquare(), EstimatorKind::gamma()]
                .iter()
                .map(|kind| {
                    epsilon_curve_with(
                        &grid,
                        presets::ROBUSTNESS_N,
                        kind,
                        target,
                        runs,
                        seed,
                        &template,
                        exec,
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            let table = IterationTable::from_curves(&curves)?;
            Ok(vec![Artifact::csv(name, |b| table.write_csv(b))?])
        }
    }
}

fn figure_config(id: FigureId) -> ExperimentConfig {
    ExperimentConfig {
        experiment: Experiment::Reproduce(id),
        n: presets::ROBUSTNESS_N,
        ..ExperimentConfig::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use robust_qphase::report::{read_records, read_rows};

    fn plan(cfg: &ExperimentConfig, runs: usize) -> Plan<'_> {
        Plan {
            config: cfg,
            runs,
            seed: 5,
            exec: Execution::default(),
            data: None,
        }
    }

    fn small(experiment: Experiment) -> ExperimentConfig {
        ExperimentConfig {
            experiment,
            n: 400,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn replicate_has_one_row_per_estimator() {
        let cfg = small(Experiment::Replicate);
        let out = run_experiment(&plan(&cfg, 4)).unwrap();
        assert_eq!(out.len(), 1);
        let rows = read_rows(out[0].bytes.as_slice()).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.runs == 4 && r.target == Target::Theta));
    }

    #[test]
    fn simulate_then_estimate_replays_the_dataset() {
        let cfg = small(Experiment::Simulate);
        let out = run_experiment(&plan(&cfg, 1)).unwrap();
        let ds = Dataset::read_csv(out[0].bytes.as_slice(), 5).unwrap();
        assert_eq!(ds.len(), 400);

        let cfg = small(Experiment::Estimate);
        let imported = run_experiment(&Plan {
            data: Some(&ds),
            ..plan(&cfg, 1)
        })
        .unwrap();
        let fresh = run_experiment(&plan(&cfg, 1)).unwrap();
        assert_eq!(imported, fresh);
        let rows: Vec<EstimateRow> = read_records(imported[0].bytes.as_slice()).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(std::str::from_utf8(&imported[1].bytes).unwrap().contains("\"iterations\""));
    }

    #[test]
    fn fbp_emits_curve_and_summary() {
        let cfg = ExperimentConfig {
            fbp_step: 100,
            estimators: vec![EstimatorKind::Mean],
            ..small(Experiment::Fbp)
        };
        let out = run_experiment(&plan(&cfg, 2)).unwrap();
        assert_eq!(out[0].name, "fbp.csv");
        assert_eq!(read_rows(out[0].bytes.as_slice()).unwrap().len(), 5);
        let summary: Vec<FbpRow> = read_records(out[1].bytes.as_slice()).unwrap();
        assert_eq!(summary[0].theta_tol, cfg.theta_tol);
    }

    #[test]
    fn efficiency_rows() {
        let cfg = ExperimentConfig {
            estimators: vec![EstimatorKind::Mean],
            n: 50,
            ..small(Experiment::Efficiency)
        };
        let out = run_experiment(&plan(&cfg, 20)).unwrap();
        let rows: Vec<EfficiencyRow> = read_records(out[0].bytes.as_slice()).unwrap();
        assert!((rows[0].eta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn reproduce_shapes() {
        let fig3 = run_reproduce(FigureId::Fig3, 2, 1, Execution::default()).unwrap();
        let rows = read_rows(fig3[0].bytes.as_slice()).unwrap();
        assert_eq!(rows.len(), 20);

        let fig2 = run_reproduce(FigureId::Fig2, 2, 1, Execution::default()).unwrap();
        let rows = read_rows(fig2[0].bytes.as_slice()).unwrap();
        assert_eq!(rows.len(), 40);
        assert_eq!(rows.iter().filter(|r| r.target == Target::AlphaI).count(), 20);

        let table = run_reproduce(FigureId::Table1, 1, 1, Execution::default()).unwrap();
        let t = IterationTable::read_csv(table[0].bytes.as_slice()).unwrap();
        assert_eq!(t.epsilons.len(), 15);
        assert_eq!(t.epsilons[1], 0.025);
        assert_eq!(t.rows[0].0, "bisquare");
        assert_eq!(t.rows[1].0, "gamma");
    }

    #[test]
    fn distributed_description() {
        let s = describe_outliers(&presets::distributed_outliers().outliers);
        assert!(s.starts_with("alpha_R ~ N(0.1, 0.1), alpha_I ~ N(0.1, 0.1)"), "{s}");
    }
}
