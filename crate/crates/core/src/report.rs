//! CSV and JSON serialization of robustness reports.
//!
//! Long-format files carry one row per (estimator, x-axis point) with the
//! header `estimator,target,n,epsilon,m,runs,mean,bias,mse,sd,mean_iterations`.
//! `epsilon` is empty for breakdown sweeps and `m` is empty otherwise.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::robustness::{EpsCurve, FbpResult, ReplicationStats, Target};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub estimator: String,
    pub target: Target,
    pub n: usize,
    pub epsilon: Option<f64>,
    pub m: Option<usize>,
    pub runs: usize,
    pub mean: f64,
    pub bias: f64,
    pub mse: f64,
    pub sd: f64,
    pub mean_iterations: f64,
}

impl From<&ReplicationStats> for ReportRow {
    fn from(s: &ReplicationStats) -> Self {
        Self {
            estimator: s.estimator.clone(),
            target: s.target,
            n: s.n,
            epsilon: Some(s.epsilon),
            m: None,
            runs: s.runs,
            mean: s.mean_estimate,
            bias: s.bias,
            mse: s.mse,
            sd: s.sd,
            mean_iterations: s.mean_iterations,
        }
    }
}

impl ReportRow {
    pub fn from_eps_curve(curve: &EpsCurve) -> Vec<Self> {
        curve
            .points
            .iter()
            .map(|p| Self {
                estimator: curve.estimator.clone(),
                target: curve.target,
                n: curve.n,
                epsilon: Some(p.epsilon),
                m: None,
                runs: curve.runs,
                mean: p.mean_estimate,
                bias: p.bias,
                mse: p.mse,
                sd: p.sd,
                mean_iterations: p.mean_iterations,
            })
            .collect()
    }

    /// Phase rows of a breakdown sweep; `truth` is the uncontaminated phase.
    pub fn from_fbp(result: &FbpResult, truth: f64) -> Vec<Self> {
        result
            .curve
            .iter()
            .map(|p| Self {
                estimator: result.estimator.clone(),
                target: Target::Theta,
                n: result.n,
                epsilon: None,
                m: Some(p.m),
                runs: result.runs,
                mean: p.theta,
                bias: p.theta - truth,
                mse: p.theta_mse,
                sd: p.theta_sd,
                mean_iterations: p.mean_iterations,
            })
            .collect()
    }
}

pub fn write_rows<W: Write>(rows: &[ReportRow], writer: W) -> Result<()> {
    write_records(rows, writer)
}

pub fn read_rows<R: Read>(reader: R) -> Result<Vec<ReportRow>> {
    read_records(reader)
}

/// Breakdown summary, one row per estimator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FbpRow {
    pub estimator: String,
    pub n: usize,
    pub step: usize,
    pub runs: usize,
    pub m_star: usize,
    pub fbp: f64,
    pub breakdown_m: Option<usize>,
    pub theta_tol: f64,
}

impl From<&FbpResult> for FbpRow {
    fn from(r: &FbpResult) -> Self {
        Self {
            estimator: r.estimator.clone(),
            n: r.n,
            step: r.step,
            runs: r.runs,
            m_star: r.m_star,
            fbp: r.fbp,
            breakdown_m: r.breakdown_m,
            theta_tol: r.rule.theta_tol,
        }
    }
}

pub fn write_records<T: Serialize, W: Write>(rows: &[T], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<T: for<'de> Deserialize<'de>, R: Read>(reader: R) -> Result<Vec<T>> {
    let mut rdr = csv::Reader::from_reader(reader);
    rdr.deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()
        .map_err(Error::from)
}

/// Wide table of mean iteration counts: one row per estimator, one column
/// per epsilon. Header: `estimator,<eps_0>,<eps_1>,...`.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTable {
    pub epsilons: Vec<f64>,
    pub rows: Vec<(String, Vec<f64>)>,
}

impl IterationTable {
    pub fn from_curves(curves: &[EpsCurve]) -> Result<Self> {
        let first = curves
            .first()
            .ok_or_else(|| Error::InvalidArgument("no curves to tabulate".into()))?;
        let epsilons: Vec<f64> = first.points.iter().map(|p| p.epsilon).collect();
        let mut rows = Vec::with_capacity(curves.len());
        for c in curves {
            let eps: Vec<f64> = c.points.iter().map(|p| p.epsilon).collect();
            if eps != epsilons {
                return Err(Error::InvalidArgument(
                    "curves use different epsilon grids".into(),
                ));
            }
            rows.push((
                c.estimator.clone(),
                c.points.iter().map(|p| p.mean_iterations).collect(),
            ));
        }
        Ok(Self { epsilons, rows })
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["estimator".to_string()];
        header.extend(self.epsilons.iter().map(|e| e.to_string()));
        w.write_record(&header)?;
        for (name, values) in &self.rows {
            let mut record = vec![name.clone()];
            record.extend(values.iter().map(|v| v.to_string()));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let header = rdr.headers()?.clone();
        if header.get(0) != Some("estimator") {
            return Err(Error::InvalidArgument(
                "iteration table must start with an `estimator` column".into(),
            ));
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::InvalidArgument(format!("bad number `{s}`: {e}")))
        };
        let epsilons = header.iter().skip(1).map(parse).collect::<Result<Vec<_>>>()?;
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record?;
            let name = record.get(0).unwrap_or_default().to_string();
            let values = record.iter().skip(1).map(parse).collect::<Result<Vec<_>>>()?;
            rows.push((name, values));
        }
        Ok(Self { epsilons, rows })
    }
}
