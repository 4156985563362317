//! Iteratively reweighted solution of the location M-equation
//! `sum_i psi(x_i - mu) = 0`, and a bracketing root finder used to check it.

use serde::{Deserialize, Serialize};

use super::psi::PsiKind;
use super::scale::median;
use crate::error::{Error, Result};

/// Weight sums below this mean no observation is inside the score's support.
pub const DEGENERATE_WEIGHT_SUM: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Initializer {
    #[default]
    Median,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IrlsConfig {
    /// Stop once two successive iterates differ by at most this much.
    pub tol: f64,
    pub max_iter: usize,
    pub initializer: Initializer,
    pub keep_trajectory: bool,
}

impl Default for IrlsConfig {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            max_iter: 100,
            initializer: Initializer::Median,
            keep_trajectory: false,
        }
    }
}

impl IrlsConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "irls tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("irls max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateResult {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Set when every weight vanished; `value` is then the last iterate.
    #[serde(default)]
    pub degenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<Vec<f64>>,
}

impl EstimateResult {
    pub fn closed_form(value: f64) -> Self {
        Self {
            value,
            iterations: 0,
            converged: true,
            degenerate: false,
            trajectory: None,
        }
    }
}

/// Fixed-point iteration `mu <- sum W(x - mu) x / sum W(x - mu)` from the median.
pub fn irls_solve(xs: &[f64], kind: &PsiKind, config: &IrlsConfig) -> Result<EstimateResult> {
    config.validate()?;
    let mut mu = match config.initializer {
        Initializer::Median => median(xs)?,
    };
    let mut trajectory = config.keep_trajectory.then(|| vec![mu]);

    for iteration in 1..=config.max_iter {
        let (mut sw, mut swx) = (0.0, 0.0);
        for &x in xs {
            let w = kind.weight(x - mu);
            sw += w;
            swx += w * x;
        }
        if sw < DEGENERATE_WEIGHT_SUM {
            return Ok(EstimateResult {
                value: mu,
                iterations: iteration - 1,
                converged: false,
                degenerate: true,
                trajectory,
            });
        }
        let next = swx / sw;
        if let Some(t) = trajectory.as_mut() {
            t.push(next);
        }
        let step = (next - mu).abs();
        mu = next;
        if step <= config.tol {
            return Ok(EstimateResult {
                value: mu,
                iterations: iteration,
                converged: true,
                degenerate: false,
                trajectory,
            });
        }
    }

    Ok(EstimateResult {
        value: mu,
        iterations: config.max_iter,
        converged: false,
        degenerate: false,
        trajectory,
    })
}

pub fn m_equation_residual(xs: &[f64], kind: &PsiKind, mu: f64) -> f64 {
    xs.iter().map(|&x| kind.psi(x - mu)).sum()
}

const BISECTION_WIDTH: f64 = 1e-8;

/// Root of the M-equation by grid scan plus bisection.
///
/// The residual is evaluated on `resolution + 1` equally spaced points of
/// `[lo, hi]`. Among the brackets with a strict sign change (or an isolated
/// exact zero), the one closest to the sample median is refined by
/// bisection until it is narrower than `1e-8`.
pub fn grid_root(xs: &[f64], kind: &PsiKind, lo: f64, hi: f64, resolution: usize) -> Result<f64> {
    if !(lo < hi) {
        return Err(Error::InvalidArgument(format!(
            "grid bounds must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    if resolution == 0 {
        return Err(Error::InvalidArgument("grid resolution must be positive".into()));
    }
    let center = median(xs)?;
    let h = (hi - lo) / resolution as f64;
    let grid: Vec<f64> = (0..=resolution)
        .map(|k| if k == resolution { hi } else { lo + k as f64 * h })
        .collect();
    let values: Vec<f64> = grid.iter().map(|&mu| m_equation_residual(xs, kind, mu)).collect();

    enum Candidate {
        Exact(f64),
        Bracket(usize),
    }
    let mut best: Option<(f64, Candidate)> = None;
    let mut consider = |distance: f64, candidate: Candidate| {
        if best.as_ref().is_none_or(|(d, _)| distance < *d) {
            best = Some((distance, candidate));
        }
    };
    for k in 0..resolution {
        let (a, b) = (values[k], values[k + 1]);
        if a * b < 0.0 {
            let mid = 0.5 * (grid[k] + grid[k + 1]);
            consider((mid - center).abs(), Candidate::Bracket(k));
        } else if b == 0.0 && k + 2 <= resolution {
            // exact zero at an interior grid point, but only where the
            // residual actually crosses (not on a flat zero plateau)
            let c = values[k + 2];
            if a * c < 0.0 {
                consider((grid[k + 1] - center).abs(), Candidate::Exact(grid[k + 1]));
            }
        }
    }

    match best {
        None => Err(Error::RootNotBracketed { lo, hi }),
        Some((_, Candidate::Exact(root))) => Ok(root),
        Some((_, Candidate::Bracket(k))) => {
            let (mut a, mut b) = (grid[k], grid[k + 1]);
            let mut fa = values[k];
            for _ in 0..200 {
                if b - a <= BISECTION_WIDTH {
                    break;
                }
                let mid = 0.5 * (a + b);
                let fm = m_equation_residual(xs, kind, mid);
                if fm == 0.0 {
                    return Ok(mid);
                }
                if (fm < 0.0) == (fa < 0.0) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            Ok(0.5 * (a + b))
        }
    }
}
