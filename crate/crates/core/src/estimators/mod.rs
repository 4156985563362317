//! Location estimators and the amplitude/phase pipeline built on them.

mod irls;
mod psi;
mod scale;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use irls::{
    grid_root, irls_solve, m_equation_residual, EstimateResult, Initializer, IrlsConfig,
    DEGENERATE_WEIGHT_SUM,
};
pub use psi::{psi, weight, PsiKind};
pub use scale::{madn, mean, median, MADN_DIVISOR};

use crate::error::{Error, Result};
use crate::sampling::{split_by_phase, Dataset};

/// Plug-in scales are clamped from below so an all-equal sample does not
/// produce a zero-width score.
pub const MIN_SCALE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MFamily {
    Bisquare,
    Gamma,
    MleNormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaSource {
    #[default]
    MadnOfData,
}

/// How data-dependent tuning constants are chosen for each sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TuningPolicy {
    /// Bisquare cutoff `c = factor * MADN`.
    pub bisquare_c_factor: f64,
    pub gamma_exponent: f64,
    pub gamma_sigma_source: SigmaSource,
}

impl Default for TuningPolicy {
    fn default() -> Self {
        Self {
            bisquare_c_factor: 4.68,
            gamma_exponent: 0.5,
            gamma_sigma_source: SigmaSource::MadnOfData,
        }
    }
}

impl TuningPolicy {
    /// Gamma exponent giving 95% efficiency at the normal model.
    pub const GAMMA_EXPONENT_95: f64 = 0.2;

    pub fn validate(&self) -> Result<()> {
        if !(self.bisquare_c_factor > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "bisquare_c_factor must be positive, got {}",
                self.bisquare_c_factor
            )));
        }
        if !(self.gamma_exponent > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "gamma_exponent must be positive, got {}",
                self.gamma_exponent
            )));
        }
        Ok(())
    }

    /// Fix the score for one sample. The scale is computed once here and
    /// held constant during the iteration.
    pub fn tune(&self, family: MFamily, xs: &[f64]) -> Result<PsiKind> {
        Ok(match family {
            MFamily::MleNormal => PsiKind::MleNormal,
            MFamily::Bisquare => PsiKind::Bisquare {
                c: self.bisquare_c_factor * self.scale(xs)?,
            },
            MFamily::Gamma => PsiKind::Gamma {
                gamma: self.gamma_exponent,
                sigma: self.scale(xs)?,
            },
        })
    }

    fn scale(&self, xs: &[f64]) -> Result<f64> {
        match self.gamma_sigma_source {
            SigmaSource::MadnOfData => Ok(madn(xs)?.max(MIN_SCALE)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "estimator", rename_all = "snake_case")]
pub enum EstimatorKind {
    Mean,
    Median,
    MEst {
        family: MFamily,
        tuning: TuningPolicy,
        irls: IrlsConfig,
    },
}

impl EstimatorKind {
    pub fn bisquare() -> Self {
        Self::m_estimator(MFamily::Bisquare)
    }

    pub fn gamma() -> Self {
        Self::m_estimator(MFamily::Gamma)
    }

    pub fn m_estimator(family: MFamily) -> Self {
        EstimatorKind::MEst {
            family,
            tuning: TuningPolicy::default(),
            irls: IrlsConfig::default(),
        }
    }

    /// The four estimators compared throughout: mean, median, bisquare, gamma.
    pub fn standard_set() -> [Self; 4] {
        [Self::Mean, Self::Median, Self::bisquare(), Self::gamma()]
    }

    pub fn with_tuning(self, tuning: TuningPolicy) -> Self {
        match self {
            EstimatorKind::MEst { family, irls, .. } => EstimatorKind::MEst {
                family,
                tuning,
                irls,
            },
            other => other,
        }
    }

    pub fn with_irls(self, irls: IrlsConfig) -> Self {
        match self {
            EstimatorKind::MEst { family, tuning, .. } => EstimatorKind::MEst {
                family,
                tuning,
                irls,
            },
            other => other,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            EstimatorKind::Mean => "mean",
            EstimatorKind::Median => "median",
            EstimatorKind::MEst { family, .. } => match family {
                MFamily::Bisquare => "bisquare",
                MFamily::Gamma => "gamma",
                MFamily::MleNormal => "mle",
            },
        }
    }

    pub fn is_iterative(&self) -> bool {
        matches!(self, EstimatorKind::MEst { .. })
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mean" => Ok(Self::Mean),
            "median" => Ok(Self::Median),
            "bisquare" | "tukey" => Ok(Self::bisquare()),
            "gamma" => Ok(Self::gamma()),
            "mle" => Ok(Self::m_estimator(MFamily::MleNormal)),
            other => Err(Error::InvalidConfig(format!("unknown estimator `{other}`"))),
        }
    }
}

/// Location estimate of a single sample.
pub fn estimate_location(xs: &[f64], kind: &EstimatorKind) -> Result<EstimateResult> {
    match kind {
        EstimatorKind::Mean => Ok(EstimateResult::closed_form(mean(xs)?)),
        EstimatorKind::Median => Ok(EstimateResult::closed_form(median(xs)?)),
        EstimatorKind::MEst {
            family,
            tuning,
            irls,
        } => {
            if xs.is_empty() {
                return Err(Error::EmptyData);
            }
            let psi = tuning.tune(*family, xs)?;
            irls_solve(xs, &psi, irls)
        }
    }
}

/// Estimates `(Re alpha, Im alpha)` from the phi = 0 and phi = pi/2 outcomes.
pub fn estimate_amplitude(
    dataset: &Dataset,
    kind: &EstimatorKind,
) -> Result<(EstimateResult, EstimateResult)> {
    let (at_zero, at_half_pi) = split_by_phase(dataset)?;
    if at_zero.is_empty() {
        return Err(Error::InsufficientData { phase: "0" });
    }
    if at_half_pi.is_empty() {
        return Err(Error::InsufficientData { phase: "pi/2" });
    }
    Ok((
        estimate_location(&at_zero, kind)?,
        estimate_location(&at_half_pi, kind)?,
    ))
}

/// `atan(alpha_i / alpha_r)`, in `(-pi/2, pi/2)`.
pub fn phase_from_amplitude(alpha_r: f64, alpha_i: f64) -> Result<f64> {
    if alpha_r == 0.0 {
        return Err(Error::UndefinedPhase);
    }
    Ok((alpha_i / alpha_r).atan())
}
