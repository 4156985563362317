//! Reference scenarios and protocol constants for the published experiments.
//!
//! Every number that defines one of the reproduced figures or tables lives
//! here. Bump [`PRESET_VERSION`] when any of them changes.

use crate::gaussian_model::{ComplexAmplitude, OutlierSpec};
use crate::robustness::{eps_grid, Replacement, ScenarioTemplate};

pub const PRESET_VERSION: &str = "1";

/// `alpha = 10 + 4i` with a single outlier state at `15 + 15i`, `kappa0 = 0.1`.
pub fn single_outlier() -> ScenarioTemplate {
    ScenarioTemplate {
        alpha: ComplexAmplitude { re: 10.0, im: 4.0 },
        outliers: OutlierSpec::Single {
            z0: ComplexAmplitude { re: 15.0, im: 15.0 },
            kappa0: 0.1,
        },
    }
}

/// `alpha = 10 - 4i` with outlier centres `Re z, Im z ~ N(0.1, 0.1)`, `kappa0 = 0.1`.
pub fn distributed_outliers() -> ScenarioTemplate {
    ScenarioTemplate {
        alpha: ComplexAmplitude { re: 10.0, im: -4.0 },
        outliers: OutlierSpec::Distributed {
            mu1: 0.1,
            sigma1: 0.1,
            mu2: 0.1,
            sigma2: 0.1,
            kappa0: 0.1,
        },
    }
}

/// Contamination used for the sample-size sweeps.
pub const SWEEP_EPSILON: f64 = 0.01;
pub const SWEEP_SIZES: [usize; 5] = [1000, 2000, 3000, 4000, 5000];
pub const SWEEP_RUNS: usize = 500;

/// Sample size of the breakdown sweep and the epsilon-curves.
pub const ROBUSTNESS_N: usize = 5000;

pub const FBP_STEP: usize = 250;
pub const FBP_REPLACEMENT: Replacement = Replacement {
    mean: 1000.0,
    sd: 0.1,
};
/// Independent base/replacement draws averaged at each replacement count.
pub const FBP_RUNS: usize = 400;

pub const EPS_CURVE_RUNS: usize = 100;
pub const EPS_STEP: f64 = 0.025;
/// The curves extend past the tabulated range so the breakdown of both
/// M-estimators is visible.
pub const EPS_CURVE_STOP: f64 = 0.5;
pub const EPS_TABLE_STOP: f64 = 0.35;

pub fn eps_curve_grid() -> Vec<f64> {
    eps_grid(EPS_STEP, EPS_CURVE_STOP)
}

pub fn eps_table_grid() -> Vec<f64> {
    eps_grid(EPS_STEP, EPS_TABLE_STOP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn true_phases() {
        assert!((single_outlier().alpha.phase() - 0.3805).abs() < 1e-4);
        assert!((distributed_outliers().alpha.phase() + 0.3805).abs() < 1e-4);
    }

    #[test]
    fn grids() {
        assert_eq!(eps_table_grid().len(), 15);
        assert_eq!(eps_curve_grid().len(), 21);
        assert_eq!(eps_curve_grid()[20], 0.5);
    }
}
