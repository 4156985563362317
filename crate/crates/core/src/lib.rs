//! Robust estimation of the amplitude and phase of a coherent state from
//! homodyne data contaminated by outlier Gaussian states.
//!
//! The crate is organized bottom-up:
//!
//! - [`gaussian_model`]: closed-form homodyne statistics of ideal, outlier
//!   and contaminated states.
//! - [`sampling`]: seeded dataset generation and outlier replacement.
//! - [`estimators`]: mean, median and M-estimators (bisquare, gamma) solved
//!   by iterative reweighting, plus the amplitude-to-phase conversion.
//! - [`robustness`]: replication statistics, epsilon-curves, finite
//!   breakdown points and relative efficiency.
//! - [`report`]: CSV/JSON output for all of the above.
//!
//! Replications run on rayon when the `parallel` feature is enabled (the
//! default); results are bit-identical either way.

// `!(x > 0.0)` rejects NaN along with nonpositive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod estimators;
pub mod exec;
pub mod gaussian_model;
pub mod presets;
pub mod report;
pub mod robustness;
pub mod sampling;

pub use error::{Error, Result};
pub use estimators::{
    estimate_amplitude, estimate_location, grid_root, irls_solve, m_equation_residual, madn,
    median, phase_from_amplitude, psi, weight, EstimateResult, EstimatorKind, IrlsConfig, MFamily,
    PsiKind, TuningPolicy,
};
pub use exec::Execution;
pub use gaussian_model::{
    beta_from_kappa, contaminated_pdf, homodyne_mean, homodyne_sigma, kappa_from_beta,
    ComplexAmplitude, ContaminatedModel, GaussianShiftState, OutlierSpec,
};
pub use robustness::{
    epsilon_curve, finite_breakdown_point, relative_efficiency, run_replications, BreakdownRule,
    EpsCurve, FbpResult, Replacement, ReplicationStats, ScenarioTemplate, Target,
};
pub use sampling::{
    draw_measurement, generate_dataset, replace_with_outliers, split_by_phase, Dataset,
    MeasurementRecord, ScenarioConfig,
};
