use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} = {value} is outside its domain ({requirement})")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("estimator received an empty sample")]
    EmptyData,

    #[error("no measurements recorded at phi = {phase}")]
    InsufficientData { phase: &'static str },

    #[error("unsupported quadrature angle {0} (only 0 and pi/2 are handled)")]
    UnsupportedAngle(f64),

    #[error("phase is undefined for a zero real amplitude")]
    UndefinedPhase,

    #[error("M-equation has no sign change in [{lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
