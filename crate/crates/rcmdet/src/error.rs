//! Error type shared by all modules.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A scatter matrix had a non-positive Cholesky pivot. Typically means
    /// the training set is too small (`K < N_a`) for the statistic at hand.
    #[error("matrix is not positive definite: pivot {index} = {value:.3e}")]
    NotPositiveDefinite { index: usize, value: f64 },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    /// `(l, h)` outside the admissible grid `1 <= l <= N_p`, `0 <= h <= N_p - l`.
    #[error("hypothesis (l={l}, h={h}) is off the grid for {n_pulses} pulses")]
    IndexOffGrid { l: usize, h: usize, n_pulses: usize },

    #[error("range resolution and PRT must be strictly positive")]
    NonPositiveResolution,

    #[error("calibration needs n_trials * target_pfa >= 10, got {n_trials} trials at pfa {target_pfa}")]
    InsufficientTrials { n_trials: u64, target_pfa: f64 },

    #[error("the clairvoyant detector requires the true hypothesis and the true covariance")]
    MissingClairvoyantInputs,

    /// GASD normalizes each summand by `z^H S^-1 z`; a zero column makes the
    /// ratio undefined.
    #[error("primary column (cell {cell}, pulse {pulse}) is zero; GASD normalization undefined")]
    ZeroColumn { cell: usize, pulse: usize },

    #[error("no calibrated threshold for detector `{0}`")]
    MissingThreshold(String),

    #[error("scenario has no true hypothesis; this command needs a signal-bearing scenario")]
    NullHypothesisScenario,

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn dim(context: impl Into<String>) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
        }
    }
}
