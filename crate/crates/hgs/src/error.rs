use thiserror::Error;

/// Errors raised by the analysis chain.
///
/// Validation errors (bad parameters, bad config) map to exit code 1 in the
/// CLI; everything else is a numerical failure and maps to exit code 2.
#[derive(Debug, Error)]
pub enum HgsError {
    #[error("invalid {name} = {value}: expected {range}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("state outside the model domain: x = {0} not in (0, pi/2)")]
    Domain(f64),
    #[error("singular matrix: pivot {pivot:e} below tolerance")]
    SingularMatrix { pivot: f64 },
    #[error("not at the Hopf point: |epsilon - epsilon_c| = {0:e}")]
    NotCritical(f64),
    #[error("critical eigenvalue pair is not simple")]
    DegenerateSpectrum,
    #[error("step size collapsed to {0:e}")]
    StepUnderflow(f64),
    #[error("found {found} section returns, wanted {wanted}")]
    FewerReturns { found: usize, wanted: usize },
    #[error("periodic orbit not found: {0}")]
    OrbitNotFound(String),
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl HgsError {
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            HgsError::InvalidParameter { .. } | HgsError::Config { .. } | HgsError::Usage(_)
        )
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_validation() {
            1
        } else {
            2
        }
    }
}

pub type Result<T> = std::result::Result<T, HgsError>;
