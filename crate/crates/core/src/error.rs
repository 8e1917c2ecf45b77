use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A physical precondition on the parameters does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical abort at step {step}: {message}")]
    NumericalAbort { step: usize, message: String },

    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("missing required config key `{0}`")]
    MissingKey(String),

    #[error("invalid value for `{key}`: {value}")]
    InvalidValue { key: String, value: String },

    #[error("no real orbit: {0}")]
    NoRealOrbit(String),

    #[error("kink orbit, infinite half-width: start value {0} is a double root")]
    KinkOrbit(f64),

    #[error("grid too short: {0}")]
    GridTooShort(String),

    #[error("no extremum: {0}")]
    NoExtremum(String),

    #[error("insufficient resolution: {0}")]
    InsufficientResolution(String),

    #[error("ε too large: front asymmetry {0:.4} exceeds 0.05")]
    EpsTooLarge(f64),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnknownKey(_) | Error::MissingKey(_) | Error::InvalidValue { .. } => 2,
            Error::Precondition(_)
            | Error::NoRealOrbit(_)
            | Error::KinkOrbit(_)
            | Error::GridTooShort(_)
            | Error::NoExtremum(_)
            | Error::InsufficientResolution(_)
            | Error::EpsTooLarge(_) => 3,
            Error::NumericalAbort { .. } => 4,
            Error::Io(_) | Error::Csv(_) | Error::Json(_) => 1,
        }
    }
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
