use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A value fell outside the mathematical domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("curve with zero slope at {power_dbm} dBm cannot be inverted")]
    NonInvertible { power_dbm: f64 },

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("{value} is outside the supported range [{min}, {max}]")]
    OutOfRange { value: f64, min: f64, max: f64 },

    #[error("lookup table is empty: {0}")]
    EmptyTable(String),

    #[error("degenerate adaptation policy: {0}")]
    PolicyDegenerate(String),

    #[error("adaptation did not terminate within {max_ticks} ticks")]
    NonTermination { max_ticks: u64 },

    #[error("configuration error in `{key}`: {message}")]
    Config { key: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    /// Process exit code for this error class.
    ///
    /// `2` configuration and argument errors, `3` domain and numerical
    /// errors, `4` non-termination, `1` I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::InvalidArgument(_) => 2,
            Error::Domain(_)
            | Error::NonInvertible { .. }
            | Error::DegenerateData(_)
            | Error::OutOfRange { .. }
            | Error::EmptyTable(_)
            | Error::PolicyDegenerate(_) => 3,
            Error::NonTermination { .. } => 4,
            Error::Io(_) => 1,
        }
    }
}
