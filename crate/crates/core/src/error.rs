use thiserror::Error;

/// Errors raised by state construction, channels, metrics and protocol runs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("occupation out of range: mode `{mode}` holds at most {max} quanta, got {got}")]
    OccupationOutOfRange { mode: String, max: usize, got: usize },

    #[error("unknown mode `{0}`")]
    UnknownMode(String),

    #[error("duplicate mode name `{0}`")]
    DuplicateMode(String),

    #[error("mode `{mode}` has the wrong kind: expected {expected}")]
    ModeKind { mode: String, expected: &'static str },

    #[error("invalid cutoff {0}: bosonic modes need a cutoff of at least 1")]
    InvalidCutoff(usize),

    #[error("registers differ: {0}")]
    RegisterMismatch(String),

    #[error("odd cat undefined at zero amplitude")]
    OddCatAtZero,

    #[error("parameter `{name}` out of range: {value} (expected {expected})")]
    OutOfRange { name: &'static str, value: f64, expected: &'static str },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("degenerate bipartition: {0}")]
    DegenerateBipartition(&'static str),

    #[error("operator shape {got} does not match mode dimension {expected}")]
    OperatorShape { expected: usize, got: usize },

    #[error("quadrature grid is empty")]
    EmptyGrid,

    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value, expected: "[0, 1]" })
    }
}
