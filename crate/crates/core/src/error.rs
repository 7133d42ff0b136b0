use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("epsilon {epsilon} exceeds the filtration's max radius {max_radius}")]
    EpsilonOutOfRange { epsilon: f64, max_radius: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ragged sequence of sequences: expected length {expected}, found {found}")]
    RaggedSequences { expected: usize, found: usize },

    #[error("demonstration teaches b1={taught} but the target has b1={target}")]
    TeacherContract { taught: usize, target: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
