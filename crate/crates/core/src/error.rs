use thiserror::Error;

use crate::diagram::CrossingId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("unsupported format {0:?}, expected \"pdcode-v1\"")]
    Format(String),
    #[error("unpaired arc {arc}: appears {count} time(s), expected 2")]
    UnpairedArc { arc: u32, count: usize },
    #[error("duplicate crossing id {0}")]
    DuplicateCrossing(CrossingId),
    #[error("no crossing with id {0}")]
    NoSuchCrossing(CrossingId),
    #[error("crossing {0} is singular")]
    SingularCrossing(CrossingId),
    #[error("crossing {0} is not singular")]
    NotSingular(CrossingId),
    #[error("crossing {crossing} already has sign {sign}")]
    NoOpChange { crossing: CrossingId, sign: &'static str },
    #[error("diagram has {0} singular crossing(s), a link diagram is required")]
    NotALink(usize),
    #[error("expected a singular diagram of order {expected}, got order {got}")]
    WrongOrder { expected: usize, got: usize },
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("move {kind} does not match at {location:?}")]
    PatternMismatch { kind: String, location: Vec<u32> },
    #[error("{n} crossings exceed the cap of {cap}")]
    CrossingCap { n: usize, cap: usize },
    #[error("expected a knot, got {0} components")]
    NotAKnot(u32),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("event {index}: {message}")]
    Path { index: usize, message: String },
    #[error("path does not close: end differs from start")]
    NotClosed,
    #[error("evaluation failed: {0}")]
    Eval(String),
    #[error("no base value for {0}-component unlink")]
    MissingBase(u32),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Json(_) => "malformed_json",
            Error::Format(_) => "bad_format",
            Error::UnpairedArc { .. } => "unpaired_arc",
            Error::DuplicateCrossing(_) => "duplicate_crossing",
            Error::NoSuchCrossing(_) => "dangling_crossing",
            Error::SingularCrossing(_) => "singular_crossing",
            Error::NotSingular(_) => "not_singular",
            Error::NoOpChange { .. } => "noop_change",
            Error::NotALink(_) => "not_a_link",
            Error::WrongOrder { .. } => "wrong_order",
            Error::Invalid(_) => "invalid_diagram",
            Error::PatternMismatch { .. } => "pattern_mismatch",
            Error::CrossingCap { .. } => "crossing_cap",
            Error::NotAKnot(_) => "not_a_knot",
            Error::Budget(_) => "budget_exhausted",
            Error::Path { .. } => "path_error",
            Error::NotClosed => "not_closed",
            Error::Eval(_) => "evaluation_error",
            Error::MissingBase(_) => "missing_base",
            Error::Usage(_) => "usage",
            Error::Io(_) => "io",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
