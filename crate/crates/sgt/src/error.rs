use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Structurally broken table: bad names, ragged rows, out-of-range entries.
    #[error("invalid table: {0}")]
    InvalidTable(String),

    /// The table fails associativity; the witness is the first failing triple.
    #[error("not associative: ({x}*{y})*{z} differs from {x}*({y}*{z})")]
    NotAssociative { x: String, y: String, z: String },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    /// An operation was asked for outside its stated preconditions.
    #[error("not applicable: {0}")]
    Precondition(String),

    #[error("{what} exceeds the {limit} cap (need {need}); raise the cap to proceed")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        need: usize,
    },

    /// A cross-check that a proved statement guarantees has failed. Either the
    /// implementation or the statement is wrong; the message says which check.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Process exit code for the CLI: 2 validation, 3 caps, 4 inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            Error::Inconsistency(_) => 4,
            _ => 2,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}: {detail}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownName,
    WrongArity,
    DuplicateName,
    MissingSection,
    BadHeader,
}

impl std::fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ParseErrorKind::UnknownName => "unknown name",
            ParseErrorKind::WrongArity => "wrong arity",
            ParseErrorKind::DuplicateName => "duplicate name",
            ParseErrorKind::MissingSection => "missing section",
            ParseErrorKind::BadHeader => "bad header",
        })
    }
}
