use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A model failed validation. Every violated invariant is listed.
    #[error("invalid model `{name}`: {}", .violations.join("; "))]
    Validation {
        name: String,
        violations: Vec<String>,
    },

    #[error(
        "codimension must be ≥ 2, got {codim} (blow-up along a divisor is an isomorphism at this level)"
    )]
    CodimTooSmall { codim: i64 },

    #[error("Betti data required for `{0}`")]
    BettiRequired(String),

    #[error("inapplicable step: {0}")]
    InapplicableStep(String),

    #[error("script step {index}: {source}")]
    ScriptStep {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("exact sequence: {0}")]
    ExactSequence(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("manifest: {0}")]
    Manifest(String),

    #[error("unresolved reference to `{0}`")]
    UnresolvedReference(String),

    #[error("invalid builtin parameters: {0}")]
    InvalidBuiltin(String),
}
