use thiserror::Error;

use crate::presentation::Diagnostic;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid presentation: {}", join_diagnostics(.0))]
    InvalidPresentation(Vec<Diagnostic>),

    #[error("presentation has no quandle exponent (fundamental quandle)")]
    NoExponent,

    #[error("invalid link: {0}")]
    InvalidLink(String),

    #[error("orientation lists {got} components but the closure has {expected}")]
    OrientationMismatch { expected: usize, got: usize },

    /// The enumeration outgrew its vertex budget; the quandle is likely infinite.
    #[error("vertex cap exceeded: {created} vertices created ({live} live), quandle is likely infinite")]
    CapExceeded { created: usize, live: usize },

    #[error("group closure exceeded {cap} elements")]
    GroupCapExceeded { cap: usize },

    #[error("quandle axiom violated: {0}")]
    AxiomViolation(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("group matches several catalog entries: {}", .0.join(", "))]
    AmbiguousIdentification(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
