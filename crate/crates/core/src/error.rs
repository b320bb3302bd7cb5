use alloc::string::String;

/// Errors raised by graph construction, parameter validation and sampler steps.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph family `{family}` needs size >= {min}")]
    InvalidSize { family: &'static str, min: usize },
    #[error("input is not connected")]
    Disconnected,
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("step called on a complete state")]
    StepOnComplete,
    #[error("site {0} cannot be added in the current state")]
    InvalidSite(usize),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("instance too large to enumerate: {0}")]
    SizeGuard(String),
    #[error("graph has no proper {0}-coloring")]
    NoProperColoring(usize),
    #[error("proposal assigns zero probability to a color with positive target weight")]
    ZeroProposal,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
