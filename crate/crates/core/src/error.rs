use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants are grouped by who is at fault: malformed input (`Structure`,
/// `Parse`, `Syntax`), a violated operation precondition (`Loop`,
/// `NotTransversal`, `NonGeneric`, ...), or a request outside the scope of the
/// theory (`Unsupported`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero vector has no primitive direction")]
    ZeroVector,
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("malformed curve: {0}")]
    Structure(String),
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
    #[error("loop precondition violated: {0}")]
    Loop(String),
    #[error("newton complex propagation is inconsistent: {0}")]
    Inconsistent(String),
    #[error("index {0} is not a vertex of the curve")]
    NotAVertex(usize),
    #[error("edges do not cross transversally: {0}")]
    NotTransversal(String),
    #[error("translation direction {direction} is not generic: {reason}")]
    NonGeneric { direction: String, reason: String },
    #[error("divisors live on different host curves")]
    HostMismatch,
    #[error("curve is disconnected")]
    Disconnected,
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cycle closure violated on cycle through edges {0:?}")]
    Closure(Vec<usize>),
    #[error("lattice length of edge {0} must be positive")]
    NonPositiveLength(usize),
    #[error("parameter point does not match the combinatorial type: {0}")]
    TypeMismatch(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("empty corner locus: {0}")]
    EmptyLocus(String),
}
