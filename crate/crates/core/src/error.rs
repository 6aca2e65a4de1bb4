use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed exact scalar {0:?}")]
    Scalar(String),
    #[error("malformed float scalar {0:?}")]
    Float(String),
    #[error("sequence file mixes exact and float scalars")]
    MixedModes,
    #[error("vector {index} has length {found}, expected dim {dim}")]
    VectorLength {
        index: usize,
        found: usize,
        dim: usize,
    },
    #[error("unknown tail policy {0:?} (expected \"zero\" or \"unknown\")")]
    Tail(String),
    #[error("invalid sequence document: {0}")]
    Document(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("window is empty")]
    EmptyWindow,
    #[error("unknown canonical window {0:?}")]
    UnknownName(String),
    #[error("dimension {got} too small for this window, need {needed}")]
    DimTooSmall { needed: usize, got: usize },
    #[error("shift {k} out of range for window of length {len}")]
    OutOfRange { k: usize, len: usize },
    #[error("scalar {0} must be nonzero")]
    ZeroScalar(&'static str),
    #[error("{0} requires a zero-tail window")]
    RequiresZeroTail(&'static str),
    #[error("window has {got} vectors, need at least {needed}")]
    WindowTooShort { needed: usize, got: usize },
    #[error("window is not linearly independent")]
    NotIndependent,
    #[error("operator basis does not match the window's span basis")]
    BasisMismatch,
    #[error("first vector of the window is zero")]
    ZeroFirstVector,
    #[error("window has no breakpoint")]
    NoBreakpoint,
    #[error("transport map is not injective")]
    NotInjective,
    #[error("binomial plan needs n >= 4, got {0}")]
    NTooSmall(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (asymmetry {0:e})")]
    NonHermitian(f64),
    #[error("Jacobi iteration did not converge")]
    NoConvergence,
    #[error("pinned value of Tf1 is not in the span of the window")]
    PinOutsideSpan,
    #[error("pinned value of Tf1 conflicts with the value forced by the window")]
    PinConflict,
    #[error("image of f_{index} leaves the span of the window")]
    ImageOutsideSpan { index: usize },
    #[error("vector is not in the span of the window")]
    NotInSpan,
    #[error("operation requires exact scalars")]
    ExactOnly,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
