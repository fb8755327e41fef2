use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop rejected at vertex {0}")]
    LoopRejected(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph must have at least {min} vertices, got {order}")]
    TrivialGraph { order: usize, min: usize },
    #[error("connection set is not inverse-closed: {0} present without its negative")]
    NonInverseClosed(usize),
    #[error("connection set contains 0")]
    ZeroInConnectionSet,
    #[error("circulant modulus must be at least 1, got {0}")]
    BadModulus(usize),
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),
    #[error("bundle map violates p(a,b) = p(b,a)^-1 at ({0}, {1})")]
    BundleInvolutionViolated(usize, usize),
    #[error("bundle map entry at ({0}, {1}) is not an automorphism of the right factor")]
    NotAnAutomorphism(usize, usize),
    #[error("bundle map has {got} entries, expected {expected}")]
    BundleShape { expected: usize, got: usize },
    #[error("({0}, {1}) is not an edge of the Boolean square")]
    NotABooleanSquareEdge(usize, usize),
    #[error("complement requires at least two vertices")]
    ComplementTrivial,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("hypothesis not satisfied: {0}")]
    HypothesisNotSatisfied(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("record failed the soundness re-check: {0}")]
    Unsound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Error {
        Error::Io(e.to_string())
    }
}
