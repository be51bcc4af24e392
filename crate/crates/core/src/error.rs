use thiserror::Error;

use crate::dynamics::DecayReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for a graph of order {n}")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("graph is not a tree")]
    NotATree,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("coloring is not balanced")]
    NotBalanced,

    #[error("vertices {0} and {1} are not in the same class")]
    NotSameClass(usize, usize),

    #[error("order {n} exceeds the limit of {limit} for {what}")]
    SizeLimit { what: &'static str, n: usize, limit: usize },

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("automorphism construction failed: {0}")]
    Construction(String),

    #[error("no coupling coefficient for degree {0}")]
    MissingBeta(usize),

    #[error("eigenvalue iteration did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("vector field has no component for degree {0}")]
    MissingDegree(usize),

    #[error("invalid cherry pack: {0}")]
    InvalidPack(String),

    #[error("point is not on the cherry synchrony subspace (deviation {0:e})")]
    NotOnSubspace(f64),

    #[error(
        "vector field is not admissible: degree {degree} component changed by {change:e} under a neighbor permutation"
    )]
    NotAdmissible { degree: usize, change: f64 },

    #[error("non-finite state at t = {t}")]
    NonFiniteState { t: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("coupling partial derivative {value} at ({a}, {b}) is not below the rate bound {bound}")]
    PartialViolation { a: f64, b: f64, value: f64, bound: f64 },

    #[error("Lyapunov decay bound violated at t = {}", .0.first_violation.map(|v| v.0).unwrap_or(f64::NAN))]
    RateViolation(Box<DecayReport>),
}
