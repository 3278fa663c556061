//! Error type shared by every module of the crate.

use thiserror::Error;

/// Convenient result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while validating data or running a pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The pairing matrix is not symmetric.
    #[error("pairing matrix is not symmetric: entry ({row},{col}) differs from ({col},{row})")]
    NonSymmetric { row: usize, col: usize },

    /// A leading principal minor of the pairing matrix is not positive.
    #[error("pairing matrix is not positive definite: leading minor of order {order} is {value}")]
    NotPositiveDefinite { order: usize, value: String },

    /// B(y, x) is not an integer for some basis vector y of Y and basis vector x of X.
    #[error("pairing is not integral on Y x X: B(y_{y_index}, e_{x_index}) = {value}")]
    NonIntegralOnYxX {
        y_index: usize,
        x_index: usize,
        value: String,
    },

    /// The columns of the Y basis are linearly dependent.
    #[error("the Y basis is singular")]
    SingularYBasis,

    /// Shapes of matrices or vectors do not agree with the rank.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A vector expected to lie in Y does not.
    #[error("vector {0} does not lie in Y")]
    NotInY(String),

    /// A level was not a positive integer or positive half-integer.
    #[error("invalid level: {0}")]
    InvalidLevel(String),

    /// A half-integral level needs u(phi(u)) even for all u.
    #[error("half-integral level {0} requires u(phi(u)) to be even for every u")]
    HalfLevelRequiresEvenForm(String),

    /// A configured dimension cap was exceeded.
    #[error("dimension {dim} exceeds the cap {cap} for {what}")]
    DimensionCap {
        dim: usize,
        cap: usize,
        what: String,
    },

    /// An enumeration would exceed the configured size budget.
    #[error("enumeration too large: {0}")]
    TooLarge(String),

    /// A valuation that must be an integer is not.
    #[error("non-integral valuation: {0}")]
    NonIntegralValuation(String),

    /// An operation needs at least one input element.
    #[error("empty input: {0}")]
    EmptyInput(String),

    /// A polyhedron that should be bounded is not.
    #[error("polyhedron is unbounded: {0}")]
    Unbounded(String),

    /// The Voronoi polytope at this level is not integral.
    #[error("Voronoi polytope at level {level} is not integral: {witness}")]
    NotIntegral { level: String, witness: String },

    /// No integral level was found up to the search cap.
    #[error("no integral level found up to cap {cap}")]
    NotFoundBelowCap { cap: u64 },

    /// The given vertex set is not a face of the Voronoi complex.
    #[error("not a face of the Voronoi complex: {0}")]
    NotAFace(String),

    /// A point expected in the lattice points of the central Voronoi cell is not there.
    #[error("point {0} is not in Sigma")]
    NotInSigma(String),

    /// A cone with a nontrivial lineality space was passed where a pointed one is needed.
    #[error("cone is not pointed")]
    NotPointed,

    /// The operation needs Y = X.
    #[error("datum is not principal (Y differs from X)")]
    NotPrincipal,

    /// The operation only supports one rank.
    #[error("operation requires rank {expected}, got {got}")]
    WrongRank { expected: usize, got: usize },

    /// Cut of the zero cone was requested where a nonempty polytope is needed.
    #[error("the zero cone has empty Cut")]
    ZeroCone,

    /// Malformed input document.
    #[error("bad input at {field}: {message}")]
    Parse { field: String, message: String },

    /// An internal consistency check failed; indicates a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}
