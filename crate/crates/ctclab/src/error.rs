use thiserror::Error;

/// Errors produced by state construction, algebra, and the two CTC models.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A subsystem label appears twice where labels must be distinct.
    #[error("duplicate subsystem label `{0}`")]
    LabelCollision(String),

    /// A label was requested that the layout does not contain.
    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),

    /// `partial_trace` was asked to keep nothing.
    #[error("partial trace requires a non-empty set of labels to keep")]
    EmptyKeep,

    /// Vector/matrix shapes do not match the declared layouts.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Two objects that must share a layout do not.
    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    /// Layout construction violated an invariant (dims < 2, length mismatch).
    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    /// State vector construction violated an invariant (normalization).
    #[error("invalid state vector: {0}")]
    InvalidState(String),

    /// Density matrix construction violated Hermiticity, trace, or positivity.
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    /// An operation required a unitary map and got something else.
    #[error("map is not unitary: {0}")]
    NotUnitary(String),

    /// A measurement basis failed the orthonormality check.
    #[error("measurement basis is not orthonormal")]
    NonOrthonormalBasis,

    /// The post-selected branch has (numerically) zero norm: the post-selection
    /// never succeeds and the configuration is forbidden, grandfather-style.
    #[error("paradoxical evolution: post-selected branch norm {norm:.3e} is below threshold")]
    ParadoxicalEvolution {
        /// Norm of the branch that was annihilated.
        norm: f64,
    },

    /// An experiment needs at least one bit to work with.
    #[error("message must not be empty")]
    EmptyMessage,

    /// The theorem could not be embedded into Alice's random data.
    #[error("paradox setup failed: placed {placed} of {needed} theorem bits")]
    ParadoxSetup {
        /// Number of theorem bits successfully placed before running out of trials.
        placed: usize,
        /// Total number of theorem bits.
        needed: usize,
    },

    /// A superoperator matrix failed the trace- or Hermiticity-preservation check.
    #[error("invalid superoperator: {0}")]
    InvalidSuperoperator(String),

    /// The fixed-point search did not converge. Valid trace-preserving maps on
    /// finite dimensions always have a fixed point, so this signals a
    /// malformed superoperator rather than a physical outcome.
    #[error("no fixed point found within tolerance {tol:.1e} (residual {residual:.3e})")]
    NoFixedPoint {
        /// Requested residual tolerance.
        tol: f64,
        /// Best residual reached before giving up.
        residual: f64,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
