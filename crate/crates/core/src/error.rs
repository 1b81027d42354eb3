//! Error type shared by all modules of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong, from parsing to search budgets.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0} is not a prime in the supported range 2..2^31")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("coefficient denominator {0} is not invertible mod {1}")]
    NotInvertible(String, u32),

    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("invalid staircase: {0}")]
    InvalidStaircase(String),

    #[error("ideal is the unit ideal")]
    UnitIdeal,

    #[error("ideal is not zero-dimensional: {0}")]
    NotZeroDimensional(String),

    #[error("no admissible staircase realizes the Hilbert function {0}")]
    InadmissibleHilbertFunction(String),

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix violates the order bounds of N(E) at entry ({i},{j})")]
    NotInFamilyN { i: usize, j: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("truncation cap {have} is below the required floor {need}")]
    CapTooSmall { have: u32, need: u32 },

    #[error("working degree limit {0} exceeded; generators may not span a finite-colength ideal")]
    DegreeLimitExceeded(u32),

    #[error("element does not reduce to zero: not in the ideal spanned by the basis")]
    NotInIdeal,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("staircase is not a lex-segment")]
    NotLexSegment,

    #[error("staircase does not admit Gorenstein points (degree matrix obstruction)")]
    NotGorensteinAdmissible,

    #[error("coordinate change matrix is singular")]
    SingularMatrix,

    #[error("search budget {0} exceeded")]
    BudgetExceeded(u64),

    #[error("random draws disagree; result inconclusive (raise the sample bound)")]
    Inconclusive,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
