use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // numfield
    #[error("polynomial is not squarefree (gcd with its derivative is {gcd})")]
    NonSquarefree { gcd: String },
    #[error("polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("polynomial is reducible: {reason}")]
    Reducible { reason: String },
    #[error("irreducibility of degree-{degree} polynomial must be attested by the caller")]
    IrreducibilityUnchecked { degree: usize },
    #[error("field has complex embeddings")]
    NotTotallyReal,
    #[error("basis of {given} elements is singular in a degree-{degree} field")]
    SingularBasis { given: usize, degree: usize },
    #[error("trial division stopped at bound {bound}; unfactored cofactor {cofactor}")]
    FactorizationLimit { bound: u64, cofactor: String },
    #[error("zero is not allowed here")]
    ZeroElement,
    #[error("embedding index {index} out of range ({count} real roots)")]
    NoSuchEmbedding { index: usize, count: usize },
    #[error("invalid root interval {index}: {reason}")]
    BadRootInterval { index: usize, reason: String },

    // quadform / linear algebra
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("form is degenerate")]
    Degenerate,
    #[error("matrix is not symmetric")]
    NotSymmetric,

    // rmhodge
    #[error("rank m = {m} is too small; K3-type structures with real multiplication need m >= 3")]
    RankTooSmall { m: usize },
    #[error("bad sign pattern: a_{k} has sign {sign} at embedding {embedding}")]
    BadSignPattern { k: usize, embedding: usize, sign: i8 },
    #[error("field action is invalid: {0}")]
    BadAction(String),
    #[error("trace form is degenerate")]
    DegenerateTraceForm,
    #[error("{d} is not a sum of two squares")]
    NotSumOfTwoSquares { d: i64 },
    #[error("{d} is not an odd squarefree integer > 1")]
    NotSquarefree { d: i64 },
    #[error("eigenspace at the chosen embedding has no negative definite plane")]
    NoNegativePlane,
    #[error("invalid period: {0}")]
    InvalidPeriod(String),
    #[error("form is not compatible with the Hodge decomposition: {0}")]
    NotCompatible(String),

    // cliffordks
    #[error("elements belong to different Clifford algebras")]
    AlgebraMismatch,
    #[error("{0}^2 + {1}^2 != 1")]
    NotOnCircle(String, String),
    #[error("bad Riemann form seed: {0}")]
    BadSeed(String),
    #[error("neither sign gives a Riemann form")]
    NoValidSign,
    #[error("dimension {d} exceeds the supported bound {max}")]
    TooLarge { d: usize, max: usize },

    // spinbranch
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("not a character: {0}")]
    NotACharacter(String),

    // cores
    #[error("field is not quadratic")]
    NotQuadratic,
    #[error("structure constants are not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("algebra has no unit")]
    NoUnit,
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    // zlattice
    #[error("Gram matrix mismatch: {0}")]
    GramMismatch(String),

    // serialization
    #[error("parse error: {0}")]
    Parse(String),
}
