use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for a presentation with {len} generators")]
    GeneratorOutOfRange { index: usize, len: usize },

    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("malformed exponent in `{0}`")]
    MalformedExponent(String),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("presentation has no meridian")]
    MissingMeridian,

    #[error("meridian must be a single generator with exponent 1, got `{0}`")]
    MeridianNotGenerator(String),

    #[error("invalid braid: {0}")]
    InvalidBraid(String),

    #[error("braid closure has {0} components, expected a knot")]
    NotAKnot(usize),

    #[error("invalid torus knot parameters ({p}, {q}): need p, q >= 2 and gcd(p, q) = 1")]
    InvalidTorusParameters { p: i64, q: i64 },

    #[error("invalid knot class `{0}`")]
    InvalidKnotClass(String),

    #[error("invalid spin sequence: {0}")]
    InvalidSpinSequence(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported group `{0}`")]
    UnsupportedGroup(String),

    #[error("homomorphism search exceeded budget of {budget} steps")]
    BudgetExceeded { budget: u64 },
}
