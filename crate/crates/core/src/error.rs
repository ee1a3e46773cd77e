use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("{}", match line { Some(l) => format!("line {l}: {message}"), None => message.clone() })]
    Parse { line: Option<usize>, message: String },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("expected a univariate polynomial")]
    NotUnivariate,

    #[error("variable `{0}` is a Laurent variable and cannot be set to zero")]
    LaurentPole(String),

    #[error("negative exponent on non-Laurent variable `{0}`")]
    NegativeExponent(String),

    #[error("polynomial ring mismatch: {0}")]
    RingMismatch(String),

    #[error("structure constants are not associative at triple ({0}, {1}, {2})")]
    NotAssociative(String, String, String),

    #[error("identity element does not act as a two-sided unit on `{0}`")]
    MissingIdentity(String),

    #[error("malformed algebra data: {0}")]
    Malformed(String),

    #[error("monomial quotient is infinite-dimensional: `{0}` is unbounded")]
    InfiniteQuotient(String),

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("{count} primitive central idempotents give 2^{count} idempotents, above the cap {cap}")]
    IdempotentCapExceeded { count: usize, cap: usize },

    #[error("Leibniz rule fails on the pair ({0}, {1})")]
    LeibnizViolation(String, String),

    #[error("Hasse-Schmidt identity fails at n = {n} on the pair ({left}, {right})")]
    HasseSchmidtViolation { n: usize, left: String, right: String },

    #[error("exponential automorphism needs characteristic 0, field is {0}")]
    PositiveCharacteristic(String),

    #[error("derivation is not locally nilpotent")]
    NotLocallyNilpotent,

    #[error("map is not multiplicative on the pair ({0}, {1})")]
    NotMultiplicative(String, String),

    #[error("quiver is not an oriented cycle C_n with n >= 2")]
    NotACycle,

    #[error("path elements live over different quivers")]
    QuiverMismatch,

    #[error("scale polynomial of a corner order must be nonzero")]
    ZeroScale,

    #[error("generic fiber is not central simple")]
    GenericFiberNotCentralSimple,

    #[error("rank {0} is not a perfect square")]
    RankNotSquare(usize),

    #[error("trace pairing is degenerate over {0}; use fiber sampling instead")]
    DegenerateDiscriminant(String),

    #[error("source has {0} adjoined variables but target has {1}")]
    VariableCountMismatch(usize, usize),

    #[error("witness has not been verified")]
    Unverified,

    #[error("decomposition failed: {0}")]
    Decomposition(String),
}

impl Error {
    pub fn parse(line: Option<usize>, message: impl Into<String>) -> Error {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
