use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least {min}, got {got}")]
    InvalidModulus { min: u64, got: u64 },

    #[error("expected {expected} exponents, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("duplicate site identifier `{0}`")]
    DuplicateSite(String),

    #[error("exponents {exponents:?} do not sum to 0 mod {modulus}")]
    ZeroSum { modulus: u64, exponents: Vec<u64> },

    #[error("the trivial character has no unit orbit")]
    OrbitOfTrivial,

    #[error("operation undefined for the trivial character")]
    TrivialCharacter,

    #[error("inconsistent subgroup data: {0}")]
    InconsistentRelations(String),

    #[error("character space of size {0} is too large to enumerate")]
    TooLarge(u128),

    #[error("invalid block data: {0}")]
    InvalidBlockData(String),

    #[error("class quotient not divisible: {0}")]
    NotDivisible(String),

    #[error(
        "fractional-part formula requires a cover ramified over infinity; use the unified formula"
    )]
    UseUnifiedFormula,

    #[error("fractional-part formula domain violated: {0}")]
    OutsideDomain(String),

    #[error("cover is not connected: monodromies generate a subgroup of order {generated} in a group of order {order}")]
    NotConnected { generated: u64, order: u64 },

    #[error("bad jumping data: {0}")]
    BadJumpData(String),

    #[error("jumping orbit blocks disagree across pencils: {0}")]
    InconsistentJump(String),

    #[error("maximality violated: {0}")]
    Maximality(String),

    #[error("arrangement failed validation:\n{0}")]
    Validation(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("ray lies inside the component `{0}`; no finite period exists")]
    RayInComponent(String),

    #[error("root order must be positive")]
    OrderZero,

    #[error("group specifications differ: {0}")]
    MismatchedGroups(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
