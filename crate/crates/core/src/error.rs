use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("composition of consecutive boundary maps is not zero")]
    CompositionNotZero,

    #[error("torsion is not supported here (free abelian groups only)")]
    TorsionNotSupported,

    #[error("torsion coefficient {0} does not fit in 64 bits")]
    TorsionTooLarge(String),

    #[error("group order {order} exceeds the search cap {cap}")]
    OrderExceedsCap { order: usize, cap: usize },

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("unknown catalog group `{0}`")]
    UnknownGroup(String),

    #[error("unsupported construction: {0}")]
    UnsupportedConstruction(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("cohomological dimension of the fundamental group is not finite")]
    CdNotFinite,

    #[error("homology of the universal cover is not finitely generated in degree {0}")]
    NotFinitelyGenerated(usize),

    #[error("space has dimension {0}, expected 2")]
    DimensionNotTwo(usize),

    #[error("rule {rule} does not apply: {reason}")]
    RuleNotApplicable { rule: String, reason: String },

    #[error("could not parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
