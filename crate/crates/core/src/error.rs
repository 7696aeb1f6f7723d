use thiserror::Error;

/// Errors surfaced by the arithmetic, valuation and form layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("wrong characteristic: {0}")]
    WrongCharacteristic(String),
    #[error("unsupported field for this operation: {0}")]
    UnsupportedField(String),
    #[error("element does not live in the domain of the valuation: {0}")]
    DomainMismatch(String),
    #[error("not a valuation unit (value {0})")]
    NotAUnit(String),
    #[error("composite stage does not live on the previous residue field: {0}")]
    StageMismatch(String),
    #[error("coefficients are not integral at the valuation")]
    NonIntegralCoefficients,
    #[error("rational factorization height bound exceeded")]
    HeightExceeded,
    #[error("residue characteristic 2 not admissible here")]
    DyadicResidue,
    #[error("Artin-Schreier slot is not a valuation unit")]
    NonUnitArtinSchreierSlot,
    #[error("working precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("attempts exhausted after {0} tries")]
    AttemptsExhausted(u32),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("valuation of the leading entry is even, odd value required")]
    EvenValue,
    #[error("stabilizer ring and reference valuation ring disagree on sample {0}")]
    MismatchWitness(String),
    #[error("valuation is not geometric: {0}")]
    NotGeometric(String),
    #[error("residue data inseparable: {0}")]
    InseparableResidue(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
