use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("element is not a p-th power")]
    NotAPthPower,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero function")]
    ZeroFunction,
    #[error("division by zero")]
    DivisionByZero,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("form is not in fil_{0}")]
    NotInFiltration(i64),
    #[error("witt length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("witt length {0} exceeds the supported maximum of 3")]
    LengthOverflow(usize),
    #[error("best-form reduction did not terminate after {0} steps")]
    NonTermination(usize),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("artin conductor {0} is not > 1")]
    ConductorTooSmall(i64),
    #[error("residue field is not perfect")]
    ImperfectResidue,
    #[error("no preimage found: {0}")]
    NoPreimage(String),
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("place {0} is ramified for the character")]
    RamifiedPlace(String),
    #[error("restriction undefined: {0}")]
    RestrictionUndefined(String),
    #[error("common component: {0}")]
    CommonComponent(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("parse error at position {pos}: {msg} (near `{token}`)")]
    Parse { pos: usize, token: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
