use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid semigroup generators: {0}")]
    InvalidGenerators(String),

    #[error("generators {p} and {q} must be coprime with 2 <= p < q")]
    NotPlaneBranch { p: u32, q: u32 },

    #[error("invalid p-basis: {0}")]
    InvalidBasis(String),

    #[error("semimodule is not contained in the semigroup: {0}")]
    NotInSemigroup(String),

    #[error("codimension mismatch: semimodule has codimension {actual}, expected {expected}")]
    CodimMismatch { expected: u32, actual: u32 },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("oracle bound exceeded: {elements} semigroup elements below {bound} (limit {limit})")]
    OracleBoundExceeded { elements: usize, bound: u32, limit: usize },

    #[error("series has no exact terms left (horizon {0})")]
    HorizonExhausted(u32),

    #[error("precision exhausted at exponent {exponent} (horizon {horizon}, guard {guard}); increase the truncation order")]
    Precision { exponent: u32, horizon: u32, guard: u32 },

    #[error("malformed generator: {0}")]
    MalformedGenerator(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
