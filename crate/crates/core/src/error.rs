use thiserror::Error;

/// Every fallible operation in the crate reports through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("number of variables differs: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("operation needs a nonzero element")]
    ZeroInput,
    #[error("degree guard exceeded: total degree {degree} > bound {bound}")]
    DegreeGuard { degree: u32, bound: u32 },
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("d∘d ≠ 0 at degree {degree}")]
    NotAComplex { degree: usize },
    #[error("not a chain map at degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("shift by {shift} leaves the non-negative range")]
    ShiftBelowZero { shift: i64 },
    #[error("connection is not flat: [∇{i}, ∇{j}] ≠ 0")]
    NotFlat { i: usize, j: usize },
    #[error("map has no cofibration certificate: {0}")]
    NotCertified(String),
    #[error("assignment for generator {generator} violates closedness: {detail}")]
    ConditionViolated { generator: String, detail: String },
    #[error("truncation {0} too small (need at least 2)")]
    TruncationTooSmall(usize),
    #[error("algebra mismatch")]
    AlgebraMismatch,
    #[error("the zero algebra has no unit")]
    ZeroAlgebra,
    #[error("syntax error at {line}:{column}: expected one of {expected:?}, found {found}")]
    Syntax {
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown variable {name} at {line}:{column} (have {nvars} variables)")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
        nvars: usize,
    },
    #[error("unknown check {0}")]
    UnknownCheck(String),
    #[error("document error: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
