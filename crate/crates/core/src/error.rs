use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("inhomogeneous entry at degree {degree}, row {row}, column {col}")]
    Inhomogeneous { degree: i64, row: usize, col: usize },
    #[error("d-squared nonzero at degree {0}")]
    DSquared(i64),
    #[error("rank/twist mismatch at degree {0}")]
    RankMismatch(i64),
    #[error("relation must be homogeneous of degree >= 2: {0}")]
    BadRelation(String),
    #[error("unit ideal")]
    UnitIdeal,
    #[error("lift obstructed at degree {0}")]
    LiftObstructed(i64),
    #[error("chain map does not commute with differentials at degree {0}")]
    NotChainMap(i64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown object: {0}")]
    UnknownObject(String),
    #[error("{0}")]
    Other(String),
}
