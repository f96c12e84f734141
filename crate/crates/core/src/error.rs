use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("({a},{b}) is not an element of B (need a >= 0 and a + b >= 0)")]
    NotAnElement { a: i64, b: i64 },
    #[error("integer overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty word")]
    EmptyWord,
    #[error("modulus must be positive, got {0}")]
    Modulus(i64),
    #[error("invalid partition rule: {0}")]
    Rule(String),
    #[error("invalid family: {0}")]
    Family(String),
    #[error("{construction}: precondition failed: {reason}")]
    Precondition {
        construction: &'static str,
        reason: String,
    },
    #[error("{construction}: vertex ({a},{b}) falls outside B")]
    VertexOutsideB {
        construction: &'static str,
        a: i64,
        b: i64,
    },
    #[error("no odd cycle found on windows up to n={cap}")]
    NoWitness { cap: u32 },
}
