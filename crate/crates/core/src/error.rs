use thiserror::Error;

use crate::lattice::LatticeKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter {name} must be a positive even integer, got {value}")]
    OddParameter { name: &'static str, value: i64 },

    #[error("parameter {0} is required for this lattice kind")]
    MissingParameter(&'static str),

    #[error("parameter {0} is not accepted for this lattice kind")]
    UnexpectedParameter(&'static str),

    #[error("{0} exceeds the supported range")]
    Overflow(&'static str),

    #[error("expected a {expected:?} lattice, found {found:?}")]
    WrongLatticeKind {
        expected: LatticeKind,
        found: LatticeKind,
    },

    #[error("operands live on different lattices")]
    LatticeMismatch,

    #[error("operands live on different path spaces")]
    SpaceMismatch,

    #[error("path space has {paths} elements, above the enumeration guard of {guard}; use a product-form functional instead")]
    SpaceTooLarge { paths: String, guard: u64 },

    #[error("operation requires the {0} variant")]
    WrongVariant(&'static str),

    #[error("rank {rank} is outside [0, {count})")]
    OutOfRange { rank: u64, count: u64 },

    #[error("argument {n} exceeds the limit {max}")]
    TooLarge { n: u64, max: u64 },

    #[error("invalid length: expected {expected}, got {found}")]
    WrongLength { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}
