use thiserror::Error;

use crate::system::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus not prime: {0}")]
    NotPrime(u64),

    #[error("modulus {0} is too large (must be below 2^32)")]
    ModulusTooLarge(u64),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("entry {value} out of range for modulus {p}")]
    EntryOutOfRange { value: u64, p: u64 },

    #[error("zero form cannot be normalized")]
    ZeroForm,

    #[error("invalid system: {}", format_violations(.0))]
    InvalidSystem(Vec<Violation>),

    #[error("not translation invariant")]
    NotTranslationInvariant,

    #[error("index {index} out of range for a system of {len} forms")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("enumeration of {required} items exceeds the guard of {limit}")]
    SizeGuard { required: u128, limit: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no finite cover: point {0:?} lies on no admissible candidate")]
    NoFiniteCover(Vec<u64>),

    #[error("base case: a witness of length 1 admits no reduction step")]
    BaseCase,

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("witness propagation failed at step {step}: {reason}")]
    PropagationFailure { step: usize, reason: String },

    #[error("function tables disagree: {0}")]
    TableMismatch(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}
