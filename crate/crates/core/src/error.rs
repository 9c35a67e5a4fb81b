use alloc::string::String;

use thiserror::Error;

/// Errors from field arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("modulus {0} is not an odd prime below 2^31")]
    BadModulus(u64),
}

/// Errors from polynomial arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("ring map has {found} images but the source ring has {expected} variables")]
    MapArity { expected: usize, found: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("polynomial is not homogeneous for the required grading")]
    NotHomogeneous,
}

/// Errors from the curve construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("invalid curve request: {0}")]
    InvalidSpec(String),
    #[error("gave up after {attempts} draws while building gluing data")]
    RetryExhausted { attempts: usize },
    #[error("canonical sections are linearly dependent (rank {rank} < {genus})")]
    RankDeficient { rank: usize, genus: usize },
    #[error("filtration H0(K - jD) has dimension {found} at j = {level}, expected {expected}")]
    FiltrationMismatch {
        level: usize,
        found: usize,
        expected: usize,
    },
    #[error("canonical ideal failed verification: {0}")]
    Verification(String),
}

/// Errors from building the curve inside the scroll.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScrollError {
    #[error("found {found} minimal generators of the curve on the scroll, expected {expected}")]
    GeneratorCount { found: usize, expected: usize },
    #[error("scroll embedding is inconsistent: {0}")]
    Inconsistent(String),
}

/// Errors from the resolution on the scroll.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("step {step}: syzygies below the twist window (first degree {degree})")]
    WindowExhausted { step: usize, degree: i64 },
    #[error("step {step}: found {found} minimal syzygies, expected {expected}")]
    RankMismatch {
        step: usize,
        found: usize,
        expected: usize,
    },
    #[error("step {step}: exactness failed at bidegree ({d1}, {d2})")]
    Exactness { step: usize, d1: i64, d2: i64 },
    #[error("step {step}: twist sum {found} differs from the expected degree {expected}")]
    FormulaMismatch {
        step: usize,
        found: i64,
        expected: i64,
    },
}

/// Errors from the closed-form invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("rank mismatch: formula gives {found}, expected {expected}")]
    RankMismatch { found: u64, expected: u64 },
}

/// Crate-wide error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Scroll(#[from] ScrollError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}
