use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |h - h^dagger| = {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid density matrix: {0}")]
    InvalidState(#[from] StateViolation),

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("internal consistency: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Which density-matrix axiom failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Shape,
    Hermiticity,
    Trace,
    Positivity,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::Shape => "shape",
            ViolationKind::Hermiticity => "hermiticity",
            ViolationKind::Trace => "trace",
            ViolationKind::Positivity => "positivity",
        };
        f.write_str(s)
    }
}

/// A failed density-matrix check together with the size of the violation.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{kind} violation of {magnitude:.3e}")]
pub struct StateViolation {
    pub kind: ViolationKind,
    pub magnitude: f64,
}
