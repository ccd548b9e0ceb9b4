use thiserror::Error;

use crate::complex::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("level {level} is neither a cut level nor a resolved vertex height")]
    LevelNotCut { level: Rational },

    #[error("inverted interval [{a}, {b}]")]
    InvertedInterval { a: Rational, b: Rational },

    #[error("not a filtration: stage {stage} is missing simplex {simplex}")]
    NotAFiltration { stage: usize, simplex: String },

    #[error("filtration indices must be strictly increasing (index {position})")]
    NonMonotoneIndices { position: usize },

    #[error("not a subcomplex: simplex {simplex} is absent from the target")]
    NotASubcomplex { simplex: String },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("{context}: {rows}x{cols} map of rank {rank} is not invertible")]
    NotInvertible {
        context: String,
        rows: usize,
        cols: usize,
        rank: usize,
    },

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid cover {intervals}: {reason}")]
    CoverInvalid { reason: String, intervals: String },

    #[error("critical level {level} is not resolved in the cut complex")]
    MissingCriticalLevel { level: Rational },

    #[error("interval ({a}, {b}) contains the critical level {level}")]
    IntervalContainsCritical {
        a: Rational,
        b: Rational,
        level: Rational,
    },

    #[error("levels {a} and {b} are not adjacent critical levels")]
    NotAdjacent { a: Rational, b: Rational },

    #[error("simplex {simplex} is not contained in any cover piece")]
    UncoveredSimplex { simplex: String },

    #[error("simplex {simplex} references vertex {vertex} which has no height")]
    UnknownVertex { simplex: String, vertex: String },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
