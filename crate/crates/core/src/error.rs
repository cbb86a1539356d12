use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("exterior point: {0:?} is not an interior point of the domain")]
    ExteriorPoint(Vec<f64>),

    #[error("non-finite coordinate in point {0:?}")]
    NonFinite(Vec<f64>),

    #[error("{name} = {value} is outside its domain: {expected}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("a sampling box is required to sample an unbounded domain")]
    MissingSamplingBox,

    #[error("empty sample region: no admissible interior point found after {attempts} attempts")]
    EmptySampleRegion { attempts: usize },

    #[error("no path found at resolution {resolution}; increase resolution")]
    NoPath { resolution: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("outside validity range: {0}")]
    OutsideValidityRange(String),

    #[error("invalid Harnack candidate: u = {value} at {point:?} is not positive")]
    NonPositiveCandidate { point: Vec<f64>, value: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cannot parse domain literal {literal:?}: {reason}")]
    DomainParse { literal: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks that `value` lies in the open interval `(lo, hi)`.
pub(crate) fn require_open(name: &'static str, value: f64, lo: f64, hi: f64, expected: &'static str) -> Result<()> {
    if value > lo && value < hi {
        Ok(())
    } else {
        Err(Error::OutOfDomain { name, value, expected })
    }
}
