//! Exact arithmetic in the integral group ring Z[Z^d] (sparse Laurent
//! polynomials) and finitely supported real series with certified tails.

mod element;
mod exponent;
mod series;

pub use element::GroupRingElement;
pub use exponent::ExponentVector;
pub use series::RealSeries;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum GroupRingError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("tail bound must be finite and nonnegative, got {0}")]
    InvalidTailBound(f64),
    #[error("non-finite coefficient")]
    NonFinite,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Norms {
    pub l1: f64,
    pub linf: f64,
}
