//! Computational toolkit for principal algebraic actions of Z^d: exact group
//! ring arithmetic, certified l^1 inversion, structural decisions (including
//! the Garden of Eden verdict for affine endomorphisms) and a windowed
//! simulator of the subshift `X_f`.

pub mod cli;
pub mod groupring;
pub mod harmonic;
pub mod poly;
mod rounding;
pub mod simulator;
pub mod structure;

pub use groupring::{ExponentVector, GroupRingElement, GroupRingError, Norms, RealSeries};
