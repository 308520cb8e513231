//! Algebraic side: connectedness, mixing for rank one, fixed points, the
//! affine endomorphism model and the Garden of Eden decision.

mod goe;
mod roots;

pub use goe::{
    decide_goe, decide_goe_with, mult_injective_mod, mult_injective_mod_with, EndomorphismSpec,
    GoEVerdict, GoeBudget, GoeCertificate, GoeOutcome, Hypothesis, Refusal, RefusalKind,
    DEFAULT_GCD_DEGREE,
};
pub use roots::{root_split_report, ModulusClass, RootReport};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::groupring::{GroupRingElement, GroupRingError};
use crate::poly::{smallest_cyclotomic_divisor, ZPoly};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum StructureError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
    #[error("gcd degree budget exceeded: total degree {degree} > {limit}")]
    BudgetExceeded { degree: usize, limit: usize },
    #[error("operation only applies to rank one")]
    NotApplicable,
    #[error(transparent)]
    GroupRing(#[from] GroupRingError),
}

/// Connectedness of `X_f`: `f` primitive, or `f = 0` (the full shift over T).
pub fn is_connected(f: &GroupRingElement) -> bool {
    f.is_zero() || f.content().is_one()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixingVerdict {
    Mixing,
    /// `Φ_n` divides `f` for this (smallest) `n`.
    NotMixing { cyclotomic_index: u64 },
    NotApplicable,
}

/// Rank one: mixing iff no cyclotomic polynomial divides `f`.
pub fn is_mixing_d1(f: &GroupRingElement) -> MixingVerdict {
    if f.rank() != 1 || f.is_zero() {
        return MixingVerdict::NotApplicable;
    }
    let (_, p) = ZPoly::from_element(f).expect("rank one");
    match smallest_cyclotomic_divisor(&p) {
        Some(n) => MixingVerdict::NotMixing { cyclotomic_index: n },
        None => MixingVerdict::Mixing,
    }
}

/// A constant configuration `x ≡ c` with `c` rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FixedPointSpec {
    Zero,
    /// `numerator / denominator mod 1`, in lowest terms with `0 < numerator < denominator`
    /// after [`FixedPointSpec::constant`].
    ConstantRational {
        numerator: BigInt,
        denominator: BigInt,
    },
}

impl FixedPointSpec {
    /// Reduced representative of `p / q mod 1` for `q > 0`.
    pub fn constant(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        let (p, q): (BigInt, BigInt) = (p.into(), q.into());
        assert!(q.is_positive(), "denominator must be positive");
        let p = p.mod_floor(&q);
        if p.is_zero() {
            return FixedPointSpec::Zero;
        }
        let g = p.gcd(&q);
        FixedPointSpec::ConstantRational {
            numerator: p / &g,
            denominator: q / g,
        }
    }

    /// Circle value in `[0, 1)`.
    pub fn value(&self) -> f64 {
        match self {
            FixedPointSpec::Zero => 0.0,
            FixedPointSpec::ConstantRational {
                numerator,
                denominator,
            } => {
                let n = numerator.mod_floor(denominator);
                let v = n.to_f64().unwrap_or(0.0) / denominator.to_f64().unwrap_or(1.0);
                if v >= 1.0 {
                    0.0
                } else {
                    v
                }
            }
        }
    }
}

impl std::fmt::Display for FixedPointSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FixedPointSpec::Zero => write!(f, "0"),
            FixedPointSpec::ConstantRational {
                numerator,
                denominator,
            } => write!(f, "{numerator}/{denominator}"),
        }
    }
}

/// The fixed points of the action: constants `c` with `s c = 0` in T, where
/// `s = f(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedPoints {
    /// `{k/|s| : 0 <= k < |s|}`.
    Cyclic { order: BigInt },
    /// `s = 0`: every constant is fixed.
    FullCircle,
}

impl FixedPoints {
    /// All elements for a finite group, `None` for the full circle or when the
    /// group has more than `limit` elements.
    pub fn elements(&self, limit: usize) -> Option<Vec<FixedPointSpec>> {
        match self {
            FixedPoints::FullCircle => None,
            FixedPoints::Cyclic { order } => {
                let n = order.to_usize().filter(|&n| n <= limit)?;
                Some((0..n).map(|k| FixedPointSpec::constant(k, n)).collect())
            }
        }
    }

    pub fn contains(&self, t: &FixedPointSpec) -> bool {
        match (self, t) {
            (FixedPoints::FullCircle, _) | (_, FixedPointSpec::Zero) => true,
            (
                FixedPoints::Cyclic { order },
                FixedPointSpec::ConstantRational {
                    numerator,
                    denominator,
                },
            ) => (order * numerator).is_multiple_of(denominator),
        }
    }
}

pub fn fixed_points(f: &GroupRingElement) -> FixedPoints {
    let s = f.evaluate_at_one();
    if s.is_zero() {
        FixedPoints::FullCircle
    } else {
        FixedPoints::Cyclic { order: s.abs() }
    }
}
