use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::{ExponentVector, GroupRingElement, GroupRingError, Norms};
use crate::rounding::{add_up, mul_up, sum_up};

const EPS: f64 = f64::EPSILON / 2.0;

/// A finitely supported real series standing in for an element of l^1(Z^d).
///
/// `tail_bound` is a certified bound on the l^1 distance between the stored
/// terms and the element being represented.
#[derive(Clone, Debug, PartialEq)]
pub struct RealSeries {
    rank: usize,
    terms: BTreeMap<ExponentVector, f64>,
    tail_bound: f64,
}

impl RealSeries {
    pub fn new<I>(rank: usize, terms: I, tail_bound: f64) -> Result<Self, GroupRingError>
    where
        I: IntoIterator<Item = (ExponentVector, f64)>,
    {
        if !(tail_bound >= 0.0) || !tail_bound.is_finite() {
            return Err(GroupRingError::InvalidTailBound(tail_bound));
        }
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if e.rank() != rank {
                return Err(GroupRingError::RankMismatch {
                    left: rank,
                    right: e.rank(),
                });
            }
            if !c.is_finite() {
                return Err(GroupRingError::NonFinite);
            }
            if c != 0.0 {
                *map.entry(e).or_insert(0.0) += c;
            }
        }
        map.retain(|_, c| *c != 0.0);
        Ok(RealSeries {
            rank,
            terms: map,
            tail_bound,
        })
    }

    /// An exact element viewed as a series; coefficients beyond 2^53 pick up
    /// their conversion error in the tail bound.
    pub fn from_exact(f: &GroupRingElement) -> Self {
        let mut tail = 0.0;
        let mut terms = BTreeMap::new();
        for (e, c) in f.terms() {
            let v = c.to_f64().unwrap_or(f64::INFINITY);
            if (v.abs()) >= 9.007_199_254_740_992e15 {
                tail = add_up(tail, mul_up(v.abs(), EPS));
            }
            terms.insert(e.clone(), v);
        }
        RealSeries {
            rank: f.rank(),
            terms,
            tail_bound: tail,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, f64)> + '_ {
        self.terms.iter().map(|(e, c)| (e, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> f64 {
        self.terms.get(e).copied().unwrap_or(0.0)
    }

    /// Norms of the stored terms only.
    pub fn norms(&self) -> Norms {
        Norms {
            l1: self.terms.values().map(|c| c.abs()).sum(),
            linf: self.terms.values().fold(0.0, |m, c| m.max(c.abs())),
        }
    }

    /// Upper bound on the l^1 norm of the represented element.
    pub fn l1_upper(&self) -> f64 {
        add_up(self.stored_l1_up(), self.tail_bound)
    }

    pub(crate) fn stored_l1_up(&self) -> f64 {
        sum_up(self.terms.values().map(|c| c.abs()))
    }

    pub fn involute(&self) -> Self {
        RealSeries {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (-e, *c)).collect(),
            tail_bound: self.tail_bound,
        }
    }

    /// Convolution of two series. The tail bound propagates through
    /// `||xy||_1 <= ||x||_1 ||y||_1` plus the floating-point summation error.
    pub fn convolve(&self, other: &RealSeries) -> Result<RealSeries, GroupRingError> {
        if self.rank != other.rank {
            return Err(GroupRingError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut out: BTreeMap<ExponentVector, f64> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.checked_add(eb).ok_or(GroupRingError::ExponentOverflow)?;
                *out.entry(e).or_insert(0.0) += ca * cb;
            }
        }
        out.retain(|_, c| *c != 0.0);
        let na = self.stored_l1_up();
        let nb = other.stored_l1_up();
        let k = self.terms.len().min(other.terms.len()) as f64 + 1.0;
        let gamma = k * EPS / (1.0 - k * EPS);
        let mut tail = mul_up(na, other.tail_bound);
        tail = add_up(tail, mul_up(nb, self.tail_bound));
        tail = add_up(tail, mul_up(self.tail_bound, other.tail_bound));
        if !out.is_empty() {
            tail = add_up(tail, mul_up(mul_up(gamma, na), nb));
        }
        Ok(RealSeries {
            rank: self.rank,
            terms: out,
            tail_bound: tail,
        })
    }

    /// Convolution with an exact group ring element.
    pub fn convolve_exact(&self, h: &GroupRingElement) -> Result<RealSeries, GroupRingError> {
        self.convolve(&RealSeries::from_exact(h))
    }

    /// Drops stored terms, moving their mass into the tail bound.
    pub fn truncate_below(&self, threshold: f64) -> RealSeries {
        let mut dropped = 0.0;
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if c.abs() < threshold {
                dropped = add_up(dropped, c.abs());
            } else {
                terms.insert(e.clone(), *c);
            }
        }
        RealSeries {
            rank: self.rank,
            terms,
            tail_bound: add_up(self.tail_bound, dropped),
        }
    }

    pub(crate) fn with_tail(mut self, tail_bound: f64) -> Self {
        self.tail_bound = tail_bound;
        self
    }

    /// True when every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.fract() == 0.0)
    }
}
