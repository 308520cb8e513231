//! Directed rounding emulated on top of round-to-nearest.
//!
//! Every primitive computes the nearest result together with its exact error
//! (TwoSum, FMA) and steps one ulp outward only when the result was inexact,
//! so exactly representable results stay tight.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, ToPrimitive};

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if e > 0.0 {
        s.next_up()
    } else {
        s
    }
}

pub(crate) fn add_down(a: f64, b: f64) -> f64 {
    let (s, e) = two_sum(a, b);
    if e < 0.0 {
        s.next_down()
    } else {
        s
    }
}

pub(crate) fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

pub(crate) fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    let e = a.mul_add(b, -p);
    if e > 0.0 {
        p.next_up()
    } else {
        p
    }
}

pub(crate) fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    let e = a.mul_add(b, -p);
    if e < 0.0 {
        p.next_down()
    } else {
        p
    }
}

/// Upper bound on `a / b` for `b > 0`.
pub(crate) fn div_up(a: f64, b: f64) -> f64 {
    debug_assert!(b > 0.0);
    let q = a / b;
    // a - q*b is exactly representable, so the fma is exact.
    let r = (-q).mul_add(b, a);
    if r > 0.0 {
        q.next_up()
    } else {
        q
    }
}

/// Upper bound on a sum of nonnegative terms.
pub(crate) fn sum_up<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    terms.into_iter().fold(0.0, add_up)
}

/// Closed interval `[lo, hi]` with outward-rounded arithmetic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Encloses an integer that may not be representable as a double.
    pub fn from_bigint(c: &BigInt) -> Self {
        let v = c.to_f64().unwrap_or(f64::INFINITY);
        match BigInt::from_f64(v) {
            Some(back) if &back == c => Interval::point(v),
            _ => Interval {
                lo: v.next_down(),
                hi: v.next_up(),
            },
        }
    }

    pub fn add(self, o: Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, o.lo),
            hi: add_up(self.hi, o.hi),
        }
    }

    pub fn sub(self, o: Interval) -> Interval {
        Interval {
            lo: sub_down(self.lo, o.hi),
            hi: sub_up(self.hi, o.lo),
        }
    }

    /// Product with a point value.
    pub fn mul_point(self, x: f64) -> Interval {
        let a = [mul_down(self.lo, x), mul_down(self.hi, x)];
        let b = [mul_up(self.lo, x), mul_up(self.hi, x)];
        Interval {
            lo: a[0].min(a[1]),
            hi: b[0].max(b[1]),
        }
    }

    /// Upper bound on `max |x|` over the interval.
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }
}
