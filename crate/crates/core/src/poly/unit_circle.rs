use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::sturm::{isolate_root, rational, SturmChain};
use super::ZPoly;

/// An exactly certified root of modulus one.
#[derive(Clone, Debug, PartialEq)]
pub enum UnitRoot {
    One,
    MinusOne,
    /// A conjugate pair `e^{±2πiθ}` with `x = 2cos(2πθ)` an isolated root of
    /// the Chebyshev form in the rational interval `[x_lo, x_hi] ⊂ (-2, 2)`.
    Pair {
        x_lo: BigRational,
        x_hi: BigRational,
        theta_lo: f64,
        theta_hi: f64,
    },
}

impl UnitRoot {
    /// An angle `θ ∈ [0, 1)` of the root (midpoint of the enclosure for pairs).
    pub fn theta(&self) -> f64 {
        match self {
            UnitRoot::One => 0.0,
            UnitRoot::MinusOne => 0.5,
            UnitRoot::Pair {
                theta_lo, theta_hi, ..
            } => 0.5 * (theta_lo + theta_hi),
        }
    }
}

/// Unit-circle structure of `p` with `p(0) != 0`, derived from the reciprocal
/// gcd `g = gcd(p, u^deg p(1/u))`.
///
/// Every unit-circle root of `p` is a root of `g`. After removing the factors
/// `u ± 1`, `g` is self-reciprocal of even degree `2m`, so `u^-m g(u) = h(u + 1/u)`
/// and the non-real unit-circle roots correspond to the real roots of `h`
/// in `(-2, 2)`. All of this is exact.
#[derive(Clone, Debug)]
pub struct UnitCircleAnalysis {
    pub reciprocal_gcd: ZPoly,
    pub root_one: bool,
    pub root_minus_one: bool,
    pub chebyshev: ZPoly,
    pub pair_count: usize,
}

impl UnitCircleAnalysis {
    pub fn new(p: &ZPoly) -> Self {
        assert!(!p.is_zero() && !p.coeff(0).is_zero(), "need p(0) != 0");
        let g = p.gcd(&p.reverse());
        let one = BigInt::from(1);
        let minus_one = BigInt::from(-1);
        let root_one = p.eval_bigint(&one).is_zero();
        let root_minus_one = p.eval_bigint(&minus_one).is_zero();
        let mut core = g.clone();
        for lin in [ZPoly::from_i64(&[-1, 1]), ZPoly::from_i64(&[1, 1])] {
            while core.deg() > 0 {
                match core.exact_div(&lin) {
                    Some(q) => core = q,
                    None => break,
                }
            }
        }
        let core = core.primitive();
        let (chebyshev, pair_count) = if core.deg() == 0 {
            (ZPoly::one(), 0)
        } else {
            assert!(
                core.reverse() == core && core.deg().is_multiple_of(2),
                "reciprocal gcd without ±1 factors is self-reciprocal of even degree"
            );
            let h = chebyshev_form(&core);
            let chain = SturmChain::new(&h);
            let n = chain.count(&rational(-2, 1), &rational(2, 1));
            (h, n)
        };
        UnitCircleAnalysis {
            reciprocal_gcd: g,
            root_one,
            root_minus_one,
            chebyshev,
            pair_count,
        }
    }

    /// Number of distinct roots of `p` on the unit circle.
    pub fn distinct_unit_roots(&self) -> usize {
        self.root_one as usize + self.root_minus_one as usize + 2 * self.pair_count
    }

    pub fn has_unit_root(&self) -> bool {
        self.distinct_unit_roots() > 0
    }

    /// One certified unit-circle root, if any exists.
    pub fn witness(&self) -> Option<UnitRoot> {
        if self.root_one {
            return Some(UnitRoot::One);
        }
        if self.root_minus_one {
            return Some(UnitRoot::MinusOne);
        }
        if self.pair_count == 0 {
            return None;
        }
        let chain = SturmChain::new(&self.chebyshev);
        let width = BigRational::new(BigInt::from(1), BigInt::from(1u64 << 52));
        let (x_lo, x_hi) = isolate_root(&chain, &rational(-2, 1), &rational(2, 1), &width);
        let to_theta = |x: &BigRational| {
            let c = (x.to_f64().unwrap() / 2.0).clamp(-1.0, 1.0);
            c.acos() / (2.0 * std::f64::consts::PI)
        };
        // acos is decreasing; widen by a few ulps for the libm error.
        let theta_lo = (to_theta(&x_hi) - 1e-15).max(0.0);
        let theta_hi = (to_theta(&x_lo) + 1e-15).min(0.5);
        Some(UnitRoot::Pair {
            x_lo,
            x_hi,
            theta_lo,
            theta_hi,
        })
    }
}

/// For self-reciprocal `g` of degree `2m`, the `h` with `u^-m g(u) = h(u + 1/u)`.
pub fn chebyshev_form(g: &ZPoly) -> ZPoly {
    let n = g.deg();
    assert!(n.is_multiple_of(2));
    let m = n / 2;
    // t_j(x) = u^j + u^-j as a polynomial in x = u + 1/u.
    let mut t_prev = ZPoly::constant(BigInt::from(2));
    let mut t_cur = ZPoly::from_i64(&[0, 1]);
    let mut h = ZPoly::constant(g.coeff(m));
    for j in 1..=m {
        if j > 1 {
            let next = t_cur.shift_up(1).sub(&t_prev);
            t_prev = t_cur;
            t_cur = next;
        }
        h = h.add(&t_cur.scale(&g.coeff(m + j)));
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_has_one_unit_pair() {
        let p = ZPoly::from_i64(&[1, -2, 1, -2, 1]);
        let a = UnitCircleAnalysis::new(&p);
        assert_eq!(a.chebyshev, ZPoly::from_i64(&[-1, -2, 1]));
        assert_eq!(a.pair_count, 1);
        assert_eq!(a.distinct_unit_roots(), 2);
        match a.witness().unwrap() {
            UnitRoot::Pair { x_lo, x_hi, .. } => {
                let x = 1.0 - 2f64.sqrt();
                assert!(x_lo.to_f64().unwrap() <= x + 1e-15);
                assert!(x <= x_hi.to_f64().unwrap() + 1e-15);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn golden_polynomial_has_none() {
        let a = UnitCircleAnalysis::new(&ZPoly::from_i64(&[-1, -1, 1]));
        assert!(!a.has_unit_root());
    }

    #[test]
    fn reciprocal_pair_off_circle() {
        // (u - 2)(2u - 1) is self-reciprocal without unit roots.
        let p = ZPoly::from_i64(&[-2, 1]).mul(&ZPoly::from_i64(&[-1, 2]));
        let a = UnitCircleAnalysis::new(&p);
        assert_eq!(a.reciprocal_gcd.deg(), 2);
        assert!(!a.has_unit_root());
    }

    #[test]
    fn plus_minus_one() {
        let a = UnitCircleAnalysis::new(&ZPoly::from_i64(&[-1, 1]));
        assert_eq!(a.witness(), Some(UnitRoot::One));
        let b = UnitCircleAnalysis::new(&ZPoly::from_i64(&[1, 0, 1]));
        assert_eq!(b.distinct_unit_roots(), 2);
        let c = UnitCircleAnalysis::new(&ZPoly::from_i64(&[1, 1]).mul(&ZPoly::from_i64(&[1, 1, 1])));
        assert!(c.root_minus_one);
        assert_eq!(c.distinct_unit_roots(), 3);
    }
}
