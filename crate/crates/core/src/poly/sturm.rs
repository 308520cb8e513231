use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::ZPoly;

/// Sturm chain of a polynomial with integer coefficients. Pseudo-remainders
/// are sign-corrected and reduced to primitive parts, which leaves the sign
/// pattern (and hence the root counts) unchanged.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<ZPoly>,
}

impl SturmChain {
    pub fn new(p: &ZPoly) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmChain { chain };
        }
        chain.push(p.clone());
        let d = p.derivative();
        if d.is_zero() {
            return SturmChain { chain };
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.deg() == 0 {
                break;
            }
            let k = a.deg() - b.deg() + 1;
            let mut r = a.pseudo_rem(b);
            // prem = lc(b)^k * rem; undo the sign of lc(b)^k, then negate.
            if b.lc().is_negative() && k % 2 == 1 {
                r = r.neg();
            }
            let r = r.neg();
            if r.is_zero() {
                break;
            }
            let c = r.content();
            let r = ZPoly::new(r.coeffs().iter().map(|x| x / &c).collect());
            chain.push(r);
        }
        SturmChain { chain }
    }

    fn sign_changes(&self, x: &BigRational) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        if self.chain.is_empty() {
            return 0;
        }
        self.sign_changes(a).saturating_sub(self.sign_changes(b))
    }

    pub fn poly(&self) -> &ZPoly {
        &self.chain[0]
    }
}

/// Shrinks `(a, b]` (containing at least one root) by bisection until its
/// width is at most `width`, or until a rational root is hit exactly.
pub fn isolate_root(
    chain: &SturmChain,
    a: &BigRational,
    b: &BigRational,
    width: &BigRational,
) -> (BigRational, BigRational) {
    let (mut lo, mut hi) = (a.clone(), b.clone());
    let two = BigRational::from(BigInt::from(2));
    debug_assert!(chain.count(&lo, &hi) > 0);
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        if chain.poly().sign_at(&mid).is_eq() {
            return (mid.clone(), mid);
        }
        if chain.count(&lo, &mid) > 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

pub(crate) fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn counts_roots_of_quadratic() {
        // x^2 - 2x - 1: roots 1 - sqrt2 (~ -0.414) and 1 + sqrt2 (~ 2.414)
        let p = ZPoly::from_i64(&[-1, -2, 1]);
        let s = SturmChain::new(&p);
        assert_eq!(s.count(&rational(-2, 1), &rational(2, 1)), 1);
        assert_eq!(s.count(&rational(-10, 1), &rational(10, 1)), 2);
        assert_eq!(s.count(&rational(0, 1), &rational(2, 1)), 0);
    }

    #[test]
    fn counts_distinct_roots_with_multiplicity() {
        // (x-1)^2 (x+3)
        let p = ZPoly::from_i64(&[-1, 1])
            .mul(&ZPoly::from_i64(&[-1, 1]))
            .mul(&ZPoly::from_i64(&[3, 1]));
        let s = SturmChain::new(&p);
        assert_eq!(s.count(&rational(-10, 1), &rational(10, 1)), 2);
    }

    #[test]
    fn negative_leading_coefficients() {
        // -(x^3 - x) roots -1, 0, 1
        let p = ZPoly::from_i64(&[0, 1, 0, -1]);
        let s = SturmChain::new(&p);
        assert_eq!(s.count(&rational(-2, 1), &rational(2, 1)), 3);
        assert_eq!(s.count(&rational(-1, 2), &rational(2, 1)), 2);
    }

    #[test]
    fn bisection_isolates() {
        let p = ZPoly::from_i64(&[-2, 0, 1]); // sqrt 2
        let s = SturmChain::new(&p);
        let (lo, hi) = isolate_root(&s, &rational(0, 1), &rational(2, 1), &rational(1, 1 << 30));
        let sq: f64 = 2f64.sqrt();
        let lo_f = lo.to_f64().unwrap();
        let hi_f = hi.to_f64().unwrap();
        assert!(lo_f <= sq + 1e-12 && sq <= hi_f + 1e-12);
    }
}
