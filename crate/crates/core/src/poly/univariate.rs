use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::groupring::{ExponentVector, GroupRingElement};

/// Dense univariate polynomial over Z, coefficients from low to high degree.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `u^k - 1`.
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[0] = BigInt::from(-1);
        c[k] = BigInt::one();
        Self::new(c)
    }

    /// Splits a rank-1 group ring element as `u^low * p(u)` with `p(0) != 0`.
    pub fn from_element(f: &GroupRingElement) -> Option<(i64, ZPoly)> {
        let (low, coeffs) = f.univariate_coeffs()?;
        Some((low, ZPoly::new(coeffs)))
    }

    pub fn to_element(&self, low: i64) -> GroupRingElement {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (ExponentVector::new(vec![low + i as i64]), c.clone()));
        GroupRingElement::from_terms(1, terms).expect("rank 1")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &ZPoly) -> ZPoly {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiplication by `u^k`.
    pub fn shift_up(&self, k: usize) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        ZPoly::new(c)
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// The reciprocal `u^deg p(1/u)`.
    pub fn reverse(&self) -> ZPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        ZPoly::new(c)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part normalized to a positive leading coefficient.
    pub fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        ZPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Pseudo-division: `lc(b)^k * self = q*b + r` with `k = deg self - deg b + 1`
    /// and `deg r < deg b`.
    pub fn pseudo_divrem(&self, b: &ZPoly) -> (ZPoly, ZPoly) {
        assert!(!b.is_zero(), "division by zero polynomial");
        let db = b.deg();
        if self.is_zero() || self.deg() < db {
            return (ZPoly::zero(), self.clone());
        }
        let k = self.deg() - db + 1;
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); k];
        for step in (0..k).rev() {
            // r currently has degree <= db + step.
            let top = r.get(db + step).cloned().unwrap_or_default();
            for c in q.iter_mut() {
                *c *= &lb;
            }
            q[step] += &top;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            if !top.is_zero() {
                for (j, bc) in b.coeffs.iter().enumerate() {
                    r[step + j] -= &top * bc;
                }
            }
        }
        (ZPoly::new(q), ZPoly::new(r))
    }

    pub fn pseudo_rem(&self, b: &ZPoly) -> ZPoly {
        self.pseudo_divrem(b).1
    }

    /// Exact quotient over Z, if `b` divides `self` in Z[u].
    pub fn exact_div(&self, b: &ZPoly) -> Option<ZPoly> {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if self.deg() < b.deg() {
            return None;
        }
        let db = b.deg();
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.deg() - db + 1];
        for step in (0..q.len()).rev() {
            let top = &r[db + step];
            if top.is_zero() {
                continue;
            }
            let (qc, rem) = top.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[step + j] -= &qc * bc;
            }
            q[step] = qc;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(ZPoly::new(q))
        } else {
            None
        }
    }

    /// Quotient over Q as a primitive integer polynomial, if `b | self` in Q[u].
    pub fn quotient_primitive(&self, b: &ZPoly) -> Option<ZPoly> {
        let (q, r) = self.pseudo_divrem(b);
        if r.is_zero() {
            Some(q.primitive())
        } else {
            None
        }
    }

    /// True when `b` divides `self` over Q.
    pub fn divisible_by(&self, b: &ZPoly) -> bool {
        self.pseudo_rem(b).is_zero()
    }

    /// Greatest common divisor over Q, returned primitive with positive
    /// leading coefficient (the primitive PRS).
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.deg() == 0 {
                return ZPoly::one();
            }
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from(c.clone()))
    }

    /// Exact sign of `p(num/den)` for `den > 0`.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let num = x.numer();
        let den = x.denom();
        let n = self.coeffs.len();
        if n == 0 {
            return Ordering::Equal;
        }
        // den^(n-1) * p(num/den) = sum c_k num^k den^(n-1-k)
        let mut acc = BigInt::zero();
        let mut pow_num = BigInt::one();
        let mut pow_den: Vec<BigInt> = Vec::with_capacity(n);
        let mut d = BigInt::one();
        for _ in 0..n {
            pow_den.push(d.clone());
            d *= den;
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += c * &pow_num * &pow_den[n - 1 - k];
            pow_num *= num;
        }
        acc.sign_cmp()
    }

    /// Yun-style squarefree decomposition: `(factor, multiplicity)` pairs with
    /// primitive, pairwise coprime, squarefree factors of positive degree.
    pub fn squarefree_decomposition(&self) -> Vec<(ZPoly, usize)> {
        let p = self.primitive();
        if p.deg() == 0 {
            return Vec::new();
        }
        // q_k = gcd(q_{k-1}, q_{k-1}'), s_k = q_{k-1}/q_k collects roots of
        // multiplicity >= k; s_k / s_{k+1} those of multiplicity exactly k.
        let mut qs = vec![p.clone()];
        while qs.last().unwrap().deg() > 0 {
            let q = qs.last().unwrap();
            let next = q.gcd(&q.derivative());
            qs.push(next);
        }
        let s: Vec<ZPoly> = qs
            .windows(2)
            .map(|w| w[0].quotient_primitive(&w[1]).expect("gcd divides"))
            .collect();
        let mut out = Vec::new();
        for k in 0..s.len() {
            let exact = if k + 1 < s.len() {
                s[k].quotient_primitive(&s[k + 1]).expect("nested")
            } else {
                s[k].clone()
            };
            if exact.deg() > 0 {
                out.push((exact, k + 1));
            }
        }
        out
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}
