use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExponentVector, GroupRingError, Norms};

/// An element of the integral group ring Z[Z^d], i.e. a Laurent polynomial in
/// `u1, ..., ud` with integer coefficients.
///
/// Zero coefficients are never stored, so two elements are equal exactly when
/// their term maps are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    rank: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl GroupRingElement {
    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be at least 1");
        GroupRingElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigInt::one())
    }

    pub fn constant(rank: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(ExponentVector::zero(rank), c)
    }

    pub fn monomial(exponent: ExponentVector, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(exponent.rank());
        let c = c.into();
        if !c.is_zero() {
            out.terms.insert(exponent, c);
        }
        out
    }

    /// Builds an element from `(exponent, coefficient)` pairs, merging repeated
    /// exponents.
    pub fn from_terms<I, C>(rank: usize, terms: I) -> Result<Self, GroupRingError>
    where
        I: IntoIterator<Item = (ExponentVector, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero(rank);
        for (e, c) in terms {
            if e.rank() != rank {
                return Err(GroupRingError::RankMismatch {
                    left: rank,
                    right: e.rank(),
                });
            }
            out.add_term(e, c.into());
        }
        Ok(out)
    }

    /// Univariate helper: `coeffs[i]` is the coefficient of `u^(low + i)`.
    pub fn from_univariate(low: i64, coeffs: &[i64]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (ExponentVector::new(vec![low + i as i64]), c));
        Self::from_terms(1, terms).expect("rank 1")
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Terms in canonical (lexicographic) exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exactly one term (a nonzero multiple of a group element).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Units of Z[Z^d] are exactly `±u^k`.
    pub fn is_unit(&self) -> bool {
        self.is_monomial() && self.terms.values().all(|c| c.abs().is_one())
    }

    fn check_rank(&self, other: &Self) -> Result<(), GroupRingError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(GroupRingError::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    /// Exact convolution product.
    pub fn convolve(&self, other: &Self) -> Result<Self, GroupRingError> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.checked_add(eb).ok_or(GroupRingError::ExponentOverflow)?;
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, GroupRingError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, GroupRingError> {
        self.try_add(&-other)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.rank);
        if k.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * k);
        }
        out
    }

    /// Multiplies by the group element `u^shift`.
    pub fn shift(&self, shift: &ExponentVector) -> Result<Self, GroupRingError> {
        if shift.rank() != self.rank {
            return Err(GroupRingError::RankMismatch {
                left: self.rank,
                right: shift.rank(),
            });
        }
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            let e = e.checked_add(shift).ok_or(GroupRingError::ExponentOverflow)?;
            out.terms.insert(e, c.clone());
        }
        Ok(out)
    }

    /// The involution `(f*)_n = f_{-n}`.
    pub fn involute(&self) -> Self {
        GroupRingElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn l1_exact(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub fn linf_exact(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// `(||f||_1, ||f||_inf)` as reals.
    pub fn norms(&self) -> Norms {
        Norms {
            l1: self.l1_exact().to_f64().unwrap_or(f64::INFINITY),
            linf: self.linf_exact().to_f64().unwrap_or(f64::INFINITY),
        }
    }

    /// Writes `f = m * f0` with `m > 0` the content and `f0` primitive.
    pub fn content_split(&self) -> Result<(BigInt, Self), GroupRingError> {
        if self.is_zero() {
            return Err(GroupRingError::ZeroElement);
        }
        let m = self
            .terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        let f0 = GroupRingElement {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c / &m))
                .collect(),
        };
        Ok((m, f0))
    }

    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one()
    }

    /// Sum of coefficients (the image under the augmentation map).
    pub fn evaluate_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Componentwise minimum and maximum exponent over the support.
    pub fn exponent_bounds(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.coords().to_vec();
        let mut hi = lo.clone();
        for e in it {
            for (i, &c) in e.coords().iter().enumerate() {
                lo[i] = lo[i].min(c);
                hi[i] = hi[i].max(c);
            }
        }
        Some((lo, hi))
    }

    /// Divides out the largest monomial factor so that every variable appears
    /// with minimum exponent zero. Returns the normalized element and the
    /// removed shift.
    pub fn monomial_normalize(&self) -> (Self, ExponentVector) {
        match self.exponent_bounds() {
            None => (self.clone(), ExponentVector::zero(self.rank)),
            Some((lo, _)) => {
                let shift = ExponentVector::new(lo);
                let out = self.shift(&-&shift).expect("in range");
                (out, shift)
            }
        }
    }

    /// Dense coefficient list of a rank-1 element: `(low exponent, coefficients)`.
    pub fn univariate_coeffs(&self) -> Option<(i64, Vec<BigInt>)> {
        if self.rank != 1 {
            return None;
        }
        let (lo, hi) = match self.exponent_bounds() {
            None => return Some((0, Vec::new())),
            Some((lo, hi)) => (lo[0], hi[0]),
        };
        let mut out = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (e, c) in &self.terms {
            out[(e.coords()[0] - lo) as usize] = c.clone();
        }
        Some((lo, out))
    }

    /// Reinterprets the element in a larger rank by padding exponents with
    /// zeros (used when a constant must meet a rank-d operand).
    pub fn embed(&self, rank: usize) -> Result<Self, GroupRingError> {
        if rank < self.rank {
            return Err(GroupRingError::RankMismatch {
                left: rank,
                right: self.rank,
            });
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut v = e.coords().to_vec();
            v.resize(rank, 0);
            (ExponentVector::new(v), c.clone())
        });
        Self::from_terms(rank, terms)
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;

    fn add(self, other: &GroupRingElement) -> GroupRingElement {
        self.try_add(other).expect("rank mismatch")
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;

    fn sub(self, other: &GroupRingElement) -> GroupRingElement {
        self.try_sub(other).expect("rank mismatch")
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;

    fn mul(self, other: &GroupRingElement) -> GroupRingElement {
        self.convolve(other).expect("rank mismatch")
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;

    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &ExponentVector) -> fmt::Result {
    let mut first = true;
    for (i, &p) in e.coords().iter().enumerate() {
        if p == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "u{}", i + 1)?;
        if p != 1 {
            write!(f, "^{p}")?;
        }
    }
    Ok(())
}

/// Canonical form: terms in lexicographic exponent order, e.g.
/// `1 - 2*u1 + u1^2*u2^-1`.
impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}
