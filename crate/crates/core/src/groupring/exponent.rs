use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An element of the acting group Z^d, written additively.
///
/// Vectors compare lexicographically, which is the canonical term order used
/// for printing and hashing group ring elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    /// Panics if `coords` is empty: the rank of the group is at least one.
    pub fn new(coords: Vec<i64>) -> Self {
        assert!(!coords.is_empty(), "exponent vectors have rank >= 1");
        ExponentVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![0; rank])
    }

    /// The generator `u_{axis+1}` raised to `power`.
    pub fn axis(rank: usize, axis: usize, power: i64) -> Self {
        let mut v = vec![0; rank];
        v[axis] = power;
        Self::new(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `|n|_1`, saturating.
    pub fn l1(&self) -> u64 {
        self.0
            .iter()
            .fold(0u64, |acc, c| acc.saturating_add(c.unsigned_abs()))
    }

    /// `|n|_inf`.
    pub fn linf(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        assert_eq!(self.rank(), other.rank(), "exponent rank mismatch");
        let mut out = Vec::with_capacity(self.rank());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_add(*b)?);
        }
        Some(ExponentVector(out))
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        Self::new(v)
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;

    fn add(self, other: &ExponentVector) -> ExponentVector {
        self.checked_add(other).expect("exponent overflow")
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;

    fn sub(self, other: &ExponentVector) -> ExponentVector {
        self + &(-other)
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;

    fn neg(self) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .map(|c| c.checked_neg().expect("exponent overflow"))
                .collect(),
        )
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
