use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::groupring::{ExponentVector, GroupRingElement};

/// Polynomial over Z in recursive dense form: level 0 is an integer, level `k`
/// is a polynomial in one main variable with level `k - 1` coefficients
/// (low degree first, trailing zeros trimmed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MPoly {
    Int(BigInt),
    Poly(Vec<MPoly>),
}

impl MPoly {
    pub fn zero(level: usize) -> MPoly {
        if level == 0 {
            MPoly::Int(BigInt::zero())
        } else {
            MPoly::Poly(Vec::new())
        }
    }

    pub fn constant(level: usize, c: BigInt) -> MPoly {
        if level == 0 {
            MPoly::Int(c)
        } else if c.is_zero() {
            MPoly::Poly(Vec::new())
        } else {
            MPoly::Poly(vec![MPoly::constant(level - 1, c)])
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            MPoly::Int(c) => c.is_zero(),
            MPoly::Poly(v) => v.is_empty(),
        }
    }

    /// Constant in every variable.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self {
            MPoly::Int(c) => Some(c.clone()),
            MPoly::Poly(v) if v.is_empty() => Some(BigInt::zero()),
            MPoly::Poly(v) if v.len() == 1 => v[0].as_constant(),
            MPoly::Poly(_) => None,
        }
    }

    fn coeffs(&self) -> &[MPoly] {
        match self {
            MPoly::Poly(v) => v,
            MPoly::Int(_) => panic!("integer has no main variable"),
        }
    }

    fn trimmed(mut v: Vec<MPoly>) -> MPoly {
        while v.last().is_some_and(MPoly::is_zero) {
            v.pop();
        }
        MPoly::Poly(v)
    }

    fn level_zero_of(&self) -> MPoly {
        match self {
            MPoly::Int(_) => MPoly::Int(BigInt::zero()),
            MPoly::Poly(_) => MPoly::Poly(Vec::new()),
        }
    }

    /// Degree in the main variable; 0 for zero and for integers.
    pub fn deg(&self) -> usize {
        match self {
            MPoly::Int(_) => 0,
            MPoly::Poly(v) => v.len().saturating_sub(1),
        }
    }

    fn lc(&self) -> &MPoly {
        self.coeffs().last().expect("nonzero polynomial")
    }

    /// Leading integer coefficient in recursive order.
    fn base_lc(&self) -> BigInt {
        match self {
            MPoly::Int(c) => c.clone(),
            MPoly::Poly(v) => v.last().map_or_else(BigInt::zero, MPoly::base_lc),
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        match (self, o) {
            (MPoly::Int(a), MPoly::Int(b)) => MPoly::Int(a + b),
            (MPoly::Poly(a), MPoly::Poly(b)) => {
                let n = a.len().max(b.len());
                let v = (0..n)
                    .map(|i| match (a.get(i), b.get(i)) {
                        (Some(x), Some(y)) => x.add(y),
                        (Some(x), None) => x.clone(),
                        (None, Some(y)) => y.clone(),
                        (None, None) => unreachable!(),
                    })
                    .collect();
                MPoly::trimmed(v)
            }
            _ => panic!("level mismatch"),
        }
    }

    pub fn neg(&self) -> MPoly {
        match self {
            MPoly::Int(a) => MPoly::Int(-a),
            MPoly::Poly(v) => MPoly::Poly(v.iter().map(MPoly::neg).collect()),
        }
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        match (self, o) {
            (MPoly::Int(a), MPoly::Int(b)) => MPoly::Int(a * b),
            (MPoly::Poly(a), MPoly::Poly(b)) => {
                if a.is_empty() || b.is_empty() {
                    return MPoly::Poly(Vec::new());
                }
                let z = a[0].level_zero_of();
                let mut v = vec![z; a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        v[i + j] = v[i + j].add(&x.mul(y));
                    }
                }
                MPoly::trimmed(v)
            }
            _ => panic!("level mismatch"),
        }
    }

    fn mul_coeff(&self, c: &MPoly) -> MPoly {
        MPoly::trimmed(self.coeffs().iter().map(|x| x.mul(c)).collect())
    }

    fn shift_main(&self, k: usize) -> MPoly {
        let v = self.coeffs();
        if v.is_empty() {
            return self.clone();
        }
        let mut out = vec![v[0].level_zero_of(); k];
        out.extend(v.iter().cloned());
        MPoly::Poly(out)
    }

    /// Exact quotient `self / o`, or `None` if `o` does not divide `self`.
    pub fn div_exact(&self, o: &MPoly) -> Option<MPoly> {
        match (self, o) {
            (_, d) if d.is_zero() => None,
            (MPoly::Int(a), MPoly::Int(b)) => {
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(MPoly::Int(q))
            }
            (MPoly::Poly(_), MPoly::Poly(b)) => {
                let db = b.len() - 1;
                let mut r = self.clone();
                let z = b[0].level_zero_of();
                let mut q = vec![z; r.deg().saturating_sub(db) + 1];
                while !r.is_zero() {
                    let dr = r.deg();
                    if dr < db {
                        return None;
                    }
                    let c = r.lc().div_exact(o.lc())?;
                    r = r.sub(&o.mul_coeff(&c).shift_main(dr - db));
                    q[dr - db] = c;
                }
                Some(MPoly::trimmed(q))
            }
            _ => panic!("level mismatch"),
        }
    }

    /// Gcd of the coefficients in the main variable.
    fn content(&self) -> MPoly {
        let v = self.coeffs();
        let mut g = match v.first() {
            Some(c) => c.level_zero_of(),
            None => return MPoly::zero(0),
        };
        for c in v {
            g = g.gcd(c);
            if g.as_constant().is_some_and(|k| k.is_one()) {
                break;
            }
        }
        g
    }

    fn primitive_part(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let p = self
            .div_exact(&MPoly::Poly(vec![c]))
            .expect("content divides");
        p.normalize_sign()
    }

    fn normalize_sign(self) -> MPoly {
        if self.base_lc().is_negative() {
            self.neg()
        } else {
            self
        }
    }

    fn pseudo_rem(&self, b: &MPoly) -> MPoly {
        let db = b.deg();
        let lb = b.lc().clone();
        let mut r = self.clone();
        while !r.is_zero() && r.deg() >= db {
            let dr = r.deg();
            let lr = r.lc().clone();
            r = r.mul_coeff(&lb).sub(&b.mul_coeff(&lr).shift_main(dr - db));
        }
        r
    }

    /// Gcd over Z, normalized to positive leading integer coefficient.
    pub fn gcd(&self, o: &MPoly) -> MPoly {
        match (self, o) {
            (MPoly::Int(a), MPoly::Int(b)) => MPoly::Int(a.gcd(b)),
            (MPoly::Poly(_), MPoly::Poly(_)) => {
                if self.is_zero() {
                    return o.clone().normalize_sign();
                }
                if o.is_zero() {
                    return self.clone().normalize_sign();
                }
                let c = self.content().gcd(&o.content());
                let (mut a, mut b) = (self.primitive_part(), o.primitive_part());
                if a.deg() < b.deg() {
                    std::mem::swap(&mut a, &mut b);
                }
                while !b.is_zero() {
                    if b.deg() == 0 {
                        a = b;
                        break;
                    }
                    let r = a.pseudo_rem(&b).primitive_part();
                    a = b;
                    b = r;
                }
                a.primitive_part().mul_coeff(&c).normalize_sign()
            }
            _ => panic!("level mismatch"),
        }
    }

    /// Dense recursive form of a group-ring element with nonnegative exponents.
    pub fn from_element(f: &GroupRingElement) -> MPoly {
        let terms: Vec<(Vec<i64>, BigInt)> = f
            .terms()
            .map(|(e, c)| (e.coords().to_vec(), c.clone()))
            .collect();
        build(f.rank(), &terms)
    }

    pub fn to_element(&self, rank: usize) -> GroupRingElement {
        let mut out = BTreeMap::new();
        let mut prefix = Vec::with_capacity(rank);
        collect(self, &mut prefix, &mut out);
        GroupRingElement::from_terms(rank, out).expect("rank matches")
    }

    /// Total degree (0 for constants and zero).
    pub fn total_degree(&self) -> usize {
        match self {
            MPoly::Int(_) => 0,
            MPoly::Poly(v) => v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| i + c.total_degree())
                .max()
                .unwrap_or(0),
        }
    }
}

fn build(level: usize, terms: &[(Vec<i64>, BigInt)]) -> MPoly {
    if level == 0 {
        return MPoly::Int(terms.iter().map(|(_, c)| c.clone()).sum());
    }
    let axis_from_end = level;
    let mut groups: BTreeMap<usize, Vec<(Vec<i64>, BigInt)>> = BTreeMap::new();
    for (e, c) in terms {
        let k = e[e.len() - axis_from_end];
        assert!(k >= 0, "exponents must be nonnegative");
        groups.entry(k as usize).or_default().push((e.clone(), c.clone()));
    }
    let max = groups.keys().next_back().copied();
    let mut v = Vec::new();
    if let Some(max) = max {
        for k in 0..=max {
            v.push(match groups.get(&k) {
                Some(g) => build(level - 1, g),
                None => MPoly::zero(level - 1),
            });
        }
    }
    MPoly::trimmed(v)
}

fn collect(p: &MPoly, prefix: &mut Vec<i64>, out: &mut BTreeMap<ExponentVector, BigInt>) {
    match p {
        MPoly::Int(c) => {
            if !c.is_zero() {
                out.insert(ExponentVector::new(prefix.clone()), c.clone());
            }
        }
        MPoly::Poly(v) => {
            for (i, c) in v.iter().enumerate() {
                prefix.push(i as i64);
                collect(c, prefix, out);
                prefix.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(rank: usize, terms: &[(&[i64], i64)]) -> GroupRingElement {
        GroupRingElement::from_terms(rank, terms.iter().map(|(e, c)| (ExponentVector::new(e.to_vec()), BigInt::from(*c))))
            .unwrap()
    }

    #[test]
    fn round_trip() {
        let f = el(2, &[(&[0, 0], 3), (&[1, 0], -1), (&[0, 2], 5), (&[2, 1], 7)]);
        let p = MPoly::from_element(&f);
        assert_eq!(p.to_element(2), f);
        assert_eq!(p.total_degree(), 3);
    }

    #[test]
    fn gcd_finds_common_factor() {
        // (1 + u1 + u2)(2 - u1 u2) and (1 + u1 + u2)(3 + u2)
        let g = el(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        let a = el(2, &[(&[0, 0], 2), (&[1, 1], -1)]);
        let b = el(2, &[(&[0, 0], 3), (&[0, 1], 1)]);
        let pa = MPoly::from_element(&(&g * &a));
        let pb = MPoly::from_element(&(&g * &b));
        let d = pa.gcd(&pb);
        assert_eq!(d.to_element(2), g);
        let q = pa.div_exact(&d).unwrap();
        assert_eq!(q.to_element(2), a);
    }

    #[test]
    fn coprime_gives_constant() {
        let a = MPoly::from_element(&el(2, &[(&[0, 0], 3), (&[1, 0], 1), (&[0, 1], 1)]));
        let b = MPoly::from_element(&el(2, &[(&[0, 0], 1), (&[1, 1], 1)]));
        assert_eq!(a.gcd(&b).as_constant(), Some(BigInt::one()));
    }

    #[test]
    fn integer_content_kept() {
        let a = MPoly::from_element(&el(2, &[(&[0, 0], 4), (&[1, 0], 2)]));
        let b = MPoly::from_element(&el(2, &[(&[0, 0], 6)]));
        assert_eq!(a.gcd(&b).as_constant(), Some(BigInt::from(2)));
    }

    #[test]
    fn non_divisor_rejected() {
        let a = MPoly::from_element(&el(2, &[(&[0, 0], 1), (&[1, 0], 1)]));
        let b = MPoly::from_element(&el(2, &[(&[0, 0], 1), (&[0, 1], 1)]));
        assert!(a.div_exact(&b).is_none());
    }
}
