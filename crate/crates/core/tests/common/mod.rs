//! Independent oracles and seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use algdyn::{ExponentVector, GroupRingElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Matrix = Vec<Vec<BigRational>>;

pub fn rank_q(mut m: Matrix) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for i in 0..rows {
            if i != rank && !m[i][c].is_zero() {
                let k = &m[i][c] / &piv;
                for j in c..cols {
                    let s = &k * &m[rank][j];
                    m[i][j] -= s;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                let s = &a[i][k] * &b[k][j];
                out[i][j] += s;
            }
        }
    }
    out
}

/// Dense coefficients `(low exponent, coeffs)` of a rank-one element.
pub fn dense(f: &GroupRingElement) -> (i64, Vec<BigInt>) {
    let lo = f.terms().map(|(e, _)| e.coords()[0]).min().unwrap_or(0);
    let hi = f.terms().map(|(e, _)| e.coords()[0]).max().unwrap_or(0);
    let mut c = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (e, v) in f.terms() {
        c[(e.coords()[0] - lo) as usize] = v.clone();
    }
    (lo, c)
}

/// Injectivity of multiplication by `r` on `Q[u]/(f~)` for rank-one `f != 0`,
/// via the matrix `r(C)` of the companion matrix `C` of the monomial-normalized
/// `f`; negative powers use `C^{-1}`, which exists since `f~(0) != 0`.
pub fn companion_injective(f: &GroupRingElement, r: &GroupRingElement) -> bool {
    let (_, c) = dense(f);
    let n = c.len() - 1;
    if n == 0 {
        return true;
    }
    let lead = BigRational::from_integer(c[n].clone());
    // multiplication by u in the basis 1, u, .., u^{n-1}
    let mut comp = vec![vec![BigRational::zero(); n]; n];
    for j in 0..n {
        if j + 1 < n {
            comp[j + 1][j] = BigRational::one();
        }
        comp[j][n - 1] = -BigRational::from_integer(c[j].clone()) / &lead;
    }
    // u^{-1}: u^{-1} e_0 = -(c_1 + c_2 u + .. + c_n u^{n-1}) / c_0, u^{-1} e_j = e_{j-1}
    let c0 = BigRational::from_integer(c[0].clone());
    let mut inv = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        inv[i][0] = -BigRational::from_integer(c[i + 1].clone()) / &c0;
    }
    for j in 1..n {
        inv[j - 1][j] = BigRational::one();
    }
    let mut acc = vec![vec![BigRational::zero(); n]; n];
    for (e, v) in r.terms() {
        let k = e.coords()[0];
        let base = if k >= 0 { &comp } else { &inv };
        let mut p = identity(n);
        for _ in 0..k.unsigned_abs() {
            p = matmul(&p, base);
        }
        let v = BigRational::from_integer(v.clone());
        for i in 0..n {
            for j in 0..n {
                let s = &v * &p[i][j];
                acc[i][j] += s;
            }
        }
    }
    rank_q(acc) == n
}

/// Brute-force convolution on dense arrays.
pub fn dense_convolve(a: &GroupRingElement, b: &GroupRingElement) -> BTreeMap<Vec<i64>, BigInt> {
    let mut out: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let e: Vec<i64> = ea.coords().iter().zip(eb.coords()).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `(1/f)_n` for `f = u^2 - u - 1` from partial fractions:
/// `1/f = (1/(u - φ) - 1/(u - ψ)) / √5`, expanded in `|u| = 1`.
pub fn cat_inverse(n: i64) -> f64 {
    let s5 = 5f64.sqrt();
    let phi = (1.0 + s5) / 2.0;
    let psi = (1.0 - s5) / 2.0;
    if n >= 0 {
        -1.0 / (s5 * phi.powi(n as i32 + 1))
    } else {
        -psi.powi((-n - 1) as i32) / s5
    }
}

pub fn f64_of(b: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(b).unwrap()
}

/// Random rank-one element with exponents in `[low, low + deg]`, coefficients in `[-c, c]`.
pub fn random_univariate(rng: &mut ChaCha8Rng, max_deg: usize, c: i64, low: i64) -> GroupRingElement {
    let deg = rng.random_range(0..=max_deg);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.random_range(-c..=c)).collect();
    GroupRingElement::from_univariate(low, &coeffs)
}

/// Random element with up to `terms` monomials in `[-spread, spread]^d`.
pub fn random_element(rng: &mut ChaCha8Rng, d: usize, terms: usize, spread: i64, c: i64) -> GroupRingElement {
    let n = rng.random_range(1..=terms);
    let t: Vec<(ExponentVector, BigInt)> = (0..n)
        .map(|_| {
            let e = (0..d).map(|_| rng.random_range(-spread..=spread)).collect();
            (ExponentVector::new(e), BigInt::from(rng.random_range(-c..=c)))
        })
        .collect();
    let mut acc: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
    for (e, v) in t {
        *acc.entry(e).or_insert_with(BigInt::zero) += v;
    }
    GroupRingElement::from_terms(d, acc).unwrap()
}

pub fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> GroupRingElement {
    let e = (0..d).map(|_| rng.random_range(-4..=4)).collect();
    let s = if rng.random_bool(0.5) { 1 } else { -1 };
    GroupRingElement::monomial(ExponentVector::new(e), s)
}

pub fn primitive(f: &GroupRingElement) -> bool {
    !f.is_zero() && f.content().abs().is_one()
}

/// Fixed-seed proptest configuration.
pub fn seeded(cases: u32, seed: u64) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Default::default()
    }
}
