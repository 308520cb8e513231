use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{float::FloatCore, Signed, ToPrimitive, Zero};
use rustfft::FftDirection;

use super::fft::fft_nd;
use super::{HarmonicError, TorusPoint};
use crate::groupring::{ExponentVector, GroupRingElement, GroupRingError, RealSeries};
use crate::rounding::{div_up, mul_up, sub_down, sum_up, Interval};

/// Resource caps for [`invert_l1_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InversionBudget {
    /// Largest grid side `N`; `None` picks the default for the rank.
    pub max_grid: Option<usize>,
    pub max_support: usize,
}

impl Default for InversionBudget {
    fn default() -> Self {
        InversionBudget {
            max_grid: None,
            max_support: 1_000_000,
        }
    }
}

impl InversionBudget {
    pub fn grid_limit(&self, rank: usize) -> usize {
        if let Some(n) = self.max_grid {
            return n;
        }
        match rank {
            1 => 4096,
            2 => 256,
            d => {
                let mut n = 2usize;
                while (2 * n).checked_pow(d as u32).is_some_and(|t| t <= 1 << 18) {
                    n *= 2;
                }
                n
            }
        }
    }
}

/// An approximate inverse `w̃` with a verified residual `ρ = ‖1 − w̃ f‖_1 < 1`.
///
/// `w.tail_bound()` is `‖w̃‖_1 ρ / (1 − ρ)`, which bounds `‖f^{-1} − w̃‖_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedInverse {
    pub w: RealSeries,
    pub residual_l1: f64,
    pub grid: usize,
}

impl CertifiedInverse {
    pub fn tail_bound(&self) -> f64 {
        self.w.tail_bound()
    }
}

/// Certified l^1 inverse of `f` with the default budget.
pub fn invert_l1(f: &GroupRingElement, tol: f64) -> Result<CertifiedInverse, HarmonicError> {
    invert_l1_with(f, tol, &InversionBudget::default())
}

pub fn invert_l1_with(
    f: &GroupRingElement,
    tol: f64,
    budget: &InversionBudget,
) -> Result<CertifiedInverse, HarmonicError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(HarmonicError::InvalidTolerance);
    }
    if f.is_zero() {
        return Err(GroupRingError::ZeroElement.into());
    }
    let d = f.rank();
    let f_l1 = f.l1_exact().to_f64().unwrap_or(f64::INFINITY);
    let limit = budget.grid_limit(d);
    let mut n = 64.min(limit).max(2);
    let mut best: Option<CertifiedInverse> = None;
    loop {
        let attempt = attempt(f, f_l1, n, tol, budget)?;
        if let Some(cert) = attempt {
            if cert.tail_bound() <= tol {
                return Ok(cert);
            }
            if best.as_ref().is_none_or(|b| cert.tail_bound() < b.tail_bound()) {
                best = Some(cert);
            }
        }
        if 2 * n > limit {
            return Err(HarmonicError::BudgetExceeded {
                grid: n,
                best: best.map(Box::new),
            });
        }
        n *= 2;
    }
}

fn attempt(
    f: &GroupRingElement,
    f_l1: f64,
    n: usize,
    tol: f64,
    budget: &InversionBudget,
) -> Result<Option<CertifiedInverse>, HarmonicError> {
    let d = f.rank();
    let total = n.pow(d as u32);
    let ni = n as i64;
    let index = |coords: &[i64]| -> usize {
        coords
            .iter()
            .fold(0usize, |acc, &c| acc * n + c.rem_euclid(ni) as usize)
    };
    let mut grid = vec![Complex64::new(0.0, 0.0); total];
    for (e, c) in f.terms() {
        grid[index(e.coords())] += c.to_f64().unwrap_or(f64::INFINITY);
    }
    fft_nd(&mut grid, n, d, FftDirection::Inverse);

    let (mut min_abs, mut argmin) = (f64::INFINITY, 0usize);
    for (i, v) in grid.iter().enumerate() {
        let a = v.norm();
        if a < min_abs {
            min_abs = a;
            argmin = i;
        }
    }
    if min_abs < 1e-10 * f_l1 {
        let mut coords = vec![0.0; d];
        let mut rem = argmin;
        for i in (0..d).rev() {
            coords[i] = (rem % n) as f64 / n as f64;
            rem /= n;
        }
        return Err(HarmonicError::NotInvertibleEvidence {
            theta: TorusPoint::new(coords),
            abs_value: min_abs,
        });
    }

    // Winding of F along each axis through the origin locates the mass of the inverse.
    let mut center = vec![0i64; d];
    for (axis, c) in center.iter_mut().enumerate() {
        let stride = n.pow((d - 1 - axis) as u32);
        let mut turn = 0.0;
        for k in 0..n {
            let a = grid[k * stride];
            let b = grid[((k + 1) % n) * stride];
            turn += (b / a).arg();
        }
        *c = -(turn / (2.0 * PI)).round() as i64;
    }

    for v in grid.iter_mut() {
        *v = 1.0 / *v;
    }
    fft_nd(&mut grid, n, d, FftDirection::Forward);
    let scale = 1.0 / total as f64;

    let half = ni / 2;
    let mut coeffs: Vec<(ExponentVector, f64)> = Vec::with_capacity(total);
    let mut coords = vec![0i64; d];
    for (i, v) in grid.iter().enumerate() {
        let mut rem = i;
        for a in (0..d).rev() {
            let m = (rem % n) as i64;
            rem /= n;
            // representative of m mod n in [c - n/2, c + n/2)
            let lo = center[a] - half;
            coords[a] = lo + (m - lo).rem_euclid(ni);
        }
        let x = v.re * scale;
        if x != 0.0 {
            coeffs.push((ExponentVector::new(coords.clone()), x));
        }
    }
    // Drop the smallest terms while their total mass stays negligible.
    coeffs.sort_by(|a, b| a.1.abs().total_cmp(&b.1.abs()));
    let allowance = tol * 1e-3 / f_l1;
    let mut dropped = 0.0;
    let mut cut = 0;
    for (_, x) in &coeffs {
        let next = dropped + x.abs();
        if next > allowance {
            break;
        }
        dropped = next;
        cut += 1;
    }
    let kept = &coeffs[cut..];
    if kept.len() > budget.max_support {
        return Ok(None);
    }
    let w = RealSeries::new(d, kept.iter().cloned(), 0.0)?;
    let rho = residual_upper(&w, f);
    if !(rho < 1.0) {
        return Ok(None);
    }
    let tail = div_up(mul_up(w.stored_l1_up(), rho), sub_down(1.0, rho));
    Ok(Some(CertifiedInverse {
        w: w.with_tail(tail),
        residual_l1: rho,
        grid: n,
    }))
}

/// Upper bound on `‖1 − w f‖_1` over the stored terms of `w`, accumulated
/// with outward rounding on the dense box containing the product's support.
pub(crate) fn residual_upper(w: &RealSeries, f: &GroupRingElement) -> f64 {
    let d = f.rank();
    let (flo, fhi) = f.exponent_bounds().expect("nonzero");
    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    if w.is_empty() {
        return 1.0;
    }
    let mut wlo = vec![i64::MAX; d];
    let mut whi = vec![i64::MIN; d];
    for (e, _) in w.terms() {
        for i in 0..d {
            wlo[i] = wlo[i].min(e.coords()[i]);
            whi[i] = whi[i].max(e.coords()[i]);
        }
    }
    for i in 0..d {
        lo[i] = (wlo[i] + flo[i]).min(0);
        hi[i] = (whi[i] + fhi[i]).max(0);
    }
    let ext: Vec<usize> = (0..d).map(|i| (hi[i] - lo[i] + 1) as usize).collect();
    let size: usize = ext.iter().product();
    let idx = |c: &[i64]| -> usize {
        let mut k = 0usize;
        for i in 0..d {
            k = k * ext[i] + (c[i] - lo[i]) as usize;
        }
        k
    };
    let mut acc = vec![Interval::ZERO; size];
    let fterms: Vec<(Vec<i64>, Interval)> = f
        .terms()
        .map(|(e, c)| (e.coords().to_vec(), Interval::from_bigint(c)))
        .collect();
    let mut sum_coord = vec![0i64; d];
    for (e, x) in w.terms() {
        for (fe, fc) in &fterms {
            for i in 0..d {
                sum_coord[i] = e.coords()[i] + fe[i];
            }
            let k = idx(&sum_coord);
            acc[k] = acc[k].add(fc.mul_point(x));
        }
    }
    let origin = idx(&vec![0i64; d]);
    acc[origin] = Interval::point(1.0).sub(acc[origin]);
    sum_up(acc.iter().map(|iv| iv.mag()))
}

fn dyadic(x: f64) -> (BigInt, i64) {
    let (mantissa, exp, sign) = FloatCore::integer_decode(x);
    let m = BigInt::from(mantissa) * BigInt::from(sign);
    (m, exp as i64)
}

/// Exact `‖1 − w f‖_1` over the stored coefficients of `w`, read as the
/// dyadic rationals they are.
pub fn audit_residual_exact(w: &RealSeries, f: &GroupRingElement) -> BigRational {
    let parts: Vec<(ExponentVector, BigInt, i64)> = w
        .terms()
        .map(|(e, x)| {
            let (m, ex) = dyadic(x);
            (e.clone(), m, ex)
        })
        .collect();
    let min_exp = parts.iter().map(|p| p.2).min().unwrap_or(0).min(0);
    let shift = (-min_exp) as u32;
    let one_scaled = BigInt::from(1) << shift;
    let mut acc: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
    for (e, m, ex) in &parts {
        let scaled = m << ((ex - min_exp) as u32);
        for (fe, fc) in f.terms() {
            *acc.entry(e + fe).or_insert_with(BigInt::zero) += &scaled * fc;
        }
    }
    let zero = ExponentVector::zero(f.rank());
    let entry = acc.entry(zero).or_insert_with(BigInt::zero);
    *entry = &one_scaled - &*entry;
    let total: BigInt = acc.values().map(|v| v.abs()).sum();
    BigRational::new(total, one_scaled)
}
