//! Fourier side of the group ring: evaluation of the transform on the torus,
//! grid scans, certified inversion in l^1 and expansiveness verdicts.

mod fft;
mod invert;
mod verdict;

pub use invert::{audit_residual_exact, invert_l1, invert_l1_with, CertifiedInverse, InversionBudget};
pub use verdict::{
    decide_expansive, decide_expansive_with, ExpansivenessCertificate, ExpansivenessStatus,
    ExpansivenessVerdict,
};

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use thiserror::Error;

use crate::groupring::{ExponentVector, GroupRingElement, GroupRingError};

const EPS: f64 = f64::EPSILON / 2.0;

/// Largest number of grid points a scan will visit.
pub const MAX_SCAN_POINTS: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum HarmonicError {
    #[error("not invertible: |F| = {abs_value:e} at {theta}")]
    NotInvertibleEvidence { theta: TorusPoint, abs_value: f64 },
    #[error("inversion budget exhausted at grid {grid}")]
    BudgetExceeded {
        grid: usize,
        best: Option<Box<CertifiedInverse>>,
    },
    #[error("grid of {resolution}^{rank} points exceeds the scan limit")]
    ResolutionOverflow { resolution: usize, rank: usize },
    #[error("tolerance must be positive and finite")]
    InvalidTolerance,
    #[error(transparent)]
    GroupRing(#[from] GroupRingError),
}

/// A point of the torus `(R/Z)^d`, coordinates reduced into `[0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint {
    coords: Vec<f64>,
}

impl TorusPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        let coords = coords
            .into_iter()
            .map(|t| {
                let r = t.rem_euclid(1.0);
                if r >= 1.0 {
                    0.0
                } else {
                    r
                }
            })
            .collect();
        TorusPoint { coords }
    }

    pub fn origin(rank: usize) -> Self {
        TorusPoint {
            coords: vec![0.0; rank],
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }
}

impl std::fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `F(θ) = Σ f_n e^{2πi n·θ}` together with a bound on the rounding error.
pub fn transform_eval(
    f: &GroupRingElement,
    theta: &TorusPoint,
) -> Result<(Complex64, f64), GroupRingError> {
    if f.rank() != theta.rank() {
        return Err(GroupRingError::RankMismatch {
            left: f.rank(),
            right: theta.rank(),
        });
    }
    let d = f.rank() as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut mass = 0.0;
    for (e, c) in f.terms() {
        let c = c.to_f64().unwrap_or(f64::INFINITY);
        let mut t = 0.0;
        let mut t_abs = 0.0;
        for (n, th) in e.coords().iter().zip(theta.coords()) {
            let p = (*n as f64) * th;
            t += p;
            t_abs += p.abs();
        }
        let t_red = t - t.round();
        let z = Complex64::from_polar(1.0, 2.0 * PI * t_red);
        sum += z * c;
        // phase error from forming n·θ, then the libm and product errors
        err += c.abs() * (2.0 * PI * (d + 2.0) * EPS * (t_abs + 1.0) + 8.0 * EPS);
        mass += c.abs();
    }
    let k = f.support_len() as f64;
    err += 2.0 * k * EPS * mass;
    Ok((sum, err * (1.0 + 1e-12)))
}

/// Whether one coefficient strictly dominates the l^1 mass of all others.
pub fn is_lopsided(
    f: &GroupRingElement,
) -> Result<(bool, Option<ExponentVector>), GroupRingError> {
    if f.is_zero() {
        return Err(GroupRingError::ZeroElement);
    }
    let total = f.l1_exact();
    let (e, c) = f
        .terms()
        .max_by(|a, b| a.1.abs().cmp(&b.1.abs()).then_with(|| b.0.cmp(a.0)))
        .expect("nonzero");
    let c = c.abs();
    if c > (&total - &c) {
        Ok((true, Some(e.clone())))
    } else {
        Ok((false, None))
    }
}

/// Outcome of a uniform grid scan of `|F|`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridScan {
    pub min_abs: f64,
    pub argmin: TorusPoint,
    pub lipschitz_bound: f64,
    pub resolution: usize,
    /// `min_abs` exceeds the largest possible variation of `F` between a
    /// point of the torus and its nearest grid point, so `F` has no zero.
    pub no_zero_certified: bool,
}

/// `2π Σ |f_n| |n|_1`, a bound on the variation of `F` per unit of `‖θ‖_∞`.
pub fn lipschitz_bound(f: &GroupRingElement) -> f64 {
    let s: f64 = f
        .terms()
        .map(|(e, c)| c.abs().to_f64().unwrap_or(f64::INFINITY) * e.l1() as f64)
        .sum();
    2.0 * PI * s * (1.0 + 1e-12)
}

/// Minimum of `|F|` over the grid `{k/N}^d`, evaluated in parallel with a
/// deterministic reduction (smallest value, then smallest index).
pub fn grid_min_scan(f: &GroupRingElement, resolution: usize) -> Result<GridScan, HarmonicError> {
    assert!(resolution >= 2, "resolution must be at least 2");
    let d = f.rank();
    let total = (0..d).try_fold(1usize, |acc, _| acc.checked_mul(resolution));
    let total = match total {
        Some(t) if t <= MAX_SCAN_POINTS => t,
        _ => return Err(HarmonicError::ResolutionOverflow { resolution, rank: d }),
    };
    let n = resolution as i64;
    let table: Vec<Complex64> = (0..resolution)
        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / resolution as f64))
        .collect();
    let terms: Vec<(Vec<i64>, f64)> = f
        .terms()
        .map(|(e, c)| (e.coords().to_vec(), c.to_f64().unwrap_or(f64::INFINITY)))
        .collect();
    let mass: f64 = terms.iter().map(|(_, c)| c.abs()).sum();
    let eval_at = |idx: usize| -> f64 {
        let mut k = vec![0i64; d];
        let mut rem = idx;
        for i in (0..d).rev() {
            k[i] = (rem % resolution) as i64;
            rem /= resolution;
        }
        let mut s = Complex64::new(0.0, 0.0);
        for (e, c) in &terms {
            let mut z = Complex64::new(*c, 0.0);
            for i in 0..d {
                let j = (e[i].rem_euclid(n) * k[i]).rem_euclid(n) as usize;
                z *= table[j];
            }
            s += z;
        }
        s.norm()
    };
    let (min_abs, idx) = (0..total)
        .into_par_iter()
        .map(|i| (eval_at(i), i))
        .reduce(
            || (f64::INFINITY, usize::MAX),
            |a, b| {
                if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    let mut coords = vec![0.0; d];
    let mut rem = idx;
    for i in (0..d).rev() {
        coords[i] = (rem % resolution) as f64 / resolution as f64;
        rem /= resolution;
    }
    let lip = lipschitz_bound(f);
    // table entries and products carry a few ulps each
    let eval_err = mass * (4.0 * (d as f64 + 2.0) + 2.0 * terms.len() as f64) * EPS;
    let no_zero = min_abs - eval_err > lip / (2.0 * resolution as f64);
    Ok(GridScan {
        min_abs,
        argmin: TorusPoint::new(coords),
        lipschitz_bound: lip,
        resolution,
        no_zero_certified: no_zero,
    })
}
