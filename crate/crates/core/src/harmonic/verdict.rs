use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{
    grid_min_scan, invert_l1_with, is_lopsided, CertifiedInverse, HarmonicError, InversionBudget,
    TorusPoint,
};
use crate::groupring::GroupRingElement;
use crate::poly::{UnitCircleAnalysis, UnitRoot, ZPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExpansivenessStatus {
    Expansive,
    NotExpansive,
    Unknown,
}

impl ExpansivenessStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ExpansivenessStatus::Expansive => "expansive",
            ExpansivenessStatus::NotExpansive => "not_expansive",
            ExpansivenessStatus::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExpansivenessCertificate {
    /// `‖1 − w̃ f‖_1 = residual_l1 < 1`, so `f` is invertible in l^1.
    InverseResidual(Box<CertifiedInverse>),
    /// Rank one: `factor` is the reciprocal gcd of `f`; it has an exactly
    /// located root of modulus one, at angle `theta` (interval, in turns).
    UnitZeroWitness {
        factor: GroupRingElement,
        root_modulus_interval: (f64, f64),
        theta: (f64, f64),
    },
    /// `F` vanishes exactly at a rational point of the torus.
    RationalZero { theta: Vec<BigRational> },
    /// Smallest `|F|` observed; no decision.
    NumericWitness { theta: TorusPoint, abs_value: f64 },
}

impl ExpansivenessCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            ExpansivenessCertificate::InverseResidual(_) => "inverse_residual",
            ExpansivenessCertificate::UnitZeroWitness { .. } => "unit_zero_witness",
            ExpansivenessCertificate::RationalZero { .. } => "rational_zero",
            ExpansivenessCertificate::NumericWitness { .. } => "numeric_witness",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansivenessVerdict {
    pub status: ExpansivenessStatus,
    pub certificate: ExpansivenessCertificate,
    pub lopsided: bool,
}

impl ExpansivenessVerdict {
    pub fn is_expansive(&self) -> bool {
        self.status == ExpansivenessStatus::Expansive
    }

    pub fn inverse(&self) -> Option<&CertifiedInverse> {
        match &self.certificate {
            ExpansivenessCertificate::InverseResidual(c) => Some(c),
            _ => None,
        }
    }
}

pub fn decide_expansive(f: &GroupRingElement, tol: f64) -> ExpansivenessVerdict {
    decide_expansive_with(f, tol, &InversionBudget::default())
}

/// Three-valued expansiveness decision.
///
/// `Expansive` always carries a residual certificate. `NotExpansive` needs an
/// exact zero of `F` on the torus: a unit-circle root for rank one, a zero at a
/// point of `{0, 1/4, 1/2, 3/4}^d` otherwise. Everything else is `Unknown`.
pub fn decide_expansive_with(
    f: &GroupRingElement,
    tol: f64,
    budget: &InversionBudget,
) -> ExpansivenessVerdict {
    let d = f.rank();
    if f.is_zero() {
        return ExpansivenessVerdict {
            status: ExpansivenessStatus::NotExpansive,
            certificate: ExpansivenessCertificate::RationalZero {
                theta: vec![BigRational::zero(); d],
            },
            lopsided: false,
        };
    }
    let lopsided = is_lopsided(f).map(|(b, _)| b).unwrap_or(false);
    let not_expansive = |certificate| ExpansivenessVerdict {
        status: ExpansivenessStatus::NotExpansive,
        certificate,
        lopsided,
    };
    if d == 1 {
        let (_, p) = ZPoly::from_element(f).expect("rank one");
        let analysis = UnitCircleAnalysis::new(&p);
        if let Some(root) = analysis.witness() {
            let theta = match root {
                UnitRoot::One => (0.0, 0.0),
                UnitRoot::MinusOne => (0.5, 0.5),
                UnitRoot::Pair {
                    theta_lo, theta_hi, ..
                } => (theta_lo, theta_hi),
            };
            return not_expansive(ExpansivenessCertificate::UnitZeroWitness {
                factor: analysis.reciprocal_gcd.to_element(0),
                root_modulus_interval: (1.0, 1.0),
                theta,
            });
        }
    } else if let Some(theta) = quarter_point_zero(f) {
        return not_expansive(ExpansivenessCertificate::RationalZero { theta });
    }

    let witness = match invert_l1_with(f, tol, budget) {
        Ok(cert) => {
            return ExpansivenessVerdict {
                status: ExpansivenessStatus::Expansive,
                certificate: ExpansivenessCertificate::InverseResidual(Box::new(cert)),
                lopsided,
            }
        }
        // A residual below one proves invertibility even if the tail is wider than asked.
        Err(HarmonicError::BudgetExceeded { best: Some(cert), .. }) => {
            return ExpansivenessVerdict {
                status: ExpansivenessStatus::Expansive,
                certificate: ExpansivenessCertificate::InverseResidual(cert),
                lopsided,
            }
        }
        Err(HarmonicError::NotInvertibleEvidence { theta, abs_value }) => {
            ExpansivenessCertificate::NumericWitness { theta, abs_value }
        }
        Err(_) => {
            let res = if d <= 2 { 256 } else { 16 };
            match grid_min_scan(f, res.max(2)) {
                Ok(s) => ExpansivenessCertificate::NumericWitness {
                    theta: s.argmin,
                    abs_value: s.min_abs,
                },
                Err(_) => ExpansivenessCertificate::NumericWitness {
                    theta: TorusPoint::origin(d),
                    abs_value: f64::NAN,
                },
            }
        }
    };
    ExpansivenessVerdict {
        status: ExpansivenessStatus::Unknown,
        certificate: witness,
        lopsided,
    }
}

/// Exact evaluation at `θ ∈ {0, 1/4, 1/2, 3/4}^d`, where every character value
/// is a power of `i`, so `F(θ)` is a Gaussian integer.
fn quarter_point_zero(f: &GroupRingElement) -> Option<Vec<BigRational>> {
    let d = f.rank();
    if d > 8 {
        return None;
    }
    let points = 4usize.pow(d as u32);
    let terms: Vec<(Vec<i64>, &BigInt)> = f.terms().map(|(e, c)| (e.coords().to_vec(), c)).collect();
    for p in 0..points {
        let mut k = vec![0i64; d];
        let mut rem = p;
        for i in (0..d).rev() {
            k[i] = (rem % 4) as i64;
            rem /= 4;
        }
        let mut re = BigInt::zero();
        let mut im = BigInt::zero();
        for (e, c) in &terms {
            let q: i64 = e.iter().zip(&k).map(|(n, ki)| (n.rem_euclid(4)) * ki).sum::<i64>() % 4;
            match q {
                0 => re += *c,
                1 => im += *c,
                2 => re -= *c,
                _ => im -= *c,
            }
        }
        if re.is_zero() && im.is_zero() {
            return Some(
                k.iter()
                    .map(|&ki| BigRational::new(BigInt::from(ki), BigInt::from(4)))
                    .collect(),
            );
        }
    }
    None
}
