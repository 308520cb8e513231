use num_traits::One;

use super::{is_connected, FixedPointSpec, StructureError};
use crate::groupring::{GroupRingElement, GroupRingError};
use crate::harmonic::{
    decide_expansive_with, ExpansivenessStatus, ExpansivenessVerdict, InversionBudget,
};
use crate::poly::MPoly;

pub const DEFAULT_GCD_DEGREE: usize = 40;

/// The affine map `τ(x) = r·x + t`.
#[derive(Clone, Debug, PartialEq)]
pub struct EndomorphismSpec {
    pub r: GroupRingElement,
    pub t: FixedPointSpec,
}

impl EndomorphismSpec {
    pub fn linear(r: GroupRingElement) -> Self {
        EndomorphismSpec {
            r,
            t: FixedPointSpec::Zero,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GoeCertificate {
    /// `gcd(f, r)` is a monomial (normalized to 1).
    Coprime { gcd: GroupRingElement },
    /// A common factor of positive degree; `cofactor = f / g` up to a monomial.
    CommonFactor {
        g: GroupRingElement,
        cofactor: GroupRingElement,
    },
}

impl GoeCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            GoeCertificate::Coprime { .. } => "coprime",
            GoeCertificate::CommonFactor { .. } => "common_factor",
        }
    }

    pub fn poly(&self) -> &GroupRingElement {
        match self {
            GoeCertificate::Coprime { gcd } => gcd,
            GoeCertificate::CommonFactor { g, .. } => g,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoeBudget {
    pub inversion: InversionBudget,
    pub gcd_degree: usize,
}

impl Default for GoeBudget {
    fn default() -> Self {
        GoeBudget {
            inversion: InversionBudget::default(),
            gcd_degree: DEFAULT_GCD_DEGREE,
        }
    }
}

/// Decides injectivity of multiplication by `r` on `Z[Z^d] / (f)` for
/// primitive `f`. The module is torsion free, so it suffices to test whether
/// `r` is a zero divisor mod `f` over Q, i.e. whether `gcd(f, r)` is more than
/// a monomial.
pub fn mult_injective_mod(
    f: &GroupRingElement,
    r: &GroupRingElement,
) -> Result<(bool, GoeCertificate), StructureError> {
    mult_injective_mod_with(f, r, DEFAULT_GCD_DEGREE)
}

pub fn mult_injective_mod_with(
    f: &GroupRingElement,
    r: &GroupRingElement,
    degree_limit: usize,
) -> Result<(bool, GoeCertificate), StructureError> {
    if f.rank() != r.rank() {
        return Err(GroupRingError::RankMismatch {
            left: f.rank(),
            right: r.rank(),
        }
        .into());
    }
    if f.is_zero() {
        return Err(GroupRingError::ZeroElement.into());
    }
    if !f.content().is_one() {
        return Err(StructureError::PreconditionFailed("f must be primitive"));
    }
    let d = f.rank();
    let (fm, _) = f.monomial_normalize();
    let one = GroupRingElement::one(d);
    if fm.is_unit() {
        return Ok((true, GoeCertificate::Coprime { gcd: one }));
    }
    if r.is_zero() {
        return Ok((
            false,
            GoeCertificate::CommonFactor {
                g: fm,
                cofactor: one,
            },
        ));
    }
    let (rm, _) = r.monomial_normalize();
    let pf = MPoly::from_element(&fm);
    let pr = MPoly::from_element(&rm);
    let degree = pf.total_degree().max(pr.total_degree());
    if d >= 2 && degree > degree_limit {
        return Err(StructureError::BudgetExceeded {
            degree,
            limit: degree_limit,
        });
    }
    let g = pf.gcd(&pr);
    if g.as_constant().is_some() {
        return Ok((true, GoeCertificate::Coprime { gcd: one }));
    }
    let cofactor = pf.div_exact(&g).expect("gcd divides f").to_element(d);
    Ok((
        false,
        GoeCertificate::CommonFactor {
            g: g.to_element(d),
            cofactor,
        },
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    Expansive,
    Connected,
}

impl Hypothesis {
    pub fn as_str(self) -> &'static str {
        match self {
            Hypothesis::Expansive => "expansive",
            Hypothesis::Connected => "connected",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RefusalKind {
    /// The hypothesis could not be established either way.
    HypothesisNotCertified,
    /// The hypothesis is certified false.
    HypothesisFailed,
}

/// No verdict: a hypothesis of the theorem is missing.
#[derive(Clone, Debug, PartialEq)]
pub struct Refusal {
    pub kind: RefusalKind,
    pub hypothesis: Hypothesis,
    pub note: &'static str,
    pub expansiveness: ExpansivenessVerdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GoEVerdict {
    pub surjective: bool,
    pub pre_injective: bool,
    pub certificate: GoeCertificate,
    pub expansiveness: ExpansivenessVerdict,
    pub connected: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GoeOutcome {
    Verdict(GoEVerdict),
    Refused(Refusal),
}

impl GoeOutcome {
    pub fn verdict(&self) -> Option<&GoEVerdict> {
        match self {
            GoeOutcome::Verdict(v) => Some(v),
            GoeOutcome::Refused(_) => None,
        }
    }
}

const NOTE_NOT_EXPANSIVE: &str = "without expansiveness the equivalence fails: doubling on the full shift over T (f = 0, r = 2) is surjective but not pre-injective, since y = 1/2 at the origin and 0 elsewhere is sent to 0";
const NOTE_UNKNOWN: &str = "expansiveness could not be certified within the inversion budget; no verdict is given without it";
const NOTE_DISCONNECTED: &str = "f is not primitive, so X_f is disconnected and the surjectivity/pre-injectivity equivalence is not available";

/// Surjectivity and pre-injectivity of `τ(x) = r·x + t` on `X_f`, valid when
/// `f` is certified expansive and primitive. The translation `t` does not
/// enter the verdict.
pub fn decide_goe(
    f: &GroupRingElement,
    endo: &EndomorphismSpec,
    tol: f64,
) -> Result<GoeOutcome, StructureError> {
    decide_goe_with(f, endo, tol, &GoeBudget::default())
}

pub fn decide_goe_with(
    f: &GroupRingElement,
    endo: &EndomorphismSpec,
    tol: f64,
    budget: &GoeBudget,
) -> Result<GoeOutcome, StructureError> {
    if f.rank() != endo.r.rank() {
        return Err(GroupRingError::RankMismatch {
            left: f.rank(),
            right: endo.r.rank(),
        }
        .into());
    }
    let expansiveness = decide_expansive_with(f, tol, &budget.inversion);
    let refuse = |kind, hypothesis, note, expansiveness| {
        Ok(GoeOutcome::Refused(Refusal {
            kind,
            hypothesis,
            note,
            expansiveness,
        }))
    };
    match expansiveness.status {
        ExpansivenessStatus::NotExpansive => {
            return refuse(
                RefusalKind::HypothesisFailed,
                Hypothesis::Expansive,
                NOTE_NOT_EXPANSIVE,
                expansiveness,
            )
        }
        ExpansivenessStatus::Unknown => {
            return refuse(
                RefusalKind::HypothesisNotCertified,
                Hypothesis::Expansive,
                NOTE_UNKNOWN,
                expansiveness,
            )
        }
        ExpansivenessStatus::Expansive => {}
    }
    if !is_connected(f) {
        return refuse(
            RefusalKind::HypothesisFailed,
            Hypothesis::Connected,
            NOTE_DISCONNECTED,
            expansiveness,
        );
    }
    let (injective, certificate) = mult_injective_mod_with(f, &endo.r, budget.gcd_degree)?;
    Ok(GoeOutcome::Verdict(GoEVerdict {
        surjective: injective,
        pre_injective: injective,
        certificate,
        expansiveness,
        connected: true,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(low: i64, c: &[i64]) -> GroupRingElement {
        GroupRingElement::from_univariate(low, c)
    }

    #[test]
    fn injectivity_examples() {
        let cat = uni(0, &[-1, -1, 1]);
        assert!(mult_injective_mod(&cat, &uni(0, &[-1, 1])).unwrap().0);
        let (inj, cert) = mult_injective_mod(&cat, &cat).unwrap();
        assert!(!inj);
        assert_eq!(cert.poly(), &cat);
        let f = &uni(0, &[-2, 1]) * &uni(0, &[-3, 1]);
        let (inj, cert) = mult_injective_mod(&f, &uni(0, &[-2, 1])).unwrap();
        assert!(!inj);
        assert_eq!(cert.poly(), &uni(0, &[-2, 1]));
    }

    #[test]
    fn non_primitive_refused() {
        let f = uni(0, &[2, 2]);
        assert!(matches!(
            mult_injective_mod(&f, &uni(0, &[1])),
            Err(StructureError::PreconditionFailed(_))
        ));
    }

    #[test]
    fn goe_examples() {
        let cat = uni(0, &[-1, -1, 1]);
        let v = decide_goe(&cat, &EndomorphismSpec::linear(uni(0, &[-1, 1])), 1e-9).unwrap();
        let v = v.verdict().unwrap();
        assert!(v.surjective && v.pre_injective);
        let v = decide_goe(&cat, &EndomorphismSpec::linear(cat.clone()), 1e-9).unwrap();
        let v = v.verdict().unwrap();
        assert!(!v.surjective && !v.pre_injective);
        let out = decide_goe(
            &GroupRingElement::zero(1),
            &EndomorphismSpec::linear(GroupRingElement::constant(1, 2)),
            1e-9,
        )
        .unwrap();
        match out {
            GoeOutcome::Refused(r) => {
                assert_eq!(r.hypothesis, Hypothesis::Expansive);
                assert_eq!(r.kind, RefusalKind::HypothesisFailed);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degree_budget() {
        let f = crate::groupring::GroupRingElement::from_terms(
            2,
            [
                (crate::ExponentVector::new(vec![0, 0]), 3),
                (crate::ExponentVector::new(vec![41, 0]), 1),
            ],
        )
        .unwrap();
        assert!(matches!(
            mult_injective_mod(&f, &f),
            Err(StructureError::BudgetExceeded { .. })
        ));
    }
}
