use num_complex::Complex64;

use super::StructureError;
use crate::groupring::{GroupRingElement, GroupRingError};
use crate::poly::{root_disks, UnitCircleAnalysis, ZPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModulusClass {
    Inside,
    OnCircle,
    Outside,
    Unknown,
}

impl ModulusClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ModulusClass::Inside => "inside",
            ModulusClass::OnCircle => "on_circle",
            ModulusClass::Outside => "outside",
            ModulusClass::Unknown => "unknown",
        }
    }
}

/// A root enclosed in the disk `|z - center| <= radius`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootReport {
    pub center: Complex64,
    pub radius: f64,
    /// Enclosure of `|z|`; exactly `(1, 1)` for roots proven to lie on the circle.
    pub modulus: (f64, f64),
    pub class: ModulusClass,
    pub multiplicity: usize,
}

/// Distinct roots of a rank-one `f` with their position relative to the unit
/// circle, sorted by real part, then imaginary part.
///
/// Inside/Outside come from disjoint inclusion disks. OnCircle is assigned only
/// when the disks meeting the circle match the exact count of unit-circle roots
/// from the reciprocal gcd; otherwise those roots are Unknown.
pub fn root_split_report(f: &GroupRingElement) -> Result<Vec<RootReport>, StructureError> {
    if f.rank() != 1 {
        return Err(StructureError::NotApplicable);
    }
    if f.is_zero() {
        return Err(GroupRingError::ZeroElement.into());
    }
    let (_, p) = ZPoly::from_element(f).expect("rank one");
    let mut out = Vec::new();
    for (factor, multiplicity) in p.squarefree_decomposition() {
        if factor.deg() == 0 {
            continue;
        }
        let disks = root_disks(&factor);
        let unit_count = UnitCircleAnalysis::new(&factor).distinct_unit_roots();
        let mut reports: Vec<RootReport> = disks
            .iter()
            .map(|d| {
                let modulus = d.modulus_interval();
                let class = if !d.isolated {
                    ModulusClass::Unknown
                } else if modulus.1 < 1.0 {
                    ModulusClass::Inside
                } else if modulus.0 > 1.0 {
                    ModulusClass::Outside
                } else {
                    ModulusClass::OnCircle
                };
                RootReport {
                    center: d.center,
                    radius: d.radius,
                    modulus,
                    class,
                    multiplicity,
                }
            })
            .collect();
        let straddling = reports
            .iter()
            .filter(|r| r.class == ModulusClass::OnCircle)
            .count();
        let all_isolated = disks.iter().all(|d| d.isolated);
        for r in reports.iter_mut() {
            if r.class == ModulusClass::OnCircle {
                if all_isolated && straddling == unit_count {
                    r.modulus = (1.0, 1.0);
                } else {
                    r.class = ModulusClass::Unknown;
                }
            }
        }
        out.extend(reports);
    }
    out.sort_by(|a, b| {
        a.center
            .re
            .total_cmp(&b.center.re)
            .then(a.center.im.total_cmp(&b.center.im))
    });
    Ok(out)
}
