use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::ZPoly;

const EPS: f64 = f64::EPSILON / 2.0;

/// A closed disk in C; by construction it contains a root of the polynomial it
/// was computed for. When `isolated` holds it contains exactly one root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootDisk {
    pub center: Complex64,
    pub radius: f64,
    pub isolated: bool,
}

impl RootDisk {
    /// Enclosure `[lo, hi]` of the modulus of the contained root.
    pub fn modulus_interval(&self) -> (f64, f64) {
        let m = self.center.norm();
        let slack = 2.0 * EPS * m;
        ((m - self.radius - slack).max(0.0), m + self.radius + slack)
    }
}

fn eval(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Simultaneous Aberth–Ehrlich iteration for all roots of a squarefree
/// polynomial of degree >= 1.
fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lc).collect();
    if n == 1 {
        return vec![Complex64::new(-monic[0], 0.0)];
    }
    let r = monic[0].abs().powf(1.0 / n as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.7;
            Complex64::from_polar(r, a)
        })
        .collect();
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| 1.0 / (z[k] - z[j]))
                .sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / z[k].norm().max(1e-300));
            }
        }
        if max_step < 4.0 * EPS {
            break;
        }
    }
    z
}

/// Certified inclusion disks for the roots of a squarefree `p` of degree >= 1.
///
/// Radii are `n |W_i|` with `W_i = p(z_i) / (lc * prod_{j != i} (z_i - z_j))`
/// (Smith's bound); evaluation and conversion errors are added to `|p(z_i)|`.
pub fn root_disks(p: &ZPoly) -> Vec<RootDisk> {
    let n = p.deg();
    assert!(n >= 1);
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap()).collect();
    let approx = aberth(&coeffs);
    let lc = coeffs[n].abs();
    let mut radii = Vec::with_capacity(n);
    for (i, &z) in approx.iter().enumerate() {
        let (v, _) = eval(&coeffs, z);
        let zm = z.norm();
        let mut s = 0.0;
        let mut pow = 1.0;
        for c in &coeffs {
            s += c.abs() * pow;
            pow *= zm;
        }
        let err = (8.0 * n as f64 + 8.0) * EPS * s * (1.0 + 1e-10);
        let num = v.norm() + err;
        let mut den = lc;
        for (j, &w) in approx.iter().enumerate() {
            if j != i {
                den *= (z - w).norm();
            }
        }
        den *= 1.0 - (4.0 * n as f64 + 4.0) * EPS;
        let r = if den > 0.0 {
            n as f64 * num / den * (1.0 + 8.0 * EPS)
        } else {
            f64::INFINITY
        };
        radii.push(r);
    }
    let mut disks: Vec<RootDisk> = approx
        .iter()
        .zip(&radii)
        .map(|(&center, &radius)| RootDisk {
            center,
            radius,
            isolated: radius.is_finite(),
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let d = (disks[i].center - disks[j].center).norm();
                if d <= radii[i] + radii[j] {
                    disks[i].isolated = false;
                }
            }
        }
    }
    disks
}
