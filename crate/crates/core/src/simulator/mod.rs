//! Finite windows onto configurations `x: Z^d -> T` and the operations of the
//! subshift `X_f` on them.
//!
//! An operator with finite support `S` maps a window on the box `[lo, hi]` to
//! a window on the interior `[lo - min S, hi - max S]` (per axis): exactly the
//! points whose whole neighbourhood `γ + S` lies in the box.

mod io;

pub use io::{read_window, write_window};

use rayon::prelude::*;
use thiserror::Error;

use crate::groupring::{ExponentVector, GroupRingElement, GroupRingError, RealSeries};
use crate::harmonic::{invert_l1_with, HarmonicError, InversionBudget};
use crate::structure::EndomorphismSpec;
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SimulatorError {
    #[error("window interior is empty after shrinking by the operator support")]
    EmptyInterior,
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("not expansive: {0}")]
    Inversion(HarmonicError),
    #[error(transparent)]
    GroupRing(#[from] GroupRingError),
}

fn rank_check(a: usize, b: usize) -> Result<(), SimulatorError> {
    if a != b {
        return Err(GroupRingError::RankMismatch { left: a, right: b }.into());
    }
    Ok(())
}

/// Reduces a real to its circle representative in `[0, 1)`.
pub fn to_circle(v: f64) -> f64 {
    let r = v.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Distance from `v` to the nearest integer.
pub fn circle_distance(v: f64) -> f64 {
    (v - v.round()).abs()
}

/// Default window radius per axis.
pub fn default_radius(rank: usize) -> i64 {
    match rank {
        1 => 32,
        2 => 12,
        _ => 4,
    }
}

/// The box `[lo_1, hi_1] × ... × [lo_d, hi_d]` (inclusive) in `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WindowBox {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl WindowBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self, SimulatorError> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(SimulatorError::InvalidWindow("bounds must have equal nonzero length".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(SimulatorError::InvalidWindow("lower bound exceeds upper bound".into()));
        }
        Ok(WindowBox { lo, hi })
    }

    pub fn centered(rank: usize, radius: i64) -> Self {
        assert!(rank >= 1 && radius >= 0);
        WindowBox {
            lo: vec![-radius; rank],
            hi: vec![radius; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn extent(&self, axis: usize) -> usize {
        (self.hi[axis] - self.lo[axis] + 1) as usize
    }

    pub fn len(&self) -> usize {
        (0..self.rank()).map(|i| self.extent(i)).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, c: &[i64]) -> bool {
        c.len() == self.rank() && c.iter().enumerate().all(|(i, x)| self.lo[i] <= *x && *x <= self.hi[i])
    }

    /// Row-major position of `c` (last axis fastest).
    pub fn index(&self, c: &[i64]) -> Option<usize> {
        if !self.contains(c) {
            return None;
        }
        let mut k = 0usize;
        for (i, x) in c.iter().enumerate() {
            k = k * self.extent(i) + (x - self.lo[i]) as usize;
        }
        Some(k)
    }

    pub fn coords(&self, mut idx: usize) -> Vec<i64> {
        let d = self.rank();
        let mut c = vec![0; d];
        for i in (0..d).rev() {
            let e = self.extent(i);
            c[i] = self.lo[i] + (idx % e) as i64;
            idx /= e;
        }
        c
    }

    /// Points `γ` with `γ + η` in the box for every `η` in the support.
    pub fn interior(&self, support: &GroupRingElement) -> Result<WindowBox, SimulatorError> {
        rank_check(self.rank(), support.rank())?;
        let (smin, smax) = support
            .exponent_bounds()
            .unwrap_or((vec![0; self.rank()], vec![0; self.rank()]));
        let lo: Vec<i64> = (0..self.rank()).map(|i| self.lo[i] - smin[i]).collect();
        let hi: Vec<i64> = (0..self.rank()).map(|i| self.hi[i] - smax[i]).collect();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(SimulatorError::EmptyInterior);
        }
        Ok(WindowBox { lo, hi })
    }

    pub fn intersect(&self, o: &WindowBox) -> Option<WindowBox> {
        let lo: Vec<i64> = self.lo.iter().zip(&o.lo).map(|(a, b)| *a.max(b)).collect();
        let hi: Vec<i64> = self.hi.iter().zip(&o.hi).map(|(a, b)| *a.min(b)).collect();
        WindowBox::new(lo, hi).ok()
    }

    pub fn translate(&self, g: &ExponentVector) -> WindowBox {
        WindowBox {
            lo: self.lo.iter().zip(g.coords()).map(|(a, b)| a + b).collect(),
            hi: self.hi.iter().zip(g.coords()).map(|(a, b)| a + b).collect(),
        }
    }

    /// Largest `‖γ‖_∞` over the box.
    pub fn max_radius(&self) -> u64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| a.unsigned_abs().max(b.unsigned_abs()))
            .max()
            .unwrap_or(0)
    }
}

/// A configuration restricted to a box, values in `[0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigurationWindow {
    bounds: WindowBox,
    values: Vec<f64>,
}

impl ConfigurationWindow {
    /// Values are read mod 1.
    pub fn new(bounds: WindowBox, values: Vec<f64>) -> Result<Self, SimulatorError> {
        if values.len() != bounds.len() {
            return Err(SimulatorError::InvalidWindow(format!(
                "expected {} values, got {}",
                bounds.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(SimulatorError::InvalidWindow("non-finite value".into()));
        }
        let values = values.into_iter().map(to_circle).collect();
        Ok(ConfigurationWindow { bounds, values })
    }

    pub fn zeros(bounds: WindowBox) -> Self {
        let n = bounds.len();
        ConfigurationWindow {
            bounds,
            values: vec![0.0; n],
        }
    }

    pub fn from_fn(bounds: WindowBox, mut f: impl FnMut(&[i64]) -> f64) -> Self {
        let values = (0..bounds.len())
            .map(|i| to_circle(f(&bounds.coords(i))))
            .collect();
        ConfigurationWindow { bounds, values }
    }

    /// The constant configuration `c`.
    pub fn constant(bounds: WindowBox, c: f64) -> Self {
        ConfigurationWindow::from_fn(bounds, |_| c)
    }

    pub fn bounds(&self) -> &WindowBox {
        &self.bounds
    }

    pub fn rank(&self) -> usize {
        self.bounds.rank()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, c: &[i64]) -> Option<f64> {
        self.bounds.index(c).map(|i| self.values[i])
    }

    /// Restriction to a sub-box.
    pub fn restrict(&self, b: &WindowBox) -> Option<ConfigurationWindow> {
        if !(self.bounds.contains(b.lo()) && self.bounds.contains(b.hi())) {
            return None;
        }
        let values = (0..b.len())
            .map(|i| self.get(&b.coords(i)).expect("inside"))
            .collect();
        Some(ConfigurationWindow {
            bounds: b.clone(),
            values,
        })
    }

    /// Largest circle distance between corresponding values on the common box.
    pub fn distance(&self, o: &ConfigurationWindow) -> Option<f64> {
        let b = self.bounds.intersect(&o.bounds)?;
        Some(
            (0..b.len())
                .map(|i| {
                    let c = b.coords(i);
                    circle_distance(self.get(&c).unwrap() - o.get(&c).unwrap())
                })
                .fold(0.0, f64::max),
        )
    }

    /// Largest circle distance from 0 over the window.
    pub fn max_circle_abs(&self) -> f64 {
        self.values.iter().map(|v| circle_distance(*v)).fold(0.0, f64::max)
    }
}

/// Real representatives in `[-1/2, 1/2)` of a window.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftWindow {
    bounds: WindowBox,
    values: Vec<f64>,
}

impl LiftWindow {
    pub fn bounds(&self) -> &WindowBox {
        &self.bounds
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, c: &[i64]) -> Option<f64> {
        self.bounds.index(c).map(|i| self.values[i])
    }

    /// The projection to T.
    pub fn project(&self) -> ConfigurationWindow {
        ConfigurationWindow {
            bounds: self.bounds.clone(),
            values: self.values.iter().map(|v| to_circle(*v)).collect(),
        }
    }
}

pub fn lift(x: &ConfigurationWindow) -> LiftWindow {
    LiftWindow {
        bounds: x.bounds.clone(),
        values: x
            .values
            .iter()
            .map(|&v| if v >= 0.5 { v - 1.0 } else { v })
            .collect(),
    }
}

fn coefficient_list(f: &GroupRingElement) -> Vec<(Vec<i64>, f64)> {
    f.terms()
        .map(|(e, c)| (e.coords().to_vec(), c.to_f64().unwrap_or(f64::INFINITY)))
        .collect()
}

/// `Σ_η f_η x(γ + η)` at every point of `interior`, as reals.
fn apply_sum(x: &ConfigurationWindow, f: &[(Vec<i64>, f64)], interior: &WindowBox) -> Vec<f64> {
    let d = x.rank();
    (0..interior.len())
        .into_par_iter()
        .map(|i| {
            let g = interior.coords(i);
            let mut s = 0.0;
            let mut p = vec![0i64; d];
            for (e, c) in f {
                for a in 0..d {
                    p[a] = g[a] + e[a];
                }
                s += c * x.get(&p).expect("interior point");
            }
            s
        })
        .collect()
}

/// Largest circle distance from 0 of `Σ_η f_η x(γ + η)` over the valid interior.
pub fn defect(x: &ConfigurationWindow, f: &GroupRingElement) -> Result<f64, SimulatorError> {
    let interior = x.bounds.interior(f)?;
    let sums = apply_sum(x, &coefficient_list(f), &interior);
    Ok(sums.into_iter().map(circle_distance).fold(0.0, f64::max))
}

/// Whether `lift(x) ∗ f*` is within `tol` of an integer on the valid interior.
///
/// Evaluated as the convolution `Σ_κ g(γ - κ) (f*)_κ`, independently of [`defect`].
pub fn integrality_check(
    x: &ConfigurationWindow,
    f: &GroupRingElement,
    tol: f64,
) -> Result<bool, SimulatorError> {
    let fs = f.involute();
    let interior = x.bounds.interior(f)?;
    let g = lift(x);
    let fs: Vec<(Vec<i64>, f64)> = coefficient_list(&fs);
    let d = x.rank();
    let ok = (0..interior.len()).into_par_iter().all(|i| {
        let c = interior.coords(i);
        let mut s = 0.0;
        let mut p = vec![0i64; d];
        for (k, v) in &fs {
            for a in 0..d {
                p[a] = c[a] - k[a];
            }
            s += g.get(&p).expect("interior point") * v;
        }
        circle_distance(s) <= tol
    });
    Ok(ok)
}

/// `τ(x) = r·x + t`, i.e. `γ ↦ Σ_κ r_κ x(γ + κ) + t`, on the valid interior.
pub fn apply_endo(
    x: &ConfigurationWindow,
    endo: &EndomorphismSpec,
) -> Result<ConfigurationWindow, SimulatorError> {
    let interior = x.bounds.interior(&endo.r)?;
    let t = endo.t.value();
    let sums = apply_sum(x, &coefficient_list(&endo.r), &interior);
    Ok(ConfigurationWindow {
        bounds: interior,
        values: sums.into_iter().map(|s| to_circle(s + t)).collect(),
    })
}

/// The shift `(γ x)(γ') = x(γ' - γ)`: same values on the translated box.
pub fn shift(x: &ConfigurationWindow, g: &ExponentVector) -> Result<ConfigurationWindow, SimulatorError> {
    rank_check(x.rank(), g.rank())?;
    Ok(ConfigurationWindow {
        bounds: x.bounds.translate(g),
        values: x.values.clone(),
    })
}

/// A window onto a homoclinic point `π(s)` for an l^1 element `s` known up to
/// `tail_l1`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomoclinicWindow {
    pub window: ConfigurationWindow,
    pub tail_l1: f64,
    /// `envelope[r]` bounds `|s_γ|` for all `‖γ‖_∞ > r`, also outside the window.
    pub envelope: Vec<f64>,
}

impl HomoclinicWindow {
    /// A window whose point is exactly its finitely many nonzero values.
    pub fn exact(window: ConfigurationWindow) -> Self {
        let lifted = lift(&window);
        let r = window.bounds.max_radius() as usize;
        let mut envelope = vec![0.0; r.max(1)];
        for i in 0..lifted.values.len() {
            let m = linf(&window.bounds.coords(i));
            let v = lifted.values[i].abs();
            for e in envelope.iter_mut().take(m.min(r)) {
                *e += v;
            }
        }
        HomoclinicWindow {
            window,
            tail_l1: 0.0,
            envelope,
        }
    }

    fn from_series(s: &RealSeries, bounds: WindowBox) -> Self {
        let window = ConfigurationWindow::from_fn(bounds.clone(), |c| s.coefficient(&ExponentVector::new(c.to_vec())));
        let r = bounds.max_radius() as usize;
        let mut mass = vec![0.0; r + 2];
        for (e, c) in s.terms() {
            let m = (e.linf() as usize).min(r + 1);
            mass[m] += c.abs();
        }
        // envelope[k] = mass at radius > k, plus the tail
        let mut envelope = vec![0.0; r.max(1)];
        let mut acc = mass[r + 1];
        for k in (0..r.max(1)).rev() {
            if k < r {
                acc += mass[k + 1];
            }
            envelope[k] = acc * (1.0 + 1e-12) + s.tail_bound();
        }
        HomoclinicWindow {
            window,
            tail_l1: s.tail_bound(),
            envelope,
        }
    }
}

fn linf(c: &[i64]) -> usize {
    c.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
}

/// `(r, max |lift(x)(γ)|)` over window points with `‖γ‖_∞ > r`, for
/// `r = 0 .. R - 1` with `R` the largest radius in the window.
pub fn decay_profile(x: &HomoclinicWindow) -> Vec<(u64, f64)> {
    window_decay_profile(&x.window)
}

pub fn window_decay_profile(x: &ConfigurationWindow) -> Vec<(u64, f64)> {
    let r = x.bounds.max_radius() as usize;
    let g = lift(x);
    let mut at = vec![0.0f64; r + 1];
    for (i, v) in g.values.iter().enumerate() {
        let m = linf(&x.bounds.coords(i));
        at[m] = at[m].max(v.abs());
    }
    let mut out = vec![0.0; r];
    let mut acc = 0.0f64;
    for k in (0..r).rev() {
        acc = acc.max(at[k + 1]);
        out[k] = acc;
    }
    out.into_iter().enumerate().map(|(k, v)| (k as u64, v)).collect()
}

/// Caches `w̃ ≈ (f*)^{-1}` for building homoclinic points `Ψ(h) = π(h w̃)`.
#[derive(Clone, Debug)]
pub struct HomoclinicGenerator {
    f: GroupRingElement,
    w: RealSeries,
    residual_l1: f64,
}

impl HomoclinicGenerator {
    pub fn new(f: &GroupRingElement, tol: f64) -> Result<Self, SimulatorError> {
        Self::with_budget(f, tol, &InversionBudget::default())
    }

    pub fn with_budget(
        f: &GroupRingElement,
        tol: f64,
        budget: &InversionBudget,
    ) -> Result<Self, SimulatorError> {
        let cert = match invert_l1_with(&f.involute(), tol, budget) {
            Ok(c) => c,
            Err(HarmonicError::BudgetExceeded { best: Some(c), .. }) => *c,
            Err(e) => return Err(SimulatorError::Inversion(e)),
        };
        Ok(HomoclinicGenerator {
            f: f.clone(),
            w: cert.w,
            residual_l1: cert.residual_l1,
        })
    }

    pub fn f(&self) -> &GroupRingElement {
        &self.f
    }

    /// The certified approximation of `(f*)^{-1}`.
    pub fn w(&self) -> &RealSeries {
        &self.w
    }

    pub fn residual_l1(&self) -> f64 {
        self.residual_l1
    }

    /// `x_f^Δ = π(w)` on the box.
    pub fn fundamental(&self, bounds: WindowBox) -> Result<HomoclinicWindow, SimulatorError> {
        rank_check(self.f.rank(), bounds.rank())?;
        Ok(HomoclinicWindow::from_series(&self.w, bounds))
    }

    /// `Ψ(h) = π(h w)` on the box; the tail scales with `‖h‖_1`.
    pub fn psi(&self, h: &GroupRingElement, bounds: WindowBox) -> Result<HomoclinicWindow, SimulatorError> {
        rank_check(self.f.rank(), h.rank())?;
        rank_check(self.f.rank(), bounds.rank())?;
        let s = self.w.convolve_exact(h)?;
        Ok(HomoclinicWindow::from_series(&s, bounds))
    }
}

/// `x_f^Δ` on the centered box of the given radius.
pub fn fundamental_homoclinic(
    f: &GroupRingElement,
    tol: f64,
    radius: i64,
) -> Result<HomoclinicWindow, SimulatorError> {
    HomoclinicGenerator::new(f, tol)?.fundamental(WindowBox::centered(f.rank(), radius))
}

/// `Ψ(h) = h·x_f^Δ` on the centered box of the given radius.
pub fn psi(
    h: &GroupRingElement,
    f: &GroupRingElement,
    tol: f64,
    radius: i64,
) -> Result<HomoclinicWindow, SimulatorError> {
    HomoclinicGenerator::new(f, tol)?.psi(h, WindowBox::centered(f.rank(), radius))
}
