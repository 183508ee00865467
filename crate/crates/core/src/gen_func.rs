//! Generating functions of normalized Hausdorff moment sequences.
//!
//! A [`TFunction`] is `F(z) = ∫ dμ(t)/(1 - tz)` for a probability measure μ
//! on [0, 1]; it is holomorphic on the slit plane `ℂ \ [1, +∞)`. The shifted
//! form `zF(z)` is a [`ShiftedTFunction`].

use crate::grid::{GridError, GridSpec};
use crate::measure::{finish, Measure, MeasureError};
use crate::quad::QuadOptions;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use std::fmt::Display;
use thiserror::Error;

/// Points with `Re z ≥ 1` and `|Im z|` below this are treated as on the slit.
pub const SLIT_GUARD: f64 = 1e-12;
/// Slack used by the membership diagnostics.
pub const MEMBERSHIP_SLACK: f64 = 1e-9;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenFuncError {
    #[error("z = {0} lies on or too close to the slit [1, +inf)")]
    OnSlit(Complex64),
    #[error("representing measure has mass {0}, expected 1")]
    NotNormalized(f64),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

pub(crate) fn check_slit(z: Complex64) -> Result<(), GenFuncError> {
    if !(z.re.is_finite() && z.im.is_finite()) || (z.re >= 1.0 && z.im.abs() < SLIT_GUARD) {
        return Err(GenFuncError::OnSlit(z));
    }
    Ok(())
}

/// A limit that may be +∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    /// `certain` is false when divergence was inferred numerically.
    Infinite {
        certain: bool,
    },
}

impl ExtendedReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(v),
            ExtendedReal::Infinite { .. } => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtendedReal::Infinite { .. })
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedReal::Finite(v) => s.serialize_f64(*v),
            ExtendedReal::Infinite { certain: true } => s.serialize_str("+inf"),
            ExtendedReal::Infinite { certain: false } => s.serialize_str("+inf (numerical)"),
        }
    }
}

/// ∫ dμ(t) / (1 - t)^power, as an improper integral at t = 1.
///
/// Densities are integrated over [0, 1 - δ] for δ halving from 1e-2 to
/// 1e-8. The limit is declared infinite when a partial value exceeds 1e12 or
/// the increments stop contracting; otherwise the geometric tail of the
/// increments is added.
pub(crate) fn improper_at_one(mu: &Measure, power: i32) -> Result<ExtendedReal, GenFuncError> {
    let mut total = 0.0;
    for a in mu.atoms() {
        if a.t == 1.0 {
            return Ok(ExtendedReal::Infinite { certain: true });
        }
        total += a.w / (1.0 - a.t).powi(power);
    }
    if mu.densities().is_empty() {
        return Ok(ExtendedReal::Finite(total));
    }
    let opts = QuadOptions::default();
    let mut partial = Vec::new();
    let mut delta = 1e-2;
    while delta >= 1e-8 {
        let v = finish(mu.quadrature_split(|_, omt| Complex64::new(omt.powi(-power), 0.0), &opts, Some(delta)))?.re;
        if v > 1e12 {
            return Ok(ExtendedReal::Infinite { certain: false });
        }
        partial.push(v);
        delta *= 0.5;
    }
    let n = partial.len();
    let last = partial[n - 1];
    let d1 = last - partial[n - 2];
    let d0 = partial[n - 2] - partial[n - 3];
    if d1.abs() <= 1e-15 * (1.0 + last.abs()) {
        return Ok(ExtendedReal::Finite(total + last));
    }
    let ratio = d1 / d0;
    let prev_ratio = d0 / (partial[n - 3] - partial[n - 4]);
    if !(ratio > 0.0 && ratio < 0.9 && prev_ratio < 0.9) {
        return Ok(ExtendedReal::Infinite { certain: false });
    }
    Ok(ExtendedReal::Finite(total + last + d1 * ratio / (1.0 - ratio)))
}

/// `F(z) = ∫ dμ(t)/(1 - tz)` for a probability measure μ.
#[derive(Debug, Clone, PartialEq)]
pub struct TFunction {
    mu: Measure,
}

impl TFunction {
    pub fn new(mu: Measure) -> Result<Self, GenFuncError> {
        if !mu.is_normalized() {
            return Err(GenFuncError::NotNormalized(mu.mass()));
        }
        Ok(Self { mu })
    }

    pub fn measure(&self) -> &Measure {
        &self.mu
    }

    pub(crate) fn kernel<K>(&self, z: Complex64, kernel: K) -> Result<Complex64, GenFuncError>
    where
        K: Fn(f64) -> Complex64,
    {
        check_slit(z)?;
        Ok(self.mu.integrate(kernel)?)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, GenFuncError> {
        self.kernel(z, |t| 1.0 / (ONE - z * t))
    }

    /// Truncated moment series `Σ_{n<terms} a_n zⁿ`.
    pub fn eval_series(&self, z: Complex64, terms: usize) -> Result<Complex64, GenFuncError> {
        let a = self.mu.moments(terms)?;
        // Horner from the top coefficient down
        Ok(a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c))
    }

    /// `F(1⁻) = ∫ dμ(t)/(1 - t)`.
    pub fn limit_at_one(&self) -> Result<ExtendedReal, GenFuncError> {
        improper_at_one(&self.mu, 1)
    }

    /// `∫ dμ(t)/(1 + t)`, the Harnack-type floor for `Re F` on the unit disk.
    pub fn lower_bound_re(&self) -> Result<f64, GenFuncError> {
        Ok(self.mu.integrate(|t| Complex64::new(1.0 / (1.0 + t), 0.0))?.re)
    }
}

/// `h(z) = zF(z)` for a [`TFunction`] F.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedTFunction {
    base: TFunction,
}

impl ShiftedTFunction {
    pub fn new(base: TFunction) -> Self {
        Self { base }
    }

    pub fn from_measure(mu: Measure) -> Result<Self, GenFuncError> {
        Ok(Self::new(TFunction::new(mu)?))
    }

    pub fn base(&self) -> &TFunction {
        &self.base
    }

    pub fn measure(&self) -> &Measure {
        &self.base.mu
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, GenFuncError> {
        Ok(z * self.base.eval(z)?)
    }

    /// `h'(z) = ∫ dμ(t)/(1 - tz)²`.
    pub fn derivative(&self, z: Complex64) -> Result<Complex64, GenFuncError> {
        self.base.kernel(z, |t| {
            let d = ONE - z * t;
            1.0 / (d * d)
        })
    }

    /// `h''(z) = ∫ 2t dμ(t)/(1 - tz)³`.
    pub fn second_derivative(&self, z: Complex64) -> Result<Complex64, GenFuncError> {
        self.base.kernel(z, |t| {
            let d = ONE - z * t;
            2.0 * t / (d * d * d)
        })
    }

    /// Coefficient of `z^{n+1}`, i.e. the n-th moment.
    pub fn coefficient(&self, n: usize) -> Result<f64, GenFuncError> {
        Ok(self.base.mu.moment(n)?)
    }

    /// `h'(1⁻) = ∫ dμ(t)/(1 - t)²`.
    pub fn derivative_limit_at_one(&self) -> Result<ExtendedReal, GenFuncError> {
        improper_at_one(&self.base.mu, 2)
    }

    /// `lim_{r→1⁻} h(-r) = -∫ dμ(t)/(1 + t)`.
    pub fn limit_at_minus_one(&self) -> Result<f64, GenFuncError> {
        Ok(-self.base.lower_bound_re()?)
    }
}

/// Numerical evidence for the three conditions characterizing class T:
/// `F(0) = 1`, `F` real and non-negative on `(-∞, 1)`, and `Im F ≥ 0` on the
/// upper half-plane. Analyticity of a black-box function cannot be sampled,
/// so it is assumed rather than checked.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    /// `|F(0) - 1|`, or `None` when F(0) could not be evaluated.
    pub value_at_zero_deviation: Option<f64>,
    /// Minimum of `Re F(x)` over real samples.
    pub min_re_on_axis: f64,
    /// Maximum of `|Im F(x)| / max(1, |F(x)|)` over real samples.
    pub max_scaled_im_on_axis: f64,
    /// Minimum of `Im F(z) / max(1, |F(z)|)` over upper half-plane samples.
    pub min_scaled_im_upper: f64,
    pub axis_nodes: usize,
    pub upper_nodes: usize,
    pub skipped_nodes: usize,
    pub consistent: bool,
    pub note: &'static str,
}

pub fn check_t_membership<F, E>(f: F, grid: &GridSpec) -> Result<MembershipReport, GridError>
where
    F: Fn(Complex64) -> Result<Complex64, E> + Sync,
    E: Display,
{
    grid.validate()?;
    let at_zero = f(Complex64::new(0.0, 0.0)).ok().map(|v| (v - 1.0).norm());
    let axis: Vec<Option<Complex64>> = grid
        .real_points()
        .par_iter()
        .map(|&x| f(Complex64::new(x, 0.0)).ok())
        .collect();
    let upper: Vec<Option<Complex64>> = grid.upper_points().par_iter().map(|&z| f(z).ok()).collect();
    let scale = |v: Complex64| v.norm().max(1.0);

    let mut skipped = 0;
    let mut min_re = f64::INFINITY;
    let mut max_im = 0.0f64;
    let mut axis_nodes = 0;
    for v in &axis {
        match v {
            Some(v) if v.re.is_finite() && v.im.is_finite() => {
                axis_nodes += 1;
                min_re = min_re.min(v.re);
                max_im = max_im.max(v.im.abs() / scale(*v));
            }
            _ => skipped += 1,
        }
    }
    let mut min_im = f64::INFINITY;
    let mut upper_nodes = 0;
    for v in &upper {
        match v {
            Some(v) if v.re.is_finite() && v.im.is_finite() => {
                upper_nodes += 1;
                min_im = min_im.min(v.im / scale(*v));
            }
            _ => skipped += 1,
        }
    }
    let consistent = at_zero.is_some_and(|d| d <= MEMBERSHIP_SLACK)
        && min_re >= -MEMBERSHIP_SLACK
        && max_im <= MEMBERSHIP_SLACK
        && min_im >= -MEMBERSHIP_SLACK;
    Ok(MembershipReport {
        value_at_zero_deviation: at_zero,
        min_re_on_axis: min_re,
        max_scaled_im_on_axis: max_im,
        min_scaled_im_upper: min_im,
        axis_nodes,
        upper_nodes,
        skipped_nodes: skipped,
        consistent,
        note: "analyticity on the slit plane is assumed, not sampled",
    })
}
