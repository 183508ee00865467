//! Harmonic maps `f = h + c·conj(g)` whose parts are shifted generating
//! functions of completely monotone sequences.
//!
//! The dilatation is `ω_f = c g'/h'` and the Jacobian is
//! `|h'|² - |c|²|g'|²`. Derivatives always come from quadrature of the
//! differentiated kernel, never from finite differences.

mod certify;
mod checks;

pub use certify::{
    certify_qc_grid, certify_qc_via_limit, certify_qc_via_ratio, harnack_ratio_bound, ratio_bound_sup, sampled_limit,
    sup_dilatation, Branch, CertMethod, DilatationSup, HarnackReport, QcCertificate, RatioSup, Verdict,
};
pub use checks::{
    density_ratio_condition, density_ratio_scan, probe_dominance, CrossRatioScan, DensityRatioReport, ModulusReport,
    PartialSignReport, SecondSignCheck,
};

use crate::gen_func::{check_slit, GenFuncError, ShiftedTFunction};
use crate::grid::GridError;
use crate::measure::{Measure, MeasureError};
use crate::quad::QuadOptions;
use num_complex::Complex64;
use thiserror::Error;

/// `|h'(z)|` below this is reported as a singular derivative.
pub const SINGULAR_DERIVATIVE: f64 = 1e-13;
/// Series-backed parts are only evaluated on `|z| ≤ SERIES_RADIUS`.
pub const SERIES_RADIUS: f64 = 0.95;
/// Default truncation order for convolution products.
pub const DEFAULT_CONVOLUTION_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarmonicError {
    #[error("co-analytic coefficient {0} must satisfy |c| < 1")]
    CoefficientModulus(Complex64),
    #[error("this operation needs a real coefficient c in [0, 1), got {0}")]
    RealCoefficient(Complex64),
    #[error("h'({0}) vanishes numerically")]
    SingularDerivative(Complex64),
    #[error("z = {0} must lie in the open unit disk")]
    NotInDisk(Complex64),
    #[error("series-backed part evaluated at |z| = {0} > {SERIES_RADIUS}")]
    OutsideSeriesDisk(f64),
    #[error("bound k = {0} must satisfy 0 <= k < 1")]
    InvalidBound(f64),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("operation needs measure-backed parts: {0}")]
    Unsupported(&'static str),
    #[error(transparent)]
    GenFunc(#[from] GenFuncError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// Truncated `z Σ_{n<N} aₙ zⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    coeffs: Vec<f64>,
}

impl CoefficientSeries {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    fn guard(z: Complex64) -> Result<(), HarmonicError> {
        if z.norm() > SERIES_RADIUS {
            return Err(HarmonicError::OutsideSeriesDisk(z.norm()));
        }
        Ok(())
    }

    fn eval(&self, z: Complex64) -> Result<Complex64, HarmonicError> {
        Self::guard(z)?;
        let p = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        Ok(z * p)
    }

    fn derivative(&self, z: Complex64) -> Result<Complex64, HarmonicError> {
        Self::guard(z)?;
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (n, &c)| acc * z + c * (n as f64 + 1.0)))
    }

    fn second_derivative(&self, z: Complex64) -> Result<Complex64, HarmonicError> {
        Self::guard(z)?;
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (n, &c)| {
                acc * z + c * ((n as f64 + 1.0) * n as f64)
            }))
    }
}

/// `(h∗g)(z) = ∫ h(tz)/t dν(t) = z ∫ F_h(tz) dν(t)` where `h = zF_h` and ν
/// represents g.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionPart {
    h: ShiftedTFunction,
    nu: Measure,
}

impl ConvolutionPart {
    pub fn new(h: ShiftedTFunction, nu: Measure) -> Self {
        Self { h, nu }
    }

    pub fn inner(&self) -> &ShiftedTFunction {
        &self.h
    }

    pub fn nu(&self) -> &Measure {
        &self.nu
    }

    fn integrate<K>(&self, z: Complex64, kernel: K) -> Result<Complex64, HarmonicError>
    where
        K: Fn(f64) -> Result<Complex64, GenFuncError>,
    {
        check_slit(z)?;
        let inner = self.nu.try_integrate(kernel, &QuadOptions::default())?;
        Ok(inner.map_err(GenFuncError::from)?)
    }

    fn eval(&self, z: Complex64) -> Result<Complex64, HarmonicError> {
        // F_h(0) = 1 supplies the removable value a₀z at t = 0
        Ok(z * self.integrate(z, |t| self.h.base().eval(z * t))?)
    }

    fn derivative(&self, z: Complex64) -> Result<Complex64, HarmonicError> {
        self.integrate(z, |t| self.h.derivative(z * t))
    }

    fn second_derivative(&self, z: Complex64) -> Result<Complex64, HarmonicError> {
        self.integrate(z, |t| Ok(t * self.h.second_derivative(z * t)?))
    }

    /// `lim_{r→1⁻} (h∗g)(-r) = -∫ F_h(-t) dν(t)`.
    fn limit_at_minus_one(&self) -> Result<f64, HarmonicError> {
        let minus_one = Complex64::new(-1.0, 0.0);
        Ok(-self.integrate(minus_one, |t| self.h.base().eval(minus_one * t))?.re)
    }
}

/// An analytic member of the shifted class, held either by its representing
/// measure, by a truncated coefficient list, or as a convolution `h∗g`.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticPart {
    Generated(ShiftedTFunction),
    Series(CoefficientSeries),
    Convolution(ConvolutionPart),
}

impl From<ShiftedTFunction> for AnalyticPart {
    fn from(h: ShiftedTFunction) -> Self {
        AnalyticPart::Generated(h)
    }
}

impl AnalyticPart {
    pub fn eval(&self, z: Complex64) -> Result<Complex64, HarmonicError> {
        match self {
            AnalyticPart::Generated(h) => Ok(h.eval(z)?),
            AnalyticPart::Series(s) => s.eval(z),
            AnalyticPart::Convolution(c) => c.eval(z),
        }
    }

    pub fn derivative(&self, z: Complex64) -> Result<Complex64, HarmonicError> {
        match self {
            AnalyticPart::Generated(h) => Ok(h.derivative(z)?),
            AnalyticPart::Series(s) => s.derivative(z),
            AnalyticPart::Convolution(c) => c.derivative(z),
        }
    }

    pub fn second_derivative(&self, z: Complex64) -> Result<Complex64, HarmonicError> {
        match self {
            AnalyticPart::Generated(h) => Ok(h.second_derivative(z)?),
            AnalyticPart::Series(s) => s.second_derivative(z),
            AnalyticPart::Convolution(c) => c.second_derivative(z),
        }
    }

    /// Coefficients `a_0..a_{order-1}` of `z Σ aₙ zⁿ`; a shorter series is
    /// padded with zeros.
    pub fn coefficients(&self, order: usize) -> Result<Vec<f64>, HarmonicError> {
        match self {
            AnalyticPart::Generated(h) => Ok(h.measure().moments(order)?),
            AnalyticPart::Series(s) => {
                let mut c: Vec<f64> = s.coeffs.iter().copied().take(order).collect();
                c.resize(order, 0.0);
                Ok(c)
            }
            AnalyticPart::Convolution(c) => {
                let a = c.h.measure().moments(order)?;
                let b = c.nu.moments(order)?;
                Ok(a.iter().zip(&b).map(|(x, y)| x * y).collect())
            }
        }
    }

    /// `lim_{r→1⁻} part(-r)`.
    pub fn limit_at_minus_one(&self) -> Result<f64, HarmonicError> {
        match self {
            AnalyticPart::Generated(h) => Ok(h.limit_at_minus_one()?),
            AnalyticPart::Convolution(c) => c.limit_at_minus_one(),
            AnalyticPart::Series(_) => Err(HarmonicError::Unsupported(
                "boundary limits of truncated series are not evaluated",
            )),
        }
    }

    pub fn as_generated(&self) -> Option<&ShiftedTFunction> {
        match self {
            AnalyticPart::Generated(h) => Some(h),
            _ => None,
        }
    }
}

/// `f = h + c·conj(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMap {
    h: AnalyticPart,
    g: AnalyticPart,
    c: Complex64,
}

impl HarmonicMap {
    /// A map with real `0 ≤ c < 1`.
    pub fn new(h: ShiftedTFunction, g: ShiftedTFunction, c: f64) -> Result<Self, HarmonicError> {
        if !(0.0..1.0).contains(&c) {
            return Err(HarmonicError::RealCoefficient(Complex64::new(c, 0.0)));
        }
        Ok(Self {
            h: h.into(),
            g: g.into(),
            c: Complex64::new(c, 0.0),
        })
    }

    pub fn from_measures(mu: Measure, nu: Measure, c: f64) -> Result<Self, HarmonicError> {
        Self::new(
            ShiftedTFunction::from_measure(mu)?,
            ShiftedTFunction::from_measure(nu)?,
            c,
        )
    }

    /// General constructor; complex `|c| < 1` is accepted for the
    /// convolution algebra.
    pub fn from_parts(h: AnalyticPart, g: AnalyticPart, c: Complex64) -> Result<Self, HarmonicError> {
        if !(c.norm() < 1.0) {
            return Err(HarmonicError::CoefficientModulus(c));
        }
        Ok(Self { h, g, c })
    }

    pub fn h(&self) -> &AnalyticPart {
        &self.h
    }

    pub fn g(&self) -> &AnalyticPart {
        &self.g
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    /// The coefficient as a real number in [0, 1), as the geometric
    /// theorems require.
    pub fn real_c(&self) -> Result<f64, HarmonicError> {
        if self.c.im != 0.0 || !(0.0..1.0).contains(&self.c.re) {
            return Err(HarmonicError::RealCoefficient(self.c));
        }
        Ok(self.c.re)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64, HarmonicError> {
        Ok(self.h.eval(z)? + self.c * self.g.eval(z)?.conj())
    }

    fn disk_guard(z: Complex64) -> Result<(), HarmonicError> {
        if !(z.norm() < 1.0) {
            return Err(HarmonicError::NotInDisk(z));
        }
        Ok(())
    }

    /// `(h'(z), g'(z))`.
    pub fn derivatives(&self, z: Complex64) -> Result<(Complex64, Complex64), HarmonicError> {
        Ok((self.h.derivative(z)?, self.g.derivative(z)?))
    }

    /// Second complex dilatation `c g'(z)/h'(z)`.
    pub fn dilatation(&self, z: Complex64) -> Result<Complex64, HarmonicError> {
        Self::disk_guard(z)?;
        let (hp, gp) = self.derivatives(z)?;
        if hp.norm() < SINGULAR_DERIVATIVE {
            return Err(HarmonicError::SingularDerivative(z));
        }
        Ok(self.c * gp / hp)
    }

    /// `J_f(z) = |h'(z)|² - |c|²|g'(z)|²`.
    pub fn jacobian(&self, z: Complex64) -> Result<f64, HarmonicError> {
        Self::disk_guard(z)?;
        let (hp, gp) = self.derivatives(z)?;
        if hp.norm() < SINGULAR_DERIVATIVE {
            return Err(HarmonicError::SingularDerivative(z));
        }
        Ok(hp.norm_sqr() - self.c.norm_sqr() * gp.norm_sqr())
    }

    /// Harmonic convolution `f₁∗f₂ = h₁∗h₂ + c₁c₂·conj(g₁∗g₂)`, held as
    /// coefficient series truncated at `order`.
    pub fn convolve(&self, other: &HarmonicMap, order: usize) -> Result<HarmonicMap, HarmonicError> {
        let product = |a: &AnalyticPart, b: &AnalyticPart| -> Result<AnalyticPart, HarmonicError> {
            let x = a.coefficients(order)?;
            let y = b.coefficients(order)?;
            Ok(AnalyticPart::Series(CoefficientSeries::new(
                x.iter().zip(&y).map(|(p, q)| p * q).collect(),
            )))
        };
        HarmonicMap::from_parts(
            product(&self.h, &other.h)?,
            product(&self.g, &other.g)?,
            self.c * other.c,
        )
    }

    /// `s f₁ + (1 - s) f₂` for maps sharing the coefficient c, realized by
    /// mixing the representing measures.
    pub fn convex_combination(&self, other: &HarmonicMap, s: f64) -> Result<HarmonicMap, HarmonicError> {
        if self.c != other.c {
            return Err(HarmonicError::Parameter(format!(
                "convex combination needs equal coefficients, got {} and {}",
                self.c, other.c
            )));
        }
        if !(0.0..=1.0).contains(&s) {
            return Err(HarmonicError::Parameter(format!("weight s = {s} outside [0, 1]")));
        }
        fn measures<'a>(a: &'a AnalyticPart, b: &'a AnalyticPart) -> Result<(&'a Measure, &'a Measure), HarmonicError> {
            match (a, b) {
                (AnalyticPart::Generated(x), AnalyticPart::Generated(y)) => Ok((x.measure(), y.measure())),
                _ => Err(HarmonicError::Unsupported(
                    "convex combination mixes representing measures",
                )),
            }
        }
        let (mu1, mu2) = measures(&self.h, &other.h)?;
        let (nu1, nu2) = measures(&self.g, &other.g)?;
        let h = ShiftedTFunction::from_measure(mu1.mix(mu2, s)?)?;
        let g = ShiftedTFunction::from_measure(nu1.mix(nu2, s)?)?;
        HarmonicMap::from_parts(h.into(), g.into(), self.c)
    }

    /// `f = h + c·conj(h∗g)`, with the co-analytic part evaluated through
    /// `(h∗g)(z) = ∫ h(tz)/t dν(t)` and `(h∗g)'(z) = ∫ h'(tz) dν(t)`.
    pub fn construct_conv_map(h: ShiftedTFunction, g: &ShiftedTFunction, c: f64) -> Result<HarmonicMap, HarmonicError> {
        if !(0.0..1.0).contains(&c) {
            return Err(HarmonicError::RealCoefficient(Complex64::new(c, 0.0)));
        }
        let co = AnalyticPart::Convolution(ConvolutionPart::new(h.clone(), g.measure().clone()));
        HarmonicMap::from_parts(h.into(), co, Complex64::new(c, 0.0))
    }

    /// Checks `|a + f(z)| ≥ a + f(-|z|) ≥ a + lim_{r→1⁻} f(-r)` at each
    /// sample, with slack 1e-9.
    pub fn modulus_lower_bound_check(&self, a: f64, samples: &[Complex64]) -> Result<ModulusReport, HarmonicError> {
        checks::modulus_lower_bound_check(self, a, samples)
    }

    /// Sign checks for `y ∂/∂y Re f < 0` and `y ∂/∂x Im f > 0` on the
    /// off-axis rectangle grid of `grid`.
    pub fn partial_sign_check(&self, grid: &crate::grid::GridSpec) -> Result<PartialSignReport, HarmonicError> {
        checks::partial_sign_check(self, grid)
    }
}
