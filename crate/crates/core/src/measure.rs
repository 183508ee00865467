//! Borel probability measures on [0, 1]: finitely many atoms plus a finite
//! mixture of named densities, with quadrature that regularizes integrable
//! endpoint singularities by power substitutions.

use crate::quad::{self, QuadEstimate, QuadOptions};
use crate::special_fn::ln_gamma;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use thiserror::Error;

/// Tolerance on the total mass of a normalized measure.
pub const MASS_TOL: f64 = 1e-12;
/// Tolerance on the quadrature mass of a density family before weighting.
pub const DENSITY_MASS_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("atom at t = {t} with weight {w}: location must lie in [0, 1] and weight must be positive")]
    InvalidAtom { t: f64, w: f64 },
    #[error("density weight {0} must be positive and finite")]
    InvalidWeight(f64),
    #[error("parameter out of domain: {0}")]
    Parameter(String),
    #[error("sampled density table: {0}")]
    Table(String),
    #[error("{family} density integrates to {mass}, expected 1")]
    DensityMass { family: String, mass: f64 },
    #[error("measure has total mass {0}, expected 1")]
    NotNormalized(f64),
    #[error("measure has no atoms and no densities")]
    Empty,
    #[error("quadrature inconclusive: estimate {estimate:e} with error {error:e}")]
    Inconclusive { estimate: f64, error: f64 },
}

/// Point mass `w` at `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Atom {
    pub t: f64,
    pub w: f64,
}

/// Piecewise-linear density on a strictly increasing grid inside [0, 1],
/// zero outside the grid and renormalized to unit mass.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledDensity {
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl SampledDensity {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self, MeasureError> {
        if grid.len() < 2 || grid.len() != values.len() {
            return Err(MeasureError::Table(format!(
                "need at least two nodes and matching lengths (grid {}, values {})",
                grid.len(),
                values.len()
            )));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) || grid[0] < 0.0 || grid[grid.len() - 1] > 1.0 {
            return Err(MeasureError::Table(
                "grid must be strictly increasing inside [0, 1]".into(),
            ));
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(MeasureError::Table("values must be finite and non-negative".into()));
        }
        let mass: f64 = grid
            .windows(2)
            .zip(values.windows(2))
            .map(|(g, v)| 0.5 * (g[1] - g[0]) * (v[0] + v[1]))
            .sum();
        if !(mass > 0.0) {
            return Err(MeasureError::Table("table has zero mass".into()));
        }
        let values = values.into_iter().map(|v| v / mass).collect();
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn eval(&self, t: f64) -> f64 {
        let g = &self.grid;
        if t < g[0] || t > g[g.len() - 1] {
            return 0.0;
        }
        let i = match g.partition_point(|&x| x <= t) {
            0 => 0,
            i if i >= g.len() => g.len() - 2,
            i => i - 1,
        };
        let s = (t - g[i]) / (g[i + 1] - g[i]);
        self.values[i] * (1.0 - s) + self.values[i + 1] * s
    }
}

/// The named density shapes.
#[derive(Debug, Clone, PartialEq)]
pub enum DensityFamily {
    /// dt on [0, 1].
    Lebesgue,
    /// Γ(c)/(Γ(a)Γ(c-a)) t^{a-1}(1-t)^{c-a-1}, c > a > 0.
    Beta { a: f64, c: f64 },
    /// (-log t)^{α-1}/Γ(α), α > 0.
    LogGamma { alpha: f64 },
    /// User-supplied piecewise-linear table.
    Table(SampledDensity),
}

impl DensityFamily {
    fn name(&self) -> String {
        match self {
            DensityFamily::Lebesgue => "lebesgue".into(),
            DensityFamily::Beta { a, c } => format!("beta({a}, {c})"),
            DensityFamily::LogGamma { alpha } => format!("loggamma({alpha})"),
            DensityFamily::Table(_) => "table".into(),
        }
    }

    /// Collapses parameter choices that reduce to the uniform density.
    fn canonical(self) -> Self {
        match self {
            DensityFamily::Beta { a, c } if a == 1.0 && c == 2.0 => DensityFamily::Lebesgue,
            DensityFamily::LogGamma { alpha: 1.0 } => DensityFamily::Lebesgue,
            other => other,
        }
    }

    fn log_normalizer(&self) -> Result<f64, MeasureError> {
        let lg = |x: f64| ln_gamma(x).map_err(|e| MeasureError::Parameter(e.to_string()));
        match self {
            DensityFamily::Lebesgue | DensityFamily::Table(_) => Ok(0.0),
            DensityFamily::Beta { a, c } => {
                if !(a.is_finite() && c.is_finite() && *a > 0.0 && c > a) {
                    return Err(MeasureError::Parameter(format!(
                        "beta requires c > a > 0, got a = {a}, c = {c}"
                    )));
                }
                Ok(lg(*c)? - lg(*a)? - lg(c - a)?)
            }
            DensityFamily::LogGamma { alpha } => {
                if !(alpha.is_finite() && *alpha > 0.0) {
                    return Err(MeasureError::Parameter(format!(
                        "loggamma requires alpha > 0, got {alpha}"
                    )));
                }
                Ok(-lg(*alpha)?)
            }
        }
    }

    /// Substitution exponents (left, right) that flatten the endpoint behavior.
    fn substitution(&self) -> (f64, f64) {
        match self {
            DensityFamily::Lebesgue | DensityFamily::Table(_) => (1.0, 1.0),
            DensityFamily::Beta { a, c } => {
                let right = c - a;
                (
                    if *a < 1.0 { 1.0 / a } else { 1.0 },
                    if right < 1.0 { 1.0 / right } else { 1.0 },
                )
            }
            DensityFamily::LogGamma { alpha } => (2.0, if *alpha < 1.0 { 1.0 / alpha } else { 1.0 }),
        }
    }
}

/// A density family together with its normalizing constant.
#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    family: DensityFamily,
    log_norm: f64,
}

impl Density {
    /// Validates the parameters and checks by quadrature that the density has
    /// unit mass.
    pub fn new(family: DensityFamily) -> Result<Self, MeasureError> {
        let family = family.canonical();
        let log_norm = family.log_normalizer()?;
        let density = Self { family, log_norm };
        let mass = density
            .quadrature(|_, _| Complex64::new(1.0, 0.0), &QuadOptions::default(), None)
            .value
            .re;
        if (mass - 1.0).abs() > DENSITY_MASS_TOL {
            return Err(MeasureError::DensityMass {
                family: density.family.name(),
                mass,
            });
        }
        Ok(density)
    }

    pub fn family(&self) -> &DensityFamily {
        &self.family
    }

    /// Density at `t`, with `one_minus_t = 1 - t` supplied separately so the
    /// right-endpoint behavior keeps full relative precision.
    pub fn pdf_split(&self, t: f64, one_minus_t: f64) -> f64 {
        match &self.family {
            DensityFamily::Lebesgue => 1.0,
            DensityFamily::Beta { a, c } => {
                if t <= 0.0 || one_minus_t <= 0.0 {
                    return boundary_value(*a - 1.0, t, c - a - 1.0, one_minus_t, self.log_norm);
                }
                (self.log_norm + (a - 1.0) * t.ln() + (c - a - 1.0) * one_minus_t.ln()).exp()
            }
            DensityFamily::LogGamma { alpha } => {
                let minus_log = if t < 0.5 { -t.ln() } else { -(-one_minus_t).ln_1p() };
                if minus_log <= 0.0 || minus_log.is_infinite() {
                    let e = alpha - 1.0;
                    return match e.partial_cmp(&0.0) {
                        Some(std::cmp::Ordering::Equal) => self.log_norm.exp(),
                        Some(std::cmp::Ordering::Greater) if minus_log <= 0.0 => 0.0,
                        Some(std::cmp::Ordering::Less) if minus_log.is_infinite() => 0.0,
                        _ => f64::INFINITY,
                    };
                }
                (self.log_norm + (alpha - 1.0) * minus_log.ln()).exp()
            }
            DensityFamily::Table(table) => table.eval(t),
        }
    }

    pub fn pdf(&self, t: f64) -> f64 {
        self.pdf_split(t, 1.0 - t)
    }

    /// ∫ f(t, 1-t) ρ(t) dt over [0, 1] (or [0, 1 - cutoff]).
    pub(crate) fn quadrature<F>(&self, f: F, opts: &QuadOptions, cutoff: Option<f64>) -> QuadEstimate
    where
        F: Fn(f64, f64) -> Complex64,
    {
        let delta = cutoff.unwrap_or(0.0);
        if let DensityFamily::Table(table) = &self.family {
            let upper = 1.0 - delta;
            let mut total = QuadEstimate::ZERO;
            for w in table.grid.windows(2) {
                let (lo, hi) = (w[0], w[1].min(upper));
                if hi <= lo {
                    break;
                }
                let seg = quad::adaptive(|t| f(t, 1.0 - t) * table.eval(t), lo, hi, opts);
                total.add_scaled(seg, 1.0);
            }
            return total;
        }
        let (p, q) = self.family.substitution();
        // left half: t = u^p
        let left = quad::adaptive(
            |u| {
                let t = u.powf(p);
                let jac = if p == 1.0 { 1.0 } else { p * u.powf(p - 1.0) };
                f(t, 1.0 - t) * (self.pdf_split(t, 1.0 - t) * jac)
            },
            0.0,
            0.5f64.powf(1.0 / p),
            opts,
        );
        // right half: 1 - t = s^q
        let right = quad::adaptive(
            |s| {
                let omt = s.powf(q);
                let t = 1.0 - omt;
                let jac = if q == 1.0 { 1.0 } else { q * s.powf(q - 1.0) };
                f(t, omt) * (self.pdf_split(t, omt) * jac)
            },
            delta.powf(1.0 / q),
            0.5f64.powf(1.0 / q),
            opts,
        );
        let mut total = left;
        total.add_scaled(right, 1.0);
        total
    }
}

fn boundary_value(left_exp: f64, t: f64, right_exp: f64, omt: f64, log_norm: f64) -> f64 {
    let factor = |exp: f64, x: f64| {
        if x > 0.0 {
            x.powf(exp)
        } else if exp == 0.0 {
            1.0
        } else if exp > 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    };
    log_norm.exp() * factor(left_exp, t) * factor(right_exp, omt)
}

/// The named constructors accepted by [`Measure::make_named`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedFamily {
    Dirac { t: f64 },
    Lebesgue,
    Beta { a: f64, c: f64 },
    LogGamma { alpha: f64 },
}

/// Positive Borel measure on [0, 1] made of atoms and weighted densities.
///
/// Equality is structural: two measures compare equal only when they hold
/// the same atoms and the same weighted densities in the same order.
#[derive(Debug, Clone, PartialEq)]
pub struct Measure {
    atoms: Vec<Atom>,
    densities: Vec<(Density, f64)>,
}

impl Measure {
    pub fn from_parts(atoms: Vec<Atom>, densities: Vec<(Density, f64)>) -> Result<Self, MeasureError> {
        if atoms.is_empty() && densities.is_empty() {
            return Err(MeasureError::Empty);
        }
        for a in &atoms {
            if !((0.0..=1.0).contains(&a.t) && a.w > 0.0 && a.w.is_finite()) {
                return Err(MeasureError::InvalidAtom { t: a.t, w: a.w });
            }
        }
        for (_, w) in &densities {
            if !(*w > 0.0 && w.is_finite()) {
                return Err(MeasureError::InvalidWeight(*w));
            }
        }
        Ok(Self { atoms, densities })
    }

    /// Like [`Measure::from_parts`] but also requires unit total mass.
    pub fn normalized(atoms: Vec<Atom>, densities: Vec<(Density, f64)>) -> Result<Self, MeasureError> {
        let m = Self::from_parts(atoms, densities)?;
        if !m.is_normalized() {
            return Err(MeasureError::NotNormalized(m.mass()));
        }
        Ok(m)
    }

    pub fn dirac(t: f64) -> Result<Self, MeasureError> {
        Self::from_parts(vec![Atom { t, w: 1.0 }], vec![])
    }

    pub fn density(family: DensityFamily) -> Result<Self, MeasureError> {
        Self::from_parts(vec![], vec![(Density::new(family)?, 1.0)])
    }

    pub fn lebesgue() -> Self {
        Self::density(DensityFamily::Lebesgue).expect("uniform density is valid")
    }

    pub fn beta(a: f64, c: f64) -> Result<Self, MeasureError> {
        Self::density(DensityFamily::Beta { a, c })
    }

    pub fn loggamma(alpha: f64) -> Result<Self, MeasureError> {
        Self::density(DensityFamily::LogGamma { alpha })
    }

    pub fn sampled(grid: Vec<f64>, values: Vec<f64>) -> Result<Self, MeasureError> {
        Self::density(DensityFamily::Table(SampledDensity::new(grid, values)?))
    }

    /// Normalized measure of a named family.
    pub fn make_named(family: NamedFamily) -> Result<Self, MeasureError> {
        match family {
            NamedFamily::Dirac { t } => Self::dirac(t),
            NamedFamily::Lebesgue => Ok(Self::lebesgue()),
            NamedFamily::Beta { a, c } => Self::beta(a, c),
            NamedFamily::LogGamma { alpha } => Self::loggamma(alpha),
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn densities(&self) -> &[(Density, f64)] {
        &self.densities
    }

    pub fn mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.w).sum::<f64>() + self.densities.iter().map(|(_, w)| w).sum::<f64>()
    }

    pub fn is_normalized(&self) -> bool {
        (self.mass() - 1.0).abs() <= MASS_TOL
    }

    /// True when the measure has no atoms.
    pub fn is_absolutely_continuous(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Total mass located at t = 0.
    pub fn mass_at_zero(&self) -> f64 {
        self.atoms.iter().filter(|a| a.t == 0.0).map(|a| a.w).sum()
    }

    /// Weighted sum of the density components at `t` (atoms excluded).
    pub fn density_at(&self, t: f64) -> f64 {
        self.densities.iter().map(|(d, w)| w * d.pdf(t)).sum()
    }

    /// `s * self + (1 - s) * other`, dropping components whose weight vanishes
    /// and merging atoms at a common location.
    pub fn mix(&self, other: &Measure, s: f64) -> Result<Measure, MeasureError> {
        if !(0.0..=1.0).contains(&s) {
            return Err(MeasureError::Parameter(format!("mixing weight {s} outside [0, 1]")));
        }
        let mut atoms: Vec<Atom> = Vec::new();
        let scaled_atoms = self
            .atoms
            .iter()
            .map(|a| (a, s))
            .chain(other.atoms.iter().map(|a| (a, 1.0 - s)));
        for (a, f) in scaled_atoms {
            let w = a.w * f;
            if w == 0.0 {
                continue;
            }
            match atoms.iter_mut().find(|b| b.t == a.t) {
                Some(b) => b.w += w,
                None => atoms.push(Atom { t: a.t, w }),
            }
        }
        let densities = self
            .densities
            .iter()
            .map(|(d, w)| (d.clone(), w * s))
            .chain(other.densities.iter().map(|(d, w)| (d.clone(), w * (1.0 - s))))
            .filter(|(_, w)| *w > 0.0)
            .collect();
        Measure::from_parts(atoms, densities)
    }

    /// Quadrature of the density part plus exact atom contributions.
    /// With `cutoff = Some(δ)` only the density part over [0, 1 - δ] is
    /// integrated and atoms are skipped.
    pub(crate) fn quadrature_split<F>(&self, f: F, opts: &QuadOptions, cutoff: Option<f64>) -> QuadEstimate
    where
        F: Fn(f64, f64) -> Complex64,
    {
        let mut total = QuadEstimate::ZERO;
        if cutoff.is_none() {
            for a in &self.atoms {
                total.value += f(a.t, 1.0 - a.t) * a.w;
            }
        }
        for (d, w) in &self.densities {
            total.add_scaled(d.quadrature(&f, opts, cutoff), *w);
        }
        total
    }

    /// ∫ f dμ with the default tolerance.
    pub fn integrate<F>(&self, f: F) -> Result<Complex64, MeasureError>
    where
        F: Fn(f64) -> Complex64,
    {
        self.integrate_with(f, &QuadOptions::default())
    }

    pub fn integrate_with<F>(&self, f: F, opts: &QuadOptions) -> Result<Complex64, MeasureError>
    where
        F: Fn(f64) -> Complex64,
    {
        finish(self.quadrature_split(|t, _| f(t), opts, None))
    }

    /// ∫ f dμ for a fallible integrand; the first integrand error wins.
    pub fn try_integrate<F, E>(&self, f: F, opts: &QuadOptions) -> Result<Result<Complex64, MeasureError>, E>
    where
        F: Fn(f64) -> Result<Complex64, E>,
    {
        let failure: RefCell<Option<E>> = RefCell::new(None);
        let est = self.quadrature_split(
            |t, _| match f(t) {
                Ok(v) => v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            },
            opts,
            None,
        );
        match failure.into_inner() {
            Some(e) => Err(e),
            None => Ok(finish(est)),
        }
    }

    /// The n-th moment ∫ tⁿ dμ.
    pub fn moment(&self, n: usize) -> Result<f64, MeasureError> {
        let n = i32::try_from(n).map_err(|_| MeasureError::Parameter(format!("moment index {n} too large")))?;
        let v = finish(self.quadrature_split(|t, _| Complex64::new(t.powi(n), 0.0), &QuadOptions::default(), None))?;
        Ok(v.re.clamp(0.0, self.mass()))
    }

    /// Moments a_0..a_{len-1}.
    pub fn moments(&self, len: usize) -> Result<Vec<f64>, MeasureError> {
        (0..len).map(|n| self.moment(n)).collect()
    }
}

pub(crate) fn finish(est: QuadEstimate) -> Result<Complex64, MeasureError> {
    if est.converged {
        Ok(est.value)
    } else {
        Err(MeasureError::Inconclusive {
            estimate: est.value.norm(),
            error: est.error,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::pochhammer;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn dirac_moments() {
        let m = Measure::dirac(1.0).unwrap();
        assert_eq!(m.moment(7).unwrap(), 1.0);
        let half = Measure::dirac(0.5).unwrap();
        assert_eq!(half.integrate(|t| c(t * t)).unwrap().re, 0.25);
    }

    #[test]
    fn lebesgue_moment() {
        let m = Measure::lebesgue();
        assert!((m.moment(3).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn uniform_beta_is_lebesgue() {
        let m = Measure::make_named(NamedFamily::Beta { a: 1.0, c: 2.0 }).unwrap();
        assert_eq!(m, Measure::lebesgue());
        assert!((m.moment(1).unwrap() - 0.5).abs() < 1e-15);
        let lg = Measure::make_named(NamedFamily::LogGamma { alpha: 1.0 }).unwrap();
        assert_eq!(lg, Measure::lebesgue());
    }

    #[test]
    fn dirac_at_zero_generates_one() {
        let m = Measure::make_named(NamedFamily::Dirac { t: 0.0 }).unwrap();
        let f = m.integrate(|t| 1.0 / (c(1.0) - Complex64::new(0.3, 0.4) * t)).unwrap();
        assert_eq!(f, c(1.0));
    }

    #[test]
    fn integrate_log_closed_form() {
        let m = Measure::lebesgue();
        let v = m.integrate(|t| c(1.0 / (1.0 - t / 2.0))).unwrap();
        assert!((v.re - 2.0 * 2f64.ln()).abs() < 1e-13);
        let one = Measure::dirac(1.0).unwrap();
        assert_eq!(one.integrate(|t| c(1.0 / (1.0 + t))).unwrap().re, 0.5);
    }

    #[test]
    fn beta_moments_are_pochhammer_ratios() {
        for &(a, cc) in &[(1.0, 3.0), (0.5, 1.2), (2.5, 3.1), (0.3, 4.0), (3.0, 3.5)] {
            let m = Measure::beta(a, cc).unwrap();
            for n in 0..=20 {
                let exact = pochhammer(a, n) / pochhammer(cc, n);
                let got = m.moment(n).unwrap();
                assert!((got - exact).abs() < 1e-10, "beta({a},{cc}) n={n}: {got} vs {exact}");
            }
        }
    }

    #[test]
    fn loggamma_moments() {
        for &alpha in &[0.3, 0.5, 1.5, 2.0, 3.0, 4.5] {
            let m = Measure::loggamma(alpha).unwrap();
            for n in 0..=20 {
                let exact = (n as f64 + 1.0).powf(-alpha);
                let got = m.moment(n).unwrap();
                assert!((got - exact).abs() < 1e-10, "loggamma({alpha}) n={n}: {got} vs {exact}");
            }
        }
    }

    #[test]
    fn parameter_domains() {
        assert!(matches!(Measure::beta(2.0, 1.0), Err(MeasureError::Parameter(_))));
        assert!(matches!(Measure::beta(0.0, 1.0), Err(MeasureError::Parameter(_))));
        assert!(matches!(Measure::loggamma(0.0), Err(MeasureError::Parameter(_))));
        assert!(matches!(Measure::dirac(1.5), Err(MeasureError::InvalidAtom { .. })));
        assert!(matches!(Measure::from_parts(vec![], vec![]), Err(MeasureError::Empty)));
        let half = Atom { t: 0.2, w: 0.5 };
        assert!(matches!(
            Measure::normalized(vec![half], vec![]),
            Err(MeasureError::NotNormalized(_))
        ));
    }

    #[test]
    fn sampled_table_renormalizes() {
        let grid: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let values = vec![3.0; 11];
        let m = Measure::sampled(grid, values).unwrap();
        assert!((m.moment(0).unwrap() - 1.0).abs() < 1e-14);
        assert!((m.moment(1).unwrap() - 0.5).abs() < 1e-14);
        assert!((m.density_at(0.37) - 1.0).abs() < 1e-14);
        assert!(Measure::sampled(vec![0.0, 0.5, 0.4], vec![1.0; 3]).is_err());
        assert!(Measure::sampled(vec![0.0, 1.0], vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn mixing_keeps_probability() {
        let m = Measure::dirac(0.0)
            .unwrap()
            .mix(&Measure::beta(1.0, 3.0).unwrap(), 0.3)
            .unwrap();
        assert!(m.is_normalized());
        let unchanged = Measure::dirac(0.2).unwrap().mix(&Measure::lebesgue(), 1.0).unwrap();
        assert_eq!(unchanged, Measure::dirac(0.2).unwrap());
        let merged = Measure::dirac(0.2)
            .unwrap()
            .mix(&Measure::dirac(0.2).unwrap(), 0.5)
            .unwrap();
        assert_eq!(merged.atoms().len(), 1);
    }

    #[test]
    fn moments_non_increasing() {
        let m = Measure::beta(0.4, 0.9).unwrap();
        let a = m.moments(25).unwrap();
        assert!(a.windows(2).all(|w| w[1] <= w[0] + 1e-15));
    }

    #[test]
    fn try_integrate_propagates_first_error() {
        let m = Measure::lebesgue();
        let r: Result<_, &str> = m.try_integrate(
            |t| if t > 0.5 { Err("boom") } else { Ok(c(t)) },
            &QuadOptions::default(),
        );
        assert_eq!(r.unwrap_err(), "boom");
    }
}
