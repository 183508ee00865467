//! Quasiconformality certificates: grid estimates of `sup |ω|` and the
//! sufficient conditions that bound it analytically.

use super::checks::{density_ratio_scan, probe_identical};
use super::{HarmonicError, HarmonicMap};
use crate::gen_func::{ExtendedReal, ShiftedTFunction};
use crate::grid::GridSpec;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Analytic constants are compared with `k` up to this slack.
pub const BOUND_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertMethod {
    /// Sampled supremum of `|ω|` over the disk grid.
    Grid,
    /// `c · sup |h'(tz)/h'(z)| ≤ k` for `h + c·conj(h∗g)`.
    RatioBound,
    /// Polylogarithm pairs.
    Polylog,
    /// `c · lim_{x→1⁻} g'(x)/h'(x) ≤ k` under the density ratio condition.
    DerivativeLimit,
    /// Incomplete-beta hypergeometric pairs.
    Hypergeom,
}

/// Which sufficient condition produced the analytic constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `h'/g'` is a shifted-class function: `|ω| ≤ c · 2`.
    ReciprocalFloor,
    /// `g'/h'` is a class-T function: `|ω| ≤ c · F(1⁻)`.
    BoundaryLimit,
    /// `g = h`, so `ω ≡ c`.
    IdenticalParts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Certified,
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QcCertificate {
    pub method: CertMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<Branch>,
    pub verdict: Verdict,
    pub bound_k: f64,
    /// Analytic bound on `sup |ω|`, when the method yields one.
    pub constant: Option<f64>,
    /// Sampled `max |ω|` over the disk grid.
    pub sup_estimate: Option<f64>,
    pub argsup: Option<[f64; 2]>,
    pub grid: Option<GridSpec>,
    pub nodes: usize,
    pub singular_nodes: usize,
    /// Method-specific numbers, keyed by name.
    pub details: BTreeMap<String, f64>,
    pub note: String,
}

impl QcCertificate {
    pub(crate) fn new(method: CertMethod, k: f64) -> Self {
        Self {
            method,
            branch: None,
            verdict: Verdict::Inconclusive,
            bound_k: k,
            constant: None,
            sup_estimate: None,
            argsup: None,
            grid: None,
            nodes: 0,
            singular_nodes: 0,
            details: BTreeMap::new(),
            note: String::new(),
        }
    }

    pub(crate) fn attach_sup(&mut self, s: &DilatationSup, grid: &GridSpec) {
        self.sup_estimate = s.sup;
        self.argsup = s.argsup.map(|z| [z.re, z.im]);
        self.nodes = s.nodes;
        self.singular_nodes = s.singular_nodes;
        self.grid = Some(*grid);
    }

    /// Downgrades a certified verdict when the sampled supremum contradicts
    /// the analytic constant.
    pub(crate) fn reconcile(&mut self) {
        if self.verdict == Verdict::Certified {
            if let Some(s) = self.sup_estimate {
                if s > self.bound_k + 1e-9 {
                    self.verdict = Verdict::Violated;
                    self.note.push_str("; sampled supremum exceeds k");
                }
            }
        }
    }
}

pub(crate) fn check_bound(k: f64) -> Result<(), HarmonicError> {
    if !(0.0..1.0).contains(&k) {
        return Err(HarmonicError::InvalidBound(k));
    }
    Ok(())
}

/// Sampled supremum of `|ω|` over [`GridSpec::disk_points`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DilatationSup {
    pub sup: Option<f64>,
    pub argsup: Option<Complex64>,
    pub nodes: usize,
    pub singular_nodes: usize,
}

pub fn sup_dilatation(f: &HarmonicMap, grid: &GridSpec) -> Result<DilatationSup, HarmonicError> {
    grid.validate()?;
    let values: Vec<(Complex64, Result<Complex64, HarmonicError>)> =
        grid.disk_points().par_iter().map(|&z| (z, f.dilatation(z))).collect();
    let mut out = DilatationSup {
        sup: None,
        argsup: None,
        nodes: 0,
        singular_nodes: 0,
    };
    for (z, w) in values {
        match w {
            Ok(w) => {
                out.nodes += 1;
                // first maximum in grid order wins ties
                if out.sup.is_none_or(|s| w.norm() > s) {
                    out.sup = Some(w.norm());
                    out.argsup = Some(z);
                }
            }
            Err(HarmonicError::SingularDerivative(_)) => out.singular_nodes += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Grid certificate: certified when every sampled `|ω|` is at most `k`.
/// This is numerical evidence on the grid, not a proof on the disk.
pub fn certify_qc_grid(f: &HarmonicMap, k: f64, grid: &GridSpec) -> Result<QcCertificate, HarmonicError> {
    check_bound(k)?;
    let s = sup_dilatation(f, grid)?;
    let mut cert = QcCertificate::new(CertMethod::Grid, k);
    cert.attach_sup(&s, grid);
    cert.verdict = match s.sup {
        None => Verdict::Inconclusive,
        Some(v) if v <= k => Verdict::Certified,
        Some(_) => Verdict::Violated,
    };
    cert.note = "sampled supremum over the disk grid".into();
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioSup {
    pub sup: f64,
    pub z: [f64; 2],
    pub t: f64,
    pub nodes: usize,
}

/// `max |h'(tz)/h'(z)|` over disk points z and t-samples in [0, 1].
pub fn ratio_bound_sup(h: &ShiftedTFunction, grid: &GridSpec) -> Result<RatioSup, HarmonicError> {
    grid.validate()?;
    let ts = grid.t_samples();
    let per_point: Vec<Result<(f64, Complex64, f64), HarmonicError>> = grid
        .disk_points()
        .par_iter()
        .map(|&z| {
            let hz = h.derivative(z)?;
            if hz.norm() < super::SINGULAR_DERIVATIVE {
                return Err(HarmonicError::SingularDerivative(z));
            }
            let mut best = (f64::NEG_INFINITY, z, 0.0);
            for &t in &ts {
                let r = (h.derivative(z * t)? / hz).norm();
                if r > best.0 {
                    best = (r, z, t);
                }
            }
            Ok(best)
        })
        .collect();
    let mut out = RatioSup {
        sup: f64::NEG_INFINITY,
        z: [0.0, 0.0],
        t: 0.0,
        nodes: 0,
    };
    for r in per_point {
        let (v, z, t) = r?;
        out.nodes += ts.len();
        if v > out.sup {
            out.sup = v;
            out.z = [z.re, z.im];
            out.t = t;
        }
    }
    Ok(out)
}

/// Certificate for `f = h + c·conj(h∗g)`: `|ω(z)| ≤ c sup |h'(tz)/h'(z)|`.
/// The supremum is sampled, so the constant is a grid estimate.
pub fn certify_qc_via_ratio(
    h: &ShiftedTFunction,
    g: &ShiftedTFunction,
    c: f64,
    k: f64,
    grid: &GridSpec,
) -> Result<QcCertificate, HarmonicError> {
    check_bound(k)?;
    let f = HarmonicMap::construct_conv_map(h.clone(), g, c)?;
    let ratio = ratio_bound_sup(h, grid)?;
    let mut cert = QcCertificate::new(CertMethod::RatioBound, k);
    let constant = c * ratio.sup;
    cert.constant = Some(constant);
    cert.details.insert("ratio_sup".into(), ratio.sup);
    cert.details.insert("ratio_sup_t".into(), ratio.t);
    let s = sup_dilatation(&f, grid)?;
    cert.attach_sup(&s, grid);
    cert.verdict = if constant <= k + BOUND_SLACK {
        Verdict::Certified
    } else {
        Verdict::Inconclusive
    };
    cert.note = "constant is c times the sampled ratio supremum".into();
    cert.reconcile();
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HarnackReport {
    pub m: f64,
    /// Minimum of `Re(z h''(z)/h'(z))` over the disk grid.
    pub min_re: f64,
    /// Whether `min_re > -m`.
    pub hypothesis_holds: bool,
    /// `e^{2m}`.
    pub bound: f64,
    pub ratio_sup: f64,
    /// Whether the sampled ratio respects the bound (up to 1e-9).
    pub bound_respected: bool,
}

/// Samples `Re(z h''/h') > -m` and compares `sup |h'(tz)/h'(z)|` with `e^{2m}`.
pub fn harnack_ratio_bound(h: &ShiftedTFunction, m: f64, grid: &GridSpec) -> Result<HarnackReport, HarmonicError> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(HarmonicError::Parameter(format!("m = {m} must be positive")));
    }
    grid.validate()?;
    let mins: Vec<Result<f64, HarmonicError>> = grid
        .disk_points()
        .par_iter()
        .map(|&z| {
            let d1 = h.derivative(z)?;
            let d2 = h.second_derivative(z)?;
            Ok((z * d2 / d1).re)
        })
        .collect();
    let mut min_re = f64::INFINITY;
    for v in mins {
        min_re = min_re.min(v?);
    }
    let ratio = ratio_bound_sup(h, grid)?;
    let bound = (2.0 * m).exp();
    Ok(HarnackReport {
        m,
        min_re,
        hypothesis_holds: min_re > -m,
        bound,
        ratio_sup: ratio.sup,
        bound_respected: ratio.sup <= bound + 1e-9,
    })
}

/// Points `1 - 10^{-j}` at which the quotient limit is sampled when the
/// boundary derivatives diverge.
const LIMIT_EXPONENTS: [i32; 6] = [3, 4, 5, 6, 7, 8];

/// Estimates `lim_{x→1⁻} q(x)` from samples at `x = 1 - 10^{-j}` by linear
/// Richardson extrapolation in `δ = 1 - x`. Returns the last extrapolant and
/// its distance to the previous one as an error estimate.
pub fn sampled_limit<Q>(q: Q) -> Result<(f64, f64), HarmonicError>
where
    Q: Fn(f64) -> Result<f64, HarmonicError>,
{
    let samples: Vec<f64> = LIMIT_EXPONENTS
        .iter()
        .map(|&j| q(1.0 - 10f64.powi(-j)))
        .collect::<Result<_, _>>()?;
    // linear extrapolation in δ between consecutive decades
    let ext: Vec<f64> = samples.windows(2).map(|w| w[1] + (w[1] - w[0]) / 9.0).collect();
    let n = ext.len();
    Ok((ext[n - 1], (ext[n - 1] - ext[n - 2]).abs()))
}

/// Certificate via `c · lim_{x→1⁻} g'(x)/h'(x) ≤ k`.
///
/// Applies when g = h (then ω ≡ c) or when both measures are atom-free and
/// their densities satisfy the cross-ratio condition, which makes `g'/h'` a
/// class-T function whose modulus is maximized at `1⁻`.
pub fn certify_qc_via_limit(
    h: &ShiftedTFunction,
    g: &ShiftedTFunction,
    c: f64,
    k: f64,
) -> Result<QcCertificate, HarmonicError> {
    check_bound(k)?;
    HarmonicMap::new(h.clone(), g.clone(), c)?;
    let mut cert = QcCertificate::new(CertMethod::DerivativeLimit, k);
    let (mu, nu) = (h.measure(), g.measure());
    if probe_identical(mu, nu) {
        cert.branch = Some(Branch::IdenticalParts);
        cert.constant = Some(c);
        cert.verdict = if c <= k { Verdict::Certified } else { Verdict::Violated };
        cert.note = "identical parts: the dilatation is the constant c".into();
        return Ok(cert);
    }
    if !(mu.is_absolutely_continuous() && nu.is_absolutely_continuous()) {
        cert.note = "the derivative-limit condition needs atom-free measures".into();
        return Ok(cert);
    }
    // φ represents h, ψ represents g; g'/h' ∈ T when φ(s)ψ(t) ≥ φ(t)ψ(s) for s ≤ t
    let scan = density_ratio_scan(|t| mu.density_at(t), |t| nu.density_at(t), 200);
    cert.details
        .insert("worst_relative_gap".into(), scan.worst_relative_gap);
    if !scan.holds {
        cert.note = "density cross-ratio condition fails".into();
        return Ok(cert);
    }
    let hp = h.derivative_limit_at_one()?;
    let gp = g.derivative_limit_at_one()?;
    let limit = match (hp, gp) {
        (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => {
            cert.details.insert("h_prime_at_one".into(), a);
            cert.details.insert("g_prime_at_one".into(), b);
            b / a
        }
        _ => {
            let q = |x: f64| -> Result<f64, HarmonicError> {
                let z = Complex64::new(x, 0.0);
                Ok((g.derivative(z)? / h.derivative(z)?).re)
            };
            let (l, err) = sampled_limit(q)?;
            cert.details.insert("limit_error".into(), err);
            if err > 1e-6 * (1.0 + l.abs()) {
                cert.details.insert("limit_estimate".into(), l);
                // a class-T quotient increases on [0, 1), so one large sample
                // already bounds the supremum from below
                let x = 1.0 - 10f64.powi(-LIMIT_EXPONENTS[LIMIT_EXPONENTS.len() - 1]);
                let lower = c * q(x)?;
                cert.details.insert("sampled_lower_bound".into(), lower);
                if lower > k + BOUND_SLACK {
                    cert.branch = Some(Branch::BoundaryLimit);
                    cert.verdict = Verdict::Violated;
                    cert.note = "c g'(x)/h'(x) exceeds k at a real sample x < 1".into();
                } else {
                    cert.note = "boundary quotient did not settle".into();
                }
                return Ok(cert);
            }
            l
        }
    };
    cert.details.insert("limit".into(), limit);
    let constant = c * limit;
    cert.constant = Some(constant);
    cert.branch = Some(Branch::BoundaryLimit);
    cert.verdict = if constant <= k + BOUND_SLACK {
        Verdict::Certified
    } else {
        Verdict::Violated
    };
    cert.note = "the constant is the supremum of |ω| over the disk".into();
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::Measure;

    fn shifted(mu: Measure) -> ShiftedTFunction {
        ShiftedTFunction::from_measure(mu).unwrap()
    }

    fn small_grid() -> GridSpec {
        GridSpec {
            n_r: 10,
            n_theta: 32,
            n_t: 11,
            ..GridSpec::default()
        }
    }

    #[test]
    fn grid_certificate_on_collapsing_example() {
        let f = HarmonicMap::new(
            shifted(Measure::dirac(1.0).unwrap()),
            shifted(Measure::dirac(0.0).unwrap()),
            0.2,
        )
        .unwrap();
        let grid = GridSpec::default();
        let cert = certify_qc_grid(&f, 0.9, &grid).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        let s = cert.sup_estimate.unwrap();
        assert!((s - 0.2 * 1.99 * 1.99).abs() < 1e-12);
        assert_eq!(cert.argsup, Some([-0.99, 0.99 * std::f64::consts::PI.sin()]));
        let tight = certify_qc_grid(&f, 0.5, &grid).unwrap();
        assert_eq!(tight.verdict, Verdict::Violated);
        assert!(certify_qc_grid(&f, 1.0, &grid).is_err());
    }

    #[test]
    fn ratio_sup_of_koebe_like_derivative() {
        let h = shifted(Measure::dirac(1.0).unwrap());
        let r = ratio_bound_sup(&h, &GridSpec::default()).unwrap();
        assert!((r.sup - 1.99f64.powi(2)).abs() < 1e-12);
        assert_eq!(r.t, 0.0);
    }

    #[test]
    fn harnack_bound_for_identity_and_lebesgue() {
        let grid = small_grid();
        let id = harnack_ratio_bound(&shifted(Measure::dirac(0.0).unwrap()), 0.1, &grid).unwrap();
        assert_eq!(id.min_re, 0.0);
        assert!(id.hypothesis_holds && id.bound_respected);
        assert_eq!(id.ratio_sup, 1.0);
        let leb = harnack_ratio_bound(&shifted(Measure::lebesgue()), 1.0, &grid).unwrap();
        assert!(leb.hypothesis_holds);
        assert!(leb.ratio_sup <= leb.bound);
    }

    #[test]
    fn ratio_certificate() {
        let h = shifted(Measure::dirac(0.5).unwrap());
        let g = shifted(Measure::lebesgue());
        let cert = certify_qc_via_ratio(&h, &g, 0.3, 0.9, &small_grid()).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        assert!(cert.sup_estimate.unwrap() <= cert.constant.unwrap() + 1e-12);
    }

    #[test]
    fn limit_certificate_identical_parts() {
        let h = shifted(Measure::beta(2.0, 5.0).unwrap());
        let cert = certify_qc_via_limit(&h, &h, 0.4, 0.5).unwrap();
        assert_eq!(cert.branch, Some(Branch::IdenticalParts));
        assert_eq!(cert.verdict, Verdict::Certified);
    }

    #[test]
    fn limit_certificate_rejects_atoms() {
        let h = shifted(Measure::dirac(0.5).unwrap());
        let g = shifted(Measure::lebesgue());
        let cert = certify_qc_via_limit(&h, &g, 0.4, 0.5).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn sampled_limit_of_linear_approach() {
        let (l, err) = sampled_limit(|x| Ok(2.0 + 3.0 * (1.0 - x))).unwrap();
        assert!((l - 2.0).abs() < 1e-9 && err < 1e-9);
    }
}
