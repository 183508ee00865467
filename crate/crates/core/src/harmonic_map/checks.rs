//! Pointwise verifications of the modulus inequality, the partial-derivative
//! sign conditions and the density cross-ratio condition.

use super::{AnalyticPart, HarmonicError, HarmonicMap};
use crate::gen_func::{check_t_membership, MembershipReport, ShiftedTFunction};
use crate::grid::GridSpec;
use crate::measure::{DensityFamily, Measure};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Slack for all inequality checks in this module.
pub const CHECK_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusReport {
    pub a: f64,
    /// `a + lim_{r→1⁻} f(-r)`.
    pub limit_bound: f64,
    pub samples: usize,
    /// Minimum of `|a + f(z)| - (a + f(-|z|))`.
    pub min_pointwise_margin: f64,
    /// Minimum of `(a + f(-|z|)) - limit_bound`.
    pub min_chain_margin: f64,
    pub failures: usize,
    pub holds: bool,
}

pub(crate) fn modulus_lower_bound_check(
    f: &HarmonicMap,
    a: f64,
    samples: &[Complex64],
) -> Result<ModulusReport, HarmonicError> {
    let c = f.real_c()?;
    if !(a >= 0.0 && a.is_finite()) {
        return Err(HarmonicError::Parameter(format!(
            "a = {a} must be a finite non-negative number"
        )));
    }
    let limit_bound = a + f.h().limit_at_minus_one()? + c * f.g().limit_at_minus_one()?;
    let rows: Vec<Result<(f64, f64), HarmonicError>> = samples
        .par_iter()
        .map(|&z| {
            let r = z.norm();
            if !(r < 1.0) {
                return Err(HarmonicError::NotInDisk(z));
            }
            let lhs = (a + f.eval(z)?).norm();
            let mid = a + f.eval(Complex64::new(-r, 0.0))?.re;
            Ok((lhs - mid, mid - limit_bound))
        })
        .collect();
    let mut report = ModulusReport {
        a,
        limit_bound,
        samples: samples.len(),
        min_pointwise_margin: f64::INFINITY,
        min_chain_margin: f64::INFINITY,
        failures: 0,
        holds: true,
    };
    for row in rows {
        let (m1, m2) = row?;
        report.min_pointwise_margin = report.min_pointwise_margin.min(m1);
        report.min_chain_margin = report.min_chain_margin.min(m2);
        if m1 < -CHECK_SLACK || m2 < -CHECK_SLACK {
            report.failures += 1;
        }
    }
    report.holds = report.failures == 0;
    Ok(report)
}

/// Outcome of the second sign condition, which needs `μ - cν ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SecondSignCheck {
    Skipped {
        reason: String,
    },
    Checked {
        violations: usize,
        min_margin: f64,
        holds: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialSignReport {
    pub nodes: usize,
    /// Nodes where the kernel integrals vanish identically (all mass at t = 0).
    pub degenerate_nodes: usize,
    /// Count of nodes with `y ∂Re f/∂y > 1e-9`.
    pub first_violations: usize,
    /// Minimum of `-y ∂Re f/∂y` over non-degenerate nodes.
    pub first_min_margin: f64,
    pub first_holds: bool,
    pub second: SecondSignCheck,
    pub note: String,
}

/// `2yt(1 - xt)/D²` with `D = 1 - 2xt + t²|z|²`.
fn sign_kernel(z: Complex64, t: f64) -> f64 {
    let (x, y) = (z.re, z.im);
    let d = 1.0 - 2.0 * x * t + t * t * z.norm_sqr();
    2.0 * y * t * (1.0 - x * t) / (d * d)
}

fn generated(part: &AnalyticPart) -> Result<&ShiftedTFunction, HarmonicError> {
    part.as_generated().ok_or(HarmonicError::Unsupported(
        "sign checks integrate the representing measures",
    ))
}

/// Sufficient structural check that `μ - cν` is a non-negative measure:
/// every atom of ν needs an atom of μ at the same point with at least c
/// times its weight, and the density parts must dominate on 1000 midpoints.
pub fn probe_dominance(mu: &Measure, nu: &Measure, c: f64) -> Result<(), String> {
    if c == 0.0 {
        return Ok(());
    }
    for b in nu.atoms() {
        let covered = mu.atoms().iter().any(|a| a.t == b.t && a.w >= c * b.w - 1e-15);
        if !covered {
            return Err(format!(
                "atom of ν at t = {} (weight {}) is not dominated by an atom of μ",
                b.t, b.w
            ));
        }
    }
    if !nu.densities().is_empty() {
        const N: usize = 1000;
        for i in 0..N {
            let t = (i as f64 + 0.5) / N as f64;
            let (m, n) = (mu.density_at(t), c * nu.density_at(t));
            if m < n - 1e-12 * n.abs().max(1.0) {
                return Err(format!("density of μ falls below c times that of ν at t = {t}"));
            }
        }
    }
    Ok(())
}

pub(crate) fn probe_identical(mu: &Measure, nu: &Measure) -> bool {
    mu == nu
}

pub(crate) fn partial_sign_check(f: &HarmonicMap, grid: &GridSpec) -> Result<PartialSignReport, HarmonicError> {
    let c = f.real_c()?;
    grid.validate()?;
    let mu = generated(f.h())?.measure();
    let nu = generated(f.g())?.measure();
    let probe = probe_dominance(mu, nu, c);
    let points = grid.off_axis_points();
    let integrals: Vec<Result<(f64, f64, f64), HarmonicError>> = points
        .par_iter()
        .map(|&z| {
            let im = mu.integrate(|t| Complex64::new(sign_kernel(z, t), 0.0))?.re;
            let inu = nu.integrate(|t| Complex64::new(sign_kernel(z, t), 0.0))?.re;
            Ok((z.im, im, inu))
        })
        .collect();
    let mut report = PartialSignReport {
        nodes: points.len(),
        degenerate_nodes: 0,
        first_violations: 0,
        first_min_margin: f64::INFINITY,
        first_holds: true,
        second: SecondSignCheck::Skipped { reason: String::new() },
        note: String::new(),
    };
    let mut second_violations = 0;
    let mut second_min = f64::INFINITY;
    for row in integrals {
        let (y, im, inu) = row?;
        // -y ∂Re f/∂y = y(I_μ + c I_ν); y ∂Im f/∂x = y(I_μ - c I_ν)
        let first = y * (im + c * inu);
        if first == 0.0 {
            report.degenerate_nodes += 1;
            continue;
        }
        report.first_min_margin = report.first_min_margin.min(first);
        if first < -CHECK_SLACK {
            report.first_violations += 1;
        }
        let second = y * (im - c * inu);
        second_min = second_min.min(second);
        if second < -CHECK_SLACK {
            second_violations += 1;
        }
    }
    report.first_holds = report.first_violations == 0;
    report.second = match probe {
        Err(reason) => SecondSignCheck::Skipped { reason },
        Ok(()) => SecondSignCheck::Checked {
            violations: second_violations,
            min_margin: second_min,
            holds: second_violations == 0,
        },
    };
    if report.degenerate_nodes > 0 {
        report.note = "degenerate nodes: the kernel vanishes because all mass sits at t = 0".into();
    }
    Ok(report)
}

/// Result of sampling `φ(s)ψ(t) ≥ φ(t)ψ(s)` for `s ≤ t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossRatioScan {
    pub pairs: usize,
    pub violations: usize,
    /// Most negative `(φ(s)ψ(t) - φ(t)ψ(s)) / (φ(s)ψ(t) + φ(t)ψ(s))`, or 0.
    pub worst_relative_gap: f64,
    pub worst_pair: [f64; 2],
    pub holds: bool,
}

/// Scans all pairs of the midpoints `(i + 1/2)/n`, with relative slack 1e-12.
pub fn density_ratio_scan<P, Q>(phi: P, psi: Q, n: usize) -> CrossRatioScan
where
    P: Fn(f64) -> f64,
    Q: Fn(f64) -> f64,
{
    let s: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
    let p: Vec<f64> = s.iter().map(|&t| phi(t)).collect();
    let q: Vec<f64> = s.iter().map(|&t| psi(t)).collect();
    let mut scan = CrossRatioScan {
        pairs: 0,
        violations: 0,
        worst_relative_gap: 0.0,
        worst_pair: [0.0, 0.0],
        holds: true,
    };
    for i in 0..n {
        for j in i..n {
            scan.pairs += 1;
            let (lhs, rhs) = (p[i] * q[j], p[j] * q[i]);
            let scale = lhs.abs() + rhs.abs();
            if scale == 0.0 {
                continue;
            }
            let gap = (lhs - rhs) / scale;
            if gap < scan.worst_relative_gap {
                scan.worst_relative_gap = gap;
                scan.worst_pair = [s[i], s[j]];
            }
            if gap < -1e-12 {
                scan.violations += 1;
            }
        }
    }
    scan.holds = scan.violations == 0;
    scan
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityRatioReport {
    pub scan: CrossRatioScan,
    /// Membership evidence for `g/h`, divided by z, i.e. `F_g/F_h`.
    pub quotient: Option<MembershipReport>,
    /// Membership evidence for `g'/h'`.
    pub derivative_quotient: Option<MembershipReport>,
}

/// Checks the cross-ratio condition for densities φ (of h) and ψ (of g); when
/// it holds and a grid is given, samples class-T membership of `g/h` and
/// `g'/h'`.
pub fn density_ratio_condition(
    phi: &DensityFamily,
    psi: &DensityFamily,
    n: usize,
    grid: Option<&GridSpec>,
) -> Result<DensityRatioReport, HarmonicError> {
    if n < 2 {
        return Err(HarmonicError::Parameter("need at least 2 sample points".into()));
    }
    let h = ShiftedTFunction::from_measure(Measure::density(phi.clone())?)?;
    let g = ShiftedTFunction::from_measure(Measure::density(psi.clone())?)?;
    let (mu, nu) = (h.measure(), g.measure());
    let scan = density_ratio_scan(|t| mu.density_at(t), |t| nu.density_at(t), n);
    let mut report = DensityRatioReport {
        scan,
        quotient: None,
        derivative_quotient: None,
    };
    if let (true, Some(grid)) = (scan.holds, grid) {
        report.quotient = Some(check_t_membership(
            |z| Ok::<_, HarmonicError>(g.base().eval(z)? / h.base().eval(z)?),
            grid,
        )?);
        report.derivative_quotient = Some(check_t_membership(
            |z| Ok::<_, HarmonicError>(g.derivative(z)? / h.derivative(z)?),
            grid,
        )?);
    }
    Ok(report)
}
