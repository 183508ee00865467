//! Quasiconformality certificates for `Li_α + c·conj(Li_β)` and
//! `L_{a,c} + b·conj(L_{a',c'})`.
//!
//! Each family has two sufficient conditions: a reciprocal branch, where
//! `h'/g'` belongs to class T and so `|ω| ≤ 2c`, and a boundary branch, where
//! `g'/h'` belongs to class T and `|ω| ≤ c · (g'/h')(1⁻)`. Identical parts give
//! `ω ≡ c`. When several apply, the smallest constant is used.

use super::{hypergeom_constant_m, l_prime_at_one, zeta, SpecialFnError};
use crate::gen_func::{ExtendedReal, ShiftedTFunction};
use crate::grid::GridSpec;
use crate::harmonic_map::{sampled_limit, sup_dilatation, Branch, CertMethod, HarmonicMap, QcCertificate, Verdict};
use crate::measure::Measure;
use num_complex::Complex64;

const SLACK: f64 = 1e-12;

struct Candidate {
    branch: Branch,
    constant: f64,
}

/// Smallest constant wins; on ties the boundary branch is preferred, then
/// the reciprocal branch.
fn choose(candidates: Vec<Candidate>) -> Option<Candidate> {
    let rank = |b: Branch| match b {
        Branch::BoundaryLimit => 0,
        Branch::ReciprocalFloor => 1,
        Branch::IdenticalParts => 2,
    };
    candidates.into_iter().min_by(|x, y| {
        x.constant
            .total_cmp(&y.constant)
            .then(rank(x.branch).cmp(&rank(y.branch)))
    })
}

fn decide(cert: &mut QcCertificate, chosen: Option<Candidate>) {
    match chosen {
        None => {
            cert.verdict = Verdict::Inconclusive;
            cert.note = "no sufficient condition applies; no claim is made".into();
        }
        Some(c) => {
            cert.branch = Some(c.branch);
            cert.constant = Some(c.constant);
            cert.verdict = if c.constant <= cert.bound_k + SLACK {
                Verdict::Certified
            } else if c.branch == Branch::ReciprocalFloor {
                // 2c is only an upper bound for sup |ω|
                Verdict::Inconclusive
            } else {
                Verdict::Violated
            };
            cert.note = match c.branch {
                Branch::ReciprocalFloor => "sup |ω| <= 2c".into(),
                Branch::BoundaryLimit => "sup |ω| = c times the boundary limit of g'/h'".into(),
                Branch::IdenticalParts => "identical parts: ω is the constant c".into(),
            };
        }
    }
}

fn spot_check(
    cert: &mut QcCertificate,
    mu: Measure,
    nu: Measure,
    c: f64,
    grid: &GridSpec,
) -> Result<(), SpecialFnError> {
    if c >= 1.0 {
        cert.note.push_str("; grid check skipped because c >= 1");
        return Ok(());
    }
    let f = HarmonicMap::from_measures(mu, nu, c)?;
    let s = sup_dilatation(&f, grid)?;
    cert.attach_sup(&s, grid);
    cert.reconcile();
    Ok(())
}

fn check_common(c: f64, k: f64, name: &'static str) -> Result<(), SpecialFnError> {
    if !(c >= 0.0 && c.is_finite()) {
        return Err(SpecialFnError::Domain {
            function: name,
            argument: c,
        });
    }
    if !(0.0..1.0).contains(&k) {
        return Err(crate::harmonic_map::HarmonicError::InvalidBound(k).into());
    }
    Ok(())
}

/// Certificate for `f = Li_α + c·conj(Li_β)` with α, β ≥ 1.
///
/// Reciprocal branch when α ≤ β; boundary branch when 2 < β ≤ α with
/// constant `c ζ(β-1)/ζ(α-1)`. The sampled `|ω|` on `grid` is recorded and
/// overrides a certificate it contradicts.
pub fn certify_polylog_map(
    alpha: f64,
    beta: f64,
    c: f64,
    k: f64,
    grid: &GridSpec,
) -> Result<QcCertificate, SpecialFnError> {
    for (name, v) in [
        ("polylog order alpha (needs >= 1)", alpha),
        ("polylog order beta (needs >= 1)", beta),
    ] {
        if !(v >= 1.0 && v.is_finite()) {
            return Err(SpecialFnError::Domain {
                function: name,
                argument: v,
            });
        }
    }
    check_common(c, k, "co-analytic coefficient")?;
    let mut cert = QcCertificate::new(CertMethod::Polylog, k);
    let mut candidates = Vec::new();
    if alpha <= beta {
        candidates.push(Candidate {
            branch: Branch::ReciprocalFloor,
            constant: 2.0 * c,
        });
    }
    if 2.0 < beta && beta <= alpha {
        let (zb, za) = (zeta(beta - 1.0)?, zeta(alpha - 1.0)?);
        cert.details.insert("zeta_beta_minus_one".into(), zb);
        cert.details.insert("zeta_alpha_minus_one".into(), za);
        candidates.push(Candidate {
            branch: Branch::BoundaryLimit,
            constant: c * (zb / za),
        });
    }
    if alpha == beta {
        candidates.push(Candidate {
            branch: Branch::IdenticalParts,
            constant: c,
        });
    }
    decide(&mut cert, choose(candidates));
    spot_check(&mut cert, Measure::loggamma(alpha)?, Measure::loggamma(beta)?, c, grid)?;
    Ok(cert)
}

/// Certificate for `f = L_{a,c} + b·conj(L_{a2,c2})`.
///
/// Reciprocal branch when `a ≥ a2` and `c - a ≤ c2 - a2`; boundary branch
/// when `a2 ≥ a` and `2 < c2 - a2 ≤ c - a` with constant `b M`. The closed
/// form of `L'_{a,c}(1⁻)` is cross-checked against extrapolated samples of
/// the quadrature derivative at `x = 1 - 10^{-j}`.
pub fn certify_hypergeom_map(
    a: f64,
    c: f64,
    a2: f64,
    c2: f64,
    b: f64,
    k: f64,
    grid: &GridSpec,
) -> Result<QcCertificate, SpecialFnError> {
    check_common(b, k, "co-analytic coefficient")?;
    let mu = Measure::beta(a, c)?;
    let nu = Measure::beta(a2, c2)?;
    let mut cert = QcCertificate::new(CertMethod::Hypergeom, k);
    let mut candidates = Vec::new();
    if a >= a2 && c - a <= c2 - a2 {
        candidates.push(Candidate {
            branch: Branch::ReciprocalFloor,
            constant: 2.0 * b,
        });
    }
    if a2 >= a && 2.0 < c2 - a2 && c2 - a2 <= c - a {
        let m = hypergeom_constant_m(a, c, a2, c2)?;
        cert.details.insert("m".into(), m);
        candidates.push(Candidate {
            branch: Branch::BoundaryLimit,
            constant: b * m,
        });
    }
    if a == a2 && c == c2 {
        candidates.push(Candidate {
            branch: Branch::IdenticalParts,
            constant: b,
        });
    }
    for (key, (p, q), measure) in [("h", (a, c), &mu), ("g", (a2, c2), &nu)] {
        if let ExtendedReal::Finite(closed) = l_prime_at_one(p, q)? {
            let h = ShiftedTFunction::from_measure(measure.clone())?;
            let (sampled, _) = sampled_limit(|x| Ok(h.derivative(Complex64::new(x, 0.0))?.re))?;
            cert.details.insert(format!("{key}_prime_at_one"), closed);
            cert.details.insert(format!("{key}_prime_at_one_sampled"), sampled);
            cert.details
                .insert(format!("{key}_prime_relative_gap"), ((sampled - closed) / closed).abs());
        }
    }
    decide(&mut cert, choose(candidates));
    spot_check(&mut cert, mu, nu, b, grid)?;
    Ok(cert)
}
