//! `Li_α(z) = Σ_{n≥1} zⁿ/n^α` for real α ≥ 0.

use super::{zeta, SeriesOptions, SpecialFnError, SERIES_MARGIN};
use crate::gen_func::{check_slit, TFunction};
use crate::measure::Measure;
use num_complex::Complex64;

/// Beyond this modulus [`polylog`] switches to the integral representation.
const SERIES_SWITCH: f64 = 0.9;

fn check_order(alpha: f64) -> Result<(), SpecialFnError> {
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(SpecialFnError::Domain {
            function: "polylog order",
            argument: alpha,
        });
    }
    Ok(())
}

fn li0(z: Complex64) -> Result<Complex64, SpecialFnError> {
    check_slit(z)?;
    Ok(z / (1.0 - z))
}

/// Direct power series on `|z| ≤ 1 - 1e-9`. The tail after term n is
/// bounded by `|term| · |z|/(1 - |z|)` since `n^{-α}` is non-increasing.
pub fn polylog_series(alpha: f64, z: Complex64, opts: &SeriesOptions) -> Result<Complex64, SpecialFnError> {
    check_order(alpha)?;
    let r = z.norm();
    if !(r <= 1.0 - SERIES_MARGIN) {
        return Err(SpecialFnError::OutsideDisk {
            function: "polylog",
            modulus: r,
        });
    }
    if alpha == 0.0 {
        return li0(z);
    }
    let tail_factor = r / (1.0 - r);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zn = z;
    let mut last = 0.0;
    for n in 1..=opts.max_terms {
        let term = zn * (n as f64).powf(-alpha);
        sum += term;
        last = term.norm();
        if last * tail_factor <= opts.tol * (1.0 + sum.norm()) {
            return Ok(sum);
        }
        zn *= z;
    }
    Err(SpecialFnError::Inconclusive {
        terms: opts.max_terms,
        last_term: last,
    })
}

/// `z/Γ(α) ∫₀¹ (-log t)^{α-1}/(1 - tz) dt`, valid on the slit plane for α > 0.
pub fn polylog_integral(alpha: f64, z: Complex64) -> Result<Complex64, SpecialFnError> {
    check_order(alpha)?;
    if alpha == 0.0 {
        return li0(z);
    }
    let f = TFunction::new(Measure::loggamma(alpha)?)?;
    Ok(z * f.eval(z)?)
}

/// Li_α(z): closed form for α = 0, ζ(α) at z = 1, the series on
/// `|z| ≤ 0.9` and the integral representation elsewhere on the slit plane.
pub fn polylog(alpha: f64, z: Complex64, opts: &SeriesOptions) -> Result<Complex64, SpecialFnError> {
    check_order(alpha)?;
    if alpha == 0.0 {
        return li0(z);
    }
    if z == Complex64::new(1.0, 0.0) {
        return Ok(Complex64::new(zeta(alpha)?, 0.0));
    }
    if z.norm() <= SERIES_SWITCH {
        polylog_series(alpha, z, opts)
    } else {
        polylog_integral(alpha, z)
    }
}
