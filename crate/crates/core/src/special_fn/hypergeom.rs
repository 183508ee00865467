//! Gauss hypergeometric series `₂F₁(a, b; c; z)` for real parameters and
//! the shifted function `L_{a,c}(z) = z ₂F₁(a, 1; c; z)`.

use super::{gamma_real, ln_gamma, SeriesOptions, SpecialFnError, SERIES_MARGIN};
use crate::gen_func::{ExtendedReal, ShiftedTFunction};
use crate::measure::Measure;
use num_complex::Complex64;

const L_SERIES_SWITCH: f64 = 0.9;

fn is_pole(c: f64) -> bool {
    c <= 0.0 && c.fract() == 0.0
}

fn finite(function: &'static str, xs: &[f64]) -> Result<(), SpecialFnError> {
    match xs.iter().find(|x| !x.is_finite()) {
        Some(&x) => Err(SpecialFnError::Domain { function, argument: x }),
        None => Ok(()),
    }
}

/// Series sum on `|z| ≤ 1 - 1e-9`.
///
/// Once n exceeds the parameters, the term ratio
/// `ρₙ = |(a+n)(b+n)/((c+n)(n+1))| |z|` is monotone in n with limit `|z|`,
/// so the tail is bounded by `|term| ρ*/(1 - ρ*)` with `ρ* = max(ρₙ, |z|)`.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: Complex64, opts: &SeriesOptions) -> Result<Complex64, SpecialFnError> {
    finite("hyp2f1 parameter", &[a, b, c])?;
    if is_pole(c) {
        return Err(SpecialFnError::ParameterPole(c));
    }
    let r = z.norm();
    if !(r <= 1.0 - SERIES_MARGIN) {
        return Err(SpecialFnError::OutsideDisk {
            function: "hyp2f1",
            modulus: r,
        });
    }
    let settle = 2.0 * (a.abs() + b.abs() + c.abs()) + 2.0;
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for n in 0..opts.max_terms {
        let k = n as f64;
        term *= z * ((a + k) * (b + k) / ((c + k) * (k + 1.0)));
        sum += term;
        if term == Complex64::new(0.0, 0.0) {
            return Ok(sum);
        }
        if k + 1.0 > settle {
            let next = ((a + k + 1.0) * (b + k + 1.0) / ((c + k + 1.0) * (k + 2.0))).abs() * r;
            let rho = next.max(r);
            if rho < 1.0 && term.norm() * rho / (1.0 - rho) <= opts.tol * (1.0 + sum.norm()) {
                return Ok(sum);
            }
        }
    }
    Err(SpecialFnError::Inconclusive {
        terms: opts.max_terms,
        last_term: term.norm(),
    })
}

/// `d/dz ₂F₁(a, b; c; z) = (ab/c) ₂F₁(a+1, b+1; c+1; z)`.
pub fn hyp2f1_derivative(
    a: f64,
    b: f64,
    c: f64,
    z: Complex64,
    opts: &SeriesOptions,
) -> Result<Complex64, SpecialFnError> {
    if is_pole(c) {
        return Err(SpecialFnError::ParameterPole(c));
    }
    Ok(a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z, opts)?)
}

/// `₂F₁(a, b; c; 1⁻) = Γ(c)Γ(c-a-b)/(Γ(c-a)Γ(c-b))` for `c - a - b > 0`.
pub fn gauss_value(a: f64, b: f64, c: f64) -> Result<f64, SpecialFnError> {
    finite("gauss_value parameter", &[a, b, c])?;
    if is_pole(c) {
        return Err(SpecialFnError::ParameterPole(c));
    }
    let s = c - a - b;
    if !(s > 0.0) {
        return Err(SpecialFnError::Domain {
            function: "gauss_value (needs c - a - b > 0)",
            argument: s,
        });
    }
    if a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    let args = [c, s, c - a, c - b];
    if args.iter().all(|&x| x > 0.0) {
        let v = ln_gamma(c)? + ln_gamma(s)? - ln_gamma(c - a)? - ln_gamma(c - b)?;
        return Ok(v.exp());
    }
    let den = gamma_real(c - a) * gamma_real(c - b);
    if den.is_infinite() {
        // a or b is a non-positive integer relative to c: the series terminates
        return Ok(0.0);
    }
    Ok(gamma_real(c) * gamma_real(s) / den)
}

fn check_l(a: f64, c: f64) -> Result<(), SpecialFnError> {
    finite("L parameter", &[a, c])?;
    if !(a > 0.0) {
        return Err(SpecialFnError::Domain {
            function: "L (needs a > 0)",
            argument: a,
        });
    }
    if !(c > a) {
        return Err(SpecialFnError::Domain {
            function: "L (needs c > a)",
            argument: c,
        });
    }
    Ok(())
}

fn l_generator(a: f64, c: f64) -> Result<ShiftedTFunction, SpecialFnError> {
    Ok(ShiftedTFunction::from_measure(Measure::beta(a, c)?)?)
}

/// `z ₂F₁(a, 1; c; z)` by the series.
pub fn l_series(a: f64, c: f64, z: Complex64, opts: &SeriesOptions) -> Result<Complex64, SpecialFnError> {
    check_l(a, c)?;
    Ok(z * hyp2f1(a, 1.0, c, z, opts)?)
}

/// `L_{a,c}` through its Beta(a, c - a) representing measure; valid on the
/// slit plane.
pub fn l_euler(a: f64, c: f64, z: Complex64) -> Result<Complex64, SpecialFnError> {
    check_l(a, c)?;
    Ok(l_generator(a, c)?.eval(z)?)
}

/// Series on `|z| ≤ 0.9`, Euler representation elsewhere.
pub fn l_function(a: f64, c: f64, z: Complex64, opts: &SeriesOptions) -> Result<Complex64, SpecialFnError> {
    if z.norm() <= L_SERIES_SWITCH {
        l_series(a, c, z, opts)
    } else {
        l_euler(a, c, z)
    }
}

/// `L'_{a,c}(z) = ₂F₁(a, 1; c; z) + (a/c) z ₂F₁(a+1, 2; c+1; z)` on
/// `|z| ≤ 0.9`, quadrature of the differentiated kernel elsewhere.
pub fn l_derivative(a: f64, c: f64, z: Complex64, opts: &SeriesOptions) -> Result<Complex64, SpecialFnError> {
    check_l(a, c)?;
    if z.norm() <= L_SERIES_SWITCH {
        Ok(hyp2f1(a, 1.0, c, z, opts)? + a / c * z * hyp2f1(a + 1.0, 2.0, c + 1.0, z, opts)?)
    } else {
        Ok(l_generator(a, c)?.derivative(z)?)
    }
}

/// `L'_{a,c}(1⁻) = (c-1)(c-2)/((c-a-1)(c-a-2))` when `c - a > 2`, and +∞
/// otherwise.
pub fn l_prime_at_one(a: f64, c: f64) -> Result<ExtendedReal, SpecialFnError> {
    check_l(a, c)?;
    if c - a <= 2.0 {
        return Ok(ExtendedReal::Infinite { certain: true });
    }
    Ok(ExtendedReal::Finite(
        ((c - 1.0) * (c - 2.0)) / ((c - a - 1.0) * (c - a - 2.0)),
    ))
}

/// `M = (c'-1)(c'-2)(c-a-1)(c-a-2) / ((c-1)(c-2)(c'-a'-1)(c'-a'-2))`, the
/// ratio `L'_{a',c'}(1⁻)/L'_{a,c}(1⁻)`, evaluated without Gamma functions.
pub fn hypergeom_constant_m(a: f64, c: f64, a2: f64, c2: f64) -> Result<f64, SpecialFnError> {
    check_l(a, c)?;
    check_l(a2, c2)?;
    for gap in [c - a, c2 - a2] {
        if !(gap > 2.0) {
            return Err(SpecialFnError::Domain {
                function: "hypergeometric constant (needs c - a > 2)",
                argument: gap,
            });
        }
    }
    let num = ((c2 - 1.0) * (c2 - 2.0)) * ((c - a - 1.0) * (c - a - 2.0));
    let den = ((c - 1.0) * (c - 2.0)) * ((c2 - a2 - 1.0) * (c2 - a2 - 2.0));
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn o() -> SeriesOptions {
        SeriesOptions::default()
    }

    #[test]
    fn trivial_values() {
        assert_eq!(hyp2f1(0.3, 2.0, 1.7, cx(0.0, 0.0), &o()).unwrap(), cx(1.0, 0.0));
        let v = hyp2f1(1.0, 1.0, 2.0, cx(0.5, 0.0), &o()).unwrap();
        assert!((v.re - 2.0 * LN_2).abs() < 4e-15);
        // terminating series: ₂F₁(-2, b; c; z) is a quadratic
        let q = hyp2f1(-2.0, 3.0, 4.0, cx(0.5, 0.0), &o()).unwrap().re;
        assert!((q - (1.0 - 2.0 * 3.0 / 4.0 * 0.5 + 3.0 * 4.0 / (4.0 * 5.0) * 0.25)).abs() < 1e-15);
    }

    #[test]
    fn derivative_identity() {
        let z = cx(0.3, -0.4);
        let e = 1e-5;
        let fd =
            (hyp2f1(0.7, 1.3, 2.2, z + e, &o()).unwrap() - hyp2f1(0.7, 1.3, 2.2, z - e, &o()).unwrap()) / (2.0 * e);
        let d = hyp2f1_derivative(0.7, 1.3, 2.2, z, &o()).unwrap();
        assert!((fd - d).norm() < 1e-9);
    }

    #[test]
    fn gauss_values() {
        assert!((gauss_value(1.0, 1.0, 3.0).unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(gauss_value(0.4, 0.0, 2.0).unwrap(), 1.0);
        assert!(gauss_value(1.0, 1.0, 2.0).is_err());
        let near = hyp2f1(1.0, 1.0, 4.0, cx(1.0 - 1e-4, 0.0), &o()).unwrap().re;
        let exact = gauss_value(1.0, 1.0, 4.0).unwrap();
        assert!((near - exact).abs() < 1e-2 * exact);
        // ₂F₁(1,1;3;z) = 2[(1-z)log(1-z) + z]/z²
        let z: f64 = 0.7;
        let closed = 2.0 * ((1.0 - z) * (1.0 - z).ln() + z) / (z * z);
        assert!((hyp2f1(1.0, 1.0, 3.0, cx(z, 0.0), &o()).unwrap().re - closed).abs() < 1e-14);
    }

    #[test]
    fn gauss_sequence_is_monotone() {
        let exact = gauss_value(0.5, 0.75, 2.0).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for j in 1..5 {
            let v = hyp2f1(0.5, 0.75, 2.0, cx(1.0 - 10f64.powi(-j), 0.0), &o()).unwrap().re;
            assert!(v > prev && v < exact);
            prev = v;
        }
        assert!((prev - exact).abs() < 1e-2);
    }

    #[test]
    fn poles_and_domain() {
        assert_eq!(
            hyp2f1(1.0, 1.0, -2.0, cx(0.1, 0.0), &o()),
            Err(SpecialFnError::ParameterPole(-2.0))
        );
        assert!(matches!(
            hyp2f1(1.0, 1.0, 2.0, cx(1.0, 0.0), &o()),
            Err(SpecialFnError::OutsideDisk { .. })
        ));
        assert!(l_series(2.0, 1.0, cx(0.1, 0.0), &o()).is_err());
        assert!(l_series(0.0, 1.0, cx(0.1, 0.0), &o()).is_err());
    }

    #[test]
    fn l_paths_agree() {
        assert!((l_function(1.0, 2.0, cx(0.5, 0.0), &o()).unwrap().re - LN_2).abs() < 1e-15);
        assert_eq!(l_series(1.5, 4.0, cx(0.0, 0.0), &o()).unwrap(), cx(0.0, 0.0));
        for &(a, c) in &[(1.0, 3.0), (0.5, 1.2), (2.0, 6.0), (3.0, 3.5)] {
            for &z in &[cx(0.5, 0.0), cx(-0.9, 0.0), cx(0.2, 0.8), cx(0.6, -0.6)] {
                let s = l_series(a, c, z, &o()).unwrap();
                let e = l_euler(a, c, z).unwrap();
                assert!((s - e).norm() < 1e-8, "a={a} c={c} z={z}");
                let ds = l_derivative(a, c, z, &o()).unwrap();
                let de = l_generator(a, c).unwrap().derivative(z).unwrap();
                assert!((ds - de).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn boundary_derivative_and_m() {
        assert_eq!(l_prime_at_one(1.0, 6.0).unwrap(), ExtendedReal::Finite(20.0 / 12.0));
        assert!(l_prime_at_one(1.0, 3.0).unwrap().is_infinite());
        assert_eq!(hypergeom_constant_m(1.0, 6.0, 2.0, 6.0).unwrap(), 2.0);
        assert_eq!(hypergeom_constant_m(1.5, 7.0, 1.5, 7.0).unwrap(), 1.0);
        assert!(hypergeom_constant_m(1.0, 3.0, 1.0, 6.0).is_err());
    }
}
