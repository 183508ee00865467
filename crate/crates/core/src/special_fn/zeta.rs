//! Riemann zeta on the real half-line s > 1.
//!
//! A short direct sum followed by the Euler-Maclaurin tail: the integral
//! term N^{1-s}/(s-1), the half-term, and eight Bernoulli corrections.

use super::SpecialFnError;

const HEAD_TERMS: u32 = 16;

/// B_{2k}/(2k)! for k = 1..8.
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

/// ζ(s) = Σ n^{-s} for real s > 1.
pub fn zeta(s: f64) -> Result<f64, SpecialFnError> {
    if !(s > 1.0 + 1e-6) || s.is_nan() {
        return Err(SpecialFnError::Domain {
            function: "zeta",
            argument: s,
        });
    }
    if s.is_infinite() {
        return Ok(1.0);
    }
    let n = f64::from(HEAD_TERMS);
    // sum the head smallest-first
    let head: f64 = (1..HEAD_TERMS).rev().map(|k| f64::from(k).powf(-s)).sum();
    let mut tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    let mut rising = s;
    let mut power = n.powf(-s - 1.0);
    for (k, coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        tail += coef * rising * power;
        let k = k as f64;
        rising *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
        power /= n * n;
    }
    Ok(head + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Direct partial sum with the midpoint integral estimate of the tail.
    fn direct_zeta(s: f64) -> f64 {
        let terms = 1_000_000u32;
        let head: f64 = (1..=terms).rev().map(|k| f64::from(k).powf(-s)).sum();
        head + (f64::from(terms) + 0.5).powf(1.0 - s) / (s - 1.0)
    }

    #[test]
    fn closed_forms() {
        assert!((zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((zeta(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((zeta(6.0).unwrap() - PI.powi(6) / 945.0).abs() < 1e-14);
    }

    #[test]
    fn apery_constant() {
        let z3 = zeta(3.0).unwrap();
        assert!((z3 - 1.202_056_903_159_594_2).abs() < 1e-14);
        assert!((z3 - direct_zeta(3.0)).abs() < 1e-13);
    }

    #[test]
    fn agrees_with_direct_series() {
        for &s in &[1.5, 2.5, 3.7, 7.0, 12.0, 30.0] {
            let d = direct_zeta(s);
            assert!((zeta(s).unwrap() - d).abs() < 1e-10 * d, "s = {s}");
        }
    }

    #[test]
    fn domain() {
        assert!(zeta(1.0).is_err());
        assert!(zeta(0.5).is_err());
        assert!(zeta(1.0 + 1e-7).is_err());
        assert_eq!(zeta(f64::INFINITY).unwrap(), 1.0);
    }
}
