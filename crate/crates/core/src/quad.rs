//! Globally adaptive Gauss-Kronrod (G10/K21) quadrature for complex-valued
//! integrands on a finite real interval.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Stopping rule for [`adaptive`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    /// Absolute error target.
    pub abs_tol: f64,
    /// Relative error target, applied to the modulus of the running estimate.
    pub rel_tol: f64,
    /// Maximum number of subintervals kept alive.
    pub max_intervals: usize,
    /// Relative error still accepted once refinement is exhausted, either by
    /// `max_intervals` or by panels reaching floating-point resolution.
    pub fallback_rel_tol: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-13,
            max_intervals: 4000,
            fallback_rel_tol: 1e-10,
        }
    }
}

/// Result of a quadrature run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: Complex64,
    pub error: f64,
    pub converged: bool,
}

impl QuadEstimate {
    pub const ZERO: QuadEstimate = QuadEstimate {
        value: Complex64::new(0.0, 0.0),
        error: 0.0,
        converged: true,
    };

    /// Accumulates `weight * other` into `self`.
    pub fn add_scaled(&mut self, other: QuadEstimate, weight: f64) {
        self.value += other.value * weight;
        self.error += other.error * weight.abs();
        self.converged &= other.converged;
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F>(f: &F, a: f64, b: f64) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).norm();
    (value, error)
}

/// Integrates `f` over `[a, b]`, bisecting the panel with the largest error
/// estimate until the summed estimate meets `opts`.
///
/// The integrand is never evaluated at the endpoints, so integrable endpoint
/// singularities are tolerated (if slowly).
pub fn adaptive<F>(f: F, a: f64, b: f64, opts: &QuadOptions) -> QuadEstimate
where
    F: Fn(f64) -> Complex64,
{
    if a == b {
        return QuadEstimate::ZERO;
    }
    let (value, error) = kronrod21(&f, a, b);
    let mut total = value;
    let mut total_err = error;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });

    let target = |v: Complex64| opts.abs_tol.max(opts.rel_tol * v.norm());
    while total_err > target(total) {
        if heap.len() >= opts.max_intervals {
            return QuadEstimate {
                value: total,
                error: total_err,
                converged: total_err <= opts.abs_tol.max(opts.fallback_rel_tol * total.norm()),
            };
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // panel is below floating resolution; give up on it
            heap.push(worst);
            return QuadEstimate {
                value: total,
                error: total_err,
                converged: total_err <= opts.abs_tol.max(opts.fallback_rel_tol * total.norm()),
            };
        }
        let (lv, le) = kronrod21(&f, worst.a, mid);
        let (rv, re) = kronrod21(&f, mid, worst.b);
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
        // re-sum occasionally so cancellation in the running totals cannot drift
        if heap.len() % 64 == 0 {
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }
    QuadEstimate {
        value: total,
        error: total_err,
        converged: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real<F: Fn(f64) -> f64>(f: F) -> impl Fn(f64) -> Complex64 {
        move |t| Complex64::new(f(t), 0.0)
    }

    #[test]
    fn polynomial_is_exact() {
        let est = adaptive(real(|t| t.powi(7)), 0.0, 1.0, &QuadOptions::default());
        assert!(est.converged);
        assert!((est.value.re - 0.125).abs() < 1e-15);
    }

    #[test]
    fn sqrt_endpoint_singularity() {
        let est = adaptive(real(|t| 1.0 / t.sqrt()), 0.0, 1.0, &QuadOptions::default());
        assert!(est.converged);
        assert!((est.value.re - 2.0).abs() < 1e-9);
    }

    #[test]
    fn complex_integrand_near_pole() {
        // ∫₀¹ dt/(1 - t z) = -log(1 - z)/z
        let z = Complex64::new(0.99, 0.01);
        let est = adaptive(
            |t| 1.0 / (Complex64::new(1.0, 0.0) - z * t),
            0.0,
            1.0,
            &QuadOptions::default(),
        );
        let exact = -(Complex64::new(1.0, 0.0) - z).ln() / z;
        assert!(est.converged);
        assert!((est.value - exact).norm() < 1e-10);
    }

    #[test]
    fn reports_non_convergence() {
        let opts = QuadOptions {
            abs_tol: 1e-14,
            rel_tol: 0.0,
            max_intervals: 3,
            fallback_rel_tol: 0.0,
        };
        let est = adaptive(real(|t| 1.0 / t.sqrt()), 0.0, 1.0, &opts);
        assert!(!est.converged);
    }
}
