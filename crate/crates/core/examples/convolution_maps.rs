//! Maps built from convolutions: h + c·conj(h∗g), its ratio-bound
//! certificate, and harmonic convolution and convex combinations of maps.

use cmharm::grid::GridSpec;
use cmharm::harmonic_map::{certify_qc_via_ratio, harnack_ratio_bound, ratio_bound_sup};
use cmharm::{Complex64, HarmonicMap, Measure, ShiftedTFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridSpec::default();
    let h = ShiftedTFunction::from_measure(Measure::dirac(1.0)?)?;
    let g = ShiftedTFunction::from_measure(Measure::lebesgue())?;

    let r = ratio_bound_sup(&h, &grid)?;
    println!("sup |h'(tz)/h'(z)| for z/(1-z): {:.6} at t = {}", r.sup, r.t);
    let hk = harnack_ratio_bound(&h, 1.0, &grid)?;
    println!(
        "Re(z h''/h') >= -1: {}, ratio sup {:.4} <= e² = {:.4}",
        hk.hypothesis_holds, hk.ratio_sup, hk.bound
    );

    let cert = certify_qc_via_ratio(&h, &g, 0.2, 0.9, &grid)?;
    println!(
        "h + 0.2·conj(h∗g): constant {:.4}, {:?}",
        cert.constant.unwrap_or(f64::NAN),
        cert.verdict
    );

    let f1 = HarmonicMap::from_measures(Measure::dirac(1.0)?, Measure::lebesgue(), 0.5)?;
    let f2 = HarmonicMap::from_measures(Measure::beta(1.0, 3.0)?, Measure::dirac(0.0)?, 0.5)?;
    let z = Complex64::new(0.3, -0.2);
    let conv = f1.convolve(&f2, 64)?;
    println!("(f1∗f2)(z) = {:.10}, coefficient c = {}", conv.eval(z)?, conv.c());
    let mixed = f1.convex_combination(&f2, 0.25)?;
    let direct = 0.25 * f1.eval(z)? + 0.75 * f2.eval(z)?;
    println!("¼f1 + ¾f2: {:.12} vs pointwise {:.12}", mixed.eval(z)?, direct);
    Ok(())
}
