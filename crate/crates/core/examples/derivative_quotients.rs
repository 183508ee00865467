//! Density cross-ratio condition, class-T membership of g/h and g'/h', and
//! the boundary-limit certificate it enables.

use cmharm::grid::GridSpec;
use cmharm::harmonic_map::{certify_qc_via_limit, density_ratio_condition};
use cmharm::{DensityFamily, Measure, ShiftedTFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridSpec::default();
    let pairs = [
        (
            "Beta(1,3) / Beta(2,3)",
            DensityFamily::Beta { a: 1.0, c: 3.0 },
            DensityFamily::Beta { a: 2.0, c: 3.0 },
        ),
        (
            "loggamma(2) / dt",
            DensityFamily::LogGamma { alpha: 2.0 },
            DensityFamily::Lebesgue,
        ),
        (
            "Beta(2,3) / Beta(1,3)",
            DensityFamily::Beta { a: 2.0, c: 3.0 },
            DensityFamily::Beta { a: 1.0, c: 3.0 },
        ),
    ];
    for (name, phi, psi) in pairs {
        let r = density_ratio_condition(&phi, &psi, 200, Some(&grid))?;
        println!(
            "{name}: cross-ratio holds {}, g/h in T {:?}, g'/h' in T {:?}",
            r.scan.holds,
            r.quotient.map(|q| q.consistent),
            r.derivative_quotient.map(|q| q.consistent)
        );
    }

    let h = ShiftedTFunction::from_measure(Measure::beta(1.0, 6.0)?)?;
    let g = ShiftedTFunction::from_measure(Measure::beta(2.0, 6.0)?)?;
    let cert = certify_qc_via_limit(&h, &g, 0.3, 0.7)?;
    println!(
        "Beta(1,6), Beta(2,6), c = 0.3: {:?}, constant {:?}",
        cert.verdict, cert.constant
    );
    Ok(())
}
