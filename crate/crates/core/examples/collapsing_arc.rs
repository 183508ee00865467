//! h = z/(1 - z), g = z: the dilatation c(1 - z)² has sup 4c, and for
//! c > 1/4 the arc |z - 1| = 1/√c inside the disk maps to the point c - 1.

use cmharm::grid::GridSpec;
use cmharm::harmonic_map::certify_qc_grid;
use cmharm::{Complex64, HarmonicMap, Measure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridSpec::default();
    for c in [0.2, 0.3] {
        let f = HarmonicMap::from_measures(Measure::dirac(1.0)?, Measure::dirac(0.0)?, c)?;
        let cert = certify_qc_grid(&f, 0.9, &grid)?;
        println!(
            "c = {c}: sampled sup |ω| = {:.6} (4c = {}), {:?}",
            cert.sup_estimate.unwrap_or(f64::NAN),
            4.0 * c,
            cert.verdict
        );
    }

    let c = 0.36;
    let f = HarmonicMap::from_measures(Measure::dirac(1.0)?, Measure::dirac(0.0)?, c)?;
    let radius = 1.0 / f64::sqrt(c);
    for i in 0..8 {
        let theta = 2.6 + 0.15 * i as f64;
        let z = 1.0 + Complex64::from_polar(radius, theta);
        println!("|z| = {:.4}  f(z) = {:.12}", z.norm(), f.eval(z)?);
    }
    Ok(())
}
