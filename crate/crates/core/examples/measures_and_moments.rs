//! Representing measures: atoms, named densities, tables and mixtures.

use cmharm::measure::{Atom, Density};
use cmharm::{DensityFamily, Measure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let named = [
        ("δ_1", Measure::dirac(1.0)?),
        ("dt", Measure::lebesgue()),
        ("Beta(1, 3)", Measure::beta(1.0, 3.0)?),
        ("loggamma(3)", Measure::loggamma(3.0)?),
        ("table", Measure::sampled(vec![0.0, 0.5, 1.0], vec![0.0, 2.0, 0.0])?),
    ];
    for (name, mu) in &named {
        let m = mu.moments(5)?;
        println!("{name:>12}: {m:.6?}");
    }

    // a quarter of the mass at 1/2, the rest spread as Beta(1, 3)
    let mix = Measure::from_parts(
        vec![Atom { t: 0.5, w: 0.25 }],
        vec![(Density::new(DensityFamily::Beta { a: 1.0, c: 3.0 })?, 0.75)],
    )?;
    println!("mixture mass {} moments {:.6?}", mix.mass(), mix.moments(4)?);

    let half = Measure::lebesgue().mix(&Measure::dirac(0.0)?, 0.5)?;
    println!("½ dt + ½ δ_0: a_1 = {}", half.moment(1)?);
    Ok(())
}
