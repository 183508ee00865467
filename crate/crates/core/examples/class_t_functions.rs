//! Generating functions F(z) = ∫ dμ(t)/(1 - tz): the bound |F(z)| ≤ F(|z|),
//! the floor Re F ≥ 1/2, and sampled class-T membership of a quotient.

use cmharm::grid::GridSpec;
use cmharm::{check_t_membership, Complex64, Measure, TFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = TFunction::new(Measure::beta(0.5, 2.0)?)?;
    for z in [
        Complex64::new(0.3, 0.4),
        Complex64::new(-0.9, 0.1),
        Complex64::new(0.0, 0.95),
    ] {
        let v = f.eval(z)?;
        let bound = f.eval(Complex64::new(z.norm(), 0.0))?.re;
        println!("z = {z:.2}: F = {v:.6}, |F| = {:.6} <= F(|z|) = {bound:.6}", v.norm());
    }
    println!("Re F >= {:.6} on the disk", f.lower_bound_re()?);

    // δ_1 gives 1/(1 - z), whose real part approaches 1/2 at z = -1
    let koebe = TFunction::new(Measure::dirac(1.0)?)?;
    println!(
        "Re 1/(1 - z) at z = -0.999: {:.6}",
        koebe.eval(Complex64::new(-0.999, 0.0))?.re
    );
    println!(
        "F(1⁻) for dt: {:?}",
        TFunction::new(Measure::lebesgue())?.limit_at_one()?
    );

    // quotient of two generating functions sampled on the half-plane grid
    let num = TFunction::new(Measure::beta(2.0, 3.0)?)?;
    let den = TFunction::new(Measure::beta(1.0, 3.0)?)?;
    let report = check_t_membership(
        |z| Ok::<_, cmharm::GenFuncError>(num.eval(z)? / den.eval(z)?),
        &GridSpec::default(),
    )?;
    println!(
        "Beta(2,3)/Beta(1,3) sampled consistent with class T: {}",
        report.consistent
    );
    Ok(())
}
