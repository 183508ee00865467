//! Gauss hypergeometric values, L_{a,c}(z) = z ₂F₁(a, 1; c; z), and the
//! certificate for L_{a,c} + b·conj(L_{a2,c2}).

use cmharm::grid::GridSpec;
use cmharm::special_fn::{
    certify_hypergeom_map, gauss_value, hyp2f1, hypergeom_constant_m, l_function, l_prime_at_one, SeriesOptions,
};
use cmharm::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SeriesOptions::default();
    println!("2F1(1, 1; 3; 1) = {}", gauss_value(1.0, 1.0, 3.0)?);
    for j in 1..5 {
        let x = 1.0 - 10f64.powi(-j);
        println!(
            "2F1(1, 1; 3; {x}) = {:.8}",
            hyp2f1(1.0, 1.0, 3.0, Complex64::new(x, 0.0), &opts)?.re
        );
    }
    println!(
        "L_(1,6)(0.5i) = {:.12}",
        l_function(1.0, 6.0, Complex64::new(0.0, 0.5), &opts)?
    );
    println!("L'_(1,6)(1⁻) = {:?}", l_prime_at_one(1.0, 6.0)?);
    println!("M(1, 6, 2, 6) = {}", hypergeom_constant_m(1.0, 6.0, 2.0, 6.0)?);

    let cert = certify_hypergeom_map(1.0, 6.0, 2.0, 6.0, 0.3, 0.7, &GridSpec::default())?;
    println!("{}", serde_json::to_string_pretty(&cert)?);
    Ok(())
}
