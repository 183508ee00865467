//! Polylogarithms and the quasiconformality constants of
//! Li_α + c·conj(Li_β).

use cmharm::grid::GridSpec;
use cmharm::special_fn::{certify_polylog_map, polylog, zeta, SeriesOptions};
use cmharm::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SeriesOptions::default();
    for s in [2.0, 3.0, 4.0] {
        println!("ζ({s}) = {:.15}", zeta(s)?);
    }
    let z = Complex64::new(-0.6, 0.7);
    println!("Li_2({z}) = {:.12}", polylog(2.0, z, &opts)?);

    let grid = GridSpec::default();
    for (alpha, beta, c, k) in [
        (4.0, 3.0, 0.5, 0.7),
        (1.0, 2.0, 0.3, 0.7),
        (3.0, 3.0, 0.45, 0.4),
        (3.0, 2.0, 0.1, 0.5),
    ] {
        let cert = certify_polylog_map(alpha, beta, c, k, &grid)?;
        println!(
            "α = {alpha}, β = {beta}, c = {c}, k = {k}: {:?} via {:?}, constant {:?}, sampled sup {:.6}",
            cert.verdict,
            cert.branch,
            cert.constant,
            cert.sup_estimate.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
