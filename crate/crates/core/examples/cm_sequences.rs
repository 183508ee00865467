//! Complete monotonicity of finite prefixes, the Hadamard product of two
//! moment sequences and the product rule for their differences.

use cmharm::{leibniz_difference, Measure, MomentSequence};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let geometric = MomentSequence::new(vec![1.0, 0.5, 0.25, 0.125])?;
    println!("1, 1/2, 1/4, 1/8: {:?}", geometric.is_completely_monotone(0.0));

    let bumpy = MomentSequence::new(vec![1.0, 0.9, 0.5])?;
    println!("1, 0.9, 0.5:      {:?}", bumpy.is_completely_monotone(0.0));

    // moments of Lebesgue measure and of Beta(2, 5)
    let a = MomentSequence::from_measure(&Measure::lebesgue(), 13)?;
    let b = MomentSequence::from_measure(&Measure::beta(2.0, 5.0)?, 13)?;
    let ab = a.hadamard(&b)?;
    println!("product prefix holds: {}", ab.is_completely_monotone(1e-12).holds());

    for (k, n) in [(3, 0), (5, 2), (12, 0)] {
        let direct = ab.forward_difference(k, n)?;
        let expanded = leibniz_difference(&a, &b, k, n)?;
        println!("Δ^{k} (ab)_{n}: direct {direct:.3e}, product rule {expanded:.3e}");
    }
    Ok(())
}
