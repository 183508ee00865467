//! Invariants checked on random inputs.

use cmharm::json::{parse_measure, to_json};
use cmharm::measure::{Atom, Density};
use cmharm::special_fn::{polylog_integral, polylog_series, SeriesOptions};
use cmharm::{leibniz_difference, Complex64, DensityFamily, HarmonicMap, Measure, MomentSequence, TFunction};
use proptest::prelude::*;

fn measure() -> impl Strategy<Value = Measure> {
    let atoms = prop::collection::vec((0.0..=1.0f64, 0.05..1.0f64), 0..3);
    let betas = prop::collection::vec((0.6..3.0f64, 0.6..3.0f64, 0.05..1.0f64), 0..3);
    (atoms, betas)
        .prop_filter("empty measure", |(a, b)| !a.is_empty() || !b.is_empty())
        .prop_map(|(atoms, betas)| {
            let total: f64 = atoms.iter().map(|a| a.1).chain(betas.iter().map(|b| b.2)).sum();
            Measure::from_parts(
                atoms.into_iter().map(|(t, w)| Atom { t, w: w / total }).collect(),
                betas
                    .into_iter()
                    .map(|(a, gap, w)| (Density::new(DensityFamily::Beta { a, c: a + gap }).unwrap(), w / total))
                    .collect(),
            )
            .unwrap()
        })
}

fn disk_point(r_max: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r_max, 0.0..std::f64::consts::TAU).prop_map(|(r, th)| Complex64::from_polar(r, th))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn moments_are_completely_monotone(mu in measure()) {
        let seq = MomentSequence::from_measure(&mu, 13).unwrap();
        prop_assert!(seq.is_completely_monotone(1e-12).holds());
    }

    #[test]
    fn hadamard_products_stay_monotone(mu in measure(), nu in measure()) {
        let a = MomentSequence::from_measure(&mu, 13).unwrap();
        let b = MomentSequence::from_measure(&nu, 13).unwrap();
        prop_assert!(a.hadamard(&b).unwrap().is_completely_monotone(1e-12).holds());
    }

    #[test]
    fn product_rule_matches_direct_differences(mu in measure(), nu in measure(), k in 0usize..=12, n in 0usize..=12) {
        prop_assume!(n + k <= 12);
        let a = MomentSequence::from_measure(&mu, 13).unwrap();
        let b = MomentSequence::from_measure(&nu, 13).unwrap();
        let direct = a.hadamard(&b).unwrap().forward_difference(k, n).unwrap();
        let rule = leibniz_difference(&a, &b, k, n).unwrap();
        prop_assert!((direct - rule).abs() <= 1e-12, "{direct} vs {rule}");
    }

    #[test]
    fn class_t_bounds(mu in measure(), z in disk_point(0.98)) {
        let f = TFunction::new(mu).unwrap();
        let v = f.eval(z).unwrap();
        prop_assert!(v.norm() <= f.eval(Complex64::new(z.norm(), 0.0)).unwrap().re + 1e-9);
        prop_assert!(v.re >= 0.5 - 1e-9);
        prop_assert!((f.eval(z.conj()).unwrap() - v.conj()).norm() <= 1e-12 * (1.0 + v.norm()));
    }

    #[test]
    fn moments_are_linear_in_the_measure(mu in measure(), nu in measure(), s in 0.05..0.95f64) {
        let mix = mu.mix(&nu, s).unwrap();
        let (m, a, b) = (mix.moments(8).unwrap(), mu.moments(8).unwrap(), nu.moments(8).unwrap());
        for i in 0..8 {
            prop_assert!((m[i] - (s * a[i] + (1.0 - s) * b[i])).abs() <= 1e-12);
        }
    }

    #[test]
    fn identical_parts_have_constant_dilatation(mu in measure(), c in 0.0..0.99f64, z in disk_point(0.95)) {
        let f = HarmonicMap::from_measures(mu.clone(), mu, c).unwrap();
        prop_assert!((f.dilatation(z).unwrap() - c).norm() <= 1e-12);
        prop_assert!(f.jacobian(z).unwrap() > 0.0);
    }

    #[test]
    fn polylog_series_and_integral_agree(alpha in 1.0..4.0f64, z in disk_point(0.9)) {
        let s = polylog_series(alpha, z, &SeriesOptions::default()).unwrap();
        let i = polylog_integral(alpha, z).unwrap();
        prop_assert!((s - i).norm() <= 1e-9, "{s} vs {i}");
    }

    #[test]
    fn json_floats_round_trip(x in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO) {
        let back: Vec<f64> = serde_json::from_str(&to_json(&vec![x])).unwrap();
        prop_assert_eq!(back[0].to_bits(), x.to_bits());
    }

    #[test]
    fn measure_specs_round_trip(t in 0.0..=1.0f64, w in 0.01..1.0f64, a in 0.5..3.0f64, gap in 0.5..3.0f64) {
        let spec = serde_json::json!({
            "atoms": [{"t": t, "w": w}],
            "densities": [{"family": "beta", "a": a, "c": a + gap, "w": 1.0 - w}]
        });
        let mu = parse_measure(&spec).unwrap();
        prop_assert!(mu.is_normalized());
        prop_assert_eq!(mu.atoms()[0], Atom { t, w });
    }

    #[test]
    fn cli_exit_codes_are_total(args in prop::collection::vec(
        prop::sample::select(vec![
            "check-cm", "moments", "eval", "dilatation", "certify", "verify-thm", "ratio-sup", "render",
            "--k", "0.5", "--z", "0.1,0.2", "--tol", "-3", "--method", "grid", "hyp", "1.2", "--curve",
            "circle:0.5", "--n", "1", "--format", "csv", "/nonexistent.json", "", "nan",
        ]),
        0..6,
    )) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = cmharm::cli::run(std::iter::once("cmh").chain(args.iter().copied()), &mut out, &mut err);
        prop_assert!((0..=2).contains(&code));
    }
}
