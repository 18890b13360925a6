mod common;

use common::cdf_gap;
use freeconv::convolutions::*;
use freeconv::maps::{theta, xi};
use freeconv::Measure;
use proptest::prelude::*;

/// Catalog measures with a CDF.
fn with_cdf() -> impl Strategy<Value = Measure> {
    prop_oneof![
        (0.0..5.0f64).prop_map(|a| Measure::dirac(a).unwrap()),
        Just(Measure::uniform01()),
        Just(Measure::exponential()),
        (0.1..5.0f64).prop_map(|l| Measure::poisson(l).unwrap()),
        (0.1..5.0f64).prop_map(|l| Measure::mp(l).unwrap()),
        (0.1..3.0f64, 0.0..3.0f64).prop_map(|(v, extra)| Measure::semicircle(2.0 * v.sqrt() + extra, v).unwrap()),
        (0.05..0.95f64).prop_map(|a| Measure::boolean_stable(a).unwrap()),
        (0.1..3.0f64).prop_map(|a| Measure::pareto(a).unwrap()),
        (0.1..3.0f64).prop_map(|a| Measure::dagum(a).unwrap()),
        (0.1..3.0f64).prop_map(|a| Measure::frechet(a).unwrap()),
    ]
}

/// Measures whose transforms are all available, including transform-only laws.
fn with_transforms() -> impl Strategy<Value = Measure> {
    prop_oneof![
        with_cdf(),
        (0.05..0.95f64).prop_map(|a| Measure::free_stable(a).unwrap()),
        (0.1..0.9f64).prop_map(|a| Measure::classical_stable(a).unwrap()),
    ]
}

fn probes() -> Vec<f64> {
    let mut v: Vec<f64> = (0..60).map(|i| 0.01 * 1.25f64.powi(i)).collect();
    v.push(0.0);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cdfs_are_distribution_functions(mu in with_cdf()) {
        prop_assert!((mu.cdf(0.0).unwrap() - mu.atom0()).abs() < 1e-15);
        let mut ts = probes();
        ts.sort_by(f64::total_cmp);
        let fs: Vec<f64> = ts.iter().map(|&t| mu.cdf(t).unwrap()).collect();
        prop_assert!(fs.windows(2).all(|w| w[0] <= w[1] + 1e-15));
        prop_assert!(fs.iter().all(|f| (0.0..=1.0).contains(f)));
        prop_assert!(1.0 - mu.cdf(1e300).unwrap() < 1e-9);
        for (x, _) in mu.atoms() {
            prop_assert!(mu.cdf(x).unwrap() > mu.cdf_left(x).unwrap());
        }
    }

    #[test]
    fn quantiles_are_generalized_inverses(mu in with_cdf(), p in 0.0..0.999f64) {
        let q = mu.quantile(p).unwrap();
        prop_assert!(mu.cdf(q).unwrap() >= p - 1e-12);
        if q > 0.0 {
            prop_assert!(mu.cdf_left(q).unwrap() <= p + 1e-9);
        }
    }

    #[test]
    fn powers_and_dilations_compose(mu in with_cdf(), c in 0.2..3.0f64, d in 0.2..3.0f64) {
        let ts = probes();
        let pp = mu.power(c).unwrap().power(d).unwrap();
        prop_assert!(cdf_gap(&pp, &mu.power(c * d).unwrap(), &ts) < 1e-12);
        let dd = mu.dilate(c).unwrap().dilate(d).unwrap();
        prop_assert!(cdf_gap(&dd, &mu.dilate(c * d).unwrap(), &ts) < 1e-12);
    }

    #[test]
    fn negative_powers_are_involutive(mu in with_cdf(), c in 0.2..3.0f64) {
        prop_assume!(mu.atom0() == 0.0);
        let back = mu.power(-c).unwrap().power(-1.0 / c).unwrap();
        prop_assert!(cdf_gap(&back, &mu, &probes()) < 1e-12);
    }

    #[test]
    fn powers_distribute_over_max_convolutions(mu in with_cdf(), nu in with_cdf(), c in 0.2..3.0f64) {
        type Conv = fn(&Measure, &Measure) -> freeconv::Result<Measure>;
        for conv in [conv_classical_max as Conv, conv_free_max, conv_boolean_max] {
            let lhs = conv(&mu, &nu).unwrap().power(c).unwrap();
            let rhs = conv(&mu.power(c).unwrap(), &nu.power(c).unwrap()).unwrap();
            prop_assert!(cdf_gap(&lhs, &rhs, &probes()) < 1e-12);
        }
    }

    #[test]
    fn psi_is_a_rescaled_cauchy_transform(mu in with_transforms(), t in -20.0..-0.01f64) {
        let psi = mu.psi(t).unwrap();
        prop_assert!((psi - (mu.cauchy(1.0 / t).unwrap() / t - 1.0)).abs() < 1e-9);
        prop_assert!(psi < 0.0 || mu.is_delta_zero());
        prop_assert!(psi > -1.0 + mu.atom0() - 1e-12);
    }

    #[test]
    fn r_inverts_cauchy(mu in with_transforms(), s in -50.0..-0.05f64) {
        let g = mu.cauchy(s).unwrap();
        prop_assert!((mu.r_transform(g).unwrap() + 1.0 - s * g).abs() < 1e-8);
    }

    #[test]
    fn s_routes_agree(mu in with_transforms(), frac in 0.05..0.95f64) {
        prop_assume!(mu.neg_moment().unwrap().is_finite());
        let u = (-1.0 + mu.atom0()) * frac;
        let (a, b) = (mu.s_via_r(u).unwrap(), mu.s_via_psi(u).unwrap());
        prop_assert!((a - b).abs() < 1e-9 * a.max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn theta_turns_free_sums_into_free_max(l1 in 0.2..4.0f64, a in 0.1..0.9f64) {
        let (mu, nu) = (Measure::mp(l1).unwrap(), Measure::free_stable(a).unwrap());
        let lhs = theta(&conv_free_add(&mu, &nu).unwrap()).unwrap();
        let rhs = conv_free_max(&theta(&mu).unwrap(), &theta(&nu).unwrap()).unwrap();
        prop_assert!(cdf_gap(&lhs, &rhs, &probes()) < 1e-9);
    }

    #[test]
    fn xi_turns_boolean_sums_into_boolean_max(mu in with_transforms(), nu in with_transforms()) {
        let lhs = xi(&conv_boolean_add(&mu, &nu).unwrap()).unwrap();
        let rhs = conv_boolean_max(&xi(&mu).unwrap(), &xi(&nu).unwrap()).unwrap();
        prop_assert!(cdf_gap(&lhs, &rhs, &probes()) < 1e-9);
    }

    #[test]
    fn free_product_takes_the_larger_atom(l1 in 0.1..3.0f64, l2 in 0.1..3.0f64) {
        let (mu, nu) = (Measure::mp(l1).unwrap(), Measure::mp(l2).unwrap());
        let p = conv_free_mul(&mu, &nu).unwrap();
        prop_assert_eq!(p.atom0(), mu.atom0().max(nu.atom0()));
    }

    #[test]
    fn delta_zero_is_neutral_for_max_convolutions(mu in with_cdf()) {
        let z = Measure::dirac(0.0).unwrap();
        type Conv = fn(&Measure, &Measure) -> freeconv::Result<Measure>;
        for conv in [conv_classical_max as Conv, conv_free_max, conv_boolean_max] {
            prop_assert!(cdf_gap(&conv(&mu, &z).unwrap(), &mu, &probes()) < 1e-15);
        }
    }

    #[test]
    fn max_convolutions_associate(a in with_cdf(), b in with_cdf(), c in with_cdf()) {
        type Conv = fn(&Measure, &Measure) -> freeconv::Result<Measure>;
        for conv in [conv_classical_max as Conv, conv_free_max, conv_boolean_max] {
            let left = conv(&conv(&a, &b).unwrap(), &c).unwrap();
            let right = conv(&a, &conv(&b, &c).unwrap()).unwrap();
            prop_assert!(cdf_gap(&left, &right, &probes()) < 1e-13);
        }
    }

    #[test]
    fn max_powers_match_repeated_convolution(mu in with_cdf(), n in 1usize..5) {
        let (mut free, mut boolean) = (mu.clone(), mu.clone());
        for _ in 1..n {
            free = conv_free_max(&free, &mu).unwrap();
            boolean = conv_boolean_max(&boolean, &mu).unwrap();
        }
        prop_assert!(cdf_gap(&power_free_max(&mu, n as f64).unwrap(), &free, &probes()) < 1e-13);
        prop_assert!(cdf_gap(&power_boolean_max(&mu, n as f64).unwrap(), &boolean, &probes()) < 1e-13);
    }
}
