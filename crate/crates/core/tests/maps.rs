mod common;

use common::{bisect, cdf_gap, linspace, sup_gap};
use freeconv::maps::*;
use freeconv::{Error, Measure};
use statrs::function::gamma::gamma;

fn ts() -> Vec<f64> {
    let mut v = linspace(0.0, 20.0, 201);
    v.extend([50.0, 100.0, 1e3, 1e5]);
    v
}

fn closed(ts: &[f64], m: &Measure, f: impl Fn(f64) -> f64) -> f64 {
    sup_gap(ts, |t| m.cdf(t).unwrap(), f)
}

#[test]
fn phi_examples() {
    let u = phi(&Measure::mp(1.0).unwrap()).unwrap();
    assert!(closed(&linspace(0.0, 2.0, 201), &u, |x| x.clamp(0.0, 1.0)) < 1e-8);
    for c in [0.5, 2.0] {
        let p = phi(&Measure::dirac(c).unwrap()).unwrap();
        assert!(cdf_gap(&p, &Measure::dirac(c).unwrap(), &[0.9 * c, c, 1.1 * c]) == 0.0);
    }
    let f = phi(&Measure::free_stable(0.5).unwrap()).unwrap();
    assert!(closed(&ts(), &f, |x| (1.0 - 1.0 / x).max(0.0)) < 1e-9);
    assert!(phi(&Measure::dirac(0.0).unwrap()).unwrap().is_delta_zero());
}

#[test]
fn phi_of_mp_is_a_shifted_uniform() {
    for lambda in [0.3, 0.5, 2.0, 4.0] {
        let p = phi(&Measure::mp(lambda).unwrap()).unwrap();
        assert!(closed(&linspace(0.0, 5.0, 251), &p, |x| (x + 1.0 - lambda).clamp(0.0, 1.0)) < 1e-8);
        assert!((p.cdf(0.0).unwrap() - (1.0 - lambda).max(0.0)).abs() < 1e-15);
    }
}

#[test]
fn phi_inverts_one_over_s() {
    // F(x) solves 1/S(F − 1) = x; test-side bisection on a lazy boolean sum
    let e = Measure::exponential();
    let mu = freeconv::convolutions::conv_boolean_add(&e, &e).unwrap();
    let p = phi(&mu).unwrap();
    for x in [0.5, 1.0, 3.0, 10.0] {
        let want = bisect(|t| 1.0 / mu.s_transform(t - 1.0).unwrap(), x, 1e-12, 1.0 - 1e-12);
        assert!((p.cdf(x).unwrap() - want).abs() < 1e-9, "x = {x}");
    }
}

#[test]
fn theta_examples() {
    for alpha in [0.3, 0.5, 0.7] {
        let t = theta(&Measure::free_stable(alpha).unwrap()).unwrap();
        assert!(closed(&ts(), &t, |x| (1.0 - x.powf(-alpha)).max(0.0)) < 1e-14);
    }
    let d = theta(&Measure::dirac(1.0).unwrap()).unwrap();
    assert!(closed(&ts(), &d, |x| (1.0 - 1.0 / x).max(0.0)) < 1e-14);
    let m = theta(&Measure::mp(2.0).unwrap()).unwrap();
    assert!(closed(&ts(), &m, |x| if x >= 1.0 { (x - 1.0) / (x + 1.0) } else { 0.0 }) < 1e-14);
    assert!((m.cdf(3.0).unwrap() - 0.5).abs() < 1e-15);
    assert!(theta(&Measure::dirac(0.0).unwrap()).unwrap().is_delta_zero());
}

#[test]
fn theta_routes_agree() {
    for mu in [Measure::mp(2.0).unwrap(), Measure::exponential(), Measure::semicircle(3.0, 1.0).unwrap()] {
        let (a, b) = (theta(&mu).unwrap(), theta_via_phi(&mu).unwrap());
        assert!(cdf_gap(&a, &b, &ts()) < 1e-8, "{}", mu.label());
    }
}

#[test]
fn theta_is_zero_below_one_over_a() {
    let mu = Measure::mp(3.0).unwrap();
    let a = mu.neg_moment().unwrap();
    let t = theta(&mu).unwrap();
    assert_eq!(t.cdf(0.999 / a).unwrap(), 0.0);
    assert_eq!(t.cdf(1.0 / a).unwrap(), 0.0);
    assert!(t.cdf(1.001 / a).unwrap() > 0.0);
}

#[test]
fn xi_examples() {
    for alpha in [0.3, 0.5, 0.7] {
        let x = xi(&Measure::boolean_stable(alpha).unwrap()).unwrap();
        assert!(closed(&ts(), &x, |t| t.powf(alpha) / (1.0 + t.powf(alpha))) < 1e-14);
    }
    let d = xi(&Measure::dirac(1.0).unwrap()).unwrap();
    assert!(closed(&ts(), &d, |t| t / (1.0 + t)) < 1e-14);
    assert!(xi(&Measure::dirac(0.0).unwrap()).unwrap().cdf(0.0).unwrap() == 1.0);
    let p = xi(&Measure::poisson(1.0).unwrap()).unwrap();
    assert!((p.cdf(0.0).unwrap() - (-1f64).exp()).abs() < 1e-15);
}

#[test]
fn xi_routes_agree() {
    for mu in [Measure::dirac(1.0).unwrap(), Measure::exponential(), Measure::mp(2.0).unwrap()] {
        let base = xi(&mu).unwrap();
        for (name, route) in [
            ("theta", xi_via_theta(&mu)),
            ("phi", xi_via_phi(&mu)),
            ("exponentials", xi_via_exponentials(&mu)),
        ] {
            let gap = cdf_gap(&base, &route.unwrap(), &ts());
            assert!(gap < 1e-6, "{} via {name}: {gap}", mu.label());
        }
    }
}

#[test]
fn omega_examples() {
    for alpha in [0.3, 0.5, 0.7] {
        let o = omega(&Measure::classical_stable(alpha).unwrap()).unwrap();
        let g = gamma(1.0 + alpha);
        assert!(closed(&ts(), &o, |t| if t == 0.0 { 0.0 } else { (-g * t.powf(-alpha)).exp() }) < 1e-9);
    }
    assert!(omega(&Measure::dirac(0.0).unwrap()).unwrap().cdf(0.0).unwrap() == 1.0);
    let p = omega(&Measure::poisson(2.0).unwrap()).unwrap();
    assert!((p.cdf(3.0).unwrap() - (-0.5f64).exp()).abs() < 1e-10);
    assert!((p.cdf(0.0).unwrap() - (-2f64).exp()).abs() < 1e-15);
}

#[test]
fn omega_tilde_examples() {
    for alpha in [0.3, 0.5, 0.7] {
        let o = omega_tilde(&Measure::classical_stable(alpha).unwrap()).unwrap();
        assert!(cdf_gap(&o, &Measure::frechet(alpha).unwrap(), &ts()) < 1e-14);
        // equivalently the law of E^{−1/α} for E exponential
        let e = Measure::exponential().power(-1.0 / alpha).unwrap();
        assert!(cdf_gap(&o, &e, &ts()) < 1e-14);
    }
    for a in [0.5, 2.0] {
        let o = omega_tilde(&Measure::dirac(a).unwrap()).unwrap();
        assert!(closed(&ts()[1..], &o, |t| (-a / t).exp()) < 1e-15);
    }
}

#[test]
fn bercovici_pata_lambda() {
    for lambda in [0.5, 1.0, 3.0] {
        let l = bp_lambda(&Measure::poisson(lambda).unwrap()).unwrap();
        // A = 1/(λ − 1) when λ > 1
        let lo = if lambda > 1.0 { -0.95 / (lambda - 1.0) } else { -0.95 };
        let grid = linspace(lo, -0.05, 10);
        assert!(sup_gap(&grid, |t| l.r_transform(t).unwrap(), |t| lambda * t / (1.0 - t)) < 1e-12);
        assert!((l.atom0() - (1.0 - lambda).max(0.0)).abs() < 1e-15);
    }
    for alpha in [0.3, 0.6] {
        let l = bp_lambda(&Measure::classical_stable(alpha).unwrap()).unwrap();
        let g = gamma(1.0 + alpha);
        // R reaches −1 at t = −Γ(1+α)^{−1/α}
        let a = g.powf(-1.0 / alpha);
        assert!((l.neg_moment().unwrap() - a).abs() < 1e-9);
        let grid = linspace(-0.99 * a, -0.05, 10);
        assert!(sup_gap(&grid, |t| l.r_transform(t).unwrap(), |t| -g * f64::powf(-t, alpha)) < 1e-12);
    }
    let err = bp_lambda(&Measure::mp(1.0).unwrap()).unwrap_err();
    assert!(matches!(err, Error::Domain(_)));
}

#[test]
fn bercovici_pata_a_threshold() {
    // atom0 of poisson(λ) is e^{−λ}; the threshold 1/e sits at λ = 1
    assert_eq!(bp_lambda(&Measure::poisson(0.5).unwrap()).unwrap().neg_moment().unwrap(), f64::INFINITY);
    let a = bp_lambda(&Measure::poisson(2.0).unwrap()).unwrap().neg_moment().unwrap();
    assert!((a - 1.0).abs() < 1e-9);
}

#[test]
fn lambda_max_examples() {
    for alpha in [0.5, 2.0] {
        let l = bp_lambda_max(&Measure::frechet(alpha).unwrap()).unwrap();
        assert!(cdf_gap(&l, &Measure::pareto(alpha).unwrap(), &ts()) < 1e-15);
    }
    let d = bp_lambda_max(&Measure::dirac(2.0).unwrap()).unwrap();
    assert!(cdf_gap(&d, &Measure::dirac(2.0).unwrap(), &[1.0, 2.0, 3.0]) == 0.0);
    let u = bp_lambda_max(&Measure::uniform01()).unwrap();
    assert_eq!(u.cdf(0.3).unwrap(), 0.0);
    assert!((u.cdf(0.5).unwrap() - (1.0 + 0.5f64.ln())).abs() < 1e-15);
}

#[test]
fn x_inverse_examples() {
    for lambda in [0.5, 2.0] {
        let p = Measure::poisson(lambda).unwrap();
        let x = bp_x_inverse(&p).unwrap();
        let l = bp_lambda(&p).unwrap();
        let grid = linspace(-5.0, -0.05, 12);
        assert!(sup_gap(&grid, |t| x.eta(t).unwrap(), |t| lambda * t / (1.0 - t)) < 1e-12);
        let grid = linspace(-0.9, -0.05, 10);
        assert!(sup_gap(&grid, |t| x.eta(t).unwrap(), |t| l.r_transform(t).unwrap()) < 1e-12);
    }
    let alpha = 0.5;
    let x = bp_x_inverse(&Measure::classical_stable(alpha).unwrap()).unwrap();
    let d = Measure::boolean_stable(alpha).unwrap().dilate(gamma(1.0 + alpha).powf(1.0 / alpha)).unwrap();
    let grid = linspace(-5.0, -0.05, 12);
    assert!(sup_gap(&grid, |t| x.eta(t).unwrap(), |t| d.eta(t).unwrap()) < 1e-12);
    assert!(bp_x_inverse(&Measure::uniform01()).is_err());
}

#[test]
fn x_max_examples() {
    let d = bp_x_max(&Measure::dirac(2.0).unwrap()).unwrap();
    assert!(cdf_gap(&d, &Measure::dirac(2.0).unwrap(), &[1.0, 2.0, 3.0]) == 0.0);
    for alpha in [0.5, 2.0] {
        let x = bp_x_max(&Measure::dagum(alpha).unwrap()).unwrap();
        assert!(cdf_gap(&x, &Measure::frechet(alpha).unwrap(), &ts()) < 1e-15);
    }
    let nu = Measure::exponential();
    let composite = bp_lambda_max(&bp_x_max(&nu).unwrap()).unwrap();
    assert!(cdf_gap(&composite, &bp_lambda_bf_max(&nu).unwrap(), &ts()) < 1e-15);
}

#[test]
fn omega_after_x_examples() {
    for alpha in [0.3, 0.5] {
        let b = Measure::boolean_stable(alpha).unwrap();
        for t in [0.5f64, 1.0, 4.0] {
            assert!((omega_after_x(&b, t).unwrap() - (-t.powf(-alpha)).exp()).abs() < 1e-14);
        }
    }
    assert_eq!(omega_after_x(&Measure::dirac(0.0).unwrap(), 0.0).unwrap(), 1.0);
    assert_eq!(omega_after_x(&Measure::exponential(), 0.0).unwrap(), 0.0);
    let p = Measure::poisson(1.0).unwrap();
    assert!((omega_after_x(&p, 0.0).unwrap() - (1.0 - 1.0f64.exp()).exp()).abs() < 1e-15);
    for mu in [Measure::dirac(1.0).unwrap(), Measure::exponential(), Measure::mp(0.5).unwrap()] {
        let rhs = bp_x_max(&xi(&mu).unwrap()).unwrap();
        let gap = sup_gap(&ts(), |t| omega_after_x(&mu, t).unwrap(), |t| rhs.cdf(t).unwrap());
        assert!(gap < 1e-12, "{}", mu.label());
    }
}

#[test]
fn boolean_to_free_examples() {
    for alpha in [0.3, 0.5, 0.7] {
        let l = bp_lambda_bf(&Measure::boolean_stable(alpha).unwrap()).unwrap();
        let f = Measure::free_stable(alpha).unwrap();
        let grid = linspace(-0.99, -0.01, 12);
        assert!(sup_gap(&grid, |t| l.r_transform(t).unwrap(), |t| f.r_transform(t).unwrap()) < 1e-13);
    }
    // η of δ₁ is t, which is also the R-transform of δ₁
    let l = bp_lambda_bf(&Measure::dirac(1.0).unwrap()).unwrap();
    let grid = linspace(-0.99, -0.01, 12);
    assert!(sup_gap(&grid, |t| l.r_transform(t).unwrap(), |t| t) < 1e-13);
    for alpha in [0.5, 2.0] {
        let p = bp_lambda_bf_max(&Measure::dagum(alpha).unwrap()).unwrap();
        assert!(cdf_gap(&p, &Measure::pareto(alpha).unwrap(), &ts()) < 1e-14);
    }
}

#[test]
fn boolean_to_free_atoms() {
    for p in [0.3, 0.5, 0.7] {
        let mu = Measure::exponential().with_atom_at_zero(p).unwrap();
        let l = bp_lambda_bf(&mu).unwrap();
        assert!((l.atom0() - (2.0 - 1.0 / p).max(0.0)).abs() < 1e-15);
        let a = l.neg_moment().unwrap();
        assert_eq!(a.is_infinite(), p >= 0.5, "p = {p}: A = {a}");
        if a.is_finite() {
            assert!((mu.eta(-a).unwrap() + 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn stable_homomorphisms_of_point_masses() {
    let one = Measure::dirac(1.0).unwrap();
    for alpha in [0.3, 0.5, 0.7] {
        let b = hom_boolean_stable(&one, alpha).unwrap();
        assert!(cdf_gap(&b, &Measure::boolean_stable(alpha).unwrap(), &ts()) < 1e-14);
        let f = hom_free_stable(&one, alpha).unwrap();
        let fs = Measure::free_stable(alpha).unwrap();
        let grid = linspace(-0.9, -0.1, 9);
        assert!(sup_gap(&grid, |u| f.s_transform(u).unwrap(), |u| fs.s_transform(u).unwrap()) < 1e-13);
    }
    let c = hom_classical_stable(&one, 0.5).unwrap();
    for t in [-0.5, -0.2, 0.2, 0.4] {
        let want = gamma(1.0 - 2.0 * t) / gamma(1.0 - t);
        assert!((c.mellin(t).unwrap() - want).abs() < 1e-12 * want);
    }
    assert!(cdf_gap(&c, &Measure::classical_stable(0.5).unwrap(), &ts()) < 1e-13);
}

#[test]
fn stable_homomorphisms_reject_bad_alpha() {
    let e = Measure::exponential();
    for alpha in [0.0, 1.0, 1.5, -0.2] {
        assert!(matches!(hom_classical_stable(&e, alpha), Err(Error::Domain(_))));
        assert!(matches!(hom_free_stable(&e, alpha), Err(Error::Domain(_))));
        assert!(matches!(hom_boolean_stable(&e, alpha), Err(Error::Domain(_))));
    }
    assert!(hom_free_stable(&Measure::dirac(0.0).unwrap(), 0.5).is_err());
}

#[test]
fn boolean_stable_homomorphism_routes_agree() {
    let nu = Measure::mp(2.0).unwrap();
    for alpha in [1.0 / 3.0, 0.5, 2.0 / 3.0] {
        let a = hom_boolean_stable(&nu, alpha).unwrap();
        let b = hom_boolean_stable_free(&nu, alpha).unwrap();
        let grid = linspace(-0.9, -0.1, 9);
        assert!(sup_gap(&grid, |u| a.s_transform(u).unwrap(), |u| b.s_transform(u).unwrap()) < 1e-9);
    }
}

#[test]
fn named_maps() {
    let inputs = |name: &str| match name {
        "lambda" | "x-inverse" => Measure::poisson(2.0).unwrap(),
        _ => Measure::exponential(),
    };
    for name in MAP_NAMES {
        let alpha = name.ends_with("-alpha").then_some(0.5);
        let out = apply(name, &inputs(name), alpha);
        assert!(out.is_ok(), "{name}: {out:?}");
    }
    assert!(apply("c-alpha", &Measure::exponential(), None).is_err());
    assert!(apply("nope", &Measure::exponential(), None).is_err());
}
