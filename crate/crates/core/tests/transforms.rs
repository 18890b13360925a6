mod common;

use common::{half_line, semicircle_density, simpson};
use freeconv::convolutions::{conv_classical_mul, conv_free_add};
use freeconv::quad::gauss_laguerre;
use freeconv::roots::{invert_monotone, Bracket};
use freeconv::{Error, Measure};
use statrs::function::gamma::gamma;

fn catalog() -> Vec<Measure> {
    vec![
        Measure::dirac(2.0).unwrap(),
        Measure::uniform01(),
        Measure::exponential(),
        Measure::poisson(1.5).unwrap(),
        Measure::mp(0.5).unwrap(),
        Measure::mp(3.0).unwrap(),
        Measure::semicircle(3.0, 1.0).unwrap(),
        Measure::free_stable(0.4).unwrap(),
        Measure::boolean_stable(0.6).unwrap(),
        Measure::classical_stable(0.5).unwrap(),
        Measure::pareto(1.5).unwrap(),
        Measure::dagum(0.7).unwrap(),
        Measure::frechet(2.0).unwrap(),
    ]
}

#[test]
fn cauchy_of_dirac() {
    let d = Measure::dirac(1.5).unwrap();
    for s in [-10.0, -1.0, -0.01] {
        assert!((d.cauchy(s).unwrap() - 1.0 / (s - 1.5)).abs() < 1e-15);
    }
    assert!(matches!(d.cauchy(0.5), Err(Error::Domain(_))));
    assert!(matches!(d.cauchy(0.0), Err(Error::Domain(_))));
}

#[test]
fn cauchy_of_semicircle_by_direct_integration() {
    let (m, v) = (3.0f64, 1.0f64);
    let mu = Measure::semicircle(m, v).unwrap();
    for s in [-5.0, -1.0, -0.1] {
        // θ-substitution x = m + 2√v cos θ removes the square-root edges
        let direct = simpson(
            |th: f64| {
                let x = m + 2.0 * v.sqrt() * th.cos();
                semicircle_density(m, v, x) * 2.0 * v.sqrt() * th.sin() / (s - x)
            },
            0.0,
            std::f64::consts::PI,
            4000,
        );
        assert!((mu.cauchy(s).unwrap() - direct).abs() < 1e-12, "s = {s}");
    }
}

#[test]
fn psi_and_cauchy_identity_over_catalog() {
    for mu in catalog() {
        for t in [-10.0, -1.0, -0.1] {
            let (psi, g) = (mu.psi(t).unwrap(), mu.cauchy(1.0 / t).unwrap());
            assert!((psi - (g / t - 1.0)).abs() < 1e-9, "{} t = {t}", mu.label());
        }
    }
}

#[test]
fn cauchy_vanishes_at_minus_infinity() {
    for mu in catalog() {
        assert!(mu.cauchy(-1e12).unwrap().abs() < 1e-9, "{}", mu.label());
    }
}

#[test]
fn negative_moments() {
    for alpha in [0.2, 0.5, 0.9] {
        assert!((Measure::free_stable(alpha).unwrap().neg_moment().unwrap() - 1.0).abs() < 1e-12);
    }
    for lambda in [1.5, 2.0, 5.0] {
        let a = Measure::mp(lambda).unwrap().neg_moment().unwrap();
        assert!((a - 1.0 / (lambda - 1.0)).abs() < 1e-12);
    }
    for lambda in [0.5, 1.0] {
        assert_eq!(Measure::mp(lambda).unwrap().neg_moment().unwrap(), f64::INFINITY);
    }
    let a = Measure::semicircle(3.0, 1.0).unwrap().neg_moment().unwrap();
    assert!((a - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
    assert_eq!(Measure::poisson(1.0).unwrap().neg_moment().unwrap(), f64::INFINITY);
}

#[test]
fn negative_moment_of_semicircle_by_direct_integration() {
    let (m, v) = (3.0f64, 1.0f64);
    let direct = simpson(
        |th: f64| {
            let x = m + 2.0 * v.sqrt() * th.cos();
            semicircle_density(m, v, x) * 2.0 * v.sqrt() * th.sin() / x
        },
        0.0,
        std::f64::consts::PI,
        4000,
    );
    assert!((Measure::semicircle(m, v).unwrap().neg_moment().unwrap() - direct).abs() < 1e-12);
}

#[test]
fn psi_examples() {
    let d = Measure::dirac(1.0).unwrap();
    for t in [-5.0, -1.0, -0.2] {
        assert!((d.psi(t).unwrap() - t / (1.0 - t)).abs() < 1e-15);
    }
    let b = Measure::boolean_stable(0.3).unwrap();
    for t in [-5.0f64, -1.0, -0.2] {
        let psi = b.psi(t).unwrap();
        assert!((psi / (1.0 + psi) + (-t).powf(0.3)).abs() < 1e-13);
    }
    assert!(matches!(d.psi(0.0), Err(Error::Domain(_))));
}

#[test]
fn psi_tends_to_minus_one_plus_atom() {
    for mu in [Measure::poisson(2.0).unwrap(), Measure::mp(0.4).unwrap(), Measure::exponential()] {
        let limit = -1.0 + mu.atom0();
        assert!((mu.psi(-1e10).unwrap() - limit).abs() < 1e-4, "{}", mu.label());
    }
}

#[test]
fn eta_examples() {
    assert!((Measure::boolean_stable(0.5).unwrap().eta(-4.0).unwrap() + 2.0).abs() < 1e-14);
    assert_eq!(Measure::dirac(0.0).unwrap().eta(-3.0).unwrap(), 0.0);
    // ψ(−1) = ∫ −x/(1+x) e^{−x} dx
    let psi = half_line(|x| -x / (1.0 + x) * (-x).exp());
    let eta = Measure::exponential().eta(-1.0).unwrap();
    assert!((eta - psi / (1.0 + psi)).abs() < 1e-9, "{eta} vs {}", psi / (1.0 + psi));
}

#[test]
fn r_transform_examples() {
    let mp = Measure::mp(2.0).unwrap();
    assert!((mp.r_transform(-1.0 / 3.0).unwrap() + 0.5).abs() < 1e-14);
    let d = Measure::dirac(2.5).unwrap();
    for t in [-0.3, -0.1] {
        assert!((d.r_transform(t).unwrap() - 2.5 * t).abs() < 1e-14);
    }
    let w = Measure::semicircle(2.0, 1.0).unwrap();
    assert!((w.r_transform(-0.5).unwrap() + 0.75).abs() < 1e-14);
}

#[test]
fn r_transform_outside_its_domain() {
    // registered continuation: semicircle(3, 1) accepts t > −m/(2v) = −1.5
    let w = Measure::semicircle(3.0, 1.0).unwrap();
    assert!((w.r_transform(-1.0).unwrap() + 2.0).abs() < 1e-14);
    assert!(matches!(w.r_transform(-2.0), Err(Error::Domain(_))));
    // without one, the domain ends at −A; A = (1 + 1/2)/2 for δ₁/2 + δ₂/2
    let g = Measure::from_grid(freeconv::oracle::empirical_measure(&[1.0, 2.0]).unwrap());
    assert!((g.neg_moment().unwrap() - 0.75).abs() < 1e-15);
    assert!(g.r_transform(-0.7).is_ok());
    assert!(matches!(g.r_transform(-0.8), Err(Error::Domain(_))));
    assert!(matches!(Measure::exponential().r_transform(0.1), Err(Error::Domain(_))));
}

#[test]
fn r_inverts_cauchy() {
    for mu in catalog() {
        for s in [-20.0, -3.0, -0.5] {
            let g = mu.cauchy(s).unwrap();
            match mu.r_transform(g) {
                Ok(r) => assert!((r + 1.0 - s * g).abs() < 1e-9, "{} s = {s}", mu.label()),
                Err(e) => panic!("{}: {e}", mu.label()),
            }
        }
    }
}

#[test]
fn s_transform_examples() {
    for lambda in [0.5, 2.0] {
        let mp = Measure::mp(lambda).unwrap();
        let lo = -1.0 + mp.atom0();
        for u in [lo * 0.9, lo * 0.5, -0.05] {
            assert!((mp.s_transform(u).unwrap() - 1.0 / (lambda + u)).abs() < 1e-13);
        }
    }
    for alpha in [0.3, 0.5, 0.7] {
        let f = Measure::free_stable(alpha).unwrap();
        for u in [-0.9f64, -0.5, -0.1] {
            assert!((f.s_transform(u).unwrap() - (-u).powf((1.0 - alpha) / alpha)).abs() < 1e-12);
        }
    }
    let mp2 = Measure::mp(2.0).unwrap();
    let inv = mp2.power(-1.0).unwrap();
    assert!((inv.s_transform(-0.5).unwrap() - 1.0 / mp2.s_transform(-0.5).unwrap()).abs() < 1e-10);
    assert!(Measure::dirac(0.0).unwrap().s_transform(-0.5).is_err());
}

#[test]
fn s_routes_agree() {
    for mu in catalog() {
        let lo = -1.0 + mu.atom0();
        for frac in [0.9, 0.5, 0.1] {
            let u = lo * frac;
            let (a, b) = (mu.s_via_r(u), mu.s_via_psi(u));
            if let (Ok(a), Ok(b)) = (&a, &b) {
                assert!((a - b).abs() < 1e-9 * a.abs().max(1.0), "{} u = {u}: {a} vs {b}", mu.label());
            } else if mu.neg_moment().unwrap().is_infinite() {
                // R inversion is unavailable when R does not reach the bottom of its range
                assert!(b.is_ok(), "{}: {b:?}", mu.label());
            } else {
                panic!("{}: {a:?} {b:?}", mu.label());
            }
        }
    }
}

#[test]
fn cumulant_examples() {
    for alpha in [0.3, 0.5, 0.8] {
        let s = Measure::classical_stable(alpha).unwrap();
        for t in [-3.0f64, -1.0, -0.1] {
            assert!((s.cumulant(t).unwrap() + (-t).powf(alpha)).abs() < 1e-14);
        }
    }
    // series summation of the Poisson Laplace transform
    let lambda = 1.7;
    let p = Measure::poisson(lambda).unwrap();
    for t in [-2.0f64, -0.5] {
        let mut term = (-lambda).exp();
        let mut sum = term;
        for k in 1..200 {
            term *= lambda * t.exp() / k as f64;
            sum += term;
        }
        assert!((p.cumulant(t).unwrap() - sum.ln()).abs() < 1e-12);
        assert!((sum.ln() - lambda * (t.exp() - 1.0)).abs() < 1e-12);
    }
    let d = Measure::dirac(0.7).unwrap();
    assert!((d.cumulant(-2.0).unwrap() + 1.4).abs() < 1e-15);
    assert_eq!(Measure::exponential().cumulant(0.0).unwrap(), 0.0);
}

#[test]
fn cumulant_of_exponential_by_quadrature() {
    for t in [-3.0f64, -0.5] {
        let direct = half_line(|x| (t * x).exp() * (-x).exp()).ln();
        assert!((Measure::exponential().cumulant(t).unwrap() - direct).abs() < 1e-10);
    }
}

#[test]
fn mellin_examples() {
    for alpha in [0.3, 0.5, 0.8] {
        let s = Measure::classical_stable(alpha).unwrap();
        for t in [-0.5, 0.0, 0.5 * alpha] {
            let want = gamma(1.0 - t / alpha) / gamma(1.0 - t);
            assert!((s.mellin(t).unwrap() - want).abs() < 1e-12 * want);
        }
        assert!(s.mellin(alpha).is_err());
    }
    for t in [-0.5, 0.5, 2.0] {
        assert!((Measure::exponential().mellin(t).unwrap() - gamma(1.0 + t)).abs() < 1e-12);
    }
    assert_eq!(Measure::dirac(1.0).unwrap().mellin(3.0).unwrap(), 1.0);
    assert!((Measure::poisson(1.0).unwrap().mellin(0.0).unwrap() - (1.0 - (-1f64).exp())).abs() < 1e-14);
}

#[test]
fn mellin_is_multiplicative_under_classical_product() {
    let e = Measure::exponential();
    let s = Measure::classical_stable(0.5).unwrap();
    let prod = conv_classical_mul(&e, &s).unwrap();
    for t in [-0.4, -0.1, 0.2, 0.4] {
        let want = e.mellin(t).unwrap() * s.mellin(t).unwrap();
        assert!((prod.mellin(t).unwrap() - want).abs() < 1e-12 * want);
    }
}

#[test]
fn monotone_inversion() {
    let x = invert_monotone(Ok, 0.3, Bracket::new(0.0, 1.0, 1e-15).unwrap()).unwrap();
    assert!((x - 0.3).abs() < 1e-14);
    let d = Measure::dirac(1.0).unwrap();
    let s = invert_monotone(|s| d.cauchy(s), -0.5, Bracket::new(-10.0, -0.1, 1e-14).unwrap()).unwrap();
    assert!((s + 1.0).abs() < 1e-12);
    let mp = Measure::mp(1.0).unwrap();
    let t = invert_monotone(|t| mp.psi(t), -0.5, Bracket::new(-100.0, -1e-6, 1e-15).unwrap()).unwrap();
    assert!((mp.psi(t).unwrap() + 0.5).abs() < 1e-12);
    let miss = invert_monotone(Ok, 3.0, Bracket::new(0.0, 1.0, 1e-12).unwrap());
    assert!(matches!(miss, Err(Error::Bracket(_))));
    assert!(Bracket::new(1.0, 0.0, 1e-12).is_err());
}

#[test]
fn laguerre_rule() {
    assert!((gauss_laguerre(|_| Ok(1.0), 96).unwrap() - 1.0).abs() < 1e-14);
    assert!((gauss_laguerre(Ok, 96).unwrap() - 1.0).abs() < 1e-13);
    assert!((gauss_laguerre(|x| Ok((-x / 3.0).exp()), 96).unwrap() - 0.75).abs() < 1e-14);
    assert!(matches!(gauss_laguerre(|_| Ok(1.0), 1), Err(Error::Domain(_))));
}

#[test]
fn r_range_reaches_bottom_at_minus_a() {
    let g = Measure::from_grid(freeconv::oracle::empirical_measure(&[1.0, 2.0, 4.0]).unwrap());
    let a = g.neg_moment().unwrap();
    assert!((g.r_transform(-a * (1.0 - 1e-9)).unwrap() + 1.0).abs() < 1e-6);
    let rs: Vec<f64> = (1..50).map(|i| g.r_transform(-a * i as f64 / 50.0).unwrap()).collect();
    assert!(rs.iter().all(|r| *r > -1.0 && *r < 0.0));
    assert!(rs.windows(2).all(|w| w[0] > w[1]));
}

#[test]
fn free_sum_lowers_a() {
    let (mu, nu) = (Measure::mp(3.0).unwrap(), Measure::semicircle(3.0, 1.0).unwrap());
    let sum = conv_free_add(&mu, &nu).unwrap();
    let a = sum.neg_moment().unwrap();
    assert!(a <= mu.neg_moment().unwrap().min(nu.neg_moment().unwrap()));
}
