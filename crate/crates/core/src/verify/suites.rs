#![allow(clippy::type_complexity)]

use statrs::function::gamma::gamma;

use super::{Case, Outcome, TOL_CLOSED, TOL_ORACLE, TOL_QUADRATURE};
use crate::convolutions::{
    conv_boolean_add, conv_boolean_max, conv_classical_add, conv_classical_max, conv_classical_mul,
    conv_free_add, conv_free_max, conv_free_mul, power_boolean_add, power_boolean_max,
    power_free_add, power_free_max, power_free_mul,
};
use crate::error::{Error, Result};
use crate::maps::*;
use crate::measures::Measure;
use crate::oracle::{
    empirical_measure, ks_bound_99, ks_distance, linspace, subordination_density,
    subordination_free_add,
};

pub const SUITES: &[&str] = &[
    "examples",
    "phi",
    "theta-hom",
    "theta-semigroup",
    "xi-hom",
    "xi-routes",
    "omega-hom",
    "intertwine",
    "interBF",
    "stable-intertwine",
    "lemma44",
    "atoms",
    "oracle-subord",
];

pub(super) fn cases(name: &str) -> Result<Vec<Case>> {
    Ok(match name {
        "examples" => examples(),
        "phi" => phi_suite(),
        "theta-hom" => theta_hom(),
        "theta-semigroup" => theta_semigroup(),
        "xi-hom" => xi_hom(),
        "xi-routes" => xi_routes(),
        "omega-hom" => omega_hom(),
        "intertwine" => intertwine(),
        "interBF" => inter_bf(),
        "stable-intertwine" => stable_intertwine(),
        "lemma44" => lemma44(),
        "atoms" => atoms(),
        "oracle-subord" => oracle_subord(),
        _ => {
            return Err(Error::Parse(format!(
                "unknown suite '{name}' (known: {})",
                SUITES.join(", ")
            )))
        }
    })
}

fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    linspace(lo, hi, n).into_iter().map(|e| 10f64.powf(e)).collect()
}

/// `[0, hi]` evenly, followed by a logarithmic tail up to `10^tail`.
fn cdf_grid(hi: f64, n: usize, tail: f64) -> Vec<f64> {
    let mut g = linspace(0.0, hi, n);
    g.extend(logspace(hi.log10(), tail, 25).into_iter().skip(1));
    g
}

/// Sup of `|lhs − rhs|` over `grid`.
fn gap(
    grid: &[f64],
    lhs: impl Fn(f64) -> Result<f64>,
    rhs: impl Fn(f64) -> Result<f64>,
) -> Result<Outcome> {
    let mut value: f64 = 0.0;
    let mut series = Vec::with_capacity(grid.len());
    for &t in grid {
        let (l, r) = (lhs(t)?, rhs(t)?);
        let d = (l - r).abs();
        value = if d.is_nan() { f64::NAN } else { value.max(d) };
        series.push([t, l, r]);
    }
    Ok(Outcome { value, series })
}

fn cdf_gap(grid: &[f64], lhs: &Measure, rhs: &Measure) -> Result<Outcome> {
    gap(grid, |t| lhs.cdf(t), |t| rhs.cdf(t))
}

fn scalar(lhs: f64, rhs: f64) -> Outcome {
    Outcome { value: (lhs - rhs).abs(), series: vec![] }
}

fn value(v: f64) -> Outcome {
    Outcome { value: v, series: vec![] }
}

/// `1` when the claim holds, `0` otherwise; checked with tolerance 0.5.
fn truth(claim: bool) -> Outcome {
    value(if claim { 0.0 } else { 1.0 })
}

fn mp(lambda: f64) -> Result<Measure> {
    Measure::mp(lambda)
}

/// `(1 − t^{−α})₊`
fn pareto_cdf(alpha: f64, t: f64) -> f64 {
    (1.0 - t.powf(-alpha)).max(0.0)
}

const ALPHAS: [f64; 3] = [0.3, 0.5, 0.7];
const STABLE_ALPHAS: [f64; 3] = [1.0 / 3.0, 0.5, 2.0 / 3.0];

fn examples() -> Vec<Case> {
    let grid = linspace(0.0, 100.0, 200);
    let mut out = Vec::new();
    for a in ALPHAS {
        let g = grid.clone();
        out.push(Case::new(
            format!("theta-free-stable/alpha={a}"),
            TOL_CLOSED,
            "Θ(f_α) from R",
            "Pareto (1 − t^{−α})₊",
            move || {
                let th = theta(&Measure::free_stable(a)?)?;
                gap(&g, |t| th.cdf(t), |t| Ok(pareto_cdf(a, t)))
            },
        ));
        let g = grid.clone();
        out.push(Case::new(
            format!("xi-boolean-stable/alpha={a}"),
            TOL_CLOSED,
            "Ξ(b_α) from ψ",
            "Dagum t^α/(1 + t^α)",
            move || {
                let x = xi(&Measure::boolean_stable(a)?)?;
                gap(&g, |t| x.cdf(t), |t| Ok(t.powf(a) / (1.0 + t.powf(a))))
            },
        ));
        let g = grid.clone();
        out.push(Case::new(
            format!("omega-classical-stable/alpha={a}"),
            TOL_QUADRATURE,
            "Ω(s_α) by Laguerre-weighted quadrature",
            "exp(−Γ(1+α) t^{−α})",
            move || {
                let o = omega(&Measure::classical_stable(a)?)?;
                let c = gamma(1.0 + a);
                gap(&g, |t| o.cdf(t), |t| Ok((-c * t.powf(-a)).exp()))
            },
        ));
        let g = grid.clone();
        out.push(Case::new(
            format!("omega-tilde-classical-stable/alpha={a}"),
            TOL_QUADRATURE,
            "Ω̃(s_α) from C",
            "Fréchet exp(−t^{−α})",
            move || {
                let o = omega_tilde(&Measure::classical_stable(a)?)?;
                gap(&g, |t| o.cdf(t), |t| Ok((-t.powf(-a)).exp()))
            },
        ));
        let g = grid.clone();
        out.push(Case::new(
            format!("omega-tilde-is-inverse-exponential-power/alpha={a}"),
            TOL_QUADRATURE,
            "Ω̃(s_α)",
            "law of E^{−1/α}, E exponential",
            move || {
                let o = omega_tilde(&Measure::classical_stable(a)?)?;
                let e = Measure::exponential().power(-1.0 / a)?;
                cdf_gap(&g, &o, &e)
            },
        ));
    }
    out.push(Case::new("theta-free-stable-half-at-4", TOL_CLOSED, "Θ(f_{1/2})([0, 4])", "1/2", || {
        Ok(scalar(theta(&Measure::free_stable(0.5)?)?.cdf(4.0)?, 0.5))
    }));
    out.push(Case::new("dagum-half-at-1", TOL_CLOSED, "Ξ(b_{1/2})([0, 1])", "1/2", || {
        Ok(scalar(xi(&Measure::boolean_stable(0.5)?)?.cdf(1.0)?, 0.5))
    }));
    for lambda in [0.5, 2.0] {
        out.push(Case::new(
            format!("poisson-mp-r/lambda={lambda}"),
            TOL_QUADRATURE,
            "R̃ of Λ(poisson(λ)) by quadrature of C",
            "λt/(1 − t)",
            move || {
                let l = bp_lambda(&Measure::poisson(lambda)?)?;
                let probes: Vec<f64> = logspace(-2.0, 2.0, 10).into_iter().map(|x| -x).collect();
                let probes: Vec<f64> = if lambda > 1.0 {
                    // R of the image is defined on (−A, 0) = (−1/(λ−1), 0)
                    probes.into_iter().filter(|t| *t > -1.0 / (lambda - 1.0)).collect()
                } else {
                    probes
                };
                gap(&probes, |t| l.r_transform(t), |t| Ok(lambda * t / (1.0 - t)))
            },
        ));
        out.push(Case::new(
            format!("poisson-mp-cdf/lambda={lambda}"),
            TOL_QUADRATURE,
            "Θ(Λ(poisson(λ)))",
            "Θ(mp(λ)) from the closed-form R",
            move || {
                let l = theta(&bp_lambda(&Measure::poisson(lambda)?)?)?;
                let m = theta(&mp(lambda)?)?;
                cdf_gap(&cdf_grid(20.0, 81, 3.0), &l, &m)
            },
        ));
    }
    out
}

/// Φ(mp(λ)) has CDF `clamp(x + 1 − λ, 0, 1)`, since `1/S(t − 1) = λ + t − 1`.
fn phi_mp_cdf(lambda: f64, x: f64) -> f64 {
    (x + 1.0 - lambda).clamp(0.0, 1.0)
}

fn phi_suite() -> Vec<Case> {
    let mut out = Vec::new();
    out.push(Case::new("mp-one-is-uniform", 1e-8, "Φ(mp(1)) by inverting 1/S", "uniform on [0, 1]", || {
        let u = phi(&mp(1.0)?)?;
        gap(&linspace(0.0, 2.0, 401), |t| u.cdf(t), |t| Ok(t.min(1.0)))
    }));
    let lambdas = [0.5, 1.0, 2.0, 4.0];
    for l in lambdas {
        out.push(Case::new(
            format!("mp/lambda={l}"),
            1e-8,
            "Φ(mp(λ))",
            "clamp(x + 1 − λ, 0, 1)",
            move || {
                let p = phi(&mp(l)?)?;
                gap(&linspace(0.0, 6.0, 241), |t| p.cdf(t), |t| Ok(phi_mp_cdf(l, t)))
            },
        ));
    }
    for (i, &l1) in lambdas.iter().enumerate() {
        for &l2 in &lambdas[i + 1..] {
            out.push(
                Case::new(
                    format!("injective/lambda={l1},{l2}"),
                    0.01,
                    format!("Φ(mp({l1}))"),
                    format!("Φ(mp({l2}))"),
                    move || {
                        let (a, b) = (phi(&mp(l1)?)?, phi(&mp(l2)?)?);
                        Ok(value(ks_distance(&a, &b, &linspace(0.0, 6.0, 601))?))
                    },
                )
                .exceeds(),
            );
        }
    }
    out.push(Case::new("free-stable-half", 1e-8, "Φ(f_{1/2})", "Pareto (1 − 1/x)₊", || {
        let p = phi(&Measure::free_stable(0.5)?)?;
        gap(&cdf_grid(20.0, 81, 4.0), |t| p.cdf(t), |t| Ok(pareto_cdf(1.0, t)))
    }));
    for (name, m) in [("mp(1)", 1.0), ("mp(2)", 2.0), ("mp(0.5)", 0.5)] {
        out.push(Case::new(
            format!("theta-route/{name}"),
            1e-8,
            "Θ from R",
            "Φ(f_{1/2} ⊠ ·)",
            move || {
                let mu = mp(m)?;
                cdf_gap(&cdf_grid(20.0, 81, 3.0), &theta(&mu)?, &theta_via_phi(&mu)?)
            },
        ));
    }
    out.push(Case::new("theta-route/dirac(1)", 1e-8, "Θ(δ₁) from R", "Φ(f_{1/2} ⊠ δ₁)", || {
        let mu = Measure::dirac(1.0)?;
        cdf_gap(&cdf_grid(20.0, 81, 3.0), &theta(&mu)?, &theta_via_phi(&mu)?)
    }));
    out
}

/// Resolution of the oracle grid for `mp(1) ⊞ mp(1)`.
const ORACLE_POINTS: usize = 1201;

fn theta_hom() -> Vec<Case> {
    let mut out = Vec::new();
    out.push(Case::new(
        "oracle/mp(1)+mp(1)",
        1e-3,
        "Θ of the subordination density of mp(1) ⊞ mp(1)",
        "Θ(mp(1)) □∨ Θ(mp(1))",
        || {
            let m = mp(1.0)?;
            let sum = subordination_free_add(&m, &m, &linspace(0.0, 6.0, ORACLE_POINTS))?;
            let lhs = theta(&Measure::from_grid(sum))?;
            let th = theta(&m)?;
            let rhs = conv_free_max(&th, &th)?;
            cdf_gap(&cdf_grid(20.0, 201, 3.0), &lhs, &rhs)
        },
    ));
    out.push(Case::new(
        "exact/mp(1)+mp(1)",
        TOL_CLOSED,
        "Θ(mp(1)) □∨ Θ(mp(1))",
        "Θ(mp(2)) = (t − 1)/(t + 1) for t ≥ 1",
        || {
            let th = theta(&mp(1.0)?)?;
            let lhs = conv_free_max(&th, &th)?;
            gap(
                &cdf_grid(20.0, 201, 3.0),
                |t| lhs.cdf(t),
                |t| Ok(if t >= 1.0 { (t - 1.0) / (t + 1.0) } else { 0.0 }),
            )
        },
    ));
    out.push(Case::new(
        "exact/lazy-sum/mp(1)+mp(1)",
        TOL_CLOSED,
        "Θ(mp(1) ⊞ mp(1)) with R-addition",
        "(t − 1)/(t + 1) for t ≥ 1",
        || {
            let m = mp(1.0)?;
            let lhs = theta(&conv_free_add(&m, &m)?)?;
            gap(
                &cdf_grid(20.0, 201, 3.0),
                |t| lhs.cdf(t),
                |t| Ok(if t >= 1.0 { (t - 1.0) / (t + 1.0) } else { 0.0 }),
            )
        },
    ));
    out.push(Case::new(
        "exact/f(1/2)+f(1/2)",
        TOL_CLOSED,
        "Θ(f_{1/2}) □∨ Θ(f_{1/2})",
        "Θ(D_4 f_{1/2}) = (1 − 2t^{−1/2})₊",
        || {
            let th = theta(&Measure::free_stable(0.5)?)?;
            let lhs = conv_free_max(&th, &th)?;
            gap(&cdf_grid(20.0, 201, 4.0), |t| lhs.cdf(t), |t| Ok((1.0 - 2.0 / t.sqrt()).max(0.0)))
        },
    ));
    out.push(Case::new(
        "exact/mp(1)+f(1/2)",
        TOL_CLOSED,
        "Θ(mp(1) ⊞ f_{1/2})",
        "Θ(mp(1)) □∨ Θ(f_{1/2})",
        || {
            let (m, f) = (mp(1.0)?, Measure::free_stable(0.5)?);
            let lhs = theta(&conv_free_add(&m, &f)?)?;
            let rhs = conv_free_max(&theta(&m)?, &theta(&f)?)?;
            cdf_gap(&cdf_grid(20.0, 201, 4.0), &lhs, &rhs)
        },
    ));
    out
}

fn semigroup_inputs() -> [(&'static str, fn() -> Result<Measure>); 3] {
    [
        ("mp(1)", || mp(1.0)),
        ("f(1/2)", || Measure::free_stable(0.5)),
        ("b(1/2)", || Measure::boolean_stable(0.5)),
    ]
}

fn theta_semigroup() -> Vec<Case> {
    let mut out = Vec::new();
    for (name, make) in semigroup_inputs() {
        for t in [1.0, 1.5, 2.0, 3.0] {
            out.push(Case::new(
                format!("{name}/t={t}"),
                1e-8,
                "Θ(μ^{⊞t})",
                "Θ(μ)^{□∨t}",
                move || {
                    let mu = make()?;
                    let lhs = theta(&power_free_add(&mu, t)?)?;
                    let rhs = power_free_max(&theta(&mu)?, t)?;
                    cdf_gap(&cdf_grid(10.0, 101, 4.0), &lhs, &rhs)
                },
            ));
        }
    }
    out
}

fn xi_inputs() -> [(&'static str, fn() -> Result<Measure>); 3] {
    [
        ("b(1/2)", || Measure::boolean_stable(0.5)),
        ("dirac(1)", || Measure::dirac(1.0)),
        ("mp(1)", || mp(1.0)),
    ]
}

fn xi_hom() -> Vec<Case> {
    let mut out = Vec::new();
    let inputs = xi_inputs();
    for (i, (n1, m1)) in inputs.iter().enumerate() {
        for (n2, m2) in &inputs[i..] {
            let (m1, m2) = (*m1, *m2);
            out.push(Case::new(
                format!("sum/{n1}+{n2}"),
                1e-8,
                "Ξ(μ ⊎ ν)",
                "Ξ(μ) ∪∨ Ξ(ν)",
                move || {
                    let (mu, nu) = (m1()?, m2()?);
                    let lhs = xi(&conv_boolean_add(&mu, &nu)?)?;
                    let rhs = conv_boolean_max(&xi(&mu)?, &xi(&nu)?)?;
                    cdf_gap(&cdf_grid(10.0, 101, 4.0), &lhs, &rhs)
                },
            ));
        }
    }
    for (name, make) in semigroup_inputs() {
        for t in [0.5, 1.0, 2.0, 4.0] {
            out.push(Case::new(
                format!("semigroup/{name}/t={t}"),
                1e-8,
                "Ξ(μ^{⊎t})",
                "Ξ(μ)^{∪∨t}",
                move || {
                    let mu = make()?;
                    let lhs = xi(&power_boolean_add(&mu, t)?)?;
                    let rhs = power_boolean_max(&xi(&mu)?, t)?;
                    cdf_gap(&cdf_grid(10.0, 101, 4.0), &lhs, &rhs)
                },
            ));
        }
    }
    out
}

type Route = fn(&Measure) -> Result<Measure>;

fn xi_routes() -> Vec<Case> {
    let routes: [(&str, Route); 3] = [
        ("theta-of-mp-product", xi_via_theta),
        ("phi-of-boolean-stable-product", xi_via_phi),
        ("exponential-products", xi_via_exponentials),
    ];
    let inputs: [(&str, fn() -> Result<Measure>); 2] =
        [("dirac(1)", || Measure::dirac(1.0)), ("exponential", || Ok(Measure::exponential()))];
    let mut out = Vec::new();
    for (iname, make) in inputs {
        for (rname, route) in routes {
            out.push(Case::new(
                format!("{iname}/{rname}"),
                1e-6,
                "Ξ from ψ",
                rname,
                move || {
                    let mu = make()?;
                    let mut grid = vec![0.0];
                    grid.extend(logspace(-2.0, 2.0, 41));
                    cdf_gap(&grid, &xi(&mu)?, &route(&mu)?)
                },
            ));
        }
    }
    out.push(Case::new("dirac(1)/closed-form", TOL_CLOSED, "Ξ(δ₁)", "t/(1 + t)", || {
        let x = xi(&Measure::dirac(1.0)?)?;
        gap(&linspace(0.0, 50.0, 201), |t| x.cdf(t), |t| Ok(t / (1.0 + t)))
    }));
    out
}

fn omega_inputs() -> [(&'static str, fn() -> Result<Measure>); 3] {
    [
        ("exponential", || Ok(Measure::exponential())),
        ("gamma(2)", || {
            let e = Measure::exponential();
            conv_classical_add(&e, &e)
        }),
        ("poisson(1)", || Measure::poisson(1.0)),
    ]
}

fn omega_hom() -> Vec<Case> {
    let mut out = Vec::new();
    let inputs = omega_inputs();
    for (i, (n1, m1)) in inputs.iter().enumerate() {
        for (n2, m2) in &inputs[i..] {
            let (m1, m2) = (*m1, *m2);
            out.push(Case::new(
                format!("{n1}*{n2}"),
                1e-6,
                "Ω(μ ∗ ν) with ∗ on a grid",
                "Ω(μ)·Ω(ν)",
                move || {
                    let (mu, nu) = (m1()?, m2()?);
                    let lhs = omega(&conv_classical_add(&mu, &nu)?)?;
                    let rhs = conv_classical_max(&omega(&mu)?, &omega(&nu)?)?;
                    cdf_gap(&cdf_grid(20.0, 81, 3.0), &lhs, &rhs)
                },
            ));
        }
    }
    out.push(Case::new("poisson(2)-at-3", 1e-10, "Ω(poisson(2))([0, 3])", "exp(−1/2)", || {
        Ok(scalar(omega(&Measure::poisson(2.0)?)?.cdf(3.0)?, (-0.5f64).exp()))
    }));
    out
}

fn intertwine() -> Vec<Case> {
    let inputs: [(&str, fn() -> Result<Measure>); 3] = [
        ("poisson(0.5)", || Measure::poisson(0.5)),
        ("poisson(2)", || Measure::poisson(2.0)),
        ("s(1/2)", || Measure::classical_stable(0.5)),
    ];
    let mut out = Vec::new();
    for (name, make) in inputs {
        out.push(Case::new(
            format!("lambda/{name}"),
            1e-8,
            "Λ^∨(Ω(μ))",
            "Θ(Λ(μ))",
            move || {
                let mu = make()?;
                let lhs = bp_lambda_max(&omega(&mu)?)?;
                let rhs = theta(&bp_lambda(&mu)?)?;
                cdf_gap(&cdf_grid(20.0, 81, 3.0), &lhs, &rhs)
            },
        ));
    }
    out.push(Case::new("lambda/poisson(2)-at-3/lhs", 1e-10, "Λ^∨(Ω(poisson(2)))([0, 3])", "1/2", || {
        let lhs = bp_lambda_max(&omega(&Measure::poisson(2.0)?)?)?;
        Ok(scalar(lhs.cdf(3.0)?, 0.5))
    }));
    out.push(Case::new("lambda/poisson(2)-at-3/rhs", 1e-10, "Θ(Λ(poisson(2)))([0, 3])", "1/2", || {
        let rhs = theta(&bp_lambda(&Measure::poisson(2.0)?)?)?;
        Ok(scalar(rhs.cdf(3.0)?, 0.5))
    }));
    let inputs: [(&str, fn() -> Result<Measure>); 3] = [
        ("dirac(1)", || Measure::dirac(1.0)),
        ("b(1/2)", || Measure::boolean_stable(0.5)),
        ("exponential", || Ok(Measure::exponential())),
    ];
    for (name, make) in inputs {
        out.push(Case::new(
            format!("x/{name}"),
            1e-8,
            "Ω(X(μ)) = exp η_μ(−1/t)",
            "X^∨(Ξ(μ))",
            move || {
                let mu = make()?;
                let rhs = bp_x_max(&xi(&mu)?)?;
                gap(&cdf_grid(20.0, 81, 4.0), |t| omega_after_x(&mu, t), |t| rhs.cdf(t))
            },
        ));
    }
    out
}

fn inter_bf() -> Vec<Case> {
    let mut out = Vec::new();
    for (name, make) in xi_inputs() {
        out.push(Case::new(
            name.to_string(),
            1e-7,
            "Θ(Λ_bf(μ))",
            "Λ^∨_bf(Ξ(μ))",
            move || {
                let mu = make()?;
                let lhs = theta(&bp_lambda_bf(&mu)?)?;
                let rhs = bp_lambda_bf_max(&xi(&mu)?)?;
                cdf_gap(&cdf_grid(20.0, 81, 4.0), &lhs, &rhs)
            },
        ));
    }
    for a in STABLE_ALPHAS {
        out.push(Case::new(
            format!("boolean-stable-to-free-stable/alpha={a:.4}"),
            TOL_CLOSED,
            "R̃ of Λ_bf(b_α)",
            "R̃ of f_α = −(−t)^α",
            move || {
                let l = bp_lambda_bf(&Measure::boolean_stable(a)?)?;
                // A of the image is 1
                let probes = linspace(-0.99, -0.01, 10);
                gap(&probes, |t| l.r_transform(t), |t| Ok(-(-t).powf(a)))
            },
        ));
    }
    out.push(Case::new("dirac(1)-is-fixed", TOL_CLOSED, "R̃ of Λ_bf(δ₁)", "R̃ of δ₁ = t", || {
        let l = bp_lambda_bf(&Measure::dirac(1.0)?)?;
        let probes = linspace(-0.99, -0.01, 10);
        gap(&probes, |t| l.r_transform(t), Ok)
    }));
    out
}

fn stable_intertwine() -> Vec<Case> {
    let probes = logspace(-1.0, 2.0, 10);
    let mut out = Vec::new();
    for a in STABLE_ALPHAS {
        let inputs: [(&str, fn() -> Result<Measure>); 3] = [
            ("dirac(2)", || Measure::dirac(2.0)),
            ("exponential", || Ok(Measure::exponential())),
            ("poisson(1)", || Measure::poisson(1.0)),
        ];
        for (name, make) in inputs {
            let p = probes.clone();
            out.push(Case::new(
                format!("omega-tilde/{name}/alpha={a:.4}"),
                TOL_CLOSED,
                "Ω̃(C_α(ν))",
                "P_{1/α}(Ω̃(ν))",
                move || {
                    let nu = make()?;
                    cdf_gap(&p, &omega_tilde(&hom_classical_stable(&nu, a)?)?, &omega_tilde(&nu)?.power(1.0 / a)?)
                },
            ));
        }
        let inputs: [(&str, fn() -> Result<Measure>); 3] = [
            ("dirac(2)", || Measure::dirac(2.0)),
            ("mp(1)", || mp(1.0)),
            ("mp(2)", || mp(2.0)),
        ];
        for (name, make) in inputs {
            let p = probes.clone();
            out.push(Case::new(
                format!("theta/{name}/alpha={a:.4}"),
                TOL_CLOSED,
                "Θ(F_α(ν))",
                "P_{1/α}(Θ(ν))",
                move || {
                    let nu = make()?;
                    cdf_gap(&p, &theta(&hom_free_stable(&nu, a)?)?, &theta(&nu)?.power(1.0 / a)?)
                },
            ));
        }
        let inputs: [(&str, fn() -> Result<Measure>); 3] = [
            ("dirac(2)", || Measure::dirac(2.0)),
            ("exponential", || Ok(Measure::exponential())),
            ("mp(1)", || mp(1.0)),
        ];
        for (name, make) in inputs {
            let p = probes.clone();
            out.push(Case::new(
                format!("xi/{name}/alpha={a:.4}"),
                TOL_CLOSED,
                "Ξ(B_α(ν)), B_α = b_α ⊛ ν^{1/α}",
                "P_{1/α}(Ξ(ν))",
                move || {
                    let nu = make()?;
                    cdf_gap(&p, &xi(&hom_boolean_stable(&nu, a)?)?, &xi(&nu)?.power(1.0 / a)?)
                },
            ));
            let p = probes.clone();
            out.push(Case::new(
                format!("xi-free-form/{name}/alpha={a:.4}"),
                TOL_CLOSED,
                "Ξ(B_α(ν)), B_α = b_α ⊠ ν^{⊠1/α}",
                "P_{1/α}(Ξ(ν))",
                move || {
                    let nu = make()?;
                    cdf_gap(&p, &xi(&hom_boolean_stable_free(&nu, a)?)?, &xi(&nu)?.power(1.0 / a)?)
                },
            ));
        }
    }
    out
}

/// `MP⁻¹`, the law of `1/X` for `X ~ mp(1)`.
fn mp_inverse() -> Result<Measure> {
    mp(1.0)?.power(-1.0)
}

fn lemma44() -> Vec<Case> {
    let mut out = Vec::new();
    let s_probes = linspace(-0.95, -0.05, 10);
    for a in STABLE_ALPHAS {
        out.push(Case::new(
            format!("mellin/alpha={a:.4}"),
            TOL_CLOSED,
            "M of e⁻¹ ⊛ s_α by multiplicativity",
            "M of E^{−1/α} by quadrature",
            move || {
                let e = Measure::exponential();
                let lhs = conv_classical_mul(&e.power(-1.0)?, &Measure::classical_stable(a)?)?;
                let rhs = e.power(-1.0 / a)?;
                gap(&linspace(-0.9, 0.9 * a, 10), |t| lhs.mellin(t), |t| rhs.mellin_quadrature(t))
            },
        ));
        let p = s_probes.clone();
        out.push(Case::new(
            format!("s-mp-inverse/alpha={a:.4}"),
            TOL_CLOSED,
            "S of MP⁻¹ ⊠ f_α",
            "S of (MP⁻¹)^{⊠1/α}, S_{MP⁻¹} from quadrature of ψ",
            move || {
                let inv = mp_inverse()?;
                let f = Measure::free_stable(a)?;
                gap(
                    &p,
                    |u| Ok(inv.s_via_psi(u)? * f.s_transform(u)?),
                    |u| Ok(inv.s_via_psi(u)?.powf(1.0 / a)),
                )
            },
        ));
        out.push(Case::new(
            format!("cdf-exponential-pair/alpha={a:.4}"),
            TOL_CLOSED,
            "(e ⊛ e⁻¹) ⊛ b_α",
            "P_{1/α}(e ⊛ e⁻¹)",
            move || {
                let e = Measure::exponential();
                let pair = conv_classical_mul(&e, &e.power(-1.0)?)?;
                let lhs = conv_classical_mul(&pair, &Measure::boolean_stable(a)?)?;
                cdf_gap(&logspace(-1.0, 2.0, 10), &lhs, &pair.power(1.0 / a)?)
            },
        ));
        let p = s_probes.clone();
        out.push(Case::new(
            format!("s-mp-pair/alpha={a:.4}"),
            TOL_CLOSED,
            "S of (MP ⊠ MP⁻¹) ⊠ b_α",
            "S of (MP ⊠ MP⁻¹)^{⊠1/α}",
            move || {
                let pair = conv_free_mul(&mp(1.0)?, &mp_inverse()?)?;
                let lhs = conv_free_mul(&pair, &Measure::boolean_stable(a)?)?;
                let rhs = power_free_mul(&pair, 1.0 / a)?;
                gap(&p, |u| lhs.s_transform(u), |u| rhs.s_transform(u))
            },
        ));
    }
    out
}

/// `−τ(1 + ψ(τ))` tends to `A` as `τ → −∞`.
fn a_estimate(mu: &Measure, tau: f64) -> Result<f64> {
    Ok(-tau * (1.0 + mu.psi(tau)?))
}

fn atoms() -> Vec<Case> {
    let mut out = Vec::new();
    let inputs: [(&str, fn() -> Result<Measure>); 3] = [
        ("semicircle(2,1)", || Measure::semicircle(2.0, 1.0)),
        ("pareto(1)", || Measure::pareto(1.0)),
        ("mp(2)", || mp(2.0)),
    ];
    for (name, make) in inputs {
        out.push(Case::new(
            format!("mp-product-has-infinite-a/flag/{name}"),
            0.5,
            "A of MP ⊠ μ",
            "∞",
            move || {
                let mu = make()?;
                let a = conv_free_mul(&mp(1.0)?, &mu)?.neg_moment()?;
                Ok(truth(a.is_infinite() && mu.neg_moment()?.is_finite()))
            },
        ));
        out.push(
            Case::new(
                format!("mp-product-has-infinite-a/growth/{name}"),
                10.0,
                "−τ(1 + ψ(τ)) of MP ⊠ μ at τ = −4^12 over its value at τ = −4^4",
                "unbounded growth",
                move || {
                    let m = conv_free_mul(&mp(1.0)?, &make()?)?;
                    let ratio = a_estimate(&m, -(4f64.powi(12)))? / a_estimate(&m, -(4f64.powi(4)))?;
                    Ok(value(ratio))
                },
            )
            .exceeds(),
        );
    }
    for lambda in [0.25, 0.5, 0.9, 1.1, 2.0, 4.0] {
        out.push(Case::new(
            format!("bp-atom/poisson({lambda})"),
            1e-15,
            "Λ(poisson(λ))({0})",
            "max{1 − λ, 0}",
            move || {
                let l = bp_lambda(&Measure::poisson(lambda)?)?;
                Ok(scalar(l.atom0(), (1.0 - lambda).max(0.0)))
            },
        ));
        out.push(Case::new(
            format!("bp-a-threshold/poisson({lambda})"),
            0.5,
            "A of Λ(poisson(λ)) finite",
            "R̃(−2^40) < −1, i.e. μ({0}) < 1/e",
            move || {
                let mu = Measure::poisson(lambda)?;
                let l = bp_lambda(&mu)?;
                let crosses = crate::quad::laguerre_integral(
                    |x| mu.cumulant(-(2f64.powi(40)) * x),
                    crate::quad::Tolerance::new(0.0, 1e-12),
                )? < -1.0;
                let below = mu.atom0() < (-1f64).exp();
                Ok(truth(l.neg_moment()?.is_finite() == crosses && crosses == below))
            },
        ));
    }
    out.push(Case::new("bp-a/poisson(2)", TOL_QUADRATURE, "A of Λ(poisson(2))", "A of mp(2) = 1", || {
        Ok(scalar(bp_lambda(&Measure::poisson(2.0)?)?.neg_moment()?, 1.0))
    }));
    for p in [0.3, 0.5, 0.7] {
        let mixture = move || Measure::exponential().with_atom_at_zero(p);
        out.push(Case::new(
            format!("lambda-bf-atom/p={p}"),
            1e-15,
            "Λ_bf(μ)({0})",
            "max{2 − 1/μ({0}), 0}",
            move || Ok(scalar(bp_lambda_bf(&mixture()?)?.atom0(), (2.0 - 1.0 / p).max(0.0))),
        ));
        out.push(Case::new(
            format!("lambda-bf-a/p={p}"),
            0.5,
            "A of Λ_bf(μ) finite",
            "μ({0}) < 1/2, and η(−2^40) < −1",
            move || {
                let mu = mixture()?;
                let a = bp_lambda_bf(&mu)?.neg_moment()?;
                let crosses = mu.eta(-(2f64.powi(40)))? < -1.0;
                Ok(truth(a.is_finite() == (p < 0.5) && crosses == (p < 0.5)))
            },
        ));
    }
    out.push(Case::new("free-mul-atom/rule", 0.0, "(mp(0.5) ⊠ mp(0.25))({0})", "max of the atoms = 0.75", || {
        let m = conv_free_mul(&mp(0.5)?, &mp(0.25)?)?;
        Ok(scalar(m.atom0(), 0.75))
    }));
    out.push(Case::new(
        "free-mul-atom/witness",
        1e-3,
        "1 + ψ(−2^40) of mp(0.5) ⊠ mp(0.25), ψ inverted from S",
        "0.75",
        || {
            let m = conv_free_mul(&mp(0.5)?, &mp(0.25)?)?;
            Ok(scalar(1.0 + m.psi(-(2f64.powi(40)))?, 0.75))
        },
    ));
    out
}

/// Density of `semicircle(m, v)`: centre `m`, variance `v`.
fn semicircle_density(m: f64, v: f64, x: f64) -> f64 {
    let d = 4.0 * v - (x - m).powi(2);
    if d > 0.0 {
        d.sqrt() / (2.0 * std::f64::consts::PI * v)
    } else {
        0.0
    }
}

fn oracle_subord() -> Vec<Case> {
    let mut out = Vec::new();
    out.push(Case::new("mp(1)+mp(1)/density-at-2", TOL_ORACLE, "subordination density at 2", "√7/(4π)", || {
        let m = mp(1.0)?;
        Ok(scalar(subordination_density(&m, &m, 2.0)?, 7f64.sqrt() / (4.0 * std::f64::consts::PI)))
    }));
    out.push(Case::new(
        "semicircle/density",
        TOL_ORACLE,
        "subordination density of semicircle(2,1) ⊞ semicircle(2,1)",
        "semicircle(4,2), two cells from each edge excluded",
        || {
            let s = Measure::semicircle(2.0, 1.0)?;
            let grid = linspace(0.0, 8.0, 401);
            let h = grid[1] - grid[0];
            let r = 2.0 * 2f64.sqrt();
            let inner: Vec<f64> =
                grid.into_iter().filter(|x| ((x - 4.0).abs() - r).abs() > 2.0 * h).collect();
            gap(&inner, |x| subordination_density(&s, &s, x), |x| Ok(semicircle_density(4.0, 2.0, x)))
        },
    ));
    out.push(Case::new(
        "mp(1)+mp(1)/extracted-r",
        TOL_ORACLE,
        "R of the subordination grid",
        "R_mp(1) + R_mp(1)",
        || {
            let m = mp(1.0)?;
            let g = Measure::from_grid(subordination_free_add(&m, &m, &linspace(0.0, 6.0, ORACLE_POINTS))?);
            gap(&linspace(-0.9, -0.05, 10), |t| g.r_transform(t), |t| Ok(2.0 * m.r_transform(t)?))
        },
    ));
    out.push(Case::new(
        "semicircle/a-inequality",
        TOL_ORACLE,
        "A of the subordination grid minus min(A_μ, A_ν)",
        "≤ 0",
        || {
            let s = Measure::semicircle(2.0, 1.0)?;
            let g = Measure::from_grid(subordination_free_add(&s, &s, &linspace(0.0, 8.0, 801))?);
            Ok(value((g.neg_moment()? - s.neg_moment()?).max(0.0)))
        },
    ));
    out.push(Case::new(
        "delta-zero-is-neutral",
        TOL_ORACLE,
        "semicircle(2,1) ⊞ δ₀ by the oracle",
        "semicircle(2,1)",
        || {
            let s = Measure::semicircle(2.0, 1.0)?;
            let g = Measure::from_grid(subordination_free_add(&s, &Measure::dirac(0.0)?, &linspace(0.0, 4.0, 801))?);
            gap(&linspace(0.0, 4.0, 41), |t| g.cdf(t), |t| s.cdf(t))
        },
    ));
    let n = 20_000;
    let samplers: [(&str, fn() -> Result<Measure>); 6] = [
        ("exponential", || Ok(Measure::exponential())),
        ("mp(0.5)", || mp(0.5)),
        ("b(1/2)", || Measure::boolean_stable(0.5)),
        ("s(1/2)", || Measure::classical_stable(0.5)),
        ("poisson(2)", || Measure::poisson(2.0)),
        ("pareto(1)", || Measure::pareto(1.0)),
    ];
    for (name, make) in samplers {
        out.push(Case::new(
            format!("sample-ks/{name}"),
            ks_bound_99(n),
            "empirical CDF of samples",
            "CDF",
            move || {
                let mu = make()?;
                let e = Measure::from_grid(empirical_measure(&mu.sample(n, 7)?)?);
                Ok(value(ks_distance(&e, &mu, &[])?))
            },
        ));
    }
    out.push(Case::new(
        "sample-ks/max-pairing",
        2.0 * ks_bound_99(n),
        "max of paired exponential and mp(1) samples",
        "exponential ∨ mp(1)",
        move || {
            let (e, m) = (Measure::exponential(), mp(1.0)?);
            let xs: Vec<f64> =
                e.sample(n, 11)?.into_iter().zip(m.sample(n, 12)?).map(|(a, b)| a.max(b)).collect();
            let emp = Measure::from_grid(empirical_measure(&xs)?);
            Ok(value(ks_distance(&emp, &conv_classical_max(&e, &m)?, &[])?))
        },
    ));
    out.push(Case::new(
        "sample-ks/sum-pairing",
        2.0 * ks_bound_99(n),
        "sum of paired exponential samples",
        "Gamma(2, 1)",
        move || {
            let e = Measure::exponential();
            let xs: Vec<f64> =
                e.sample(n, 13)?.into_iter().zip(e.sample(n, 14)?).map(|(a, b)| a + b).collect();
            let emp = Measure::from_grid(empirical_measure(&xs)?);
            let gamma2 = Measure::from_cdf(
                std::sync::Arc::new(|x: f64| Ok(1.0 - (-x).exp() * (1.0 + x))),
                "Gamma(2, 1)",
            )?;
            Ok(value(ks_distance(&emp, &gamma2, &[])?))
        },
    ));
    out
}
