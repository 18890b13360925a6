//! Homomorphisms from additive convolutions to max-convolutions, the
//! Bercovici–Pata family, and the stable-law homomorphisms.
//!
//! Maps landing in a max-convolution semigroup return explicit-CDF
//! measures; Λ, Λ_bf and X⁻¹ return transform-defined measures.

use std::sync::Arc;

use crate::convolutions::{conv_classical_mul, conv_free_mul, power_free_mul};
use crate::error::{domain, Result};
use crate::measures::{Family, Measure, ScalarFn, TransformSpec, Which};
use crate::quad::{laguerre_integral, Tolerance};
use crate::roots::{invert_monotone, solve_increasing_open, Bracket};

const LAGUERRE_TOL: Tolerance = Tolerance { abs: 0.0, rel: 1e-13 };

/// Clamps a CDF value into `[0, 1]`, warning when the excursion is not just
/// rounding.
fn clamp01(v: f64) -> f64 {
    if !(-1e-12..=1.0 + 1e-12).contains(&v) {
        log::warn!("CDF value {v} clamped into [0, 1]");
    }
    v.clamp(0.0, 1.0)
}

fn cdf_measure(
    f: impl Fn(f64) -> Result<f64> + Send + Sync + 'static,
    label: String,
) -> Result<Measure> {
    Measure::from_cdf(Arc::new(move |t| Ok(clamp01(f(t)?))), label)
}

/// `Φ(μ)`: the CDF `F(x) = t` solving `1/S_μ(t − 1) = x` on `(μ({0}), 1)`.
pub fn phi(mu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() {
        return Measure::dirac(0.0);
    }
    if let Some(Family::Dirac { a }) = mu.family() {
        return Measure::dirac(a);
    }
    let m = mu.clone();
    cdf_measure(move |x| phi_cdf(&m, x), format!("Φ({})", mu.label()))
}

/// `Φ(μ)([0, x])`.
pub fn phi_cdf(mu: &Measure, x: f64) -> Result<f64> {
    let a = mu.atom0();
    if x == 0.0 {
        return Ok(a);
    }
    let g = |t: f64| -> Result<f64> { Ok(1.0 / mu.s_transform(t - 1.0)?) };
    let mid = 0.5 * (a + 1.0);
    let gm = g(mid)?;
    if x == gm {
        return Ok(mid);
    }
    // walk geometrically towards the relevant end of (a, 1); running out of
    // representable probes, or of evaluable S, means x lies beyond the range
    let (mut lo, mut hi) = (mid, mid);
    let mut found = false;
    for k in 1..=60 {
        let step = 0.5f64.powi(k);
        let t = if x < gm { a + (mid - a) * step } else { 1.0 - (1.0 - mid) * step };
        if t <= a || t >= 1.0 {
            break;
        }
        let Ok(v) = g(t) else { break };
        if x < gm {
            if v <= x {
                lo = t;
                found = true;
                break;
            }
            hi = t;
        } else {
            if v >= x {
                hi = t;
                found = true;
                break;
            }
            lo = t;
        }
    }
    if !found {
        return Ok(if x < gm { a } else { 1.0 });
    }
    invert_monotone(g, x, Bracket::new(lo, hi, 0.0)?)
}

/// `Θ(μ)`: `F(t) = 1 + R_μ(−1/t)` for `t > 1/A_μ`, and 0 below.
pub fn theta(mu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() {
        return Measure::dirac(0.0);
    }
    let a = mu.neg_moment()?;
    let m = mu.clone();
    cdf_measure(
        move |t| {
            if t == 0.0 && a.is_infinite() {
                return Ok(m.atom0());
            }
            // at t = 1/A itself the value is 0
            if -1.0 / t <= -a {
                return Ok(0.0);
            }
            Ok(1.0 + m.r_transform(-1.0 / t)?)
        },
        format!("Θ({})", mu.label()),
    )
}

/// `Θ(μ) = Φ(f_{1/2} ⊠ μ)`.
pub fn theta_via_phi(mu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() {
        return Measure::dirac(0.0);
    }
    phi(&conv_free_mul(&Measure::free_stable(0.5)?, mu)?)
}

/// `Ξ(μ)`: `F(t) = 1 + ψ_μ(−1/t)`, `F(0) = μ({0})`.
pub fn xi(mu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() {
        return Measure::dirac(0.0);
    }
    let m = mu.clone();
    cdf_measure(
        move |t| if t == 0.0 { Ok(m.atom0()) } else { Ok(1.0 + m.psi(-1.0 / t)?) },
        format!("Ξ({})", mu.label()),
    )
}

/// `Ξ(μ) = Θ(MP ⊠ μ)`.
pub fn xi_via_theta(mu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() {
        return Measure::dirac(0.0);
    }
    theta(&conv_free_mul(&Measure::mp(1.0)?, mu)?)
}

/// `Ξ(μ) = Φ(b_{1/2} ⊠ μ)`.
pub fn xi_via_phi(mu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() {
        return Measure::dirac(0.0);
    }
    phi(&conv_free_mul(&Measure::boolean_stable(0.5)?, mu)?)
}

/// `Ξ(μ) = e ⊛ e⁻¹ ⊛ μ`.
pub fn xi_via_exponentials(mu: &Measure) -> Result<Measure> {
    let e = Measure::exponential();
    conv_classical_mul(&conv_classical_mul(&e, &e.power(-1.0)?)?, mu)
}

/// `∫₀^∞ C_μ(sx) e^{−x} dx`.
fn laguerre_cumulant(mu: &Measure, s: f64) -> Result<f64> {
    if s == 0.0 {
        return Ok(0.0);
    }
    laguerre_integral(|x| mu.cumulant_raw(s * x), LAGUERRE_TOL)
}

/// `Ω(μ)`: `F(t) = exp ∫₀^∞ C_μ(−x/t) e^{−x} dx`, `F(0) = μ({0})`.
pub fn omega(mu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() {
        return Measure::dirac(0.0);
    }
    let m = mu.clone();
    cdf_measure(
        move |t| if t == 0.0 { Ok(m.atom0()) } else { Ok(laguerre_cumulant(&m, -1.0 / t)?.exp()) },
        format!("Ω({})", mu.label()),
    )
}

/// `Ω̃(μ)`: `F(t) = exp C_μ(−1/t)`.
pub fn omega_tilde(mu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() {
        return Measure::dirac(0.0);
    }
    let m = mu.clone();
    cdf_measure(
        move |t| if t == 0.0 { Ok(m.atom0()) } else { Ok(m.cumulant_raw(-1.0 / t)?.exp()) },
        format!("Ω̃({})", mu.label()),
    )
}

fn require_id_star(mu: &Measure) -> Result<()> {
    if mu.id_star() == Some(true) {
        Ok(())
    } else {
        domain(format!("Λ defined on ID(ℝ₊,∗) only; {} is not known to be ∗-ID", mu.label()))
    }
}

/// Builds an R-defined measure from an increasing R on `(−∞, 0)` with left
/// limit `limit`: finite `A` when the range passes −1, otherwise an atom
/// `1 + limit` at zero.
fn r_defined_on_half_line(r: ScalarFn, limit: f64, label: String) -> Result<Measure> {
    let (a, atom0) = if limit < -1.0 {
        let t = solve_increasing_open(|t| r(t), -1.0, f64::NEG_INFINITY, 0.0, -1.0, 0.0)?;
        (-t, 0.0)
    } else {
        (f64::INFINITY, (1.0 + limit).clamp(0.0, 1.0))
    };
    Ok(Measure::from_transform(TransformSpec::new(Which::R, r, -a, atom0, a, label)?))
}

/// Bercovici–Pata bijection `Λ`: `R̃_{Λ(μ)}(t) = ∫₀^∞ C_μ(tx) e^{−x} dx`.
pub fn bp_lambda(mu: &Measure) -> Result<Measure> {
    require_id_star(mu)?;
    if mu.is_delta_zero() {
        return Measure::dirac(0.0);
    }
    let m = mu.clone();
    let r: ScalarFn = Arc::new(move |t| laguerre_cumulant(&m, t));
    // R̃ runs from log μ({0}) to 0
    r_defined_on_half_line(r, mu.atom0().ln(), format!("Λ({})", mu.label()))
}

/// `Λ^∨`: `F ↦ max{1 + log F, 0}`.
pub fn bp_lambda_max(nu: &Measure) -> Result<Measure> {
    if let Some(Family::Dirac { .. }) = nu.family() {
        return Ok(nu.clone());
    }
    let n = nu.clone();
    cdf_measure(
        move |t| {
            let f = n.cdf(t)?;
            Ok(if f == 0.0 { 0.0 } else { (1.0 + f.ln()).max(0.0) })
        },
        format!("Λ^∨({})", nu.label()),
    )
}

/// `X⁻¹`: `η_{X⁻¹(μ)}(t) = ∫₀^∞ C_μ(tx) e^{−x} dx`.
pub fn bp_x_inverse(mu: &Measure) -> Result<Measure> {
    require_id_star(mu)?;
    if mu.is_delta_zero() {
        return Measure::dirac(0.0);
    }
    let a0 = mu.atom0();
    // η(−∞) = log μ({0}) = 1 − 1/atom0
    let atom0 = if a0 == 0.0 { 0.0 } else { 1.0 / (1.0 - a0.ln()) };
    // η(t)/t tends to the drift, the left end of the support
    let a = if atom0 > 0.0 {
        f64::INFINITY
    } else {
        let left = mu.quantile(0.0)?;
        if left > 0.0 {
            1.0 / left
        } else {
            f64::INFINITY
        }
    };
    let m = mu.clone();
    let eta: ScalarFn = Arc::new(move |t| laguerre_cumulant(&m, t));
    let label = format!("X⁻¹({})", mu.label());
    Ok(Measure::from_transform(TransformSpec::new(
        Which::Eta,
        eta,
        f64::NEG_INFINITY,
        atom0,
        a,
        label,
    )?))
}

/// `X^∨`: `F ↦ exp(1 − 1/F)`, 0 where `F = 0`.
pub fn bp_x_max(nu: &Measure) -> Result<Measure> {
    if let Some(Family::Dirac { .. }) = nu.family() {
        return Ok(nu.clone());
    }
    let n = nu.clone();
    cdf_measure(
        move |t| {
            let f = n.cdf(t)?;
            Ok(if f == 0.0 { 0.0 } else { (1.0 - 1.0 / f).exp() })
        },
        format!("X^∨({})", nu.label()),
    )
}

/// `Ω(X(μ))([0, t]) = exp η_μ(−1/t)`; at `t = 0` the limit
/// `exp(1 − 1/μ({0}))`.
pub fn omega_after_x(mu: &Measure, t: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return domain(format!("CDF argument must be ≥ 0, got {t}"));
    }
    if t == 0.0 {
        let a = mu.atom0();
        return Ok(if a > 0.0 { (1.0 - 1.0 / a).exp() } else { 0.0 });
    }
    Ok(clamp01(mu.eta(-1.0 / t)?.exp()))
}

/// Boolean-to-free Bercovici–Pata bijection: `R̃_{Λ_bf(μ)} = η_μ`.
pub fn bp_lambda_bf(mu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() {
        return Measure::dirac(0.0);
    }
    let a0 = mu.atom0();
    let limit = if a0 == 0.0 { f64::NEG_INFINITY } else { 1.0 - 1.0 / a0 };
    let m = mu.clone();
    let r: ScalarFn = Arc::new(move |t| m.eta(t));
    r_defined_on_half_line(r, limit, format!("Λ_bf({})", mu.label()))
}

/// `Λ^∨_bf`: `F ↦ max{2 − 1/F, 0}`.
pub fn bp_lambda_bf_max(nu: &Measure) -> Result<Measure> {
    if let Some(Family::Dirac { .. }) = nu.family() {
        return Ok(nu.clone());
    }
    let n = nu.clone();
    cdf_measure(
        move |t| {
            let f = n.cdf(t)?;
            Ok(if f == 0.0 { 0.0 } else { (2.0 - 1.0 / f).max(0.0) })
        },
        format!("Λ^∨_bf({})", nu.label()),
    )
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        domain(format!("α must lie in (0, 1), got {alpha}"))
    }
}

/// `C_α(ν) = s_α ⊛ ν^{1/α}`.
pub fn hom_classical_stable(nu: &Measure, alpha: f64) -> Result<Measure> {
    check_alpha(alpha)?;
    conv_classical_mul(&Measure::classical_stable(alpha)?, &nu.power(1.0 / alpha)?)
}

/// `F_α(ν) = f_α ⊠ ν^{⊠1/α}`.
pub fn hom_free_stable(nu: &Measure, alpha: f64) -> Result<Measure> {
    check_alpha(alpha)?;
    conv_free_mul(&Measure::free_stable(alpha)?, &power_free_mul(nu, 1.0 / alpha)?)
}

/// `B_α(ν) = b_α ⊛ ν^{1/α}`.
pub fn hom_boolean_stable(nu: &Measure, alpha: f64) -> Result<Measure> {
    check_alpha(alpha)?;
    conv_classical_mul(&Measure::boolean_stable(alpha)?, &nu.power(1.0 / alpha)?)
}

/// `B_α(ν) = b_α ⊠ ν^{⊠1/α}`.
pub fn hom_boolean_stable_free(nu: &Measure, alpha: f64) -> Result<Measure> {
    check_alpha(alpha)?;
    conv_free_mul(&Measure::boolean_stable(alpha)?, &power_free_mul(nu, 1.0 / alpha)?)
}

/// Names accepted by [`apply`].
pub const MAP_NAMES: &[&str] = &[
    "phi",
    "theta",
    "xi",
    "omega",
    "omega-tilde",
    "lambda",
    "lambda-max",
    "x-inverse",
    "x-max",
    "lambda-bf",
    "lambda-bf-max",
    "c-alpha",
    "f-alpha",
    "b-alpha",
];

/// Applies a map by name; `alpha` is used by the stable homomorphisms.
pub fn apply(name: &str, mu: &Measure, alpha: Option<f64>) -> Result<Measure> {
    let need_alpha = || alpha.ok_or_else(|| crate::Error::Domain(format!("map {name} needs α")));
    match name {
        "phi" => phi(mu),
        "theta" => theta(mu),
        "xi" => xi(mu),
        "omega" => omega(mu),
        "omega-tilde" => omega_tilde(mu),
        "lambda" => bp_lambda(mu),
        "lambda-max" => bp_lambda_max(mu),
        "x-inverse" => bp_x_inverse(mu),
        "x-max" => bp_x_max(mu),
        "lambda-bf" => bp_lambda_bf(mu),
        "lambda-bf-max" => bp_lambda_bf_max(mu),
        "c-alpha" => hom_classical_stable(mu, need_alpha()?),
        "f-alpha" => hom_free_stable(mu, need_alpha()?),
        "b-alpha" => hom_boolean_stable(mu, need_alpha()?),
        _ => Err(crate::Error::Parse(format!(
            "unknown map '{name}' (known: {})",
            MAP_NAMES.join(", ")
        ))),
    }
}
