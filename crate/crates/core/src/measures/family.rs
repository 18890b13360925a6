//! Closed-form catalog families.
//!
//! Every method returning `Option` answers `None` when the family has no
//! registered closed form for that quantity; callers then fall back to
//! quadrature against [`Family::pieces`] and [`Family::atoms`].

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::erf::{erfc, erfc_inv};
use statrs::function::gamma::gamma;

use crate::error::{domain, Result};

/// A catalog family together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Dirac { a: f64 },
    Uniform01,
    Exponential,
    Poisson { lambda: f64 },
    Mp { lambda: f64 },
    Semicircle { m: f64, v: f64 },
    FreeStable { alpha: f64 },
    BooleanStable { alpha: f64 },
    ClassicalStable { alpha: f64 },
    Pareto { alpha: f64 },
    Dagum { alpha: f64 },
    Frechet { alpha: f64 },
}

/// Poisson atoms are dropped once the remaining tail mass is below this.
const POISSON_TAIL: f64 = 1e-14;

fn check_alpha_open_unit(name: &str, alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        domain(format!("{name}: alpha must lie in (0, 1), got {alpha}"))
    }
}

fn check_positive(name: &str, key: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        domain(format!("{name}: {key} must be > 0, got {x}"))
    }
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        use Family::*;
        match *self {
            Dirac { a } => {
                if a >= 0.0 && a.is_finite() {
                    Ok(())
                } else {
                    domain(format!("dirac: a must be ≥ 0, got {a}"))
                }
            }
            Uniform01 | Exponential => Ok(()),
            Poisson { lambda } => check_positive("poisson", "lambda", lambda),
            Mp { lambda } => check_positive("mp", "lambda", lambda),
            Semicircle { m, v } => {
                check_positive("semicircle", "v", v)?;
                if m.is_finite() && m >= 2.0 * v.sqrt() {
                    Ok(())
                } else {
                    domain(format!("semicircle: need m ≥ 2√v, got m={m}, v={v}"))
                }
            }
            FreeStable { alpha } => check_alpha_open_unit("free_stable", alpha),
            BooleanStable { alpha } => check_alpha_open_unit("boolean_stable", alpha),
            ClassicalStable { alpha } => check_alpha_open_unit("classical_stable", alpha),
            Pareto { alpha } => check_positive("pareto", "alpha", alpha),
            Dagum { alpha } => check_positive("dagum", "alpha", alpha),
            Frechet { alpha } => check_positive("frechet", "alpha", alpha),
        }
    }

    pub fn name(&self) -> &'static str {
        use Family::*;
        match self {
            Dirac { .. } => "dirac",
            Uniform01 => "uniform01",
            Exponential => "exponential",
            Poisson { .. } => "poisson",
            Mp { .. } => "mp",
            Semicircle { .. } => "semicircle",
            FreeStable { .. } => "free_stable",
            BooleanStable { .. } => "boolean_stable",
            ClassicalStable { .. } => "classical_stable",
            Pareto { .. } => "pareto",
            Dagum { .. } => "dagum",
            Frechet { .. } => "frechet",
        }
    }

    /// Parameter names and values, in canonical order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        use Family::*;
        match *self {
            Dirac { a } => vec![("a", a)],
            Uniform01 | Exponential => vec![],
            Poisson { lambda } | Mp { lambda } => vec![("lambda", lambda)],
            Semicircle { m, v } => vec![("m", m), ("v", v)],
            FreeStable { alpha }
            | BooleanStable { alpha }
            | ClassicalStable { alpha }
            | Pareto { alpha }
            | Dagum { alpha }
            | Frechet { alpha } => vec![("alpha", alpha)],
        }
    }

    /// Names of all families with the parameters each one takes.
    pub fn registry() -> &'static [(&'static str, &'static [&'static str])] {
        &[
            ("dirac", &["a"]),
            ("uniform01", &[]),
            ("exponential", &[]),
            ("poisson", &["lambda"]),
            ("mp", &["lambda"]),
            ("semicircle", &["m", "v"]),
            ("free_stable", &["alpha"]),
            ("boolean_stable", &["alpha"]),
            ("classical_stable", &["alpha"]),
            ("pareto", &["alpha"]),
            ("dagum", &["alpha"]),
            ("frechet", &["alpha"]),
        ]
    }

    /// Which quantities have closed forms, for `catalog describe`.
    pub fn closed_forms(&self) -> Vec<&'static str> {
        use Family::*;
        match self {
            Dirac { .. } => vec!["cdf", "quantile", "G", "psi", "eta", "R", "S", "C", "M", "A"],
            Uniform01 => vec!["density", "cdf", "quantile", "G", "C", "M", "A"],
            Exponential => vec!["density", "cdf", "quantile", "C", "M", "A"],
            Poisson { .. } => vec!["cdf", "quantile", "C", "A"],
            Mp { .. } => vec!["density", "cdf", "G", "psi", "R", "S", "A"],
            Semicircle { .. } => vec!["density", "cdf", "G", "psi", "R", "S", "A"],
            FreeStable { .. } => vec!["R", "S", "A"],
            BooleanStable { .. } => {
                vec!["density", "cdf", "quantile", "psi", "eta", "S", "M", "A"]
            }
            ClassicalStable { alpha } if *alpha == 0.5 => {
                vec!["density", "cdf", "quantile", "C", "M", "A"]
            }
            ClassicalStable { .. } => vec!["C", "M", "A"],
            Pareto { .. } | Dagum { .. } | Frechet { .. } => {
                vec!["density", "cdf", "quantile", "M", "A"]
            }
        }
    }

    /// Membership in ID(ℝ₊, ∗) where it is known.
    pub fn id_star(&self) -> Option<bool> {
        use Family::*;
        match self {
            Dirac { .. } | Exponential | Poisson { .. } | ClassicalStable { .. } => Some(true),
            // non-degenerate laws with bounded support are never ∗-infinitely divisible
            Uniform01 | Mp { .. } | Semicircle { .. } => Some(false),
            _ => None,
        }
    }

    pub fn atom0(&self) -> f64 {
        use Family::*;
        match *self {
            Dirac { a: 0.0 } => 1.0,
            Poisson { lambda } => (-lambda).exp(),
            Mp { lambda } => (1.0 - lambda).max(0.0),
            _ => 0.0,
        }
    }

    /// All atoms, including the one at zero, sorted by location.
    pub fn atoms(&self) -> Vec<(f64, f64)> {
        use Family::*;
        match *self {
            Dirac { a } => vec![(a, 1.0)],
            Poisson { lambda } => poisson_atoms(lambda),
            Mp { lambda } if lambda < 1.0 => vec![(0.0, 1.0 - lambda)],
            _ => vec![],
        }
    }

    /// Whether the family can integrate arbitrary functions (has atoms plus
    /// a known density).
    pub fn expectable(&self) -> bool {
        use Family::*;
        !matches!(self, FreeStable { .. })
            && !matches!(self, ClassicalStable { alpha } if *alpha != 0.5)
    }

    /// Intervals on which the absolutely continuous part lives, each with a
    /// smooth density in its interior.
    pub fn pieces(&self) -> Vec<(f64, f64)> {
        use Family::*;
        match *self {
            Dirac { .. } | Poisson { .. } | FreeStable { .. } => vec![],
            ClassicalStable { alpha } if alpha != 0.5 => vec![],
            Uniform01 => vec![(0.0, 1.0)],
            Mp { lambda } => {
                let (a, b) = mp_edges(lambda);
                vec![(a, b)]
            }
            Semicircle { m, v } => {
                let r = 2.0 * v.sqrt();
                vec![(m - r, m + r)]
            }
            Pareto { .. } => vec![(1.0, f64::INFINITY)],
            Exponential | BooleanStable { .. } | ClassicalStable { .. } | Dagum { .. }
            | Frechet { .. } => vec![(0.0, f64::INFINITY)],
        }
    }

    pub fn density(&self, x: f64) -> Option<f64> {
        use Family::*;
        if !(x > 0.0) {
            return match self {
                Dirac { .. } | Poisson { .. } | FreeStable { .. } => None,
                ClassicalStable { alpha } if *alpha != 0.5 => None,
                _ => Some(0.0),
            };
        }
        let v = match *self {
            Dirac { .. } | Poisson { .. } | FreeStable { .. } => return None,
            Uniform01 => {
                if x <= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Exponential => (-x).exp(),
            Mp { lambda } => {
                let (a, b) = mp_edges(lambda);
                if x <= a || x >= b {
                    0.0
                } else {
                    ((x - a) * (b - x)).sqrt() / (2.0 * PI * x)
                }
            }
            Semicircle { m, v } => {
                let d = 4.0 * v - (x - m) * (x - m);
                if d <= 0.0 {
                    0.0
                } else {
                    d.sqrt() / (2.0 * PI * v)
                }
            }
            BooleanStable { alpha } => {
                let xa = x.powf(alpha);
                let (s, c) = (PI * alpha).sin_cos();
                s / PI * x.powf(alpha - 1.0) / (xa * xa + 2.0 * xa * c + 1.0)
            }
            ClassicalStable { alpha } => {
                if alpha != 0.5 {
                    return None;
                }
                (-0.25 / x).exp() * x.powf(-1.5) / (2.0 * PI.sqrt())
            }
            Pareto { alpha } => {
                if x < 1.0 {
                    0.0
                } else {
                    alpha * x.powf(-alpha - 1.0)
                }
            }
            Dagum { alpha } => {
                let xa = x.powf(alpha);
                alpha * x.powf(alpha - 1.0) / ((1.0 + xa) * (1.0 + xa))
            }
            Frechet { alpha } => {
                let xa = x.powf(-alpha);
                alpha * xa / x * (-xa).exp()
            }
        };
        Some(v)
    }

    /// Closed-form right-continuous CDF.
    pub fn cdf(&self, t: f64) -> Option<f64> {
        use Family::*;
        let v = match *self {
            Dirac { a } => {
                if t >= a {
                    1.0
                } else {
                    0.0
                }
            }
            Uniform01 => t.clamp(0.0, 1.0),
            Exponential => -(-t.max(0.0)).exp_m1(),
            Poisson { lambda } => {
                if t < 0.0 {
                    return Some(0.0);
                }
                let mut acc = 0.0;
                for (k, m) in poisson_atoms(lambda) {
                    if k > t {
                        break;
                    }
                    acc += m;
                }
                acc.min(1.0)
            }
            Mp { lambda } => mp_cdf(lambda, t),
            Semicircle { m, v } => {
                let c = (m - t) / (2.0 * v.sqrt());
                if c >= 1.0 {
                    0.0
                } else if c <= -1.0 {
                    1.0
                } else {
                    let th = c.acos();
                    (th - th.sin() * c) / PI
                }
            }
            FreeStable { .. } => return None,
            BooleanStable { alpha } => {
                if t <= 0.0 {
                    0.0
                } else {
                    let (s, c) = (PI * alpha).sin_cos();
                    let y = (t.powf(alpha) + c) / s;
                    1.0 - 1.0f64.atan2(y) / (PI * alpha)
                }
            }
            ClassicalStable { alpha } => {
                if alpha != 0.5 {
                    return None;
                }
                if t <= 0.0 {
                    0.0
                } else {
                    erfc(0.5 / t.sqrt())
                }
            }
            Pareto { alpha } => {
                if t <= 1.0 {
                    0.0
                } else {
                    -(-alpha * t.ln()).exp_m1()
                }
            }
            Dagum { alpha } => {
                if t <= 0.0 {
                    0.0
                } else {
                    1.0 / (1.0 + t.powf(-alpha))
                }
            }
            Frechet { alpha } => {
                if t <= 0.0 {
                    0.0
                } else {
                    (-t.powf(-alpha)).exp()
                }
            }
        };
        Some(v.clamp(0.0, 1.0))
    }

    /// Closed-form generalized inverse of the CDF for `p ∈ [0, 1)`.
    pub fn quantile(&self, p: f64) -> Option<f64> {
        use Family::*;
        let v = match *self {
            Dirac { a } => a,
            Uniform01 => p,
            Exponential => -(-p).ln_1p(),
            Poisson { lambda } => {
                let mut acc = 0.0;
                let atoms = poisson_atoms(lambda);
                let last = atoms.last().map(|a| a.0).unwrap_or(0.0);
                for (k, m) in atoms {
                    acc += m;
                    if acc >= p {
                        return Some(k);
                    }
                }
                last
            }
            BooleanStable { alpha } => {
                if p == 0.0 {
                    return Some(0.0);
                }
                let (s, c) = (PI * alpha).sin_cos();
                let cot = 1.0 / (PI * alpha * (1.0 - p)).tan();
                (s * cot - c).max(0.0).powf(1.0 / alpha)
            }
            ClassicalStable { alpha } => {
                if alpha != 0.5 {
                    return None;
                }
                if p == 0.0 {
                    return Some(0.0);
                }
                let e = erfc_inv(p);
                0.25 / (e * e)
            }
            Pareto { alpha } => (-(-p).ln_1p() / alpha).exp(),
            Dagum { alpha } => {
                if p == 0.0 {
                    return Some(0.0);
                }
                (p / (1.0 - p)).powf(1.0 / alpha)
            }
            Frechet { alpha } => {
                if p == 0.0 {
                    return Some(0.0);
                }
                (-p.ln()).powf(-1.0 / alpha)
            }
            Mp { .. } | Semicircle { .. } | FreeStable { .. } => return None,
        };
        Some(v)
    }

    /// Cauchy transform on the negative axis.
    pub fn cauchy(&self, s: f64) -> Option<f64> {
        use Family::*;
        match *self {
            Dirac { a } => Some(1.0 / (s - a)),
            Uniform01 => Some((s / (s - 1.0)).ln()),
            Mp { lambda } => {
                let (a, b) = mp_edges(lambda);
                Some(2.0 / ((s + 1.0 - lambda) - ((a - s) * (b - s)).sqrt()))
            }
            Semicircle { m, v } => {
                let d = s - m;
                Some(2.0 / (d - (d * d - 4.0 * v).sqrt()))
            }
            _ => None,
        }
    }

    /// Cauchy transform in the upper half-plane.
    pub fn cauchy_complex(&self, z: Complex64) -> Option<Complex64> {
        use Family::*;
        match *self {
            Dirac { a } => Some(1.0 / (z - a)),
            Uniform01 => Some(z.ln() - (z - 1.0).ln()),
            Mp { lambda } => {
                let (a, b) = mp_edges(lambda);
                let r = (z - a).sqrt() * (z - b).sqrt();
                Some(2.0 / ((z + 1.0 - lambda) + r))
            }
            Semicircle { m, v } => {
                let e = 2.0 * v.sqrt();
                let r = (z - m - e).sqrt() * (z - m + e).sqrt();
                Some(2.0 / (z - m + r))
            }
            _ => None,
        }
    }

    /// ψ on the negative axis.
    pub fn psi(&self, t: f64) -> Option<f64> {
        use Family::*;
        match *self {
            Dirac { a } => Some(a * t / (1.0 - a * t)),
            Mp { .. } | Semicircle { .. } | Uniform01 => {
                let g = self.cauchy(1.0 / t)?;
                Some(g / t - 1.0)
            }
            BooleanStable { .. } => {
                let e = self.eta(t)?;
                Some(e / (1.0 - e))
            }
            _ => None,
        }
    }

    pub fn eta(&self, t: f64) -> Option<f64> {
        use Family::*;
        match *self {
            Dirac { a } => Some(a * t),
            BooleanStable { alpha } => Some(-(-t).powf(alpha)),
            _ => None,
        }
    }

    /// The analytically continued R-transform and the left end `-B` of its
    /// domain.
    pub fn r_tilde(&self, t: f64) -> Option<(f64, f64)> {
        use Family::*;
        match *self {
            Dirac { a } => Some((a * t, f64::NEG_INFINITY)),
            Mp { lambda } => Some((lambda * t / (1.0 - t), f64::NEG_INFINITY)),
            Semicircle { m, v } => Some((m * t + v * t * t, -m / (2.0 * v))),
            FreeStable { alpha } => Some((-(-t).powf(alpha), f64::NEG_INFINITY)),
            _ => None,
        }
    }

    pub fn s_transform(&self, u: f64) -> Option<f64> {
        use Family::*;
        match *self {
            Dirac { a } => Some(1.0 / a),
            Mp { lambda } => Some(1.0 / (lambda + u)),
            Semicircle { m, v } => {
                // R^{-1}(u)/u, rationalised to avoid cancellation
                Some(2.0 / (m + (m * m + 4.0 * v * u).sqrt()))
            }
            FreeStable { alpha } => Some((-u).powf((1.0 - alpha) / alpha)),
            BooleanStable { alpha } => Some((-u / (1.0 + u)).powf((1.0 - alpha) / alpha)),
            _ => None,
        }
    }

    /// Cumulant transform `log ∫ e^{tx} dμ`.
    pub fn cumulant(&self, t: f64) -> Option<f64> {
        use Family::*;
        match *self {
            Dirac { a } => Some(a * t),
            Uniform01 => {
                if t == 0.0 {
                    Some(0.0)
                } else {
                    Some((t.exp_m1() / t).ln())
                }
            }
            Exponential => Some(-(-t).ln_1p()),
            Poisson { lambda } => Some(lambda * t.exp_m1()),
            ClassicalStable { alpha } => Some(-(-t).powf(alpha)),
            _ => None,
        }
    }

    /// Whether `cumulant(t)` converges for some `t > 0`; the supremum of such
    /// `t`.
    pub fn cumulant_right_edge(&self) -> f64 {
        use Family::*;
        match self {
            Dirac { .. } | Uniform01 | Poisson { .. } | Mp { .. } | Semicircle { .. } => {
                f64::INFINITY
            }
            Exponential => 1.0,
            _ => 0.0,
        }
    }

    /// Mellin transform `∫_{(0,∞)} x^t dμ` with its open convergence strip.
    pub fn mellin(&self, t: f64) -> Option<Result<f64>> {
        use Family::*;
        let strip = |lo: f64, hi: f64| -> Result<()> {
            if t > lo && t < hi {
                Ok(())
            } else {
                domain(format!(
                    "{}: Mellin transform converges only for {lo} < t < {hi}, got {t}",
                    self.name()
                ))
            }
        };
        let r = match *self {
            Dirac { a } => Ok(if a == 0.0 { 0.0 } else { a.powf(t) }),
            Uniform01 => strip(-1.0, f64::INFINITY).map(|_| 1.0 / (1.0 + t)),
            Exponential => strip(-1.0, f64::INFINITY).map(|_| gamma(1.0 + t)),
            ClassicalStable { alpha } => strip(f64::NEG_INFINITY, alpha)
                .map(|_| gamma(1.0 - t / alpha) / gamma(1.0 - t)),
            BooleanStable { alpha } => strip(-alpha, alpha).map(|_| {
                if t == 0.0 {
                    1.0
                } else {
                    (PI * t).sin() / (alpha * (PI * t / alpha).sin())
                }
            }),
            Pareto { alpha } => strip(f64::NEG_INFINITY, alpha).map(|_| alpha / (alpha - t)),
            Dagum { alpha } => strip(-alpha, alpha).map(|_| {
                let x = PI * t / alpha;
                if t == 0.0 {
                    1.0
                } else {
                    x / x.sin()
                }
            }),
            Frechet { alpha } => strip(f64::NEG_INFINITY, alpha).map(|_| gamma(1.0 - t / alpha)),
            _ => return None,
        };
        Some(r)
    }

    /// Closed-form `A_μ = ∫ x^{-1} dμ`.
    pub fn neg_moment(&self) -> Option<f64> {
        use Family::*;
        let inf = f64::INFINITY;
        let v = match *self {
            Dirac { a } => {
                if a == 0.0 {
                    inf
                } else {
                    1.0 / a
                }
            }
            Uniform01 | Exponential | Poisson { .. } | BooleanStable { .. } => inf,
            Mp { lambda } => {
                if lambda > 1.0 {
                    1.0 / (lambda - 1.0)
                } else {
                    inf
                }
            }
            Semicircle { m, v } => (m - (m * m - 4.0 * v).max(0.0).sqrt()) / (2.0 * v),
            FreeStable { .. } => 1.0,
            ClassicalStable { alpha } => gamma(1.0 + 1.0 / alpha),
            Pareto { alpha } => alpha / (alpha + 1.0),
            Dagum { alpha } => {
                if alpha > 1.0 {
                    let x = PI / alpha;
                    x / x.sin()
                } else {
                    inf
                }
            }
            Frechet { alpha } => gamma(1.0 + 1.0 / alpha),
        };
        Some(v)
    }

    /// Mean, when finite and known in closed form.
    pub fn mean(&self) -> Option<f64> {
        use Family::*;
        match *self {
            Dirac { a } => Some(a),
            Uniform01 => Some(0.5),
            Exponential => Some(1.0),
            Poisson { lambda } | Mp { lambda } => Some(lambda),
            Semicircle { m, .. } => Some(m),
            Pareto { alpha } if alpha > 1.0 => Some(alpha / (alpha - 1.0)),
            Frechet { alpha } if alpha > 1.0 => Some(gamma(1.0 - 1.0 / alpha)),
            FreeStable { .. } | BooleanStable { .. } | ClassicalStable { .. } => {
                Some(f64::INFINITY)
            }
            Pareto { .. } | Frechet { .. } => Some(f64::INFINITY),
            Dagum { alpha } => {
                if alpha > 1.0 {
                    let x = PI / alpha;
                    Some(x / x.sin())
                } else {
                    Some(f64::INFINITY)
                }
            }
        }
    }

    /// Right end of the support (∞ when unbounded).
    pub fn support_max(&self) -> f64 {
        use Family::*;
        match *self {
            Dirac { a } => a,
            Uniform01 => 1.0,
            Mp { lambda } => mp_edges(lambda).1,
            Semicircle { m, v } => m + 2.0 * v.sqrt(),
            Poisson { lambda } => poisson_atoms(lambda).last().map(|a| a.0).unwrap_or(0.0),
            _ => f64::INFINITY,
        }
    }
}

/// Edges `(1 ∓ √λ)²` of the Marchenko–Pastur density.
pub fn mp_edges(lambda: f64) -> (f64, f64) {
    let s = lambda.sqrt();
    ((1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s))
}

fn mp_cdf(lambda: f64, t: f64) -> f64 {
    let a0 = (1.0 - lambda).max(0.0);
    if t < 0.0 {
        return 0.0;
    }
    let (a, b) = mp_edges(lambda);
    if t <= a {
        return a0;
    }
    if t >= b {
        return 1.0;
    }
    let s = lambda.sqrt();
    let c = ((1.0 + lambda - t) / (2.0 * s)).clamp(-1.0, 1.0);
    let phi = c.acos();
    let mut v = (1.0 + lambda) * phi + 2.0 * s * phi.sin();
    if lambda != 1.0 {
        let k = (1.0 + s) / (1.0 - s).abs();
        v -= 2.0 * (1.0 - lambda).abs() * (k * (0.5 * phi).sin()).atan2((0.5 * phi).cos());
    }
    (a0 + v / (2.0 * PI)).clamp(0.0, 1.0)
}

fn poisson_atoms(lambda: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut p = (-lambda).exp();
    let mut cum = 0.0;
    let mut k = 0u32;
    loop {
        out.push((k as f64, p));
        cum += p;
        if 1.0 - cum < POISSON_TAIL && k as f64 > lambda {
            break;
        }
        k += 1;
        p *= lambda / k as f64;
        if k > 100_000 {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{tanh_sinh, Tolerance};

    #[test]
    fn mp_cdf_matches_density_quadrature() {
        for &lambda in &[0.3, 1.0, 2.0, 5.0] {
            let f = Family::Mp { lambda };
            let (a, b) = mp_edges(lambda);
            for k in 1..8 {
                let x = a + (b - a) * k as f64 / 8.0;
                let q = tanh_sinh(|y| Ok(f.density(y).unwrap()), a, x, Tolerance::default())
                    .unwrap();
                let exact = f.atom0() + q;
                assert!((f.cdf(x).unwrap() - exact).abs() < 1e-12, "λ={lambda} x={x}");
            }
        }
    }

    #[test]
    fn boolean_stable_cdf_integrates_density() {
        for &alpha in &[0.3, 0.5, 0.7] {
            let f = Family::BooleanStable { alpha };
            for &x in &[0.1, 1.0, 3.0, 20.0] {
                let q = tanh_sinh(|y| Ok(f.density(y).unwrap()), 0.0, x, Tolerance::default())
                    .unwrap();
                assert!((f.cdf(x).unwrap() - q).abs() < 1e-11, "α={alpha} x={x}");
                let p = f.cdf(x).unwrap();
                assert!((f.quantile(p).unwrap() - x).abs() < 1e-9 * x.max(1.0));
            }
        }
    }

    #[test]
    fn poisson_truncation_keeps_tail_below_threshold() {
        let atoms = poisson_atoms(2.0);
        let mass: f64 = atoms.iter().map(|a| a.1).sum();
        assert!((1.0 - mass).abs() < 1e-14);
        assert!((atoms[0].1 - (-2.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn semicircle_s_branch_matches_r_inverse() {
        let f = Family::Semicircle { m: 3.0, v: 1.0 };
        for &u in &[-0.9, -0.5, -1e-6] {
            let s = f.s_transform(u).unwrap();
            let (r, _) = f.r_tilde(u * s).unwrap();
            assert!((r - u).abs() < 1e-14, "u={u}");
        }
    }
}
