//! The transform stack on the negative half-line: G, ψ, η, R, S, C, M and
//! A_μ.
//!
//! Closed forms are used where a family registers them; otherwise every
//! quantity is derived from whatever the representation knows. The hub is
//! ψ: `G(s) = (1 + ψ(1/s))/s`, `R(G(s)) = ψ(1/s)`, and
//! `S(u) = ((1+u)/u)·ψ^{-1}(u)`.

use num_complex::Complex64;

use crate::error::{domain, unsupported, Error, Result};
use crate::measures::{Family, Measure, Repr, Which};
use crate::quad::{exp_sinh, gauss_kronrod, gauss_kronrod_half_line, laguerre_integral, Tolerance};
use crate::roots::solve_increasing_open;

pub use crate::quad::gauss_laguerre;
pub use crate::roots::{invert_monotone, Bracket};

const INF: f64 = f64::INFINITY;
const NEG_INF: f64 = f64::NEG_INFINITY;

/// Tolerance for transforms obtained by integrating a cumulant or a CDF.
const DERIVED_TOL: Tolerance = Tolerance { abs: 0.0, rel: 1e-13 };

fn check_negative(name: &str, t: f64) -> Result<()> {
    if t < 0.0 {
        Ok(())
    } else {
        domain(format!("{name} is defined for t < 0, got {t}"))
    }
}

/// Solves `ψ(τ) = u` style problems: `f` increasing on `(lo, 0)`.
fn invert_on_negative<F>(f: F, target: f64, lo: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let start = if lo.is_finite() { 0.5 * lo } else { -1.0 };
    solve_increasing_open(f, target, lo, 0.0, start, 0.0)
}

impl Measure {
    /// `A_μ = ∫ x^{-1} dμ ∈ (0, ∞]`.
    pub fn neg_moment(&self) -> Result<f64> {
        if self.atom0() > 0.0 {
            return Ok(INF);
        }
        if let Some(a) = self.cache.neg_moment.get() {
            return Ok(*a);
        }
        let a = self.neg_moment_uncached()?;
        let _ = self.cache.neg_moment.set(a);
        Ok(a)
    }

    fn neg_moment_uncached(&self) -> Result<f64> {
        match &*self.repr {
            Repr::Catalog(f) => Ok(f.neg_moment().expect("every family registers A")),
            Repr::Grid(g) => Ok(g.neg_moment()),
            Repr::Transform(s) => Ok(s.neg_moment),
            Repr::Cdf(_) => {
                // E[1/X] = ∫₀^∞ F(u)/u² du
                let v = exp_sinh(
                    |u| {
                        let f = self.cdf(u)?;
                        Ok(if f == 0.0 { 0.0 } else { f / (u * u) })
                    },
                    0.0,
                    1.0,
                    DERIVED_TOL,
                )?;
                Ok(if v.is_finite() { v } else { INF })
            }
            Repr::Mixture(parts) => {
                let mut acc = 0.0;
                for (w, m) in parts {
                    acc += w * m.neg_moment()?;
                }
                Ok(acc)
            }
            Repr::Dilation { base, c } => Ok(base.neg_moment()? / c),
            Repr::Power { base, c } => match base.mellin(-c) {
                Ok(v) => Ok(v),
                Err(Error::Domain(_)) => Ok(INF),
                Err(e) => Err(e),
            },
            Repr::Product(a, b) => Ok(a.neg_moment()? * b.neg_moment()?),
        }
    }

    /// Cauchy transform `G(s) = ∫ (s − x)^{-1} dμ` for real `s < 0`.
    pub fn cauchy(&self, s: f64) -> Result<f64> {
        check_negative("G on the real axis", s)?;
        if s == NEG_INF {
            return Ok(0.0);
        }
        match &*self.repr {
            Repr::Catalog(f) => {
                if let Some(v) = f.cauchy(s) {
                    return Ok(v);
                }
                if f.expectable() {
                    return self.expect(&|x| Ok(1.0 / (s - x)));
                }
            }
            Repr::Grid(g) => return Ok(g.cauchy(s)),
            Repr::Mixture(parts) => {
                let mut acc = 0.0;
                for (w, m) in parts {
                    acc += w * m.cauchy(s)?;
                }
                return Ok(acc);
            }
            Repr::Dilation { base, c } => return Ok(base.cauchy(s / c)? / c),
            _ => {}
        }
        Ok((1.0 + self.psi_raw(1.0 / s)?) / s)
    }

    /// Cauchy transform at `z` in the open upper half-plane (or on the
    /// negative real axis).
    pub fn cauchy_complex(&self, z: Complex64) -> Result<Complex64> {
        if !(z.im > 0.0 || (z.im == 0.0 && z.re < 0.0)) {
            return domain(format!("G needs Im z > 0 or z < 0, got {z}"));
        }
        match &*self.repr {
            Repr::Catalog(f) => {
                if let Some(v) = f.cauchy_complex(z) {
                    return Ok(v);
                }
                if !f.expectable() {
                    return unsupported(format!("{} has no complex Cauchy transform", f.name()));
                }
                let mut acc = Complex64::new(0.0, 0.0);
                for (x, m) in f.atoms() {
                    acc += m / (z - x);
                }
                let tol = Tolerance::new(1e-14, 1e-11);
                for (lo, hi) in f.pieces() {
                    let part = |re: bool| -> Result<f64> {
                        let g = |x: f64| -> Result<f64> {
                            let d = f.density(x).unwrap_or(0.0);
                            let w = d / (z - x);
                            Ok(if re { w.re } else { w.im })
                        };
                        if hi.is_finite() {
                            gauss_kronrod(g, lo, hi, &[z.re], tol)
                        } else {
                            gauss_kronrod_half_line(g, lo, &[z.re], tol)
                        }
                    };
                    acc += Complex64::new(part(true)?, part(false)?);
                }
                Ok(acc)
            }
            Repr::Grid(g) => Ok(g.cauchy_complex(z)),
            Repr::Mixture(parts) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for (w, m) in parts {
                    acc += *w * m.cauchy_complex(z)?;
                }
                Ok(acc)
            }
            Repr::Dilation { base, c } => Ok(base.cauchy_complex(z / c)? / c),
            _ => unsupported(format!("{} has no complex Cauchy transform", self.label())),
        }
    }

    /// `ψ(t) = ∫ tx/(1 − tx) dμ` for `t < 0`.
    pub fn psi(&self, t: f64) -> Result<f64> {
        check_negative("ψ", t)?;
        self.psi_raw(t)
    }

    /// ψ on `[−∞, 0]`, with the limits at both ends.
    pub(crate) fn psi_raw(&self, t: f64) -> Result<f64> {
        if t == 0.0 {
            return Ok(0.0);
        }
        if t == NEG_INF {
            return Ok(-1.0 + self.atom0());
        }
        if self.is_delta_zero() {
            return Ok(0.0);
        }
        match &*self.repr {
            Repr::Catalog(f) => {
                if let Some(v) = f.psi(t) {
                    return Ok(v);
                }
                match f {
                    Family::FreeStable { .. } => {
                        let a = f.neg_moment().unwrap();
                        psi_from_r(&|s| Ok(f.r_tilde(s).unwrap().0), a, t)
                    }
                    Family::ClassicalStable { .. } => {
                        psi_from_cumulant(&|s| Ok(f.cumulant(s).unwrap()), t)
                    }
                    _ => self.expect(&|x| Ok(t * x / (1.0 - t * x))),
                }
            }
            Repr::Grid(g) => {
                if t.abs() * g.hmax() < 0.1 {
                    g.expect(|x| Ok(t * x / (1.0 - t * x)))
                } else {
                    Ok(g.cauchy(1.0 / t) / t - 1.0)
                }
            }
            Repr::Transform(spec) => match spec.which {
                Which::Psi => spec.call(t),
                Which::Eta => {
                    let e = spec.call(t)?;
                    Ok(e / (1.0 - e))
                }
                Which::R => psi_from_r(&|s| spec.call(s), spec.neg_moment, t),
                Which::S => psi_from_s(&|u| spec.call(u), spec.atom0, t),
                Which::CumulantC => psi_from_cumulant(&|s| spec.call(s), t),
            },
            Repr::Cdf(_) => {
                // ψ(t) = E[tX/(1 − tX)] = ∫ F(x)·t/(1 − tx)² dx − ... by parts:
                // E[g(X)] = g(∞) − ∫ F(x) g'(x) dx with g(x) = tx/(1−tx)
                let tail = exp_sinh(
                    |x| {
                        let f = self.cdf(x)?;
                        let d = 1.0 - t * x;
                        Ok(f * t / (d * d))
                    },
                    0.0,
                    1.0 / t.abs(),
                    DERIVED_TOL,
                )?;
                Ok(-1.0 - tail)
            }
            Repr::Mixture(parts) => {
                let mut acc = 0.0;
                for (w, m) in parts {
                    acc += w * m.psi_raw(t)?;
                }
                Ok(acc)
            }
            Repr::Dilation { base, c } => base.psi_raw(c * t),
            Repr::Power { base, c } => {
                if self.expectable() {
                    self.expect(&|x| Ok(t * x / (1.0 - t * x)))
                } else if *c == -1.0 {
                    let b = base.clone();
                    psi_from_s(&move |u| Ok(1.0 / b.s_transform(-1.0 - u)?), self.atom0(), t)
                } else {
                    unsupported(format!("ψ of {} is not available", self.label()))
                }
            }
            Repr::Product(a, b) => {
                if b.expectable() {
                    b.expect(&|y| a.psi_raw(t * y))
                } else if a.expectable() {
                    a.expect(&|x| b.psi_raw(t * x))
                } else {
                    unsupported(format!("ψ of {} needs an integrable factor", self.label()))
                }
            }
        }
    }

    /// `η = ψ/(1 + ψ)` for `t < 0`.
    pub fn eta(&self, t: f64) -> Result<f64> {
        check_negative("η", t)?;
        self.eta_raw(t)
    }

    pub(crate) fn eta_raw(&self, t: f64) -> Result<f64> {
        if t == 0.0 {
            return Ok(0.0);
        }
        match &*self.repr {
            Repr::Catalog(f) => {
                if let Some(v) = f.eta(t) {
                    return Ok(v);
                }
            }
            Repr::Transform(spec) if spec.which == Which::Eta => return spec.call(t),
            Repr::Dilation { base, c } => return base.eta_raw(c * t),
            _ => {}
        }
        if t == NEG_INF {
            let a = self.atom0();
            return Ok(if a == 0.0 { NEG_INF } else { 1.0 - 1.0 / a });
        }
        let p = self.psi_raw(t)?;
        Ok(p / (1.0 + p))
    }

    /// R-transform `R(t) = t·G^{-1}(t) − 1`. Accepts `t ∈ (−A_μ, 0)`, or
    /// `(−B_μ, 0)` for families with a registered continuation.
    pub fn r_transform(&self, t: f64) -> Result<f64> {
        check_negative("R", t)?;
        self.r_raw(t)
    }

    fn r_raw(&self, t: f64) -> Result<f64> {
        if self.is_delta_zero() {
            return Ok(0.0);
        }
        match &*self.repr {
            Repr::Catalog(f) => {
                if let Some((v, left)) = f.r_tilde(t) {
                    if t > left {
                        return Ok(v);
                    }
                    return domain(format!("R of {} needs t > {left}, got {t}", f.name()));
                }
            }
            Repr::Transform(spec) => {
                let a = spec.neg_moment;
                if !(t > -a) {
                    return domain(format!("R of {} needs t > {}, got {t}", spec.label, -a));
                }
                match spec.which {
                    Which::R => return spec.call(t),
                    Which::S => {
                        let lo = -1.0 + spec.atom0;
                        return invert_on_negative(|u| Ok(u * spec.call(u)?), t, lo);
                    }
                    _ => {}
                }
            }
            Repr::Dilation { base, c } => return base.r_raw(c * t),
            _ => {}
        }
        let a = self.neg_moment()?;
        if !(t > -a) {
            return domain(format!("R of {} needs t > {}, got {t}", self.label(), -a));
        }
        // R(t) = ψ(τ) where τ(1 + ψ(τ)) = G(1/τ) = t
        let tau = invert_on_negative(|tau| Ok(tau * (1.0 + self.psi_raw(tau)?)), t, NEG_INF)?;
        self.psi_raw(tau)
    }

    /// S-transform on `(−1 + μ({0}), 0)`.
    pub fn s_transform(&self, u: f64) -> Result<f64> {
        self.check_s_domain(u)?;
        match &*self.repr {
            Repr::Catalog(f) => {
                if let Some(v) = f.s_transform(u) {
                    return Ok(v);
                }
            }
            Repr::Transform(spec) => match spec.which {
                Which::S => return spec.call(u),
                Which::R => return self.s_via_r(u),
                _ => {}
            },
            Repr::Dilation { base, c } => return Ok(base.s_transform(u)? / c),
            Repr::Power { base, c } if *c == -1.0 && !self.expectable() => {
                return Ok(1.0 / base.s_transform(-1.0 - u)?);
            }
            _ => {}
        }
        self.s_via_psi(u)
    }

    fn check_s_domain(&self, u: f64) -> Result<()> {
        if self.is_delta_zero() {
            return domain("S is undefined for δ₀");
        }
        let lo = -1.0 + self.atom0();
        if u > lo && u < 0.0 {
            Ok(())
        } else {
            domain(format!("S needs u ∈ ({lo}, 0), got {u}"))
        }
    }

    /// `S(u) = ((1 + u)/u)·ψ^{-1}(u)`.
    pub fn s_via_psi(&self, u: f64) -> Result<f64> {
        self.check_s_domain(u)?;
        let tau = invert_on_negative(|t| self.psi_raw(t), u, NEG_INF)?;
        Ok((1.0 + u) / u * tau)
    }

    /// `S(u) = R^{-1}(u)/u`, by inverting R numerically.
    pub fn s_via_r(&self, u: f64) -> Result<f64> {
        self.check_s_domain(u)?;
        let a = self.neg_moment()?;
        let t = invert_on_negative(|t| self.r_raw(t), u, -a)?;
        Ok(t / u)
    }

    /// Cumulant transform `C(t) = log ∫ e^{tx} dμ`, for `t ≤ 0` (and `t > 0`
    /// where a family registers convergence).
    pub fn cumulant(&self, t: f64) -> Result<f64> {
        if t > 0.0 {
            let edge = match &*self.repr {
                Repr::Catalog(f) => f.cumulant_right_edge(),
                _ => 0.0,
            };
            if t >= edge {
                return domain(format!("C({t}) is not registered to converge for {}", self.label()));
            }
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        self.cumulant_raw(t)
    }

    pub(crate) fn cumulant_raw(&self, t: f64) -> Result<f64> {
        if t == 0.0 || self.is_delta_zero() {
            return Ok(0.0);
        }
        match &*self.repr {
            Repr::Catalog(f) => {
                if let Some(v) = f.cumulant(t) {
                    return Ok(v);
                }
                if !f.expectable() {
                    return unsupported(format!("C of {} is not available", f.name()));
                }
                Ok(self.expect(&|x| Ok((t * x).exp()))?.ln())
            }
            Repr::Grid(g) => Ok(g.laplace(t).ln()),
            Repr::Transform(spec) => {
                if spec.which == Which::CumulantC {
                    spec.call(t)
                } else {
                    unsupported(format!("C of transform-defined {} is not available", spec.label))
                }
            }
            Repr::Cdf(_) => {
                // E e^{tX} = ∫₀^∞ (−t) e^{tx} F(x) dx for t < 0
                let v = exp_sinh(
                    |x| {
                        let w = (t * x).exp();
                        Ok(if w == 0.0 { 0.0 } else { -t * w * self.cdf(x)? })
                    },
                    0.0,
                    1.0 / t.abs(),
                    DERIVED_TOL,
                )?;
                Ok(v.ln())
            }
            Repr::Mixture(parts) => {
                let mut acc = 0.0;
                for (w, m) in parts {
                    acc += w * m.cumulant_raw(t)?.exp();
                }
                Ok(acc.ln())
            }
            Repr::Dilation { base, c } => base.cumulant_raw(c * t),
            Repr::Power { .. } => Ok(self.expect(&|x| Ok((t * x).exp()))?.ln()),
            Repr::Product(a, b) => {
                let v = if b.expectable() {
                    b.expect(&|y| Ok(a.cumulant_raw(t * y)?.exp()))?
                } else if a.expectable() {
                    a.expect(&|x| Ok(b.cumulant_raw(t * x)?.exp()))?
                } else {
                    return unsupported(format!("C of {} needs an integrable factor", self.label()));
                };
                Ok(v.ln())
            }
        }
    }

    /// Mellin transform `M(t) = ∫_{(0,∞)} x^t dμ`.
    pub fn mellin(&self, t: f64) -> Result<f64> {
        if t == 0.0 {
            return Ok(1.0 - self.atom0());
        }
        match &*self.repr {
            Repr::Catalog(f) => {
                if let Some(r) = f.mellin(t) {
                    return r;
                }
                if !f.expectable() {
                    return unsupported(format!("M of {} is not available", f.name()));
                }
                self.mellin_quadrature(t)
            }
            Repr::Grid(g) => g.mellin(t),
            Repr::Mixture(parts) => {
                let mut acc = 0.0;
                for (w, m) in parts {
                    acc += w * m.mellin(t)?;
                }
                Ok(acc)
            }
            Repr::Dilation { base, c } => Ok(c.powf(t) * base.mellin(t)?),
            Repr::Power { base, c } => base.mellin(c * t),
            Repr::Product(a, b) => Ok(a.mellin(t)? * b.mellin(t)?),
            Repr::Transform(_) | Repr::Cdf(_) => {
                unsupported(format!("M of {} is not available", self.label()))
            }
        }
    }

    /// Mellin transform by direct quadrature against the measure, bypassing
    /// closed forms and multiplicativity rules.
    pub fn mellin_quadrature(&self, t: f64) -> Result<f64> {
        // x^{ct} in one power: (x^c)^t overflows near 0 for c < 0
        if let Repr::Power { base, c } = &*self.repr {
            return base.mellin_quadrature(c * t);
        }
        self.expect(&|x| Ok(if x == 0.0 { 0.0 } else { x.powf(t) }))
    }
}

/// ψ of a measure known through R on `(−A, 0)`: ψ(τ) = R(s) where
/// `s/(1 + R(s)) = τ`.
pub(crate) fn psi_from_r(r: &dyn Fn(f64) -> Result<f64>, a: f64, tau: f64) -> Result<f64> {
    let s = invert_on_negative(|s| Ok(s / (1.0 + r(s)?)), tau, -a)?;
    r(s)
}

/// ψ of a measure known through S: `ψ^{-1}(u) = uS(u)/(1 + u)`.
pub(crate) fn psi_from_s(s: &dyn Fn(f64) -> Result<f64>, atom0: f64, tau: f64) -> Result<f64> {
    invert_on_negative(|u| Ok(u * s(u)? / (1.0 + u)), tau, -1.0 + atom0)
}

/// `ψ(t) = ∫₀^∞ e^{−y}(e^{C(ty)} − 1) dy`.
pub(crate) fn psi_from_cumulant(c: &dyn Fn(f64) -> Result<f64>, t: f64) -> Result<f64> {
    laguerre_integral(|y| Ok(c(t * y)?.exp_m1()), DERIVED_TOL)
}

/// `G_μ(s)` for real `s < 0` or complex `s` with `Im s > 0`.
pub fn cauchy_g(mu: &Measure, s: f64) -> Result<f64> {
    mu.cauchy(s)
}

pub fn neg_moment_a(mu: &Measure) -> Result<f64> {
    mu.neg_moment()
}

pub fn psi(mu: &Measure, t: f64) -> Result<f64> {
    mu.psi(t)
}

pub fn eta(mu: &Measure, t: f64) -> Result<f64> {
    mu.eta(t)
}

pub fn r(mu: &Measure, t: f64) -> Result<f64> {
    mu.r_transform(t)
}

pub fn s(mu: &Measure, u: f64) -> Result<f64> {
    mu.s_transform(u)
}

pub fn cumulant_c(mu: &Measure, t: f64) -> Result<f64> {
    mu.cumulant(t)
}

pub fn mellin_m(mu: &Measure, t: f64) -> Result<f64> {
    mu.mellin(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn point_mass_transforms() {
        let d = Measure::dirac(2.0).unwrap();
        assert!(close(d.cauchy(-1.0).unwrap(), -1.0 / 3.0, 1e-15));
        assert!(close(d.r_transform(-0.3).unwrap(), -0.6, 1e-15));
        assert!(close(d.s_transform(-0.5).unwrap(), 0.5, 1e-15));
        assert!(close(d.cumulant(-1.5).unwrap(), -3.0, 1e-15));
        assert!(close(d.neg_moment().unwrap(), 0.5, 1e-15));
    }

    #[test]
    fn exponential_eta_matches_direct_integral() {
        let e = Measure::exponential();
        let direct = crate::quad::laguerre_integral(|x| Ok(-x / (1.0 + x)), Tolerance::default())
            .unwrap();
        let expect = direct / (1.0 + direct);
        assert!(close(e.eta(-1.0).unwrap(), expect, 1e-12));
    }

    #[test]
    fn mp_routes_agree() {
        let m = Measure::mp(2.0).unwrap();
        assert!(close(m.r_transform(-1.0 / 3.0).unwrap(), -0.5, 1e-14));
        for &u in &[-0.9, -0.5, -0.1] {
            let exact = 1.0 / (2.0 + u);
            assert!(close(m.s_via_psi(u).unwrap(), exact, 1e-11), "u={u}");
            assert!(close(m.s_via_r(u).unwrap(), exact, 1e-11), "u={u}");
        }
    }

    #[test]
    fn free_stable_psi_round_trip() {
        let f = Measure::free_stable(0.5).unwrap();
        // R(G(s)) = ψ(1/s) and R = −√(−t)
        let p = f.psi(-2.0).unwrap();
        let g = f.cauchy(-0.5).unwrap();
        assert!(close(f.r_transform(g).unwrap(), p, 1e-12));
        assert!(close(p, -(-g).sqrt(), 1e-12));
    }

    #[test]
    fn classical_stable_psi_from_cumulant_matches_levy_density() {
        let s = Measure::classical_stable(0.5).unwrap();
        let via_c = psi_from_cumulant(&|t| Ok(-(-t).sqrt()), -0.7).unwrap();
        let via_density = s.expect(&|x| Ok(-0.7 * x / (1.0 + 0.7 * x))).unwrap();
        assert!(close(via_c, via_density, 1e-10), "{via_c} {via_density}");
    }
}
