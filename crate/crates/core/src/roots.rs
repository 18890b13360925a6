//! Bracketed root finding for monotone scalar functions.

use crate::error::{Error, Result};

/// A closed search interval together with the absolute tolerance demanded
/// of the function value at the returned point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, tol: f64) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Bracket(format!("need finite lo < hi, got [{lo}, {hi}]")));
        }
        if !(tol >= 0.0) {
            return Err(Error::Bracket(format!("tolerance must be non-negative, got {tol}")));
        }
        Ok(Bracket { lo, hi, tol })
    }
}

/// Solves `f(x) = target` for `f` continuous and strictly monotone on the
/// bracket.
///
/// Brent's method: inverse quadratic / secant steps guarded by bisection, so
/// termination is guaranteed. Every iterate is checked against the bracket
/// values; a value outside their range means `f` is not monotone.
pub fn invert_monotone<F>(mut f: F, target: f64, bracket: Bracket) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let Bracket { lo, hi, tol } = bracket;
    let flo = f(lo)?;
    let fhi = f(hi)?;
    if !(flo.is_finite() && fhi.is_finite()) {
        return Err(Error::Bracket(format!("non-finite value at bracket ends: {flo}, {fhi}")));
    }
    let (vmin, vmax) = (flo.min(fhi), flo.max(fhi));
    if target < vmin || target > vmax {
        return Err(Error::Bracket(format!(
            "target {target} not between f({lo}) = {flo} and f({hi}) = {fhi}"
        )));
    }
    let slack = 1e-12 * (vmax - vmin).max(vmax.abs().max(vmin.abs()));
    let mut g = |x: f64| -> Result<f64> {
        let v = f(x)?;
        if !v.is_finite() {
            return Err(Error::Representation(format!("non-finite value {v} at {x}")));
        }
        if v < vmin - slack || v > vmax + slack {
            return Err(Error::Representation(format!(
                "function is not monotone on [{lo}, {hi}]: f({x}) = {v} leaves [{vmin}, {vmax}]"
            )));
        }
        Ok(v - target)
    };

    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (flo - target, fhi - target);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let (mut c, mut fc) = (b, fb);
    let (mut d, mut e) = (b - a, b - a);
    for _ in 0..400 {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let xtol = 2.0 * f64::EPSILON * b.abs() + 1e-300;
        let m = 0.5 * (c - b);
        if fb.abs() <= tol || m.abs() <= xtol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= xtol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * m * q - (xtol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > xtol { d } else { xtol.copysign(m) };
        fb = g(b)?;
    }
    Err(Error::Convergence(format!("Brent iteration did not settle near {b}")))
}

/// Solves `f(x) = target` for `f` continuous and strictly increasing on the
/// open interval `(lo, hi)`, where either end may be infinite and `f` need
/// not be defined at the ends.
///
/// A bracket is found by walking geometrically from `start` towards the
/// relevant end; the walk gives up when the probes reach the end in floating
/// point.
pub fn solve_increasing_open<F>(
    mut f: F,
    target: f64,
    lo: f64,
    hi: f64,
    start: f64,
    tol: f64,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !(start > lo && start < hi) {
        return Err(Error::Bracket(format!(
            "start {start} must lie inside ({lo}, {hi})"
        )));
    }
    let f0 = f(start)?;
    if f0 == target {
        return Ok(start);
    }
    // probe sequence towards the side where the root lies
    let toward_lo = f0 > target;
    let (mut inner, mut inner_val) = (start, f0);
    for k in 1..2200 {
        let x = if toward_lo {
            probe_toward(lo, start, k, false)
        } else {
            probe_toward(hi, start, k, true)
        };
        let x = match x {
            Some(x) if x != inner => x,
            _ => break,
        };
        let v = f(x)?;
        let crossed = if toward_lo { v <= target } else { v >= target };
        if crossed {
            let (a, b) = if toward_lo { (x, inner) } else { (inner, x) };
            return invert_monotone(&mut f, target, Bracket::new(a, b, tol)?);
        }
        if (toward_lo && v > inner_val) || (!toward_lo && v < inner_val) {
            return Err(Error::Representation(format!(
                "function is not increasing near {x}"
            )));
        }
        inner = x;
        inner_val = v;
    }
    Err(Error::Bracket(format!(
        "target {target} lies beyond the range reached on ({lo}, {hi}); last value {inner_val}"
    )))
}

/// The `k`-th probe from `start` towards `end`: geometric steps for an
/// infinite end, dyadic approach for a finite one.
fn probe_toward(end: f64, start: f64, k: i32, upward: bool) -> Option<f64> {
    let x = if end.is_infinite() {
        let step = (start.abs().max(1.0)) * 2f64.powi(k.min(1023));
        if upward {
            start + step
        } else {
            start - step
        }
    } else {
        if k > 1074 {
            return None;
        }
        end - (end - start) * 2f64.powi(-k)
    };
    if !x.is_finite() || (end.is_finite() && x == end) {
        return None;
    }
    Some(x)
}

/// Strictly decreasing counterpart of [`solve_increasing_open`].
pub fn solve_decreasing_open<F>(
    mut f: F,
    target: f64,
    lo: f64,
    hi: f64,
    start: f64,
    tol: f64,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    solve_increasing_open(|x| f(x).map(|v| -v), -target, lo, hi, start, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_cauchy_of_point_mass() {
        let b = Bracket::new(0.0, 1.0, 1e-15).unwrap();
        assert!((invert_monotone(Ok, 0.3, b).unwrap() - 0.3).abs() < 1e-15);
        let b = Bracket::new(-10.0, -0.01, 1e-15).unwrap();
        let s = invert_monotone(|s| Ok(1.0 / (s - 1.0)), -0.5, b).unwrap();
        assert!((s + 1.0).abs() < 1e-12, "{s}");
    }

    #[test]
    fn rejects_missing_sign_change() {
        let b = Bracket::new(0.0, 1.0, 1e-12).unwrap();
        assert!(matches!(invert_monotone(Ok, 2.0, b), Err(Error::Bracket(_))));
        assert!(Bracket::new(1.0, 0.0, 1e-12).is_err());
    }

    #[test]
    fn detects_non_monotone_probe() {
        // a bump that overshoots the end values
        let b = Bracket::new(0.0, 1.0, 1e-14).unwrap();
        let r = invert_monotone(|x| Ok(x + 10.0 * (std::f64::consts::PI * x).sin()), 0.999, b);
        assert!(matches!(r, Err(Error::Representation(_))), "{r:?}");
    }

    #[test]
    fn open_interval_walks_to_the_ends() {
        // x ↦ −1/x on (−∞, 0), target near the range endpoint 0
        let x = solve_increasing_open(|x| Ok(-1.0 / x), 1e6, f64::NEG_INFINITY, 0.0, -1.0, 1e-6)
            .unwrap();
        assert!((x + 1e-6).abs() < 1e-15, "{x}");
        let x = solve_increasing_open(|x| Ok(-1.0 / x), 1e-8, f64::NEG_INFINITY, 0.0, -1.0, 1e-22)
            .unwrap();
        assert!((x + 1e8).abs() < 1e-4 * 1e8, "{x}");
        let x = solve_decreasing_open(|x| Ok(1.0 / x), -4.0, f64::NEG_INFINITY, 0.0, -1.0, 1e-14)
            .unwrap();
        assert!((x + 0.25).abs() < 1e-14);
        assert!(matches!(
            solve_increasing_open(|x: f64| Ok(x.atan()), 2.0, f64::NEG_INFINITY, f64::INFINITY, 0.0, 1e-12),
            Err(Error::Bracket(_))
        ));
    }
}
