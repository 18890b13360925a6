//! Test-side oracles, written without the library's quadrature or root
//! finders.
#![allow(dead_code)]

use freeconv::Measure;

/// Composite Simpson on `[a, b]` with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        acc += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

/// `∫₀^∞ f`, split at 1: `x = s²` on `[0, 1]` absorbs square-root endpoint
/// behaviour, `x = 1/u` maps the tail onto `(0, 1]`.
pub fn half_line(f: impl Fn(f64) -> f64) -> f64 {
    let head = simpson(|s| 2.0 * s * f(s * s), 0.0, 1.0, 20_000);
    let tail = simpson(|u| if u == 0.0 { 0.0 } else { f(1.0 / u) / (u * u) }, 0.0, 1.0, 20_000);
    head + tail
}

/// Plain bisection for an increasing function.
pub fn bisect(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Sup of `|F_a − F_b|` over `ts`.
pub fn cdf_gap(a: &Measure, b: &Measure, ts: &[f64]) -> f64 {
    ts.iter().map(|&t| (a.cdf(t).unwrap() - b.cdf(t).unwrap()).abs()).fold(0.0, f64::max)
}

/// Sup of `|f(t) − g(t)|` over `ts`.
pub fn sup_gap(ts: &[f64], f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64) -> f64 {
    ts.iter().map(|&t| (f(t) - g(t)).abs()).fold(0.0, f64::max)
}

pub fn mp_density(lambda: f64, x: f64) -> f64 {
    let (a, b) = ((1.0 - lambda.sqrt()).powi(2), (1.0 + lambda.sqrt()).powi(2));
    if x <= a || x >= b {
        0.0
    } else {
        ((x - a) * (b - x)).sqrt() / (2.0 * std::f64::consts::PI * x)
    }
}

pub fn semicircle_density(m: f64, v: f64, x: f64) -> f64 {
    let r2 = 4.0 * v - (x - m).powi(2);
    if r2 <= 0.0 {
        0.0
    } else {
        r2.sqrt() / (2.0 * std::f64::consts::PI * v)
    }
}

/// Density of the positive boolean stable law.
pub fn boolean_stable_density(alpha: f64, x: f64) -> f64 {
    use std::f64::consts::PI;
    let (s, c) = (PI * alpha).sin_cos();
    s * x.powf(alpha - 1.0) / (PI * (x.powf(2.0 * alpha) + 2.0 * c * x.powf(alpha) + 1.0))
}

/// Closed-form CDF of the positive boolean stable law,
/// `1 − arccot((x^α + cos πα)/sin πα)/(πα)`.
pub fn boolean_stable_cdf(alpha: f64, x: f64) -> f64 {
    use std::f64::consts::PI;
    if x <= 0.0 {
        return 0.0;
    }
    let (s, c) = (PI * alpha).sin_cos();
    let z = (x.powf(alpha) + c) / s;
    // arccot on ℝ with range (0, π)
    let arccot = PI / 2.0 - z.atan();
    1.0 - arccot / (PI * alpha)
}
