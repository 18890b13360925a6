//! Independent computations for non-circular checks: free additive
//! convolution by subordination, empirical measures, and KS distances.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::measures::{GridMeasure, Measure};

/// Imaginary offsets for Stieltjes inversion; the last two are combined by
/// Richardson extrapolation, the earlier ones only warm-start the iteration.
pub const EPS_SCHEDULE: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];
const STEP_TOL: f64 = 1e-12;
const MAX_ITER: usize = 500;
/// Damped iterations get a larger budget; they only run after oscillation.
const MAX_DAMPED_ITER: usize = 20_000;
/// Densities below this fraction of the peak are extrapolation residue
/// (of order ε²) and are set to zero; left in place, residue at the origin
/// would make `∫ x⁻¹ dμ` diverge.
pub const DENSITY_FLOOR: f64 = 1e-6;

/// `h(z) = 1/G(z) − z`.
fn h_transform(mu: &Measure, z: Complex64) -> Result<Complex64> {
    let g = mu.cauchy_complex(z)?;
    Ok(1.0 / g - z)
}

/// Fixed point `ω = h_ν(z + h_μ(ω)) + z` starting from `w0`.
fn subordination_point(mu: &Measure, nu: &Measure, z: Complex64, w0: Complex64) -> Result<Complex64> {
    let mut w = w0;
    let mut last_step: Option<Complex64> = None;
    let mut damped = false;
    let mut trace = Vec::new();
    let cap = MAX_ITER + MAX_DAMPED_ITER;
    for it in 0..cap {
        let inner = z + h_transform(mu, w)?;
        if !(inner.im > 0.0) {
            return Err(Error::Oracle(format!("iterate left the upper half-plane at z = {z}")));
        }
        let next = h_transform(nu, inner)? + z;
        let mut step = next - w;
        if let Some(prev) = last_step {
            // alternating steps: the iteration is cycling, so damp it
            if !damped && (step.re * prev.re + step.im * prev.im) < -0.5 * step.norm() * prev.norm() {
                damped = true;
            }
        }
        if damped {
            step *= 0.5;
        }
        w += step;
        if it < 8 || it % 100 == 0 {
            trace.push(step.norm());
        }
        if step.norm() < STEP_TOL * w.norm().max(1.0) {
            return Ok(w);
        }
        if !damped && it >= MAX_ITER {
            damped = true;
        }
        last_step = Some(step);
    }
    Err(Error::Oracle(format!(
        "subordination did not converge at z = {z}; step norms {trace:?}"
    )))
}

/// `G_{μ⊞ν}(x + iε)` for each ε of the schedule, continuing ω down the
/// schedule.
fn cauchy_along_schedule(mu: &Measure, nu: &Measure, x: f64) -> Result<Vec<Complex64>> {
    let mut w = Complex64::new(x, EPS_SCHEDULE[0]);
    let mut out = Vec::with_capacity(EPS_SCHEDULE.len());
    for &eps in &EPS_SCHEDULE {
        let z = Complex64::new(x, eps);
        let start = Complex64::new(w.re, w.im.max(eps));
        w = subordination_point(mu, nu, z, start)?;
        out.push(mu.cauchy_complex(w)?);
    }
    Ok(out)
}

/// Density of `μ ⊞ ν` at `x` by Stieltjes inversion with two-point
/// Richardson extrapolation in ε.
pub fn subordination_density(mu: &Measure, nu: &Measure, x: f64) -> Result<f64> {
    let g = cauchy_along_schedule(mu, nu, x)?;
    let n = EPS_SCHEDULE.len();
    let (e1, e2) = (EPS_SCHEDULE[n - 2], EPS_SCHEDULE[n - 1]);
    let (d1, d2) = (-g[n - 2].im / std::f64::consts::PI, -g[n - 1].im / std::f64::consts::PI);
    let d0 = (e1 * d2 - e2 * d1) / (e1 - e2);
    Ok(d0.max(0.0))
}

/// Free additive convolution computed without R-transforms: density of
/// `μ ⊞ ν` on `grid` by subordination and Stieltjes inversion.
pub fn subordination_free_add(mu: &Measure, nu: &Measure, grid: &[f64]) -> Result<GridMeasure> {
    if grid.len() < 2 || grid.windows(2).any(|w| !(w[1] > w[0])) || !(grid[0] >= 0.0) {
        return domain("oracle grid must be non-negative and strictly increasing");
    }
    if mu.is_delta_zero() || nu.is_delta_zero() {
        let other = if mu.is_delta_zero() { nu } else { mu };
        let density: Vec<f64> =
            grid.iter().map(|&x| if x > 0.0 { other.density(x) } else { Ok(0.0) }).collect::<Result<_>>()?;
        return GridMeasure::from_samples(other.atom0(), vec![], grid.to_vec(), density);
    }
    let mut density: Vec<f64> = grid
        .par_iter()
        .map(|&x| subordination_density(mu, nu, x))
        .collect::<Result<_>>()?;
    let floor = DENSITY_FLOOR * density.iter().cloned().fold(0.0, f64::max);
    for d in density.iter_mut().filter(|d| **d < floor) {
        *d = 0.0;
    }
    GridMeasure::from_samples(0.0, vec![], grid.to_vec(), density)
}

/// Evenly spaced grid with `n` points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Empirical distribution of the samples, as atoms.
pub fn empirical_measure(samples: &[f64]) -> Result<GridMeasure> {
    if samples.is_empty() {
        return domain("empirical measure needs at least one sample");
    }
    if let Some(x) = samples.iter().find(|x| !(**x >= 0.0) || !x.is_finite()) {
        return domain(format!("samples must be finite and non-negative, got {x}"));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let w = 1.0 / xs.len() as f64;
    let mut atom0 = 0.0;
    let mut atoms: Vec<(f64, f64)> = Vec::new();
    for x in xs {
        if x == 0.0 {
            atom0 += w;
            continue;
        }
        match atoms.last_mut() {
            Some(last) if last.0 == x => last.1 += w,
            _ => atoms.push((x, w)),
        }
    }
    GridMeasure::new(atom0, atoms, vec![])
}

/// `sup |F_μ − F_ν|` over `grid` together with the atoms of both
/// measures, taking left limits at atoms into account.
pub fn ks_distance(mu: &Measure, nu: &Measure, grid: &[f64]) -> Result<f64> {
    let mut points: Vec<f64> = grid.iter().copied().filter(|t| *t >= 0.0).collect();
    let atoms: Vec<f64> = mu.atoms().into_iter().chain(nu.atoms()).map(|a| a.0).collect();
    points.extend(&atoms);
    let mut sup: f64 = 0.0;
    for &t in &points {
        sup = sup.max((mu.cdf(t)? - nu.cdf(t)?).abs());
    }
    for &t in &atoms {
        sup = sup.max((mu.cdf_left(t)? - nu.cdf_left(t)?).abs());
    }
    Ok(sup)
}

/// Two-sided KS bound `c/√n` at 99% confidence.
pub fn ks_bound_99(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mp_plus_mp_density_at_two() {
        let m = Measure::mp(1.0).unwrap();
        let d = subordination_density(&m, &m, 2.0).unwrap();
        let exact = 7f64.sqrt() / (4.0 * std::f64::consts::PI);
        assert!((d - exact).abs() < 1e-4, "{d} vs {exact}");
    }

    #[test]
    fn ks_between_pareto_and_dagum() {
        let p = Measure::pareto(1.0).unwrap();
        let d = Measure::dagum(1.0).unwrap();
        let v = ks_distance(&p, &d, &linspace(0.0, 20.0, 401)).unwrap();
        assert!((v - 0.5).abs() < 1e-12);
        let z = Measure::dirac(0.0).unwrap();
        let one = Measure::dirac(1.0).unwrap();
        assert_eq!(ks_distance(&z, &one, &[0.5]).unwrap(), 1.0);
    }

    #[test]
    fn empirical_merges_repeats() {
        let e = empirical_measure(&[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(e.atoms(), &[(1.0, 1.0)]);
        assert!(empirical_measure(&[-1.0]).is_err());
    }
}
