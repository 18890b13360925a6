//! The seven binary convolutions and the partial semigroup powers.
//!
//! Classical `∗` is computed on a grid; `⊛` is a lazy product of independent
//! factors. Free `⊞`/`⊠` and boolean `⊎` are lazy transform-defined
//! measures (R-sum, S-product, η-sum). The three max-convolutions act on
//! CDFs.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{domain, unsupported, Error, Result};
use crate::measures::{
    Family, GridMeasure, Measure, Piece, Repr, ScalarFn, TransformSpec, Which,
};
use crate::quad::{tanh_sinh, Tolerance};
use crate::roots::solve_increasing_open;

/// Mass neglected in the upper tail of each factor of a grid convolution.
const TAIL_MASS: f64 = 1e-13;
/// Refinement stops once the CDF moves by less than this between grids.
pub const CDF_REFINE_TOL: f64 = 1e-7;
const MAX_REFINEMENTS: usize = 6;
const INITIAL_CELLS: f64 = 512.0;

fn scalar(f: impl Fn(f64) -> Result<f64> + Send + Sync + 'static) -> ScalarFn {
    Arc::new(f)
}

/// Atoms, density pieces and density kinks of a concrete measure.
struct Parts {
    measure: Measure,
    atoms: Vec<(f64, f64)>,
    pieces: Vec<(f64, f64)>,
    /// Grid nodes where the density is only piecewise smooth.
    nodes: Vec<f64>,
}

impl Parts {
    fn of(m: &Measure) -> Result<Parts> {
        let pieces = ac_pieces(m)?;
        let nodes = match &*m.repr {
            Repr::Grid(g) => g.pieces().iter().flat_map(|p| p.grid.iter().copied()).collect(),
            _ => pieces.iter().flat_map(|p| [p.0, p.1]).filter(|x| x.is_finite()).collect(),
        };
        Ok(Parts { measure: m.clone(), atoms: m.atoms(), pieces, nodes })
    }

    fn density(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) || !self.pieces.iter().any(|p| x >= p.0 && x <= p.1) {
            return Ok(0.0);
        }
        self.measure.density(x)
    }
}

/// Intervals carrying the absolutely continuous part.
fn ac_pieces(m: &Measure) -> Result<Vec<(f64, f64)>> {
    match &*m.repr {
        Repr::Catalog(f) => {
            if !f.expectable() {
                return unsupported(format!("{} has no density for grid convolution", f.name()));
            }
            Ok(f.pieces())
        }
        Repr::Grid(g) => Ok(g
            .pieces()
            .iter()
            .map(|p| (p.grid[0], *p.grid.last().expect("pieces are non-empty")))
            .collect()),
        Repr::Dilation { base, c } => {
            Ok(ac_pieces(base)?.into_iter().map(|(a, b)| (c * a, c * b)).collect())
        }
        Repr::Mixture(parts) => {
            let mut out = Vec::new();
            for (_, p) in parts {
                out.extend(ac_pieces(p)?);
            }
            Ok(out)
        }
        _ => unsupported(format!("{} is not concrete enough for grid convolution", m.label())),
    }
}

fn merge_atoms(mut atoms: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    atoms.retain(|a| a.1 > 0.0);
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
    for (x, m) in atoms {
        match out.last_mut() {
            Some(last) if (x - last.0).abs() <= 1e-12 * x.abs().max(1.0) => last.1 += m,
            _ => out.push((x, m)),
        }
    }
    out
}

/// Density of `μ ∗ ν` at `x > 0`.
fn sum_density(mu: &Parts, nu: &Parts, x: f64) -> Result<f64> {
    let mut acc = 0.0;
    for &(a, m) in &mu.atoms {
        if x > a {
            acc += m * nu.density(x - a)?;
        }
    }
    for &(b, m) in &nu.atoms {
        if x > b {
            acc += m * mu.density(x - b)?;
        }
    }
    Ok(acc + ac_convolution(mu, nu, x)?)
}

/// `∫ f_μ(y) f_ν(x − y) dy`.
fn ac_convolution(mu: &Parts, nu: &Parts, x: f64) -> Result<f64> {
    if mu.pieces.is_empty() || nu.pieces.is_empty() {
        return Ok(0.0);
    }
    // a grid factor is integrated cell by cell with Gauss–Legendre, exact
    // for the piecewise polynomial products that arise
    let (g, other) = match (&*mu.measure.repr, &*nu.measure.repr) {
        (Repr::Grid(g), _) => (Some(g), nu),
        (_, Repr::Grid(g)) => (Some(g), mu),
        _ => (None, nu),
    };
    if let Some(g) = g {
        let breaks: Vec<f64> = other.nodes.iter().map(|b| x - b).filter(|y| *y > 0.0).collect();
        return g.integrate_density_with_breaks(
            |y| if y < x { other.density(x - y) } else { Ok(0.0) },
            &breaks,
        );
    }
    let tol = Tolerance::new(0.0, 1e-12);
    let mut acc = 0.0;
    for &(l1, h1) in &mu.pieces {
        for &(l2, h2) in &nu.pieces {
            let lo = l1.max(x - h2).max(0.0);
            let hi = h1.min(x - l2).min(x);
            if hi <= lo {
                continue;
            }
            acc += tanh_sinh(|y| Ok(mu.density(y)? * nu.density(x - y)?), lo, hi, tol)?;
        }
    }
    Ok(acc)
}

fn upper_cut(m: &Measure, pieces: &[(f64, f64)]) -> Result<f64> {
    let top = pieces.iter().map(|p| p.1).fold(0.0, f64::max);
    if top.is_finite() {
        return Ok(top);
    }
    m.quantile(1.0 - TAIL_MASS)
}

/// Grid for one output piece with spacing at most `h`.
fn uniform_nodes(lo: f64, hi: f64, h: f64) -> Vec<f64> {
    let n = (((hi - lo) / h).ceil() as usize).max(3);
    (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect()
}

fn grid_sum(
    mu: &Parts,
    nu: &Parts,
    atom0: f64,
    atoms: &[(f64, f64)],
    spans: &[(f64, f64)],
    h: f64,
) -> Result<GridMeasure> {
    let mut pieces = Vec::with_capacity(spans.len());
    for &(lo, hi) in spans {
        let grid = uniform_nodes(lo, hi, h);
        let nudge = 1e-12 * (hi - lo);
        let density: Vec<f64> = grid
            .par_iter()
            .enumerate()
            .map(|(i, &x)| {
                // one-sided values at the span ends
                let x = if i == 0 {
                    x + nudge
                } else if i == grid.len() - 1 {
                    x - nudge
                } else {
                    x
                };
                sum_density(mu, nu, x).map(|d| d.max(0.0))
            })
            .collect::<Result<_>>()?;
        pieces.push(Piece { grid, density });
    }
    GridMeasure::new(atom0, atoms.to_vec(), pieces)
}

/// Classical additive convolution `μ ∗ ν`, as a grid measure (exact for
/// purely atomic inputs).
pub fn conv_classical_add(mu: &Measure, nu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() {
        return Ok(nu.clone());
    }
    if nu.is_delta_zero() {
        return Ok(mu.clone());
    }
    if let (Some(Family::Dirac { a }), Some(Family::Dirac { a: b })) = (mu.family(), nu.family()) {
        return Measure::dirac(a + b);
    }
    let id_star = match (mu.id_star(), nu.id_star()) {
        (Some(true), Some(true)) => Some(true),
        _ => None,
    };
    let (pm, pn) = (Parts::of(mu)?, Parts::of(nu)?);
    let mut cross = Vec::new();
    for &(a, m) in &pm.atoms {
        for &(b, n) in &pn.atoms {
            cross.push((a + b, m * n));
        }
    }
    let cross = merge_atoms(cross);
    let atom0 = cross.iter().filter(|a| a.0 == 0.0).map(|a| a.1).sum();
    let atoms: Vec<(f64, f64)> = cross.into_iter().filter(|a| a.0 > 0.0).collect();
    if pm.pieces.is_empty() && pn.pieces.is_empty() {
        return Ok(Measure::from_grid(GridMeasure::new(atom0, atoms, vec![])?).with_id_star(id_star));
    }

    let top = upper_cut(mu, &pm.pieces)? + upper_cut(nu, &pn.pieces)?;
    let ends = |p: &Parts| -> Vec<f64> {
        p.pieces.iter().flat_map(|q| [q.0, q.1]).filter(|x| x.is_finite()).collect()
    };
    let (em, en) = (ends(&pm), ends(&pn));
    let mut breaks = vec![top];
    for &(a, _) in &pm.atoms {
        breaks.extend(en.iter().map(|e| a + e));
    }
    for &(b, _) in &pn.atoms {
        breaks.extend(em.iter().map(|e| b + e));
    }
    for &e in &em {
        breaks.extend(en.iter().map(|f| e + f));
    }
    breaks.retain(|b| *b <= top);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));
    // spans carrying density: the lowest reachable point is the smallest
    // atom-plus-piece or piece-plus-piece start
    let spans: Vec<(f64, f64)> = breaks
        .windows(2)
        .map(|w| (w[0], w[1]))
        .filter(|(lo, hi)| {
            let mid = 0.5 * (lo + hi);
            sum_density(&pm, &pn, mid).map(|d| d > 0.0).unwrap_or(true)
        })
        .collect();
    let width: f64 = spans.iter().map(|s| s.1 - s.0).sum();
    let mut h = width / INITIAL_CELLS;
    // a coarse grid may miss the mass check; only the accepted grid must pass
    let level = |h: f64| -> Result<Option<GridMeasure>> {
        match grid_sum(&pm, &pn, atom0, &atoms, &spans, h) {
            Ok(g) => Ok(Some(g)),
            Err(Error::Representation(msg)) => {
                log::debug!("grid convolution at h = {h}: {msg}");
                Ok(None)
            }
            Err(e) => Err(e),
        }
    };
    let mut current = level(h)?;
    for _ in 0..MAX_REFINEMENTS {
        h /= 2.0;
        let finer = level(h)?;
        if let (Some(c), Some(f)) = (&current, &finer) {
            let change = c
                .pieces()
                .iter()
                .flat_map(|p| p.grid.iter())
                .map(|&t| (c.cdf(t) - f.cdf(t)).abs())
                .fold(0.0, f64::max);
            if change < CDF_REFINE_TOL {
                return Ok(Measure::from_grid(finer.unwrap()).with_id_star(id_star));
            }
        }
        current = finer;
    }
    match current {
        Some(g) => {
            log::warn!("classical convolution grid did not settle below {CDF_REFINE_TOL}");
            Ok(Measure::from_grid(g).with_id_star(id_star))
        }
        None => Ok(Measure::from_grid(grid_sum(&pm, &pn, atom0, &atoms, &spans, h)?).with_id_star(id_star)),
    }
}

/// Classical multiplicative convolution `μ ⊛ ν`: the law of `XY`.
pub fn conv_classical_mul(mu: &Measure, nu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() || nu.is_delta_zero() {
        return Measure::dirac(0.0);
    }
    if let Some(Family::Dirac { a }) = mu.family() {
        return nu.dilate(a);
    }
    if let Some(Family::Dirac { a }) = nu.family() {
        return mu.dilate(a);
    }
    for m in [mu, nu] {
        if m.as_transform().is_some() {
            return unsupported(format!("{} is transform-defined", m.label()));
        }
    }
    Ok(Measure::product(mu, nu))
}

fn cdf_measure(f: impl Fn(f64) -> Result<f64> + Send + Sync + 'static, label: String) -> Result<Measure> {
    Measure::from_cdf(Arc::new(f), label)
}

/// Classical max-convolution: `F = F_μ F_ν`.
pub fn conv_classical_max(mu: &Measure, nu: &Measure) -> Result<Measure> {
    if let Some(m) = max_shortcut(mu, nu) {
        return m;
    }
    let (a, b) = (mu.clone(), nu.clone());
    cdf_measure(move |t| Ok(a.cdf(t)? * b.cdf(t)?), format!("({} ∨ {})", mu.label(), nu.label()))
}

/// δ₀ is the identity of every max-convolution and point masses combine to
/// the larger one.
fn max_shortcut(mu: &Measure, nu: &Measure) -> Option<Result<Measure>> {
    if mu.is_delta_zero() {
        return Some(Ok(nu.clone()));
    }
    if nu.is_delta_zero() {
        return Some(Ok(mu.clone()));
    }
    if let (Some(Family::Dirac { a }), Some(Family::Dirac { a: b })) = (mu.family(), nu.family()) {
        return Some(Measure::dirac(a.max(b)));
    }
    None
}

/// Free max-convolution: `F = max{F_μ + F_ν − 1, 0}`.
pub fn conv_free_max(mu: &Measure, nu: &Measure) -> Result<Measure> {
    if let Some(m) = max_shortcut(mu, nu) {
        return m;
    }
    let (a, b) = (mu.clone(), nu.clone());
    cdf_measure(
        move |t| Ok((a.cdf(t)? + b.cdf(t)? - 1.0).max(0.0)),
        format!("({} □∨ {})", mu.label(), nu.label()),
    )
}

/// Boolean max-convolution: `1/F = 1/F_μ + 1/F_ν − 1`, and `F = 0` where
/// either factor vanishes.
pub fn conv_boolean_max(mu: &Measure, nu: &Measure) -> Result<Measure> {
    if let Some(m) = max_shortcut(mu, nu) {
        return m;
    }
    let (a, b) = (mu.clone(), nu.clone());
    cdf_measure(
        move |t| {
            let (f, g) = (a.cdf(t)?, b.cdf(t)?);
            Ok(if f == 0.0 || g == 0.0 { 0.0 } else { f * g / (f + g - f * g) })
        },
        format!("({} ∪∨ {})", mu.label(), nu.label()),
    )
}

/// `lim_{t↓−A} R_μ(t)` for `A ≥ A_μ`-side evaluation.
fn r_limit(mu: &Measure, a_mu: f64, left: f64) -> Result<f64> {
    if a_mu <= left {
        Ok(-1.0 + mu.atom0())
    } else {
        mu.r_transform(-left)
    }
}

/// Builds an R-defined measure from an increasing R on `(−cap, 0)` whose
/// left limit is `limit`.
fn r_defined(r: ScalarFn, cap: f64, limit: f64, label: String) -> Result<Measure> {
    let (a, atom0) = if limit < -1.0 {
        let start = if cap.is_finite() { -0.5 * cap } else { -1.0 };
        let t = solve_increasing_open(|t| r(t), -1.0, -cap, 0.0, start, 0.0)?;
        (-t, 0.0)
    } else {
        (f64::INFINITY, (1.0 + limit).min(1.0))
    };
    Ok(Measure::from_transform(TransformSpec::new(Which::R, r, -a, atom0, a, label)?))
}

/// Free additive convolution `μ ⊞ ν`, with `R = R_μ + R_ν`.
pub fn conv_free_add(mu: &Measure, nu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() {
        return Ok(nu.clone());
    }
    if nu.is_delta_zero() {
        return Ok(mu.clone());
    }
    let (a_mu, a_nu) = (mu.neg_moment()?, nu.neg_moment()?);
    let cap = a_mu.min(a_nu);
    let limit = r_limit(mu, a_mu, cap)? + r_limit(nu, a_nu, cap)?;
    let (m, n) = (mu.clone(), nu.clone());
    let r = scalar(move |t| Ok(m.r_transform(t)? + n.r_transform(t)?));
    r_defined(r, cap, limit, format!("({} ⊞ {})", mu.label(), nu.label()))
}

/// Free multiplicative convolution `μ ⊠ ν`, with `S = S_μ S_ν`.
pub fn conv_free_mul(mu: &Measure, nu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() || nu.is_delta_zero() {
        return domain("free multiplicative convolution with δ₀ is excluded");
    }
    if let Some(Family::Dirac { a }) = mu.family() {
        return nu.dilate(a);
    }
    if let Some(Family::Dirac { a }) = nu.family() {
        return mu.dilate(a);
    }
    let atom0 = mu.atom0().max(nu.atom0());
    let a = if atom0 > 0.0 { f64::INFINITY } else { mu.neg_moment()? * nu.neg_moment()? };
    let (m, n) = (mu.clone(), nu.clone());
    let s = scalar(move |u| Ok(m.s_transform(u)? * n.s_transform(u)?));
    let label = format!("({} ⊠ {})", mu.label(), nu.label());
    Ok(Measure::from_transform(TransformSpec::new(Which::S, s, -1.0 + atom0, atom0, a, label)?))
}

/// `η(−∞)` to atom at zero: `η(−∞) = 1 − 1/μ({0})`.
fn atom_from_eta_limit(limit: f64) -> f64 {
    if limit == f64::NEG_INFINITY {
        0.0
    } else {
        1.0 / (1.0 - limit)
    }
}

fn eta_limit(mu: &Measure) -> f64 {
    let a = mu.atom0();
    if a == 0.0 {
        f64::NEG_INFINITY
    } else {
        1.0 - 1.0 / a
    }
}

/// Boolean additive convolution `μ ⊎ ν`, with `η = η_μ + η_ν`.
pub fn conv_boolean_add(mu: &Measure, nu: &Measure) -> Result<Measure> {
    if mu.is_delta_zero() {
        return Ok(nu.clone());
    }
    if nu.is_delta_zero() {
        return Ok(mu.clone());
    }
    if let (Some(Family::Dirac { a }), Some(Family::Dirac { a: b })) = (mu.family(), nu.family()) {
        return Measure::dirac(a + b);
    }
    let atom0 = atom_from_eta_limit(eta_limit(mu) + eta_limit(nu));
    // 1 − η(t) ~ −t/A as t → −∞, and the 1 − η add up
    let a = if atom0 > 0.0 {
        f64::INFINITY
    } else {
        1.0 / (1.0 / mu.neg_moment()? + 1.0 / nu.neg_moment()?)
    };
    let (m, n) = (mu.clone(), nu.clone());
    let eta = scalar(move |t| Ok(m.eta(t)? + n.eta(t)?));
    let label = format!("({} ⊎ {})", mu.label(), nu.label());
    Ok(Measure::from_transform(TransformSpec::new(
        Which::Eta,
        eta,
        f64::NEG_INFINITY,
        atom0,
        a,
        label,
    )?))
}

/// `μ^{⊞t}` for `t ≥ 1`: `R = t R_μ`.
pub fn power_free_add(mu: &Measure, t: f64) -> Result<Measure> {
    if !(t >= 1.0) || !t.is_finite() {
        return domain(format!("free additive powers need t ≥ 1, got {t}"));
    }
    if t == 1.0 || mu.is_delta_zero() {
        return Ok(mu.clone());
    }
    if let Some(Family::Dirac { a }) = mu.family() {
        return Measure::dirac(t * a);
    }
    let a_mu = mu.neg_moment()?;
    let limit = t * (-1.0 + mu.atom0());
    let m = mu.clone();
    let r = scalar(move |s| Ok(t * m.r_transform(s)?));
    r_defined(r, a_mu, limit, format!("{}^⊞{t}", mu.label()))
}

/// `μ^{⊎t}` for `t ≥ 0`: `η = t η_μ`.
pub fn power_boolean_add(mu: &Measure, t: f64) -> Result<Measure> {
    if !(t >= 0.0) || !t.is_finite() {
        return domain(format!("boolean additive powers need t ≥ 0, got {t}"));
    }
    if t == 0.0 || mu.is_delta_zero() {
        return Measure::dirac(0.0);
    }
    if t == 1.0 {
        return Ok(mu.clone());
    }
    if let Some(Family::Dirac { a }) = mu.family() {
        return Measure::dirac(t * a);
    }
    let atom0 = atom_from_eta_limit(t * eta_limit(mu));
    let a = if atom0 > 0.0 { f64::INFINITY } else { mu.neg_moment()? / t };
    let m = mu.clone();
    let eta = scalar(move |s| Ok(t * m.eta(s)?));
    let label = format!("{}^⊎{t}", mu.label());
    Ok(Measure::from_transform(TransformSpec::new(
        Which::Eta,
        eta,
        f64::NEG_INFINITY,
        atom0,
        a,
        label,
    )?))
}

/// `μ^{□∨t}` for `t ≥ 1`: `F ↦ max{tF − (t − 1), 0}`.
pub fn power_free_max(mu: &Measure, t: f64) -> Result<Measure> {
    if !(t >= 1.0) || !t.is_finite() {
        return domain(format!("free max powers need t ≥ 1, got {t}"));
    }
    if t == 1.0 || mu.is_delta_zero() || matches!(mu.family(), Some(Family::Dirac { .. })) {
        return Ok(mu.clone());
    }
    let m = mu.clone();
    cdf_measure(
        move |s| Ok((t * m.cdf(s)? - (t - 1.0)).max(0.0)),
        format!("{}^□∨{t}", mu.label()),
    )
}

/// `μ^{∪∨t}` for `t > 0`: `1/F ↦ t/F − (t − 1)`.
pub fn power_boolean_max(mu: &Measure, t: f64) -> Result<Measure> {
    if !(t > 0.0) || !t.is_finite() {
        return domain(format!("boolean max powers need t > 0, got {t}"));
    }
    if t == 1.0 || mu.is_delta_zero() || matches!(mu.family(), Some(Family::Dirac { .. })) {
        return Ok(mu.clone());
    }
    let m = mu.clone();
    cdf_measure(
        move |s| {
            let f = m.cdf(s)?;
            Ok(if f == 0.0 { 0.0 } else { f / (t - (t - 1.0) * f) })
        },
        format!("{}^∪∨{t}", mu.label()),
    )
}

/// `μ^{⊠t}` for `t ≥ 1`: `S = S_μ^t`.
pub fn power_free_mul(mu: &Measure, t: f64) -> Result<Measure> {
    if !(t >= 1.0) || !t.is_finite() {
        return domain(format!("free multiplicative powers need t ≥ 1, got {t}"));
    }
    if mu.is_delta_zero() {
        return domain("free multiplicative powers of δ₀ are excluded");
    }
    if t == 1.0 {
        return Ok(mu.clone());
    }
    if let Some(Family::Dirac { a }) = mu.family() {
        return Measure::dirac(a.powf(t));
    }
    let atom0 = mu.atom0();
    let a = if atom0 > 0.0 { f64::INFINITY } else { mu.neg_moment()?.powf(t) };
    let m = mu.clone();
    let s = scalar(move |u| Ok(m.s_transform(u)?.powf(t)));
    let label = format!("{}^⊠{t}", mu.label());
    Ok(Measure::from_transform(TransformSpec::new(Which::S, s, -1.0 + atom0, atom0, a, label)?))
}

/// Binary operation selector used by the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theory {
    Classical,
    Free,
    Boolean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Mul,
    Max,
}

pub fn convolve(op: Op, theory: Theory, mu: &Measure, nu: &Measure) -> Result<Measure> {
    match (op, theory) {
        (Op::Add, Theory::Classical) => conv_classical_add(mu, nu),
        (Op::Mul, Theory::Classical) => conv_classical_mul(mu, nu),
        (Op::Max, Theory::Classical) => conv_classical_max(mu, nu),
        (Op::Add, Theory::Free) => conv_free_add(mu, nu),
        (Op::Mul, Theory::Free) => conv_free_mul(mu, nu),
        (Op::Max, Theory::Free) => conv_free_max(mu, nu),
        (Op::Add, Theory::Boolean) => conv_boolean_add(mu, nu),
        (Op::Max, Theory::Boolean) => conv_boolean_max(mu, nu),
        (Op::Mul, Theory::Boolean) => Err(Error::Unsupported(
            "multiplicative boolean convolution is not provided".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_sum_is_gamma_two() {
        let e = Measure::exponential();
        let g = conv_classical_add(&e, &e).unwrap();
        for x in [0.1f64, 1.0, 3.0, 10.0] {
            let exact = 1.0 - (-x).exp() * (1.0 + x);
            assert!((g.cdf(x).unwrap() - exact).abs() < 1e-9, "x={x}");
        }
    }

    #[test]
    fn free_add_of_mp_laws() {
        let m = Measure::mp(1.0).unwrap();
        let s = conv_free_add(&m, &m).unwrap();
        assert_eq!(s.atom0(), 0.0);
        assert!((s.neg_moment().unwrap() - 1.0).abs() < 1e-9);
        for &t in &[-0.9, -0.5, -0.1] {
            let exact = 2.0 * t / (1.0 - t);
            assert!((s.r_transform(t).unwrap() - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn boolean_max_zero_region() {
        let p = Measure::pareto(1.0).unwrap();
        let b = conv_boolean_max(&p, &Measure::exponential()).unwrap();
        assert_eq!(b.cdf(0.5).unwrap(), 0.0);
    }
}
