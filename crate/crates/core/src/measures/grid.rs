//! Atoms plus a piecewise-cubic density on a non-uniform grid.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{tanh_sinh, Tolerance, GL4_NODES, GL4_WEIGHTS};

/// Mass deviations below this are absorbed by renormalisation; larger ones
/// are rejected.
pub const RENORMALIZE_LIMIT: f64 = 1e-4;

/// A stretch of support on which the density is sampled at strictly
/// increasing abscissae. Consecutive pieces may touch, which is how jumps
/// of the density are represented.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
}

#[derive(Debug, Clone)]
struct Cell {
    x0: f64,
    h: f64,
    /// Monomial coefficients in `ξ = x − x0`.
    c: [f64; 4],
    mass: f64,
}

impl Cell {
    fn eval(&self, xi: f64) -> f64 {
        let c = &self.c;
        ((c[3] * xi + c[2]) * xi + c[1]) * xi + c[0]
    }

    fn integral_to(&self, xi: f64) -> f64 {
        let c = &self.c;
        xi * (c[0] + xi * (c[1] / 2.0 + xi * (c[2] / 3.0 + xi * c[3] / 4.0)))
    }

    /// `∫₀^h p(ξ)/(σ − ξ) dξ` exactly, for σ off the cell.
    fn cauchy_exact(&self, sigma: Complex64) -> Complex64 {
        // p(ξ) = p(σ) + (ξ − σ) q(ξ), q by synthetic division
        let c = &self.c;
        let q2 = c[3];
        let q1 = c[2] + sigma * q2;
        let q0 = c[1] + sigma * q1;
        let p_sigma = c[0] + sigma * q0;
        let h = self.h;
        let int_q = q0 * h + q1 * (h * h / 2.0) + q2 * (h * h * h / 3.0);
        let log_term = sigma.ln() - (sigma - h).ln();
        p_sigma * log_term - int_q
    }
}

/// Atom at zero, atoms on (0, ∞), and a density on finitely many pieces.
#[derive(Debug, Clone)]
pub struct GridMeasure {
    atom0: f64,
    atoms: Vec<(f64, f64)>,
    pieces: Vec<Piece>,
    cells: Vec<Cell>,
    cum: Vec<f64>,
    quad: Vec<(f64, f64)>,
    hmax: f64,
}

fn newton_to_monomial(xs: &[f64], ys: &[f64], x0: f64) -> [f64; 4] {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
        }
    }
    // Horner in Newton form, in the shifted variable
    let mut poly = [0.0f64; 4];
    poly[0] = dd[n - 1];
    for (deg, k) in (0..n - 1).rev().enumerate() {
        let r = xs[k] - x0;
        // poly ← poly·(ξ − r) + dd[k]
        let mut next = [0.0f64; 4];
        for j in 0..=deg {
            next[j + 1] += poly[j];
            next[j] -= r * poly[j];
        }
        next[0] += dd[k];
        poly = next;
    }
    poly
}

fn build_cells(piece: &Piece) -> Vec<Cell> {
    let xs = &piece.grid;
    let ys = &piece.density;
    let n = xs.len();
    let mut cells = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n - 1 {
        let x0 = xs[i];
        let h = xs[i + 1] - x0;
        let (lo, len) = match n {
            2 => (0, 2),
            3 => (0, 3),
            _ => ((i as isize - 1).clamp(0, n as isize - 4) as usize, 4),
        };
        let mut c = newton_to_monomial(&xs[lo..lo + len], &ys[lo..lo + len], x0);
        let mut cell = Cell { x0, h, c, mass: 0.0 };
        let negative = (0..=8).any(|k| cell.eval(h * k as f64 / 8.0) < 0.0);
        if negative {
            c = [ys[i], (ys[i + 1] - ys[i]) / h, 0.0, 0.0];
            cell.c = c;
        }
        cell.mass = cell.integral_to(h);
        cells.push(cell);
    }
    cells
}

impl GridMeasure {
    /// Builds and validates a grid measure, renormalising small mass
    /// deviations.
    pub fn new(atom0: f64, atoms: Vec<(f64, f64)>, pieces: Vec<Piece>) -> Result<Self> {
        let bad = |m: String| Err(Error::Representation(m));
        if !(atom0 >= 0.0 && atom0.is_finite()) {
            return bad(format!("atom at zero must be a finite mass ≥ 0, got {atom0}"));
        }
        let mut atoms: Vec<(f64, f64)> = atoms.into_iter().filter(|a| a.1 != 0.0).collect();
        for &(x, m) in &atoms {
            if !(x > 0.0 && x.is_finite()) || !(m > 0.0 && m.is_finite()) {
                return bad(format!("atom ({x}, {m}) needs location > 0 and mass > 0"));
            }
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
        for (x, m) in atoms {
            match merged.last_mut() {
                Some(last) if last.0 == x => last.1 += m,
                _ => merged.push((x, m)),
            }
        }
        let mut pieces: Vec<Piece> = pieces.into_iter().filter(|p| !p.grid.is_empty()).collect();
        pieces.sort_by(|a, b| a.grid[0].total_cmp(&b.grid[0]));
        let mut prev_end = 0.0;
        for p in &pieces {
            if p.grid.len() != p.density.len() {
                return bad("grid and density lengths differ".into());
            }
            if p.grid.len() < 2 {
                return bad("each density piece needs at least two abscissae".into());
            }
            if p.grid.windows(2).any(|w| !(w[1] > w[0])) {
                return bad("grid must be strictly increasing".into());
            }
            if p.density.iter().any(|d| !(*d >= 0.0 && d.is_finite())) {
                return bad("density samples must be finite and ≥ 0".into());
            }
            if p.grid[0] < prev_end || !p.grid[0].is_finite() {
                return bad(format!("density pieces overlap or leave [0, ∞) at {}", p.grid[0]));
            }
            prev_end = *p.grid.last().unwrap();
        }
        let mut g = GridMeasure {
            atom0,
            atoms: merged,
            pieces,
            cells: vec![],
            cum: vec![],
            quad: vec![],
            hmax: 0.0,
        };
        g.rebuild();
        let total = g.total_mass();
        if (total - 1.0).abs() > RENORMALIZE_LIMIT {
            return bad(format!("total mass {total} deviates from 1 by more than {RENORMALIZE_LIMIT}"));
        }
        if total != 1.0 {
            let k = 1.0 / total;
            g.atom0 *= k;
            for a in &mut g.atoms {
                a.1 *= k;
            }
            for p in &mut g.pieces {
                for d in &mut p.density {
                    *d *= k;
                }
            }
            g.rebuild();
        }
        Ok(g)
    }

    /// Single-piece constructor matching the JSON descriptor.
    pub fn from_samples(
        atom0: f64,
        atoms: Vec<(f64, f64)>,
        grid: Vec<f64>,
        density: Vec<f64>,
    ) -> Result<Self> {
        let pieces = if grid.is_empty() { vec![] } else { vec![Piece { grid, density }] };
        Self::new(atom0, atoms, pieces)
    }

    fn rebuild(&mut self) {
        self.cells = self.pieces.iter().flat_map(build_cells).collect();
        let mut acc = 0.0;
        self.cum = self
            .cells
            .iter()
            .map(|c| {
                let start = acc;
                acc += c.mass;
                start
            })
            .collect();
        self.hmax = self.cells.iter().fold(0.0, |m, c| m.max(c.h));
        self.quad = self
            .cells
            .iter()
            .flat_map(|c| {
                (0..4).map(move |k| {
                    let xi = 0.5 * c.h * (GL4_NODES[k] + 1.0);
                    (c.x0 + xi, 0.5 * c.h * GL4_WEIGHTS[k] * c.eval(xi))
                })
            })
            .collect();
    }

    pub fn atom0(&self) -> f64 {
        self.atom0
    }

    /// Atoms on (0, ∞).
    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn ac_mass(&self) -> f64 {
        self.cells.iter().map(|c| c.mass).sum()
    }

    fn total_mass(&self) -> f64 {
        self.atom0 + self.atoms.iter().map(|a| a.1).sum::<f64>() + self.ac_mass()
    }

    /// Break points of the density: piece ends.
    pub fn breaks(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self
            .pieces
            .iter()
            .flat_map(|p| [p.grid[0], *p.grid.last().unwrap()])
            .collect();
        b.dedup();
        b
    }

    pub fn support_min(&self) -> f64 {
        if self.atom0 > 0.0 {
            return 0.0;
        }
        let a = self.atoms.first().map(|a| a.0).unwrap_or(f64::INFINITY);
        let p = self
            .cells
            .iter()
            .find(|c| c.mass > 0.0)
            .map(|c| c.x0)
            .unwrap_or(f64::INFINITY);
        a.min(p)
    }

    pub fn support_max(&self) -> f64 {
        let a = self.atoms.last().map(|a| a.0).unwrap_or(0.0);
        let p = self
            .cells
            .iter()
            .rev()
            .find(|c| c.mass > 0.0)
            .map(|c| c.x0 + c.h)
            .unwrap_or(0.0);
        a.max(p)
    }

    /// Largest cell width.
    pub fn hmax(&self) -> f64 {
        self.hmax
    }

    fn cell_index(&self, x: f64) -> Option<usize> {
        // last cell with x0 ≤ x
        let i = self.cells.partition_point(|c| c.x0 <= x);
        if i == 0 {
            None
        } else {
            Some(i - 1)
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        match self.cell_index(x) {
            Some(i) => {
                let c = &self.cells[i];
                let xi = x - c.x0;
                if xi <= c.h {
                    c.eval(xi).max(0.0)
                } else {
                    0.0
                }
            }
            None => 0.0,
        }
    }

    fn ac_cdf(&self, t: f64) -> f64 {
        match self.cell_index(t) {
            Some(i) => {
                let c = &self.cells[i];
                let xi = t - c.x0;
                if xi >= c.h {
                    self.cum[i] + c.mass
                } else {
                    self.cum[i] + c.integral_to(xi).clamp(0.0, c.mass)
                }
            }
            None => 0.0,
        }
    }

    pub fn cdf(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        let atoms: f64 = self.atoms.iter().take_while(|a| a.0 <= t).map(|a| a.1).sum();
        (self.atom0 + atoms + self.ac_cdf(t)).clamp(0.0, 1.0)
    }

    pub fn cdf_left(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let atoms: f64 = self.atoms.iter().take_while(|a| a.0 < t).map(|a| a.1).sum();
        (self.atom0 + atoms + self.ac_cdf(t)).clamp(0.0, 1.0)
    }

    /// Generalized inverse of the CDF by bisection.
    pub fn quantile(&self, p: f64) -> f64 {
        if p <= self.atom0 {
            return 0.0;
        }
        let (mut lo, mut hi) = (0.0, self.support_max());
        if self.cdf(hi) < p {
            return hi;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.cdf(mid) >= p {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// `∫ f dμ` with four-point Gauss–Legendre on each cell.
    pub fn expect<F: FnMut(f64) -> Result<f64>>(&self, mut f: F) -> Result<f64> {
        let mut acc = 0.0;
        if self.atom0 > 0.0 {
            acc += self.atom0 * f(0.0)?;
        }
        for &(x, m) in &self.atoms {
            acc += m * f(x)?;
        }
        for &(x, w) in &self.quad {
            if w != 0.0 {
                acc += w * f(x)?;
            }
        }
        Ok(acc)
    }

    /// `∫ f dμ` where `f` may jump at the given break points; cells
    /// containing a break are split there.
    pub fn expect_with_breaks<F: FnMut(f64) -> Result<f64>>(
        &self,
        mut f: F,
        breaks: &[f64],
    ) -> Result<f64> {
        let mut acc = 0.0;
        if self.atom0 > 0.0 {
            acc += self.atom0 * f(0.0)?;
        }
        for &(x, m) in &self.atoms {
            acc += m * f(x)?;
        }
        Ok(acc + self.integrate_density_with_breaks(f, breaks)?)
    }

    /// `∫ f(x)·density(x) dx` over the absolutely continuous part only,
    /// splitting cells at `breaks`.
    pub fn integrate_density_with_breaks<F: FnMut(f64) -> Result<f64>>(
        &self,
        mut f: F,
        breaks: &[f64],
    ) -> Result<f64> {
        let mut acc = 0.0;
        let mut sorted: Vec<f64> = breaks.to_vec();
        sorted.sort_by(f64::total_cmp);
        for (ci, c) in self.cells.iter().enumerate() {
            let lo = sorted.partition_point(|&b| b <= c.x0);
            let hi = sorted.partition_point(|&b| b < c.x0 + c.h);
            if lo >= hi {
                for k in 0..4 {
                    let (x, w) = self.quad[4 * ci + k];
                    if w != 0.0 {
                        acc += w * f(x)?;
                    }
                }
                continue;
            }
            let mut edges = vec![0.0];
            edges.extend(sorted[lo..hi].iter().map(|b| b - c.x0));
            edges.push(c.h);
            for w in edges.windows(2) {
                let (a, b) = (w[0], w[1]);
                if b <= a {
                    continue;
                }
                for k in 0..4 {
                    let xi = a + 0.5 * (b - a) * (GL4_NODES[k] + 1.0);
                    let wt = 0.5 * (b - a) * GL4_WEIGHTS[k] * c.eval(xi);
                    if wt != 0.0 {
                        acc += wt * f(c.x0 + xi)?;
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Cauchy transform at any point off the support; exact on the
    /// piecewise-cubic density near the evaluation point.
    pub fn cauchy_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        if self.atom0 > 0.0 {
            acc += self.atom0 / z;
        }
        for &(x, m) in &self.atoms {
            acc += m / (z - x);
        }
        for c in &self.cells {
            if c.mass == 0.0 && c.c.iter().all(|v| *v == 0.0) {
                continue;
            }
            let sigma = z - c.x0;
            let near = (sigma - 0.5 * c.h).norm() < 20.0 * c.h;
            if near {
                acc += c.cauchy_exact(sigma);
            } else {
                for k in 0..4 {
                    let xi = 0.5 * c.h * (GL4_NODES[k] + 1.0);
                    let w = 0.5 * c.h * GL4_WEIGHTS[k] * c.eval(xi);
                    acc += w / (sigma - xi);
                }
            }
        }
        acc
    }

    pub fn cauchy(&self, s: f64) -> f64 {
        self.cauchy_complex(Complex64::new(s, 0.0)).re
    }

    /// `∫ e^{sx} dμ` for `s ≤ 0`, subdividing cells where `e^{sx}` varies
    /// quickly and stopping once the remaining contribution is negligible.
    pub fn laplace(&self, s: f64) -> f64 {
        let mut acc = self.atom0;
        for &(x, m) in &self.atoms {
            acc += m * (s * x).exp();
        }
        let mut ac = 0.0;
        let total_ac = self.ac_mass();
        for (i, c) in self.cells.iter().enumerate() {
            let decay = (s * c.x0).exp();
            let remaining = total_ac - self.cum[i];
            if decay * remaining < 1e-18 * (acc + ac).abs() || decay == 0.0 {
                break;
            }
            let parts = ((s.abs() * c.h / 0.5).ceil() as usize).max(1);
            let w = c.h / parts as f64;
            for j in 0..parts {
                let a = j as f64 * w;
                for k in 0..4 {
                    let xi = a + 0.5 * w * (GL4_NODES[k] + 1.0);
                    ac += 0.5 * w * GL4_WEIGHTS[k] * c.eval(xi) * (s * (c.x0 + xi)).exp();
                }
            }
        }
        acc + ac
    }

    /// `∫_{(0,∞)} x^t dμ`. Cells touching zero are integrated by tanh-sinh
    /// so that negative `t` is handled.
    pub fn mellin(&self, t: f64) -> Result<f64> {
        let mut acc: f64 = self.atoms.iter().map(|&(x, m)| m * x.powf(t)).sum();
        for (i, c) in self.cells.iter().enumerate() {
            if c.x0 == 0.0 {
                if t <= -1.0 && c.c[0] > 1e-12 {
                    return Err(Error::Domain(format!(
                        "Mellin transform of this grid diverges at t = {t}"
                    )));
                }
                acc += tanh_sinh(|x| Ok(c.eval(x) * x.powf(t)), 0.0, c.h, Tolerance::default())?;
            } else {
                for k in 0..4 {
                    let (x, w) = self.quad[4 * i + k];
                    acc += w * x.powf(t);
                }
            }
        }
        Ok(acc)
    }

    /// `∫ x^{-1} dμ`, infinite when there is mass at or density up to zero.
    pub fn neg_moment(&self) -> f64 {
        if self.atom0 > 0.0 {
            return f64::INFINITY;
        }
        let scale = self.pieces.iter().flat_map(|p| p.density.iter()).fold(0.0f64, |m, d| m.max(*d));
        let mut acc: f64 = self.atoms.iter().map(|&(x, m)| m / x).sum();
        for c in &self.cells {
            if c.x0 == 0.0 {
                if c.c[0] > 1e-10 * scale {
                    return f64::INFINITY;
                }
                let h = c.h;
                acc += c.c[1] * h + c.c[2] * h * h / 2.0 + c.c[3] * h * h * h / 3.0;
            } else if c.x0 < 20.0 * c.h {
                acc -= c.cauchy_exact(Complex64::new(-c.x0, 0.0)).re;
            } else {
                for k in 0..4 {
                    let xi = 0.5 * c.h * (GL4_NODES[k] + 1.0);
                    acc += 0.5 * c.h * GL4_WEIGHTS[k] * c.eval(xi) / (c.x0 + xi);
                }
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exponential_grid(h: f64, xmax: f64) -> GridMeasure {
        let n = (xmax / h) as usize;
        let grid: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
        let density = grid.iter().map(|x| (-x).exp()).collect();
        GridMeasure::from_samples(0.0, vec![], grid, density).unwrap()
    }

    #[test]
    fn cubic_cells_reproduce_smooth_integrals() {
        let g = exponential_grid(1.0 / 64.0, 40.0);
        assert!((g.cdf(1.0) - (1.0 - (-1.0f64).exp())).abs() < 1e-9);
        let mean = g.expect(Ok).unwrap();
        assert!((mean - 1.0).abs() < 1e-9, "{mean}");
        assert!((g.laplace(-2.0) - 1.0 / 3.0).abs() < 1e-9);
        assert!((g.laplace(-500.0) - 1.0 / 501.0).abs() < 1e-9);
        assert!((g.cauchy(-1.0) - g.expect(|x| Ok(1.0 / (-1.0 - x))).unwrap()).abs() < 1e-10);
        assert!(g.neg_moment().is_infinite());
        assert!((g.quantile(0.5) - 2f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn exact_cauchy_near_the_axis() {
        // uniform density: G(z) = log(z/(z−1))
        let g = GridMeasure::from_samples(0.0, vec![], vec![0.0, 0.5, 1.0], vec![1.0; 3]).unwrap();
        let z = Complex64::new(0.3, 1e-6);
        let exact = z.ln() - (z - 1.0).ln();
        assert!((g.cauchy_complex(z) - exact).norm() < 1e-12);
    }

    #[test]
    fn renormalizes_small_errors_and_rejects_large_ones() {
        let g = GridMeasure::from_samples(0.5, vec![], vec![0.0, 1.0], vec![0.50002, 0.50002]);
        let g = g.unwrap();
        assert!((g.cdf(1.0) - 1.0).abs() < 1e-15);
        let bad = GridMeasure::from_samples(0.5, vec![], vec![0.0, 1.0], vec![0.6, 0.6]);
        assert!(matches!(bad, Err(Error::Representation(_))));
        let bad = GridMeasure::from_samples(0.0, vec![], vec![0.0, 0.0], vec![1.0, 1.0]);
        assert!(bad.is_err());
    }

    #[test]
    fn atoms_are_right_continuous() {
        let g = GridMeasure::new(0.25, vec![(1.0, 0.5), (2.0, 0.25)], vec![]).unwrap();
        assert_eq!(g.cdf(0.0), 0.25);
        assert_eq!(g.cdf(1.0), 0.75);
        assert_eq!(g.cdf_left(1.0), 0.25);
        assert_eq!(g.quantile(0.6), 1.0);
        assert!((g.neg_moment()).is_infinite());
    }
}
