//! Probability measures on [0, ∞).
//!
//! A [`Measure`] is an immutable, cheaply clonable handle. Besides the three
//! basic kinds (catalog family, grid, transform-defined) there are explicit
//! CDFs, finite mixtures, and lazy push-forwards (`x ↦ x^c`, `x ↦ cx`,
//! products of independent factors), each answering whatever it can derive
//! from its parents.

pub mod family;
pub mod grid;
pub mod parse;
pub mod spec;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{domain, unsupported, Error, Result};
use crate::quad::{exp_sinh, tanh_sinh, Tolerance};

pub use family::Family;
pub use grid::{GridMeasure, Piece};
pub use spec::{ScalarFn, TransformSpec, Which};

/// A fallible CDF.
pub type CdfFn = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// Tolerance used for expectations of closed-form densities.
pub(crate) const EXPECT_TOL: Tolerance = Tolerance { abs: 0.0, rel: 1e-13 };

#[derive(Clone)]
pub(crate) struct CdfMeasure {
    pub cdf: CdfFn,
    pub label: String,
}

#[derive(Clone)]
pub(crate) enum Repr {
    Catalog(Family),
    Grid(GridMeasure),
    Transform(TransformSpec),
    Cdf(CdfMeasure),
    Mixture(Vec<(f64, Measure)>),
    Power { base: Measure, c: f64 },
    Dilation { base: Measure, c: f64 },
    Product(Measure, Measure),
}

/// Coarse classification of a measure's representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Catalog,
    Grid,
    TransformDefined,
    Cdf,
    Mixture,
    Power,
    Dilation,
    Product,
}

#[derive(Default)]
pub(crate) struct Cache {
    pub neg_moment: OnceLock<f64>,
}

#[derive(Clone)]
pub struct Measure {
    pub(crate) repr: Arc<Repr>,
    atom0: f64,
    id_star: Option<bool>,
    pub(crate) cache: Arc<Cache>,
}

impl fmt::Debug for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Measure({})", self.label())
    }
}

fn uniform01(rng: &mut ChaCha8Rng) -> f64 {
    // (0, 1), never hitting either end
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

impl Measure {
    fn wrap(repr: Repr, atom0: f64, id_star: Option<bool>) -> Measure {
        Measure {
            repr: Arc::new(repr),
            atom0: atom0.clamp(0.0, 1.0),
            id_star,
            cache: Arc::new(Cache::default()),
        }
    }

    /// A catalog family; parameters are validated.
    pub fn catalog(family: Family) -> Result<Measure> {
        family.validate()?;
        Ok(Self::wrap(Repr::Catalog(family), family.atom0(), family.id_star()))
    }

    pub fn dirac(a: f64) -> Result<Measure> {
        Self::catalog(Family::Dirac { a })
    }
    pub fn uniform01() -> Measure {
        Self::catalog(Family::Uniform01).expect("valid")
    }
    pub fn exponential() -> Measure {
        Self::catalog(Family::Exponential).expect("valid")
    }
    pub fn poisson(lambda: f64) -> Result<Measure> {
        Self::catalog(Family::Poisson { lambda })
    }
    pub fn mp(lambda: f64) -> Result<Measure> {
        Self::catalog(Family::Mp { lambda })
    }
    pub fn semicircle(m: f64, v: f64) -> Result<Measure> {
        Self::catalog(Family::Semicircle { m, v })
    }
    pub fn free_stable(alpha: f64) -> Result<Measure> {
        Self::catalog(Family::FreeStable { alpha })
    }
    pub fn boolean_stable(alpha: f64) -> Result<Measure> {
        Self::catalog(Family::BooleanStable { alpha })
    }
    pub fn classical_stable(alpha: f64) -> Result<Measure> {
        Self::catalog(Family::ClassicalStable { alpha })
    }
    pub fn pareto(alpha: f64) -> Result<Measure> {
        Self::catalog(Family::Pareto { alpha })
    }
    pub fn dagum(alpha: f64) -> Result<Measure> {
        Self::catalog(Family::Dagum { alpha })
    }
    pub fn frechet(alpha: f64) -> Result<Measure> {
        Self::catalog(Family::Frechet { alpha })
    }

    pub fn from_grid(grid: GridMeasure) -> Measure {
        let a0 = grid.atom0();
        Self::wrap(Repr::Grid(grid), a0, None)
    }

    pub fn from_transform(spec: TransformSpec) -> Measure {
        let a0 = spec.atom0;
        Self::wrap(Repr::Transform(spec), a0, None)
    }

    /// A measure given by its (right-continuous) CDF. `F(0)` is the atom at
    /// zero.
    pub fn from_cdf(cdf: CdfFn, label: impl Into<String>) -> Result<Measure> {
        let a0 = cdf(0.0)?;
        if !(0.0..=1.0).contains(&a0) {
            return Err(Error::Representation(format!("CDF at 0 is {a0}, outside [0, 1]")));
        }
        Ok(Self::wrap(Repr::Cdf(CdfMeasure { cdf, label: label.into() }), a0, None))
    }

    /// Convex combination `Σ wᵢ μᵢ`; weights must be non-negative and sum
    /// to one.
    pub fn mixture(parts: Vec<(f64, Measure)>) -> Result<Measure> {
        let total: f64 = parts.iter().map(|p| p.0).sum();
        if parts.is_empty() || parts.iter().any(|p| !(p.0 >= 0.0)) || (total - 1.0).abs() > 1e-12 {
            return domain(format!("mixture weights must be ≥ 0 and sum to 1, got sum {total}"));
        }
        let parts: Vec<(f64, Measure)> = parts.into_iter().filter(|p| p.0 > 0.0).collect();
        if parts.len() == 1 {
            return Ok(parts[0].1.clone());
        }
        let a0 = parts.iter().map(|(w, m)| w * m.atom0()).sum();
        Ok(Self::wrap(Repr::Mixture(parts), a0, None))
    }

    /// `(1 − p)·μ + p·δ₀`.
    pub fn with_atom_at_zero(&self, p: f64) -> Result<Measure> {
        if !(0.0..=1.0).contains(&p) {
            return domain(format!("mass at zero must lie in [0, 1], got {p}"));
        }
        Self::mixture(vec![(1.0 - p, self.clone()), (p, Measure::dirac(0.0)?)])
    }

    /// Push-forward `P_c` under `x ↦ x^c`.
    pub fn power(&self, c: f64) -> Result<Measure> {
        if c == 0.0 || !c.is_finite() {
            return domain(format!("power exponent must be finite and non-zero, got {c}"));
        }
        if c < 0.0 && self.atom0 > 0.0 {
            return domain("mass at 0 maps to infinity under a negative power");
        }
        if c == 1.0 {
            return Ok(self.clone());
        }
        match &*self.repr {
            Repr::Catalog(Family::Dirac { a }) => return Measure::dirac(a.powf(c)),
            Repr::Power { base, c: d } => return base.power(c * d),
            _ => {}
        }
        Ok(Self::wrap(Repr::Power { base: self.clone(), c }, self.atom0, None))
    }

    /// Dilation `D_c` under `x ↦ cx`.
    pub fn dilate(&self, c: f64) -> Result<Measure> {
        if !(c >= 0.0) || !c.is_finite() {
            return domain(format!("dilation factor must be ≥ 0, got {c}"));
        }
        if c == 0.0 {
            return Measure::dirac(0.0);
        }
        if c == 1.0 {
            return Ok(self.clone());
        }
        match &*self.repr {
            Repr::Catalog(Family::Dirac { a }) => return Measure::dirac(a * c),
            Repr::Dilation { base, c: d } => return base.dilate(c * d),
            _ => {}
        }
        Ok(Self::wrap(Repr::Dilation { base: self.clone(), c }, self.atom0, self.id_star))
    }

    /// Law of `XY` for independent `X ~ μ`, `Y ~ ν`.
    pub(crate) fn product(mu: &Measure, nu: &Measure) -> Measure {
        let a0 = 1.0 - (1.0 - mu.atom0) * (1.0 - nu.atom0);
        Self::wrap(Repr::Product(mu.clone(), nu.clone()), a0, None)
    }

    pub(crate) fn with_id_star(mut self, flag: Option<bool>) -> Measure {
        self.id_star = flag;
        self
    }

    pub fn atom0(&self) -> f64 {
        self.atom0
    }

    /// Catalog-asserted membership in ID(ℝ₊, ∗).
    pub fn id_star(&self) -> Option<bool> {
        self.id_star
    }

    pub fn kind(&self) -> Kind {
        match &*self.repr {
            Repr::Catalog(_) => Kind::Catalog,
            Repr::Grid(_) => Kind::Grid,
            Repr::Transform(_) => Kind::TransformDefined,
            Repr::Cdf(_) => Kind::Cdf,
            Repr::Mixture(_) => Kind::Mixture,
            Repr::Power { .. } => Kind::Power,
            Repr::Dilation { .. } => Kind::Dilation,
            Repr::Product(..) => Kind::Product,
        }
    }

    pub fn family(&self) -> Option<Family> {
        match &*self.repr {
            Repr::Catalog(f) => Some(*f),
            _ => None,
        }
    }

    pub fn as_grid(&self) -> Option<&GridMeasure> {
        match &*self.repr {
            Repr::Grid(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_transform(&self) -> Option<&TransformSpec> {
        match &*self.repr {
            Repr::Transform(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_delta_zero(&self) -> bool {
        self.atom0 == 1.0
    }

    /// Human-readable description of how the measure was built.
    pub fn label(&self) -> String {
        match &*self.repr {
            Repr::Catalog(f) => {
                let params: Vec<String> =
                    f.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
                if params.is_empty() {
                    f.name().to_string()
                } else {
                    format!("{}:{}", f.name(), params.join(","))
                }
            }
            Repr::Grid(g) => format!(
                "grid[{} pieces, {} atoms]",
                g.pieces().len(),
                g.atoms().len() + usize::from(g.atom0() > 0.0)
            ),
            Repr::Transform(s) => s.label.clone(),
            Repr::Cdf(c) => c.label.clone(),
            Repr::Mixture(parts) => {
                let p: Vec<String> =
                    parts.iter().map(|(w, m)| format!("{w}·{}", m.label())).collect();
                format!("({})", p.join(" + "))
            }
            Repr::Power { base, c } => format!("P_{c}({})", base.label()),
            Repr::Dilation { base, c } => format!("D_{c}({})", base.label()),
            Repr::Product(a, b) => format!("({} ⊛ {})", a.label(), b.label()),
        }
    }

    /// Whether `expect` can integrate arbitrary functions against μ.
    pub fn expectable(&self) -> bool {
        match &*self.repr {
            Repr::Catalog(f) => f.expectable(),
            Repr::Grid(_) => true,
            Repr::Transform(_) | Repr::Cdf(_) => false,
            Repr::Mixture(parts) => parts.iter().all(|p| p.1.expectable()),
            Repr::Power { base, .. } | Repr::Dilation { base, .. } => base.expectable(),
            Repr::Product(a, b) => a.expectable() && b.expectable(),
        }
    }

    /// `∫ f dμ`, including `f(0)·μ({0})`.
    pub fn expect(&self, f: &dyn Fn(f64) -> Result<f64>) -> Result<f64> {
        self.expect_tol(f, EXPECT_TOL)
    }

    pub fn expect_tol(&self, f: &dyn Fn(f64) -> Result<f64>, tol: Tolerance) -> Result<f64> {
        match &*self.repr {
            Repr::Catalog(fam) => {
                if !fam.expectable() {
                    return unsupported(format!("{} has no density to integrate against", fam.name()));
                }
                let mut acc = 0.0;
                for (x, m) in fam.atoms() {
                    acc += m * f(x)?;
                }
                for (lo, hi) in fam.pieces() {
                    let g = |x: f64| -> Result<f64> {
                        let d = fam.density(x).unwrap_or(0.0);
                        if d == 0.0 {
                            Ok(0.0)
                        } else {
                            Ok(d * f(x)?)
                        }
                    };
                    acc += if hi.is_finite() {
                        tanh_sinh(g, lo, hi, tol)?
                    } else {
                        exp_sinh(g, lo, 1.0, tol)?
                    };
                }
                Ok(acc)
            }
            Repr::Grid(g) => g.expect(f),
            Repr::Transform(s) => unsupported(format!("{} is known only through a transform", s.label)),
            Repr::Cdf(c) => unsupported(format!("{} is known only through its CDF", c.label)),
            Repr::Mixture(parts) => {
                let mut acc = 0.0;
                for (w, m) in parts {
                    acc += w * m.expect_tol(f, tol)?;
                }
                Ok(acc)
            }
            Repr::Power { base, c } => {
                let c = *c;
                base.expect_tol(&|x| f(if x == 0.0 { 0.0 } else { x.powf(c) }), tol)
            }
            Repr::Dilation { base, c } => {
                let c = *c;
                base.expect_tol(&|x| f(c * x), tol)
            }
            Repr::Product(a, b) => {
                b.expect_tol(&|y| a.expect_tol(&|x| f(x * y), tol), tol)
            }
        }
    }

    /// All atoms with their masses, including the one at zero, when the
    /// representation exposes them.
    pub fn atoms(&self) -> Vec<(f64, f64)> {
        let mut out = match &*self.repr {
            Repr::Catalog(f) => f.atoms(),
            Repr::Grid(g) => {
                let mut v = vec![(0.0, g.atom0())];
                v.extend_from_slice(g.atoms());
                v
            }
            Repr::Transform(_) | Repr::Cdf(_) => vec![(0.0, self.atom0)],
            Repr::Mixture(parts) => parts
                .iter()
                .flat_map(|(w, m)| m.atoms().into_iter().map(move |(x, p)| (x, w * p)))
                .collect(),
            Repr::Power { base, c } => base
                .atoms()
                .into_iter()
                .map(|(x, p)| (if x == 0.0 { 0.0 } else { x.powf(*c) }, p))
                .collect(),
            Repr::Dilation { base, c } => {
                base.atoms().into_iter().map(|(x, p)| (c * x, p)).collect()
            }
            Repr::Product(a, b) => {
                let mut v = vec![(0.0, self.atom0)];
                for (x, p) in a.atoms() {
                    for (y, q) in b.atoms() {
                        if x > 0.0 && y > 0.0 {
                            v.push((x * y, p * q));
                        }
                    }
                }
                v
            }
        };
        out.retain(|a| a.1 > 0.0);
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(out.len());
        for (x, m) in out {
            match merged.last_mut() {
                Some(last) if last.0 == x => last.1 += m,
                _ => merged.push((x, m)),
            }
        }
        merged
    }

    fn mass_at(&self, t: f64) -> f64 {
        if let Repr::Cdf(c) = &*self.repr {
            let left = t - (t.abs() * 1e-13).max(1e-300);
            let a = (c.cdf)(t).unwrap_or(0.0);
            let b = if left < 0.0 { 0.0 } else { (c.cdf)(left).unwrap_or(0.0) };
            return (a - b).max(0.0);
        }
        self.atoms().iter().filter(|a| a.0 == t).map(|a| a.1).sum()
    }

    /// `μ([0, t])`.
    pub fn cdf(&self, t: f64) -> Result<f64> {
        if t < 0.0 || t.is_nan() {
            return domain(format!("CDF argument must be ≥ 0, got {t}"));
        }
        Ok(self.cdf_raw(t)?.clamp(0.0, 1.0))
    }

    /// `μ([0, t))`.
    pub fn cdf_left(&self, t: f64) -> Result<f64> {
        if t <= 0.0 {
            return Ok(0.0);
        }
        if let Repr::Grid(g) = &*self.repr {
            return Ok(g.cdf_left(t));
        }
        Ok((self.cdf(t)? - self.mass_at(t)).clamp(0.0, 1.0))
    }

    fn cdf_raw(&self, t: f64) -> Result<f64> {
        if t.is_infinite() {
            return Ok(1.0);
        }
        match &*self.repr {
            Repr::Catalog(f) => match f.cdf(t) {
                Some(v) => Ok(v),
                None => unsupported(format!("{} has no CDF rule", f.name())),
            },
            Repr::Grid(g) => Ok(g.cdf(t)),
            Repr::Transform(s) => unsupported(format!(
                "{} is transform-defined and has no CDF rule",
                s.label
            )),
            Repr::Cdf(c) => (c.cdf)(t),
            Repr::Mixture(parts) => {
                let mut acc = 0.0;
                for (w, m) in parts {
                    acc += w * m.cdf(t)?;
                }
                Ok(acc)
            }
            Repr::Power { base, c } => {
                if *c > 0.0 {
                    base.cdf(t.powf(1.0 / c))
                } else if t == 0.0 {
                    Ok(0.0)
                } else {
                    Ok(1.0 - base.cdf_left(t.powf(1.0 / c))?)
                }
            }
            Repr::Dilation { base, c } => base.cdf(t / c),
            Repr::Product(a, b) => {
                let (x, y) = product_roles(a, b)?;
                if t == 0.0 {
                    return Ok(self.atom0);
                }
                y.expect(&|v| if v == 0.0 { Ok(1.0) } else { x.cdf(t / v) })
            }
        }
    }

    /// Generalized inverse: the smallest `t` with `μ([0,t]) ≥ p`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&p) {
            return domain(format!("quantile level must lie in [0, 1), got {p}"));
        }
        match &*self.repr {
            Repr::Catalog(f) => {
                if let Some(q) = f.quantile(p) {
                    return Ok(q);
                }
            }
            Repr::Grid(g) => return Ok(g.quantile(p)),
            Repr::Power { base, c } if *c > 0.0 => return Ok(base.quantile(p)?.powf(*c)),
            Repr::Dilation { base, c } => return Ok(c * base.quantile(p)?),
            _ => {}
        }
        self.quantile_bisect(p)
    }

    fn quantile_bisect(&self, p: f64) -> Result<f64> {
        if p <= self.atom0 {
            return Ok(0.0);
        }
        let mut hi = 1.0;
        let mut lo = 0.0;
        let mut k = 0;
        while self.cdf(hi)? < p {
            lo = hi;
            hi *= 2.0;
            k += 1;
            if k > 1100 || !hi.is_finite() {
                return Err(Error::Convergence(format!("no finite quantile at level {p}")));
            }
        }
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.cdf(mid)? >= p {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }

    /// Density of the absolutely continuous part.
    pub fn density(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return domain(format!("density argument must be > 0, got {x}"));
        }
        match &*self.repr {
            Repr::Catalog(f) => match f.density(x) {
                Some(v) => Ok(v),
                None => unsupported(format!("{} has no registered density", f.name())),
            },
            Repr::Grid(g) => Ok(g.density(x)),
            Repr::Mixture(parts) => {
                let mut acc = 0.0;
                for (w, m) in parts {
                    if m.is_delta_zero() {
                        continue;
                    }
                    acc += w * m.density(x)?;
                }
                Ok(acc)
            }
            Repr::Power { base, c } => {
                let y = x.powf(1.0 / c);
                Ok(base.density(y)? * (y / x / c).abs())
            }
            Repr::Dilation { base, c } => Ok(base.density(x / c)? / c),
            Repr::Product(a, b) => {
                let (xm, ym) = product_roles(a, b)?;
                ym.expect(&|v| if v == 0.0 { Ok(0.0) } else { Ok(xm.density(x / v)? / v) })
            }
            Repr::Transform(_) | Repr::Cdf(_) => {
                unsupported(format!("{} has no density rule", self.label()))
            }
        }
    }

    /// Whether [`Measure::sample`] is available.
    pub fn samplable(&self) -> bool {
        match &*self.repr {
            Repr::Catalog(f) => !matches!(f, Family::FreeStable { .. }),
            Repr::Grid(_) | Repr::Cdf(_) => true,
            Repr::Transform(_) => false,
            Repr::Mixture(parts) => parts.iter().all(|p| p.1.samplable()),
            Repr::Power { base, .. } | Repr::Dilation { base, .. } => base.samplable(),
            Repr::Product(a, b) => a.samplable() && b.samplable(),
        }
    }

    fn sample_one(&self, rng: &mut ChaCha8Rng) -> Result<f64> {
        match &*self.repr {
            Repr::Catalog(Family::ClassicalStable { alpha }) if *alpha != 0.5 => {
                Ok(kanter(*alpha, rng))
            }
            Repr::Catalog(Family::FreeStable { .. }) | Repr::Transform(_) => {
                unsupported(format!("{} has no sampling rule", self.label()))
            }
            Repr::Mixture(parts) => {
                let u = uniform01(rng);
                let mut acc = 0.0;
                for (w, m) in parts {
                    acc += w;
                    if u < acc {
                        return m.sample_one(rng);
                    }
                }
                parts.last().expect("non-empty").1.sample_one(rng)
            }
            Repr::Power { base, c } => {
                let x = base.sample_one(rng)?;
                Ok(if x == 0.0 { 0.0 } else { x.powf(*c) })
            }
            Repr::Dilation { base, c } => Ok(c * base.sample_one(rng)?),
            Repr::Product(a, b) => Ok(a.sample_one(rng)? * b.sample_one(rng)?),
            _ => self.quantile(uniform01(rng).min(1.0 - f64::EPSILON)),
        }
    }

    /// `n` independent draws. Draw `i` uses its own ChaCha stream, so the
    /// output depends only on `(seed, n)`, not on the thread count.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        if !self.samplable() {
            return unsupported(format!("{} has no sampling rule", self.label()));
        }
        (0..n)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                self.sample_one(&mut rng)
            })
            .collect()
    }

    /// JSON descriptor (catalog and grid measures round-trip through
    /// [`parse::parse_json`]).
    pub fn descriptor(&self) -> serde_json::Value {
        parse::descriptor(self)
    }
}

/// Picks which factor of a product supplies the CDF/density (`x`) and which
/// is integrated over (`y`).
pub(crate) fn product_roles<'a>(a: &'a Measure, b: &'a Measure) -> Result<(&'a Measure, &'a Measure)> {
    let has_cdf = |m: &Measure| match &*m.repr {
        Repr::Catalog(f) => f.cdf(1.0).is_some(),
        Repr::Transform(_) => false,
        _ => true,
    };
    if b.expectable() && has_cdf(a) {
        Ok((a, b))
    } else if a.expectable() && has_cdf(b) {
        Ok((b, a))
    } else {
        unsupported(format!(
            "product {} ⊛ {} needs one factor with a CDF and the other integrable",
            a.label(),
            b.label()
        ))
    }
}

/// Kanter's representation of the positive α-stable law with Laplace
/// transform `exp(−s^α)`.
fn kanter(alpha: f64, rng: &mut ChaCha8Rng) -> f64 {
    use std::f64::consts::PI;
    let u = uniform01(rng);
    let e = -uniform01(rng).ln();
    let a = (alpha * PI * u).sin().powf(alpha / (1.0 - alpha)) * ((1.0 - alpha) * PI * u).sin()
        / (PI * u).sin().powf(1.0 / (1.0 - alpha));
    (a / e).powf((1.0 - alpha) / alpha)
}
