use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Which transform a [`TransformSpec`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    R,
    S,
    Psi,
    Eta,
    CumulantC,
}

pub type ScalarFn = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// A measure known only through one transform on an interval of the
/// negative axis.
#[derive(Clone)]
pub struct TransformSpec {
    pub which: Which,
    pub eval: ScalarFn,
    /// Left end of the domain of `eval`; the right end is always 0.
    pub domain_left: f64,
    pub atom0: f64,
    /// `A_μ ∈ (0, ∞]`.
    pub neg_moment: f64,
    pub label: String,
}

impl fmt::Debug for TransformSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TransformSpec")
            .field("which", &self.which)
            .field("domain_left", &self.domain_left)
            .field("atom0", &self.atom0)
            .field("neg_moment", &self.neg_moment)
            .field("label", &self.label)
            .finish()
    }
}

impl TransformSpec {
    /// Validates the metadata and checks strict monotonicity of `eval` on a
    /// probe grid (increasing for R, ψ, η, C; decreasing for S).
    pub fn new(
        which: Which,
        eval: ScalarFn,
        domain_left: f64,
        atom0: f64,
        neg_moment: f64,
        label: impl Into<String>,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&atom0) {
            return Err(Error::Representation(format!("atom0 {atom0} outside [0, 1]")));
        }
        if !(neg_moment > 0.0) {
            return Err(Error::Representation(format!("A must lie in (0, ∞], got {neg_moment}")));
        }
        if !(domain_left < 0.0) {
            return Err(Error::Representation(format!(
                "domain left end must be negative, got {domain_left}"
            )));
        }
        let spec = TransformSpec { which, eval, domain_left, atom0, neg_moment, label: label.into() };
        spec.check_monotone()?;
        Ok(spec)
    }

    /// Probe points in increasing order.
    fn probes(&self) -> Vec<f64> {
        let lo = self.domain_left;
        if lo.is_infinite() {
            (-4..=4).rev().map(|k| -(2f64.powi(2 * k))).collect()
        } else {
            (1..16).map(|k| lo * (1.0 - k as f64 / 16.0)).collect()
        }
    }

    fn check_monotone(&self) -> Result<()> {
        let mut values = Vec::new();
        for t in self.probes() {
            let v = (self.eval)(t)?;
            if !v.is_finite() {
                return Err(Error::Representation(format!(
                    "{}: non-finite value {v} at probe {t}",
                    self.label
                )));
            }
            values.push((t, v));
        }
        // constant transforms belong to point masses and are accepted as such
        if values.iter().all(|(_, v)| *v == values[0].1) {
            return Ok(());
        }
        for w in values.windows(2) {
            let ((t0, v0), (t1, v1)) = (w[0], w[1]);
            let ok = match self.which {
                Which::S => v1 < v0,
                _ => v1 > v0,
            };
            if !ok {
                return Err(Error::Representation(format!(
                    "{}: transform is not strictly monotone between {t0} and {t1}",
                    self.label
                )));
            }
        }
        Ok(())
    }

    pub fn call(&self, t: f64) -> Result<f64> {
        (self.eval)(t)
    }
}
