//! Named suites of numerical checks. Each check compares two independently
//! computed sides of an identity over a grid of probe points and records the
//! sup-distance against a tolerance.

mod suites;

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::write_csv;

pub use suites::SUITES;

/// Tolerance for checks between closed forms.
pub const TOL_CLOSED: f64 = 1e-9;
/// Tolerance for checks where one side comes from quadrature.
pub const TOL_QUADRATURE: f64 = 1e-7;
/// Tolerance for checks against the subordination oracle.
pub const TOL_ORACLE: f64 = 1e-4;

/// How the measured value is compared with the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Passes when the value is at most the tolerance.
    #[default]
    AtMost,
    /// Passes when the value exceeds the threshold (separation checks).
    Exceeds,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// `None` when the check could not be evaluated.
    pub sup_error: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    #[serde(default)]
    pub comparison: Comparison,
    /// How each side was computed.
    #[serde(default)]
    pub lhs: String,
    #[serde(default)]
    pub rhs: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub series: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// One `t,lhs,rhs` CSV per check that produced a series.
    pub fn write_artifacts(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
        for c in self.checks.iter().filter(|c| !c.series.is_empty()) {
            let name = format!("{}__{}.csv", self.suite, c.id.replace(['/', ' ', '='], "_"));
            let rows: Vec<Vec<f64>> = c.series.iter().map(|r| r.to_vec()).collect();
            write_csv(&dir.join(name), &["t", "lhs", "rhs"], &rows)?;
        }
        Ok(())
    }
}

/// Result of evaluating one check.
pub(crate) struct Outcome {
    pub value: f64,
    pub series: Vec<[f64; 3]>,
}

type Runner = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

pub(crate) struct Case {
    id: String,
    tol: f64,
    comparison: Comparison,
    lhs: String,
    rhs: String,
    run: Runner,
}

impl Case {
    pub fn new(
        id: impl Into<String>,
        tol: f64,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
        run: impl Fn() -> Result<Outcome> + Send + Sync + 'static,
    ) -> Case {
        Case {
            id: id.into(),
            tol,
            comparison: Comparison::AtMost,
            lhs: lhs.into(),
            rhs: rhs.into(),
            run: Box::new(run),
        }
    }

    pub fn exceeds(mut self) -> Case {
        self.comparison = Comparison::Exceeds;
        self
    }

    fn evaluate(&self, tol_override: Option<f64>) -> Check {
        let tol = match (self.comparison, tol_override) {
            (Comparison::AtMost, Some(t)) => t,
            _ => self.tol,
        };
        let (sup_error, series, error) = match (self.run)() {
            Ok(o) if o.value.is_nan() => (None, o.series, Some("NaN in comparison".to_string())),
            Ok(o) => (Some(o.value), o.series, None),
            Err(e) => (None, vec![], Some(e.to_string())),
        };
        let pass = match (sup_error, self.comparison) {
            (Some(v), Comparison::AtMost) => v <= tol,
            (Some(v), Comparison::Exceeds) => v > tol,
            (None, _) => false,
        };
        Check {
            id: self.id.clone(),
            sup_error,
            tol,
            pass,
            comparison: self.comparison,
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
            error,
            series,
        }
    }
}

/// Runs one suite; `tol_override` replaces the tolerance of every
/// upper-bound check.
pub fn run_suite(name: &str, tol_override: Option<f64>) -> Result<VerifyReport> {
    let cases = suites::cases(name)?;
    let mut checks: Vec<Check> = cases.par_iter().map(|c| c.evaluate(tol_override)).collect();
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(VerifyReport { suite: name.to_string(), checks })
}

/// Runs every suite in [`SUITES`] order.
pub fn run_all(tol_override: Option<f64>) -> Result<Vec<VerifyReport>> {
    SUITES.iter().map(|s| run_suite(s, tol_override)).collect()
}
