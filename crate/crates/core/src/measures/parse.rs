//! Measure descriptors: the `family:key=val,...` mini-language and JSON.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{Family, GridMeasure, Measure, Piece, Repr};
use crate::error::{Error, Result};

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

/// Builds a family from its name and parameter map, rejecting unknown or
/// missing keys.
pub fn family_from_params(name: &str, params: &BTreeMap<String, f64>) -> Result<Family> {
    let registry = Family::registry();
    let Some((_, keys)) = registry.iter().find(|(n, _)| *n == name) else {
        let names: Vec<&str> = registry.iter().map(|r| r.0).collect();
        return parse_err(format!("unknown family '{name}' (known: {})", names.join(", ")));
    };
    for k in params.keys() {
        if !keys.contains(&k.as_str()) {
            return parse_err(format!("{name} takes no parameter '{k}' (expects {keys:?})"));
        }
    }
    let get = |k: &str| -> Result<f64> {
        params
            .get(k)
            .copied()
            .ok_or_else(|| Error::Parse(format!("{name} needs parameter '{k}'")))
    };
    let f = match name {
        "dirac" => Family::Dirac { a: get("a")? },
        "uniform01" => Family::Uniform01,
        "exponential" => Family::Exponential,
        "poisson" => Family::Poisson { lambda: get("lambda")? },
        "mp" => Family::Mp { lambda: get("lambda")? },
        "semicircle" => Family::Semicircle { m: get("m")?, v: get("v")? },
        "free_stable" => Family::FreeStable { alpha: get("alpha")? },
        "boolean_stable" => Family::BooleanStable { alpha: get("alpha")? },
        "classical_stable" => Family::ClassicalStable { alpha: get("alpha")? },
        "pareto" => Family::Pareto { alpha: get("alpha")? },
        "dagum" => Family::Dagum { alpha: get("alpha")? },
        "frechet" => Family::Frechet { alpha: get("alpha")? },
        _ => unreachable!("registry checked above"),
    };
    Ok(f)
}

/// Parses `family` or `family:key=val,key=val`.
pub fn parse_measure(s: &str) -> Result<Measure> {
    let s = s.trim();
    let (name, rest) = match s.split_once(':') {
        Some((n, r)) => (n.trim(), r.trim()),
        None => (s, ""),
    };
    let mut params = BTreeMap::new();
    if !rest.is_empty() {
        for kv in rest.split(',') {
            let Some((k, v)) = kv.split_once('=') else {
                return parse_err(format!("expected key=value, got '{kv}'"));
            };
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("'{}' is not a number", v.trim())))?;
            params.insert(k.trim().to_string(), v);
        }
    }
    Measure::catalog(family_from_params(name, &params)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct PieceJson {
    grid: Vec<f64>,
    density: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GridJson {
    #[serde(default)]
    atom0: f64,
    #[serde(default)]
    atoms: Vec<(f64, f64)>,
    #[serde(default)]
    grid: Vec<f64>,
    #[serde(default)]
    density: Vec<f64>,
    #[serde(default)]
    pieces: Vec<PieceJson>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Descriptor {
    Family {
        family: String,
        #[serde(default)]
        params: BTreeMap<String, f64>,
    },
    Grid {
        grid: GridJson,
    },
}

/// Parses a JSON descriptor: `{"family": ..., "params": {...}}` or
/// `{"grid": {...}}`.
pub fn parse_json(text: &str) -> Result<Measure> {
    let d: Descriptor = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("bad measure descriptor: {e}")))?;
    match d {
        Descriptor::Family { family, params } => {
            Measure::catalog(family_from_params(&family, &params)?)
        }
        Descriptor::Grid { grid } => {
            let mut pieces: Vec<Piece> = grid
                .pieces
                .into_iter()
                .map(|p| Piece { grid: p.grid, density: p.density })
                .collect();
            if !grid.grid.is_empty() {
                pieces.push(Piece { grid: grid.grid, density: grid.density });
            }
            Ok(Measure::from_grid(GridMeasure::new(grid.atom0, grid.atoms, pieces)?))
        }
    }
}

pub(super) fn descriptor(m: &Measure) -> Value {
    match &*m.repr {
        Repr::Catalog(f) => {
            let params: serde_json::Map<String, Value> =
                f.params().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            json!({"family": f.name(), "params": params})
        }
        Repr::Grid(g) => {
            let pieces: Vec<PieceJson> = g
                .pieces()
                .iter()
                .map(|p| PieceJson { grid: p.grid.clone(), density: p.density.clone() })
                .collect();
            json!({"grid": GridJson {
                atom0: g.atom0(),
                atoms: g.atoms().to_vec(),
                grid: vec![],
                density: vec![],
                pieces,
            }})
        }
        _ => json!({"kind": format!("{:?}", m.kind()), "label": m.label(), "atom0": m.atom0()}),
    }
}
