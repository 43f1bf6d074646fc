//! Classification job files: `key: value` lines, `#` comments, curve
//! expressions in the expression language of the library.
//!
//! Recognized keys: `family` (zplane | tplane | vplane | cylinder |
//! umbilical), the family parameters `c`, `a`, `b`, `gamma1`, `gamma2`,
//! `beta0`, `interval` (two floats), `step`, the sweep controls `grid`
//! (three positive integers) and `margin`, the thresholds `tol_geodesic`,
//! `tol_umbilical`, `tol_parallel`, `tol_codazzi`, and `equations`
//! (true/false) to request Gauss/Codazzi equation residuals.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use solgeo::hypersurface::{GridSpec, Immersion, Tolerances};

use crate::build_family;

/// A parsed classification job.
#[derive(Debug)]
pub struct ClassifyJob {
    pub immersion: Immersion,
    pub grid: GridSpec,
    pub tolerances: Tolerances,
    pub equations: bool,
    /// Input echo for the report header, in file order.
    pub echo: Vec<(String, String)>,
}

const KNOWN_KEYS: [&str; 16] = [
    "family",
    "c",
    "a",
    "b",
    "gamma1",
    "gamma2",
    "beta0",
    "interval",
    "step",
    "grid",
    "margin",
    "tol_geodesic",
    "tol_umbilical",
    "tol_parallel",
    "tol_codazzi",
    "equations",
];

fn parse_f64(key: &str, value: &str) -> Result<f64, String> {
    value
        .parse::<f64>()
        .map_err(|_| format!("config key `{key}`: expected a number, got `{value}`"))
}

fn parse_pair(key: &str, value: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = value.split_whitespace().collect();
    if parts.len() != 2 {
        return Err(format!("config key `{key}`: expected two numbers"));
    }
    Ok((parse_f64(key, parts[0])?, parse_f64(key, parts[1])?))
}

pub fn load(path: &Path) -> Result<ClassifyJob, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut values: BTreeMap<String, String> = BTreeMap::new();
    let mut echo: Vec<(String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or(format!("line {}: expected `key: value`", lineno + 1))?;
        let (key, value) = (key.trim().to_string(), value.trim().to_string());
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(format!("line {}: unknown config key `{key}`", lineno + 1));
        }
        if values.insert(key.clone(), value.clone()).is_some() {
            return Err(format!("line {}: duplicate config key `{key}`", lineno + 1));
        }
        echo.push((key, value));
    }

    let family = values
        .get("family")
        .ok_or("config must set `family`".to_string())?
        .clone();
    let get_f64 = |key: &str| -> Result<Option<f64>, String> {
        values.get(key).map(|v| parse_f64(key, v)).transpose()
    };
    let interval = values
        .get("interval")
        .map(|v| parse_pair("interval", v))
        .transpose()?;
    let immersion = build_family(
        &family,
        get_f64("c")?,
        get_f64("a")?,
        get_f64("b")?,
        values.get("gamma1").map(String::as_str),
        values.get("gamma2").map(String::as_str),
        get_f64("beta0")?,
        interval,
        get_f64("step")?,
    )?
    .into_immersion();

    let mut grid = GridSpec::default();
    if let Some(v) = values.get("grid") {
        let parts: Vec<&str> = v.split_whitespace().collect();
        if parts.len() != 3 {
            return Err("config key `grid`: expected three integers".to_string());
        }
        for (slot, part) in grid.n.iter_mut().zip(&parts) {
            *slot = part
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or(format!("config key `grid`: bad count `{part}`"))?;
        }
    }
    if let Some(m) = get_f64("margin")? {
        if !(0.0..0.5).contains(&m) {
            return Err("config key `margin`: must lie in [0, 0.5)".to_string());
        }
        grid.margin = m;
    }

    let mut tolerances = Tolerances::default();
    for (key, slot) in [
        ("tol_geodesic", &mut tolerances.geodesic),
        ("tol_umbilical", &mut tolerances.umbilical),
        ("tol_parallel", &mut tolerances.parallel),
        ("tol_codazzi", &mut tolerances.codazzi),
    ] {
        if let Some(v) = values.get(key) {
            let t = parse_f64(key, v)?;
            if !(t > 0.0) {
                return Err(format!("config key `{key}`: tolerance must be positive"));
            }
            *slot = t;
        }
    }

    let equations = match values.get("equations").map(String::as_str) {
        None => false,
        Some("true") => true,
        Some("false") => false,
        Some(other) => {
            return Err(format!("config key `equations`: expected true or false, got `{other}`"))
        }
    };

    Ok(ClassifyJob {
        immersion,
        grid,
        tolerances,
        equations,
        echo,
    })
}
