//! JSON system configuration, validated field by field before any numerics run.
//!
//! ```json
//! {
//!   "alpha": 0.5,
//!   "delay": 2,
//!   "M": [[0.3]],
//!   "N": [[0.2]],
//!   "phi": [[1.0], [0.5]],
//!   "forcing": { "type": "constant", "value": [1.0] },
//!   "horizon": 20,
//!   "truncation": { "tol": 1e-12, "i_max": 500 }
//! }
//! ```
//!
//! `phi` lists the initial vectors for `k = 1 − r, …, 0`. `forcing` is one of
//! `{"type": "zero"}`, `{"type": "constant", "value": [..]}` or
//! `{"type": "table", "values": [[..], ..]}` with one vector per `k = 1..=horizon`.

use std::path::Path;

use nabla_dpml::{DelaySystem, Forcing, GridSeries, Matrix, TruncationPolicy, Vector};
use serde_json::{Map, Value};

use crate::error::CliError;

/// Parsed and validated contents of a configuration file.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    pub alpha: f64,
    pub delay: i64,
    pub m: Matrix,
    pub n: Matrix,
    /// Initial vectors for `k = 1 − r, …, 0`.
    pub phi: Vec<Vector>,
    pub forcing: Forcing,
    pub horizon: i64,
    pub truncation: TruncationPolicy,
}

const FIELDS: [&str; 8] = ["alpha", "delay", "M", "N", "phi", "forcing", "horizon", "truncation"];

impl SystemConfig {
    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::io(path, source))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let root: Value = serde_json::from_str(text).map_err(|e| CliError::schema("$", format!("invalid JSON: {e}")))?;
        Self::from_value(&root)
    }

    pub fn from_value(root: &Value) -> Result<Self, CliError> {
        let obj = object(root, "$")?;
        reject_unknown(obj, "", &FIELDS)?;

        let alpha = number(required(obj, "", "alpha")?, "alpha")?;
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(CliError::schema("alpha", format!("must lie in (0, 1), got {alpha}")));
        }
        let delay = integer(required(obj, "", "delay")?, "delay")?;
        if delay < 1 {
            return Err(CliError::schema("delay", format!("must be at least 1, got {delay}")));
        }
        let horizon = integer(required(obj, "", "horizon")?, "horizon")?;
        if horizon < 1 {
            return Err(CliError::schema("horizon", format!("must be at least 1, got {horizon}")));
        }

        let m = matrix(required(obj, "", "M")?, "M")?;
        if m.nrows() != m.ncols() {
            return Err(CliError::schema("M", format!("must be square, got {}x{}", m.nrows(), m.ncols())));
        }
        let dim = m.nrows();
        let n = matrix(required(obj, "", "N")?, "N")?;
        if n.shape() != (dim, dim) {
            return Err(CliError::schema(
                "N",
                format!("must be {dim}x{dim} like M, got {}x{}", n.nrows(), n.ncols()),
            ));
        }

        let phi_items = array(required(obj, "", "phi")?, "phi")?;
        if phi_items.len() as i64 != delay {
            return Err(CliError::schema(
                "phi",
                format!("needs one vector per k in [{}, 0], i.e. {delay}, got {}", 1 - delay, phi_items.len()),
            ));
        }
        let phi = phi_items
            .iter()
            .enumerate()
            .map(|(i, v)| vector(v, &format!("phi[{i}]"), dim))
            .collect::<Result<Vec<_>, _>>()?;

        let forcing = forcing(required(obj, "", "forcing")?, dim, horizon)?;
        let truncation = match obj.get("truncation") {
            None | Some(Value::Null) => TruncationPolicy::default(),
            Some(v) => truncation(v)?,
        };

        Ok(Self {
            alpha,
            delay,
            m,
            n,
            phi,
            forcing,
            horizon,
            truncation,
        })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    /// The delay system described by the file.
    pub fn system(&self) -> Result<DelaySystem, CliError> {
        let phi = GridSeries::new(1 - self.delay, self.phi.clone())?;
        let sys = DelaySystem::new(
            self.alpha,
            self.delay,
            self.m.clone(),
            self.n.clone(),
            phi,
            self.forcing.clone(),
            self.horizon,
        )?;
        Ok(sys.with_policy(self.truncation))
    }
}

/// Reads a matrix file: a JSON 2-D array in row-major order.
pub fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::io(path, source))?;
    let label = path.display().to_string();
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::schema(&label, format!("invalid JSON: {e}")))?;
    matrix(&value, &label)
}

fn forcing(value: &Value, dim: usize, horizon: i64) -> Result<Forcing, CliError> {
    let obj = object(value, "forcing")?;
    let kind = required(obj, "forcing", "type")?;
    let kind = kind
        .as_str()
        .ok_or_else(|| CliError::schema("forcing.type", "expected a string"))?;
    match kind {
        "zero" => {
            reject_unknown(obj, "forcing", &["type"])?;
            Ok(Forcing::Zero)
        }
        "constant" => {
            reject_unknown(obj, "forcing", &["type", "value"])?;
            let value = vector(required(obj, "forcing", "value")?, "forcing.value", dim)?;
            Ok(Forcing::Constant(value))
        }
        "table" => {
            reject_unknown(obj, "forcing", &["type", "values"])?;
            let items = array(required(obj, "forcing", "values")?, "forcing.values")?;
            if items.len() as i64 != horizon {
                return Err(CliError::schema(
                    "forcing.values",
                    format!("needs one vector per k in [1, {horizon}], got {}", items.len()),
                ));
            }
            let values = items
                .iter()
                .enumerate()
                .map(|(i, v)| vector(v, &format!("forcing.values[{i}]"), dim))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Forcing::Table(GridSeries::new(1, values)?))
        }
        other => Err(CliError::schema(
            "forcing.type",
            format!("expected \"zero\", \"constant\" or \"table\", got {other:?}"),
        )),
    }
}

fn truncation(value: &Value) -> Result<TruncationPolicy, CliError> {
    let obj = object(value, "truncation")?;
    reject_unknown(obj, "truncation", &["tol", "i_max"])?;
    let mut policy = TruncationPolicy::default();
    if let Some(v) = obj.get("tol") {
        let tol = number(v, "truncation.tol")?;
        if tol <= 0.0 {
            return Err(CliError::schema("truncation.tol", format!("must be positive, got {tol}")));
        }
        policy = policy.with_tol(tol);
    }
    if let Some(v) = obj.get("i_max") {
        let i_max = integer(v, "truncation.i_max")?;
        if i_max < 1 {
            return Err(CliError::schema("truncation.i_max", format!("must be at least 1, got {i_max}")));
        }
        policy = policy.with_i_max(i_max as usize);
    }
    Ok(policy)
}

fn join(parent: &str, key: &str) -> String {
    if parent.is_empty() {
        key.to_string()
    } else {
        format!("{parent}.{key}")
    }
}

fn object<'a>(value: &'a Value, path: &str) -> Result<&'a Map<String, Value>, CliError> {
    value.as_object().ok_or_else(|| CliError::schema(path, "expected an object"))
}

fn required<'a>(obj: &'a Map<String, Value>, parent: &str, key: &str) -> Result<&'a Value, CliError> {
    obj.get(key)
        .ok_or_else(|| CliError::schema(&join(parent, key), "missing required field"))
}

fn reject_unknown(obj: &Map<String, Value>, parent: &str, known: &[&str]) -> Result<(), CliError> {
    match obj.keys().find(|k| !known.contains(&k.as_str())) {
        Some(key) => Err(CliError::schema(&join(parent, key), "unknown field")),
        None => Ok(()),
    }
}

fn array<'a>(value: &'a Value, path: &str) -> Result<&'a Vec<Value>, CliError> {
    value.as_array().ok_or_else(|| CliError::schema(path, "expected an array"))
}

fn number(value: &Value, path: &str) -> Result<f64, CliError> {
    match value.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(CliError::schema(path, format!("expected a finite number, got {value}"))),
    }
}

fn integer(value: &Value, path: &str) -> Result<i64, CliError> {
    value
        .as_i64()
        .ok_or_else(|| CliError::schema(path, format!("expected an integer, got {value}")))
}

fn vector(value: &Value, path: &str, dim: usize) -> Result<Vector, CliError> {
    let items = array(value, path)?;
    if items.len() != dim {
        return Err(CliError::schema(path, format!("expected {dim} entries, got {}", items.len())));
    }
    let entries = items
        .iter()
        .enumerate()
        .map(|(i, v)| number(v, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Vector::from_vec(entries))
}

fn matrix(value: &Value, path: &str) -> Result<Matrix, CliError> {
    let rows = array(value, path)?;
    if rows.is_empty() {
        return Err(CliError::schema(path, "expected a non-empty array of rows"));
    }
    let width = array(&rows[0], &format!("{path}[0]"))?.len();
    if width == 0 {
        return Err(CliError::schema(&format!("{path}[0]"), "rows must not be empty"));
    }
    let mut entries = Vec::with_capacity(rows.len() * width);
    for (i, row) in rows.iter().enumerate() {
        let row = vector(row, &format!("{path}[{i}]"), width)?;
        entries.extend(row.iter());
    }
    Ok(Matrix::from_row_slice(rows.len(), width, &entries))
}
