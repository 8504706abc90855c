//! Model files: JSON with whole-line `//` comments.

use std::fmt;
use std::path::Path;

use fracio_core::iomodel::{validate, Finding, Severity};
use fracio_core::{IoModel, RealMatrix};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Orders {
    One(f64),
    PerSector(Vec<f64>),
}

impl Orders {
    pub fn to_vec(&self) -> Vec<f64> {
        match self {
            Orders::One(a) => vec![*a],
            Orders::PerSector(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Matrix {
    Rows(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    n: usize,
    #[serde(rename = "A")]
    a: Matrix,
    #[serde(rename = "B")]
    b: Matrix,
    alpha: Orders,
    #[serde(rename = "Y0")]
    y0: Vec<f64>,
    #[serde(rename = "Y0_rate", default)]
    y0_rate: Option<Vec<f64>>,
    #[serde(rename = "X0", default)]
    x0: Option<Vec<f64>>,
    #[serde(rename = "C0", default)]
    c0: Option<Vec<f64>>,
    #[serde(default)]
    consumption_rates: Option<Orders>,
}

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Parse(String),
    Invalid(Vec<Finding>),
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(m) | LoadError::Parse(m) => f.write_str(m),
            LoadError::Invalid(findings) => {
                let msgs: Vec<&str> = findings
                    .iter()
                    .filter(|x| x.severity == Severity::Error)
                    .map(|x| x.message.as_str())
                    .collect();
                write!(f, "invalid model: {}", msgs.join("; "))
            }
        }
    }
}

/// Blanks `//` comment lines so reported line numbers stay correct.
fn strip_comments(text: &str) -> String {
    text.lines()
        .map(|l| if l.trim_start().starts_with("//") { "" } else { l })
        .collect::<Vec<_>>()
        .join("\n")
}

fn matrix(field: &str, m: Matrix, n: usize) -> Result<RealMatrix, LoadError> {
    let shape_error = || LoadError::Parse(format!("field {field}: expected a {n}x{n} matrix"));
    let data = match m {
        Matrix::Rows(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(shape_error());
            }
            rows.concat()
        }
        Matrix::Flat(v) => v,
    };
    RealMatrix::new(n, data).map_err(|_| shape_error())
}

fn vector(field: &str, v: Vec<f64>, n: usize) -> Result<Vec<f64>, LoadError> {
    if v.len() == n {
        Ok(v)
    } else {
        Err(LoadError::Parse(format!("field {field}: expected {n} entries, found {}", v.len())))
    }
}

pub fn parse_model(text: &str) -> Result<IoModel, LoadError> {
    let cleaned = strip_comments(text);
    let de = &mut serde_json::Deserializer::from_str(&cleaned);
    let file: ModelFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            LoadError::Parse(format!("parse error: {inner}"))
        } else {
            LoadError::Parse(format!("parse error in field {path}: {inner}"))
        }
    })?;
    let n = file.n;
    if n == 0 {
        return Err(LoadError::Parse("field n: must be positive".into()));
    }
    let a = matrix("A", file.a, n)?;
    let b = matrix("B", file.b, n)?;
    let alpha = file.alpha.to_vec();
    if alpha.len() != 1 && alpha.len() != n {
        return Err(LoadError::Parse(format!("field alpha: expected 1 or {n} entries")));
    }
    let mut model = IoModel::new(a, b, &alpha, vector("Y0", file.y0, n)?);
    if let Some(r) = file.y0_rate {
        model = model.with_rate(vector("Y0_rate", r, n)?);
    }
    if let Some(x) = file.x0 {
        model = model.with_x0(vector("X0", x, n)?);
    }
    if let Some(c0) = file.c0 {
        let rates = file.consumption_rates.map(|r| r.to_vec()).unwrap_or_else(|| vec![0.0]);
        if rates.len() != 1 && rates.len() != n {
            return Err(LoadError::Parse(format!("field consumption_rates: expected 1 or {n} entries")));
        }
        model = model.with_consumption(vector("C0", c0, n)?, &rates);
    } else if file.consumption_rates.is_some() {
        return Err(LoadError::Parse("field consumption_rates: given without C0".into()));
    }
    Ok(model)
}

/// Parses and validates; error-level findings abort.
pub fn load_model(path: &Path) -> Result<(IoModel, Vec<Finding>), LoadError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError::Io(format!("cannot read {}: {e}", path.display())))?;
    let model = parse_model(&text)?;
    let findings = validate(&model);
    if findings.iter().any(|f| f.severity == Severity::Error) {
        return Err(LoadError::Invalid(findings));
    }
    Ok((model, findings))
}

/// `0.5` or `0.1,0.9`.
pub fn parse_orders(text: &str) -> Result<Vec<f64>, String> {
    let v: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    let v = v.map_err(|_| format!("cannot read memory orders from '{text}'"))?;
    if let Some(a) = v.iter().find(|&&a| !(a > 0.0 && a < 2.0)) {
        return Err(format!("alpha {a} out of (0,2)"));
    }
    Ok(v)
}
