use std::io::Read;
use std::path::Path;

use opmod::json::{matrix_from_json, poly_from_json, scalar_from_json};
use opmod::{AlgebraError, FieldTag, Matrix, Poly, Scalar, TensorKind};
use serde_json::Value;

use crate::report::{CliError, CliResult};

/// `q`, `qi` or `fp:<p>`.
pub fn parse_field(text: &str) -> Result<FieldTag, String> {
    match text {
        "q" | "rational" => Ok(FieldTag::Rational),
        "qi" | "gaussian" => Ok(FieldTag::GaussianRational),
        other => {
            let p = other
                .strip_prefix("fp:")
                .ok_or_else(|| format!("unknown field {other:?}; expected q, qi or fp:<p>"))?;
            let p: u64 = p.parse().map_err(|_| format!("invalid modulus {p:?}"))?;
            FieldTag::prime(p).map_err(|e| e.to_string())
        }
    }
}

/// Reads the JSON payload from `path`, or from stdin when no path is given.
pub fn load(path: Option<&Path>) -> CliResult<Value> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| {
        CliError::Input(format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column()))
    })
}

pub fn missing(path: &str) -> CliError {
    AlgebraError::Json { path: path.to_string(), message: "required key is missing".to_string() }.into()
}

pub fn dim(payload: &Value, key: &str) -> CliResult<Option<usize>> {
    match payload.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_u64()
            .filter(|&d| d > 0)
            .map(|d| Some(d as usize))
            .ok_or_else(|| CliError::Input(format!("invalid JSON at /{key}: expected a positive integer"))),
    }
}

pub fn matrix(payload: &Value, key: &str, tag: FieldTag) -> CliResult<Matrix> {
    let v = payload.get(key).ok_or_else(|| missing(&format!("/{key}")))?;
    Ok(matrix_from_json(v, tag, &format!("/{key}"))?)
}

pub fn poly(payload: &Value, key: &str, tag: FieldTag) -> CliResult<Poly> {
    let v = payload.get(key).ok_or_else(|| missing(&format!("/{key}")))?;
    Ok(poly_from_json(v, tag, &format!("/{key}"))?)
}

pub fn parse_scalar(text: &str, tag: FieldTag) -> CliResult<Scalar> {
    Ok(scalar_from_json(&Value::String(text.to_string()), tag, "--scalar-a")?)
}

/// The tensor kind described by a payload, plus the factor dimensions.
///
/// `standard` needs `n` and `m`; the operator kinds read `a` and `b`, with
/// `generator` for `subring` and `phi`, `psi` for `branching`. A scale for
/// the literal branching relation replaces the operator data.
pub fn tensor_kind(
    name: &str,
    payload: Option<&Value>,
    scale: Option<&str>,
    tag: FieldTag,
) -> CliResult<(TensorKind, usize, usize)> {
    let empty = Value::Object(Default::default());
    let payload = payload.unwrap_or(&empty);
    let dims = |default: usize| -> CliResult<(usize, usize)> {
        Ok((dim(payload, "n")?.unwrap_or(default), dim(payload, "m")?.unwrap_or(default)))
    };
    let stored_scale = payload.get("scale").and_then(Value::as_str);
    if let Some(text) = scale.or(stored_scale.filter(|_| name == "branching")) {
        if name != "branching" {
            return Err(CliError::Input("--scalar-a only applies to branching".to_string()));
        }
        let (n, m) = dims(1)?;
        return Ok((TensorKind::ScaledBranching { scale: parse_scalar(text, tag)? }, n, m));
    }
    let operators = || -> CliResult<(Matrix, Matrix)> {
        let a = matrix(payload, "a", tag)?;
        let b = matrix(payload, "b", tag)?;
        for (key, m) in [("a", &a), ("b", &b)] {
            if !m.is_square() {
                return Err(CliError::Input(format!(
                    "invalid JSON at /{key}: expected a square matrix, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok((a, b))
    };
    let kind = match name {
        "standard" => {
            let (n, m) = dims(2)?;
            return Ok((TensorKind::Standard, n, m));
        }
        "opair" => {
            let (a, b) = operators()?;
            TensorKind::OperatorPair { a, b }
        }
        "subring" => {
            let (a, b) = operators()?;
            TensorKind::Subring { a, b, generator: poly(payload, "generator", tag)? }
        }
        "branching" => {
            let (a, b) = operators()?;
            TensorKind::Branching { a, b, phi: poly(payload, "phi", tag)?, psi: poly(payload, "psi", tag)? }
        }
        other => return Err(CliError::Input(format!("unknown tensor kind {other:?}"))),
    };
    let (n, m) = match &kind {
        TensorKind::OperatorPair { a, b }
        | TensorKind::Subring { a, b, .. }
        | TensorKind::Branching { a, b, .. } => (a.rows(), b.rows()),
        _ => unreachable!(),
    };
    for (declared, actual) in [(dim(payload, "n")?, n), (dim(payload, "m")?, m)] {
        if let Some(d) = declared.filter(|&d| d != actual) {
            return Err(AlgebraError::DimensionMismatch { expected: d, found: actual }.into());
        }
    }
    Ok((kind, n, m))
}
