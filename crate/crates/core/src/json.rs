//! JSON encodings of scalars, polynomials and matrices.
//!
//! Scalars are strings (`"-3/4"`, `"4"`), except Gaussian rationals which
//! are objects `{"re": "1/2", "im": "-3"}`. Integers given as JSON numbers
//! are accepted on input. Polynomials are arrays of scalars indexed by
//! degree. Matrices are `{"field", "rows", "cols", "entries"}`.
//!
//! Decoding errors carry a JSON-pointer style path to the offending value.

use num::BigRational;
use serde_json::{json, Map, Value};

use crate::error::{AlgebraError, Result};
use crate::matrix::{Matrix, PolyMatrix};
use crate::poly::Poly;
use crate::scalar::{FieldTag, Scalar};

pub fn field_to_json(tag: FieldTag) -> Value {
    match tag {
        FieldTag::Rational => json!({"field": "q"}),
        FieldTag::GaussianRational => json!({"field": "qi"}),
        FieldTag::Prime(p) => json!({"field": "fp", "p": p}),
    }
}

/// Reads a field declaration from an object with a `"field"` key and, for
/// prime fields, a `"p"` key.
pub fn field_from_json(value: &Value, path: &str) -> Result<FieldTag> {
    let obj = value
        .as_object()
        .ok_or_else(|| AlgebraError::json(path, "expected an object"))?;
    let field_path = format!("{path}/field");
    let name = obj
        .get("field")
        .ok_or_else(|| AlgebraError::json(&field_path, "missing field declaration"))?
        .as_str()
        .ok_or_else(|| AlgebraError::json(&field_path, "expected a string"))?;
    match name {
        "q" | "rational" => Ok(FieldTag::Rational),
        "qi" | "gaussian" => Ok(FieldTag::GaussianRational),
        "fp" | "prime" => {
            let p_path = format!("{path}/p");
            let p = obj
                .get("p")
                .ok_or_else(|| AlgebraError::json(&p_path, "prime field needs a modulus"))?
                .as_u64()
                .ok_or_else(|| AlgebraError::json(&p_path, "expected a positive integer"))?;
            FieldTag::prime(p).map_err(|e| AlgebraError::json(&p_path, e.to_string()))
        }
        other => Err(AlgebraError::json(field_path, format!("unknown field {other:?}"))),
    }
}

fn check_declared_field(obj: &Map<String, Value>, tag: FieldTag, path: &str) -> Result<()> {
    if obj.contains_key("field") {
        let declared = field_from_json(&Value::Object(obj.clone()), path)?;
        if declared != tag {
            return Err(AlgebraError::json(
                format!("{path}/field"),
                format!("declared field {declared} disagrees with {tag}"),
            ));
        }
    }
    Ok(())
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Gaussian { re, im } => json!({
            "re": Scalar::Rational(re.clone()).to_string(),
            "im": Scalar::Rational(im.clone()).to_string(),
        }),
        other => Value::String(other.to_string()),
    }
}

fn rational_part(value: &Value, path: &str) -> Result<BigRational> {
    let s = scalar_from_json(value, FieldTag::Rational, path)?;
    Ok(s.as_rational().expect("rational tag").clone())
}

pub fn scalar_from_json(value: &Value, tag: FieldTag, path: &str) -> Result<Scalar> {
    match value {
        Value::String(text) => {
            Scalar::parse(text, tag).map_err(|e| AlgebraError::json(path, e.to_string()))
        }
        Value::Number(n) => match n.as_i64() {
            Some(v) => Ok(Scalar::from_i64(tag, v)),
            None => Err(AlgebraError::json(path, "numbers must be integers; write fractions as strings")),
        },
        Value::Object(obj) if tag == FieldTag::GaussianRational => {
            let part = |key: &str| -> Result<BigRational> {
                let sub = format!("{path}/{key}");
                match obj.get(key) {
                    Some(v) => rational_part(v, &sub),
                    None => Err(AlgebraError::json(sub, "missing component")),
                }
            };
            Ok(Scalar::gaussian(part("re")?, part("im")?))
        }
        _ => Err(AlgebraError::json(path, format!("expected a scalar in {tag}"))),
    }
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(scalar_to_json).collect())
}

pub fn poly_from_json(value: &Value, tag: FieldTag, path: &str) -> Result<Poly> {
    let items = value
        .as_array()
        .ok_or_else(|| AlgebraError::json(path, "expected an array of coefficients"))?;
    let coeffs = items
        .iter()
        .enumerate()
        .map(|(k, v)| scalar_from_json(v, tag, &format!("{path}/{k}")))
        .collect::<Result<Vec<_>>>()?;
    Poly::from_coeffs(tag, coeffs)
}

fn matrix_json(tag: FieldTag, rows: usize, cols: usize, entries: Vec<Value>) -> Value {
    let mut obj = match field_to_json(tag) {
        Value::Object(m) => m,
        _ => unreachable!(),
    };
    obj.insert("rows".into(), rows.into());
    obj.insert("cols".into(), cols.into());
    obj.insert("entries".into(), Value::Array(entries));
    Value::Object(obj)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let entries = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(scalar_to_json).collect()))
        .collect();
    matrix_json(m.tag(), m.rows(), m.cols(), entries)
}

pub fn poly_matrix_to_json(m: &PolyMatrix) -> Value {
    let entries = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(poly_to_json).collect()))
        .collect();
    matrix_json(m.tag(), m.rows(), m.cols(), entries)
}

/// Validates the shape and returns the entry grid; `rows`/`cols` are
/// optional but checked when given.
fn entry_grid<'a>(value: &'a Value, tag: FieldTag, path: &str) -> Result<(Vec<&'a Vec<Value>>, usize, usize)> {
    let obj = value
        .as_object()
        .ok_or_else(|| AlgebraError::json(path, "expected a matrix object"))?;
    check_declared_field(obj, tag, path)?;
    let entries_path = format!("{path}/entries");
    let rows: Vec<&Vec<Value>> = obj
        .get("entries")
        .ok_or_else(|| AlgebraError::json(&entries_path, "missing entries"))?
        .as_array()
        .ok_or_else(|| AlgebraError::json(&entries_path, "expected an array of rows"))?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.as_array()
                .ok_or_else(|| AlgebraError::json(format!("{entries_path}/{i}"), "expected a row array"))
        })
        .collect::<Result<_>>()?;
    let dim = |key: &str| -> Result<Option<usize>> {
        match obj.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(|d| Some(d as usize))
                .ok_or_else(|| AlgebraError::json(format!("{path}/{key}"), "expected a nonnegative integer")),
        }
    };
    let declared_rows = dim("rows")?;
    let declared_cols = dim("cols")?;
    let r = declared_rows.unwrap_or(rows.len());
    if r != rows.len() {
        return Err(AlgebraError::json(
            &entries_path,
            format!("expected {r} rows, found {}", rows.len()),
        ));
    }
    let c = declared_cols.unwrap_or_else(|| rows.first().map_or(0, |row| row.len()));
    for (i, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(AlgebraError::json(
                format!("{entries_path}/{i}"),
                format!("expected {c} entries, found {}", row.len()),
            ));
        }
    }
    Ok((rows, r, c))
}

pub fn matrix_from_json(value: &Value, tag: FieldTag, path: &str) -> Result<Matrix> {
    let (grid, r, c) = entry_grid(value, tag, path)?;
    let mut m = Matrix::zeros(tag, r, c);
    for (i, row) in grid.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m.set(i, j, scalar_from_json(v, tag, &format!("{path}/entries/{i}/{j}"))?);
        }
    }
    Ok(m)
}

pub fn poly_matrix_from_json(value: &Value, tag: FieldTag, path: &str) -> Result<PolyMatrix> {
    let (grid, r, c) = entry_grid(value, tag, path)?;
    let mut m = PolyMatrix::zeros(tag, r, c);
    for (i, row) in grid.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m.set(i, j, poly_from_json(v, tag, &format!("{path}/entries/{i}/{j}"))?);
        }
    }
    Ok(m)
}
