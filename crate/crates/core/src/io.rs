//! JSON documents for complexes, chain maps, homotopies and quasi-periodic
//! data. Ring elements are written in canonical form, so emitted documents
//! re-parse to identical values.
//!
//! Complex: `{"field": "Q" | "Fp:p", "r0": n, "r1": m, "d0": [[..]], "d1": [[..]]}`
//! with `d0` of shape `r1 x r0` and `d1` of shape `r0 x r1`, row-major.

use serde_json::{json, Map, Value};

use crate::complex::{ChainMap2, Homotopy2, TwoPeriodicComplex};
use crate::elem::LocalElem;
use crate::error::Error;
use crate::field::FieldSpec;
use crate::matrix::RMatrix;
use crate::strictify::QuasiPeriodicData;

pub fn matrix_to_json(m: &RMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    m.row(i)
                        .iter()
                        .map(|e| Value::String(e.to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn complex_to_json(x: &TwoPeriodicComplex) -> Value {
    json!({
        "field": x.field().to_string(),
        "r0": x.r0(),
        "r1": x.r1(),
        "d0": matrix_to_json(x.d0()),
        "d1": matrix_to_json(x.d1()),
    })
}

pub fn map_to_json(f: &ChainMap2) -> Value {
    json!({
        "src": complex_to_json(f.src()),
        "dst": complex_to_json(f.dst()),
        "f0": matrix_to_json(f.f0()),
        "f1": matrix_to_json(f.f1()),
    })
}

pub fn homotopy_to_json(s: &Homotopy2) -> Value {
    json!({ "s0": matrix_to_json(&s.s0), "s1": matrix_to_json(&s.s1) })
}

pub fn quasi_periodic_to_json(q: &QuasiPeriodicData) -> Value {
    let (r0, r1) = q.ranks();
    json!({
        "field": q.field().to_string(),
        "r0": r0,
        "r1": r1,
        "alpha0": matrix_to_json(&q.alpha0),
        "alpha1": matrix_to_json(&q.alpha1),
        "phi0": matrix_to_json(&q.phi0),
        "phi1": matrix_to_json(&q.phi1),
    })
}

fn parse_err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

/// Parses JSON text, reporting line and column on syntax errors.
pub fn parse_json(text: &str) -> Result<Value, Error> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, Error> {
    v.as_object()
        .ok_or_else(|| parse_err(path, "expected an object"))
}

fn field_of(obj: &Map<String, Value>, expected: Option<FieldSpec>) -> Result<FieldSpec, Error> {
    let declared = match obj.get("field") {
        None => None,
        Some(Value::String(s)) => Some(
            s.parse::<FieldSpec>()
                .map_err(|e| parse_err("field", e.message()))?,
        ),
        Some(_) => return Err(parse_err("field", "expected a string")),
    };
    match (declared, expected) {
        (Some(d), Some(e)) if d != e => Err(Error::FieldMismatch(e, d)),
        (Some(d), _) => Ok(d),
        (None, Some(e)) => Ok(e),
        (None, None) => Ok(FieldSpec::Rationals),
    }
}

fn rank_of(obj: &Map<String, Value>, key: &str) -> Result<Option<usize>, Error> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_u64()
            .map(|n| Some(n as usize))
            .ok_or_else(|| parse_err(key, "expected a non-negative integer")),
    }
}

fn elem_from(field: FieldSpec, v: &Value, path: &str) -> Result<LocalElem, Error> {
    match v {
        Value::String(s) => LocalElem::parse(field, s).map_err(|e| parse_err(path, e.message())),
        Value::Number(n) => {
            let s = n.to_string();
            LocalElem::parse(field, &s).map_err(|e| parse_err(path, e.message()))
        }
        _ => Err(parse_err(path, "expected an element string")),
    }
}

/// Parses a row-major matrix of the given shape found under `key`.
pub fn matrix_from(
    field: FieldSpec,
    obj: &Map<String, Value>,
    key: &str,
    rows: usize,
    cols: usize,
) -> Result<RMatrix, Error> {
    let v = obj.get(key).ok_or_else(|| parse_err(key, "missing"))?;
    let arr = v
        .as_array()
        .ok_or_else(|| parse_err(key, "expected an array of rows"))?;
    if arr.len() != rows {
        return Err(parse_err(
            key,
            format!("expected {rows} rows, found {}", arr.len()),
        ));
    }
    let mut m = RMatrix::zeros(field, rows, cols);
    for (i, row) in arr.iter().enumerate() {
        let path = format!("{key}[{i}]");
        let row = row
            .as_array()
            .ok_or_else(|| parse_err(&path, "expected an array"))?;
        if row.len() != cols {
            return Err(parse_err(
                &path,
                format!("expected {cols} entries, found {}", row.len()),
            ));
        }
        for (j, e) in row.iter().enumerate() {
            m[(i, j)] = elem_from(field, e, &format!("{key}[{i}][{j}]"))?;
        }
    }
    Ok(m)
}

/// Infers `(rows, cols)` from a nested array when ranks are not declared.
fn shape_hint(obj: &Map<String, Value>, key: &str) -> Option<(usize, usize)> {
    let arr = obj.get(key)?.as_array()?;
    let cols = arr.first().and_then(Value::as_array).map_or(0, Vec::len);
    Some((arr.len(), cols))
}

pub fn complex_from_value(
    v: &Value,
    expected: Option<FieldSpec>,
) -> Result<TwoPeriodicComplex, Error> {
    let obj = object(v, "complex")?;
    let field = field_of(obj, expected)?;
    let hint = shape_hint(obj, "d0");
    let r0 = match rank_of(obj, "r0")? {
        Some(r) => r,
        None => hint
            .map(|h| h.1)
            .ok_or_else(|| parse_err("r0", "missing"))?,
    };
    let r1 = match rank_of(obj, "r1")? {
        Some(r) => r,
        None => hint
            .map(|h| h.0)
            .ok_or_else(|| parse_err("r1", "missing"))?,
    };
    let d0 = matrix_from(field, obj, "d0", r1, r0)?;
    let d1 = matrix_from(field, obj, "d1", r0, r1)?;
    TwoPeriodicComplex::new(d0, d1)
}

/// Parses and validates a complex document.
pub fn parse_complex(text: &str, expected: Option<FieldSpec>) -> Result<TwoPeriodicComplex, Error> {
    complex_from_value(&parse_json(text)?, expected)
}

/// Parses a chain-map document; `src` and `dst` are inline complexes or
/// strings handed to `resolve` (typically file paths).
pub fn map_from_value(
    v: &Value,
    expected: Option<FieldSpec>,
    resolve: &dyn Fn(&str) -> Result<Value, Error>,
) -> Result<ChainMap2, Error> {
    let obj = object(v, "map")?;
    let endpoint = |key: &str| -> Result<TwoPeriodicComplex, Error> {
        let v = obj.get(key).ok_or_else(|| parse_err(key, "missing"))?;
        let v = match v {
            Value::String(s) => resolve(s)?,
            other => other.clone(),
        };
        complex_from_value(&v, expected).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{key}.{m}")),
            other => other,
        })
    };
    let src = endpoint("src")?;
    let dst = endpoint("dst")?;
    let field = src.field();
    let f0 = matrix_from(field, obj, "f0", dst.r0(), src.r0())?;
    let f1 = matrix_from(field, obj, "f1", dst.r1(), src.r1())?;
    ChainMap2::new(src, dst, f0, f1)
}

pub fn quasi_periodic_from_value(
    v: &Value,
    expected: Option<FieldSpec>,
) -> Result<QuasiPeriodicData, Error> {
    let obj = object(v, "quasi-periodic data")?;
    let field = field_of(obj, expected)?;
    let hint = shape_hint(obj, "alpha0");
    let r0 = match rank_of(obj, "r0")? {
        Some(r) => r,
        None => hint
            .map(|h| h.1)
            .ok_or_else(|| parse_err("r0", "missing"))?,
    };
    let r1 = match rank_of(obj, "r1")? {
        Some(r) => r,
        None => hint
            .map(|h| h.0)
            .ok_or_else(|| parse_err("r1", "missing"))?,
    };
    Ok(QuasiPeriodicData {
        alpha0: matrix_from(field, obj, "alpha0", r1, r0)?,
        alpha1: matrix_from(field, obj, "alpha1", r0, r1)?,
        phi0: matrix_from(field, obj, "phi0", r0, r0)?,
        phi1: matrix_from(field, obj, "phi1", r1, r1)?,
    })
}
