//! Canonical JSON encoding of every data type the command-line tool
//! exchanges.
//!
//! All output goes through `serde_json::Value`, whose object maps keep
//! keys sorted — serializing the same data always produces the same
//! bytes, so writing, re-reading, and re-writing is the identity on
//! files.  Rational numbers travel as strings (`"3/4"`, integers as
//! `"5"`); prime-field residues travel as plain JSON numbers.

use crate::algebra::FinCommAlgebra;
use crate::field::{Field, FieldElem};
use crate::group::{AffineMonoid, FinAbGroup, FinCommMonoid};
use crate::hopf::HopfAlgebra;
use crate::intmat::IntMatrix;
use crate::matrix::Matrix;
use crate::series::TruncatedSeries;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IoError {
    #[error("malformed input: {0}")]
    Parse(String),
}

fn parse_err<T>(msg: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Parse(msg.into()))
}

// ---------------------------------------------------------------------------
// Fields and field elements
// ---------------------------------------------------------------------------

pub fn field_to_json(field: Field) -> Value {
    match field {
        Field::Rationals => json!({ "rationals": true }),
        Field::Prime(p) => json!({ "prime": p }),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field, IoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Parse(format!("field descriptor must be an object, got {v}")))?;
    match (obj.get("rationals"), obj.get("prime")) {
        (Some(Value::Bool(true)), None) => Ok(Field::Rationals),
        (None, Some(p)) => {
            let p = p
                .as_u64()
                .ok_or_else(|| IoError::Parse(format!("prime must be a positive integer, got {p}")))?;
            Field::prime(p).map_err(|e| IoError::Parse(e.to_string()))
        }
        _ => parse_err(format!(
            "field descriptor must be {{\"rationals\": true}} or {{\"prime\": p}}, got {v}"
        )),
    }
}

/// Parses a field name from the command line: `q` or `p:<prime>`.
pub fn field_from_flag(s: &str) -> Result<Field, IoError> {
    if s == "q" || s == "Q" {
        return Ok(Field::Rationals);
    }
    if let Some(rest) = s.strip_prefix("p:") {
        let p: u64 = rest
            .parse()
            .map_err(|_| IoError::Parse(format!("cannot read a prime from {rest:?}")))?;
        return Field::prime(p).map_err(|e| IoError::Parse(e.to_string()));
    }
    parse_err(format!("field must be \"q\" or \"p:<prime>\", got {s:?}"))
}

pub fn elem_to_json(x: &FieldElem) -> Value {
    match x {
        FieldElem::Residue(r) => json!(r),
        FieldElem::Rational(q) => {
            if q.denom().is_one() {
                Value::String(q.numer().to_string())
            } else {
                Value::String(format!("{}/{}", q.numer(), q.denom()))
            }
        }
    }
}

pub fn elem_from_json(field: Field, v: &Value) -> Result<FieldElem, IoError> {
    match field {
        Field::Prime(p) => {
            let r = v.as_u64().ok_or_else(|| {
                IoError::Parse(format!("residue mod {p} must be a nonnegative integer, got {v}"))
            })?;
            if r >= p {
                return parse_err(format!("residue {r} out of range for modulus {p}"));
            }
            Ok(FieldElem::Residue(r))
        }
        Field::Rationals => {
            let q = rational_from_json(v)?;
            Ok(FieldElem::Rational(q))
        }
    }
}

pub fn rational_to_json(q: &BigRational) -> Value {
    elem_to_json(&FieldElem::Rational(q.clone()))
}

pub fn rational_from_json(v: &Value) -> Result<BigRational, IoError> {
    match v {
        Value::String(s) => {
            let parse_int = |t: &str| {
                BigInt::from_str(t.trim())
                    .map_err(|_| IoError::Parse(format!("cannot read an integer from {t:?}")))
            };
            match s.split_once('/') {
                Some((num, den)) => {
                    let n = parse_int(num)?;
                    let d = parse_int(den)?;
                    if d == BigInt::from(0) {
                        return parse_err(format!("zero denominator in {s:?}"));
                    }
                    Ok(BigRational::new(n, d))
                }
                None => Ok(BigRational::from(parse_int(s)?)),
            }
        }
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from(BigInt::from(i)))
            } else {
                parse_err(format!("rational number {n} must be an integer or an \"a/b\" string"))
            }
        }
        other => parse_err(format!("expected a rational (\"a/b\" string), got {other}")),
    }
}

// ---------------------------------------------------------------------------
// Vectors, matrices, tensors
// ---------------------------------------------------------------------------

pub fn vector_to_json(v: &[FieldElem]) -> Value {
    Value::Array(v.iter().map(elem_to_json).collect())
}

pub fn vector_from_json(field: Field, v: &Value) -> Result<Vec<FieldElem>, IoError> {
    v.as_array()
        .ok_or_else(|| IoError::Parse(format!("expected an array of field elements, got {v}")))?
        .iter()
        .map(|x| elem_from_json(field, x))
        .collect()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| elem_to_json(m.at(i, j))).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(field: Field, v: &Value) -> Result<Matrix, IoError> {
    let rows = v
        .as_array()
        .ok_or_else(|| IoError::Parse(format!("expected a matrix (array of rows), got {v}")))?;
    if rows.is_empty() {
        return parse_err("matrix must have at least one row");
    }
    let parsed: Vec<Vec<FieldElem>> = rows
        .iter()
        .map(|r| vector_from_json(field, r))
        .collect::<Result<_, _>>()?;
    let cols = parsed[0].len();
    if parsed.iter().any(|r| r.len() != cols) {
        return parse_err("matrix rows must all have the same length");
    }
    Ok(Matrix::from_fn(field, parsed.len(), cols, |i, j| parsed[i][j].clone()))
}

pub fn tensor_to_json(t: &[Vec<Vec<FieldElem>>]) -> Value {
    Value::Array(
        t.iter()
            .map(|plane| {
                Value::Array(plane.iter().map(|row| vector_to_json(row)).collect())
            })
            .collect(),
    )
}

pub fn tensor_from_json(field: Field, v: &Value) -> Result<Vec<Vec<Vec<FieldElem>>>, IoError> {
    v.as_array()
        .ok_or_else(|| IoError::Parse(format!("expected a rank-3 tensor, got {v}")))?
        .iter()
        .map(|plane| {
            plane
                .as_array()
                .ok_or_else(|| IoError::Parse("tensor planes must be arrays".into()))?
                .iter()
                .map(|row| vector_from_json(field, row))
                .collect()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

pub fn bigint_to_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => Value::String(x.to_string()),
    }
}

pub fn bigint_from_json(v: &Value) -> Result<BigInt, IoError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| IoError::Parse(format!("integer {n} out of range; pass it as a string"))),
        Value::String(s) => BigInt::from_str(s.trim())
            .map_err(|_| IoError::Parse(format!("cannot read an integer from {s:?}"))),
        other => parse_err(format!("expected an integer, got {other}")),
    }
}

pub fn intmatrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array((0..m.cols()).map(|j| bigint_to_json(m.at(i, j))).collect())
            })
            .collect(),
    )
}

pub fn intmatrix_from_json(v: &Value) -> Result<IntMatrix, IoError> {
    let rows = v
        .as_array()
        .ok_or_else(|| IoError::Parse(format!("expected an integer matrix, got {v}")))?;
    if rows.is_empty() {
        return parse_err("integer matrix must have at least one row");
    }
    let parsed: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| IoError::Parse("matrix rows must be arrays".into()))?
                .iter()
                .map(bigint_from_json)
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let cols = parsed[0].len();
    if parsed.iter().any(|r| r.len() != cols) {
        return parse_err("integer matrix rows must all have the same length");
    }
    let mut m = IntMatrix::zero(parsed.len(), cols);
    for (i, row) in parsed.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// Groups and monoids
// ---------------------------------------------------------------------------

pub fn group_to_json(g: &FinAbGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "invariant_factors": g.invariant_factors(),
    })
}

pub fn group_from_json(v: &Value) -> Result<FinAbGroup, IoError> {
    // Accept either the full descriptor or a bare list of cyclic orders.
    if let Some(list) = v.as_array() {
        let orders: Vec<u64> = list
            .iter()
            .map(|x| {
                x.as_u64().ok_or_else(|| {
                    IoError::Parse(format!("cyclic orders must be nonnegative integers, got {x}"))
                })
            })
            .collect::<Result<_, _>>()?;
        return Ok(FinAbGroup::product_of_cyclics(&orders));
    }
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Parse(format!("expected a group descriptor, got {v}")))?;
    let free_rank = obj
        .get("free_rank")
        .and_then(Value::as_u64)
        .unwrap_or(0) as usize;
    let factors: Vec<u64> = match obj.get("invariant_factors") {
        None => vec![],
        Some(f) => f
            .as_array()
            .ok_or_else(|| IoError::Parse("invariant_factors must be an array".into()))?
            .iter()
            .map(|x| {
                x.as_u64().ok_or_else(|| {
                    IoError::Parse(format!("invariant factors must be integers ≥ 2, got {x}"))
                })
            })
            .collect::<Result<_, _>>()?,
    };
    FinAbGroup::new(free_rank, factors).map_err(|e| IoError::Parse(e.to_string()))
}

pub fn monoid_to_json(m: &FinCommMonoid) -> Value {
    json!({
        "identity": m.identity(),
        "table": m.table(),
    })
}

pub fn monoid_from_json(v: &Value) -> Result<FinCommMonoid, IoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Parse(format!("expected a monoid descriptor, got {v}")))?;
    let table_v = obj
        .get("table")
        .ok_or_else(|| IoError::Parse("monoid descriptor needs a \"table\"".into()))?;
    let table: Vec<Vec<usize>> = table_v
        .as_array()
        .ok_or_else(|| IoError::Parse("monoid table must be an array of rows".into()))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| IoError::Parse("monoid table rows must be arrays".into()))?
                .iter()
                .map(|x| {
                    x.as_u64().map(|u| u as usize).ok_or_else(|| {
                        IoError::Parse(format!("table entries must be element indices, got {x}"))
                    })
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let identity = obj
        .get("identity")
        .and_then(Value::as_u64)
        .ok_or_else(|| IoError::Parse("monoid descriptor needs an \"identity\" index".into()))?
        as usize;
    FinCommMonoid::new(table, identity).map_err(|e| IoError::Parse(e.to_string()))
}

pub fn affine_to_json(a: &AffineMonoid) -> Value {
    json!({
        "dim": a.dim(),
        "generators": a.generators(),
    })
}

pub fn affine_from_json(v: &Value) -> Result<AffineMonoid, IoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Parse(format!("expected an affine monoid descriptor, got {v}")))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| IoError::Parse("affine monoid descriptor needs \"dim\"".into()))?
        as usize;
    let generators: Vec<Vec<i64>> = obj
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| IoError::Parse("affine monoid descriptor needs \"generators\"".into()))?
        .iter()
        .map(|g| {
            g.as_array()
                .ok_or_else(|| IoError::Parse("generators must be arrays of integers".into()))?
                .iter()
                .map(|x| {
                    x.as_i64().ok_or_else(|| {
                        IoError::Parse(format!("generator entries must be integers, got {x}"))
                    })
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    if generators.iter().any(|g| g.len() != dim) {
        return parse_err(format!("every generator must have {dim} coordinates"));
    }
    Ok(AffineMonoid::new(dim, generators))
}

// ---------------------------------------------------------------------------
// Algebras and Hopf algebras
// ---------------------------------------------------------------------------

pub fn algebra_to_json(a: &FinCommAlgebra) -> Value {
    let mut obj = Map::new();
    obj.insert("field".into(), field_to_json(a.field()));
    obj.insert("dim".into(), json!(a.dim()));
    obj.insert("mult".into(), tensor_to_json(a.mult()));
    obj.insert("unit".into(), vector_to_json(a.unit()));
    Value::Object(obj)
}

/// Reads a bare algebra object; a full Hopf algebra object is also
/// accepted (its coalgebra half is ignored).
pub fn algebra_from_json(v: &Value) -> Result<FinCommAlgebra, IoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Parse(format!("expected an algebra object, got {v}")))?;
    let get = |key: &str| {
        obj.get(key)
            .ok_or_else(|| IoError::Parse(format!("algebra object is missing {key:?}")))
    };
    let field = field_from_json(get("field")?)?;
    let mult = tensor_from_json(field, get("mult")?)?;
    let unit = vector_from_json(field, get("unit")?)?;
    FinCommAlgebra::new(field, mult, unit).map_err(|e| IoError::Parse(e.to_string()))
}

pub fn hopf_to_json(h: &HopfAlgebra) -> Value {
    let mut obj = Map::new();
    obj.insert("field".into(), field_to_json(h.field()));
    obj.insert("dim".into(), json!(h.dim()));
    obj.insert("mult".into(), tensor_to_json(h.algebra().mult()));
    obj.insert("unit".into(), vector_to_json(h.algebra().unit()));
    obj.insert("comult".into(), tensor_to_json(h.comult()));
    obj.insert("counit".into(), vector_to_json(h.counit()));
    obj.insert(
        "antipode".into(),
        h.antipode().map_or(Value::Null, matrix_to_json),
    );
    Value::Object(obj)
}

pub fn hopf_from_json(v: &Value) -> Result<HopfAlgebra, IoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Parse(format!("expected a Hopf algebra object, got {v}")))?;
    let get = |key: &str| {
        obj.get(key)
            .ok_or_else(|| IoError::Parse(format!("Hopf algebra object is missing {key:?}")))
    };
    let field = field_from_json(get("field")?)?;
    let dim = get("dim")?
        .as_u64()
        .ok_or_else(|| IoError::Parse("\"dim\" must be a positive integer".into()))?
        as usize;
    let mult = tensor_from_json(field, get("mult")?)?;
    let unit = vector_from_json(field, get("unit")?)?;
    let comult = tensor_from_json(field, get("comult")?)?;
    let counit = vector_from_json(field, get("counit")?)?;
    let antipode = match get("antipode")? {
        Value::Null => None,
        m => Some(matrix_from_json(field, m)?),
    };
    if unit.len() != dim {
        return parse_err(format!("\"dim\" is {dim} but \"unit\" has length {}", unit.len()));
    }
    let algebra =
        FinCommAlgebra::new(field, mult, unit).map_err(|e| IoError::Parse(e.to_string()))?;
    HopfAlgebra::new(algebra, comult, counit, antipode).map_err(|e| IoError::Parse(e.to_string()))
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

pub fn series_to_json(s: &TruncatedSeries) -> Value {
    json!({
        "trunc": s.trunc(),
        "coeffs": s.coeffs().iter().map(rational_to_json).collect::<Vec<_>>(),
    })
}

pub fn series_from_json(v: &Value) -> Result<TruncatedSeries, IoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Parse(format!("expected a series object, got {v}")))?;
    let trunc = obj
        .get("trunc")
        .and_then(Value::as_u64)
        .ok_or_else(|| IoError::Parse("series object needs a \"trunc\" order".into()))?
        as usize;
    let coeffs: Vec<BigRational> = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| IoError::Parse("series object needs a \"coeffs\" array".into()))?
        .iter()
        .map(rational_from_json)
        .collect::<Result<_, _>>()?;
    TruncatedSeries::new(trunc, coeffs).map_err(|e| IoError::Parse(e.to_string()))
}

/// Canonical text form: pretty-printed with sorted keys and a trailing
/// newline.  Writing, parsing, and writing again is the identity.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON serialization cannot fail");
    s.push('\n');
    s
}
