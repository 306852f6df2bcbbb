//! JSON literals for polynomials, polynomial matrices and systems.
//!
//! A polynomial is a coefficient list, constant term first: `[1,0,1]` is
//! `z^2 + 1`. Each coefficient is an element encoding, or for extension
//! fields also a list of base-field coefficients. A polynomial matrix is a
//! row-major array of rows of polynomials. A system is an object with a
//! field key (`"field"` or `"p^e"`) and scalar matrices `A`, `B`, `C`, `D`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::polymatrix::PolyMatrix;
use crate::systems::StateSpace;

/// Parsed contents of an analysis file.
#[derive(Clone, Debug)]
pub enum Document {
    Matrix(PolyMatrix),
    Matrices(Vec<PolyMatrix>),
    Generator(PolyMatrix),
    System(StateSpace),
}

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let msg = msg
            .rsplit_once(" at line ")
            .map_or(msg.as_str(), |(m, _)| m);
        Error::Parse(format!("line {}, column {}: {msg}", e.line(), e.column()))
    })
}

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n
            .as_u64()
            .ok_or_else(|| bad("a prime power", v))
            .and_then(|p| p.to_string().parse()),
        _ => Err(bad("a field spec such as \"2\" or \"3^2\"", v)),
    }
}

pub fn elem_from_json(field: &Field, v: &Value) -> Result<Elem> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                if i < 0 {
                    if field.is_prime_field() {
                        return Ok(field.from_int(i));
                    }
                    return Err(bad("a nonnegative element encoding", v));
                }
                field.elem(i as u64)
            } else {
                Err(bad("an integer", v))
            }
        }
        Value::Array(items) => {
            let p = field.characteristic() as i64;
            let coeffs = items
                .iter()
                .map(|c| {
                    c.as_i64()
                        .map(|i| i.rem_euclid(p) as u64)
                        .ok_or_else(|| bad("an integer coefficient", c))
                })
                .collect::<Result<Vec<_>>>()?;
            field.from_coeffs(&coeffs)
        }
        _ => Err(bad("a field element", v)),
    }
}

pub fn poly_from_json(field: &Field, v: &Value) -> Result<Poly> {
    match v {
        Value::Array(items) => {
            let coeffs = items
                .iter()
                .map(|c| elem_from_json(field, c))
                .collect::<Result<Vec<_>>>()?;
            Ok(Poly::from_elems(field, coeffs))
        }
        Value::Number(_) => Ok(Poly::constant(field, elem_from_json(field, v)?)),
        _ => Err(bad("a coefficient list", v)),
    }
}

fn rows_of(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| bad("an array of rows", v))
}

pub fn polymatrix_from_json(field: &Field, v: &Value) -> Result<PolyMatrix> {
    let rows = rows_of(v)?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("a row", row))?
                .iter()
                .map(|e| poly_from_json(field, e))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(field, rows)
}

/// A scalar matrix; `cols` fixes the width of an empty row list.
pub fn matrix_from_json(field: &Field, v: &Value, cols: Option<usize>) -> Result<Matrix> {
    let rows = rows_of(v)?;
    let width = match rows.first() {
        Some(r) => r.as_array().ok_or_else(|| bad("a row", r))?.len(),
        None => cols.unwrap_or(0),
    };
    let mut data = Vec::with_capacity(rows.len() * width);
    for row in rows {
        let row = row.as_array().ok_or_else(|| bad("a row", row))?;
        if row.len() != width {
            return Err(Error::Parse("rows of different lengths".into()));
        }
        for e in row {
            data.push(elem_from_json(field, e)?);
        }
    }
    Ok(Matrix::from_elems(field, rows.len(), width, data))
}

fn field_key(obj: &serde_json::Map<String, Value>) -> Result<Field> {
    let v = obj
        .get("field")
        .or_else(|| obj.get("p^e"))
        .ok_or_else(|| Error::Parse("missing \"field\" key".into()))?;
    field_from_json(v)
}

fn row_count(v: Option<&Value>) -> Result<Option<usize>> {
    v.map(|v| rows_of(v).map(Vec::len)).transpose()
}

fn col_count(v: Option<&Value>) -> Result<Option<usize>> {
    match v {
        Some(v) => Ok(rows_of(v)?.first().and_then(Value::as_array).map(Vec::len)),
        None => Ok(None),
    }
}

/// Reads a system object. `C` defaults to the identity and `D` to zero;
/// `"m"` and `"p"` keys settle shapes that empty matrices leave open.
pub fn system_from_json(v: &Value) -> Result<StateSpace> {
    let obj = v.as_object().ok_or_else(|| bad("a system object", v))?;
    let f = field_key(obj)?;
    let key = |k: &str| obj.get(k);
    let hint = |k: &str| key(k).and_then(Value::as_u64).map(|x| x as usize);

    let n = row_count(key("A"))?.ok_or_else(|| Error::Parse("missing \"A\"".into()))?;
    let m = col_count(key("B"))?
        .or(col_count(key("D"))?)
        .or(hint("m"))
        .ok_or_else(|| Error::Parse("cannot infer the input dimension; add \"m\"".into()))?;
    let p = row_count(key("C"))?
        .or(row_count(key("D"))?)
        .or(hint("p"))
        .unwrap_or(n);
    let a = matrix_from_json(&f, &obj["A"], Some(n))?;
    let b = match key("B") {
        Some(b) => matrix_from_json(&f, b, Some(m))?,
        None => return Err(Error::Parse("missing \"B\"".into())),
    };
    let c = match key("C") {
        Some(c) => matrix_from_json(&f, c, Some(n))?,
        None => Matrix::identity(&f, n),
    };
    let d = match key("D") {
        Some(d) => matrix_from_json(&f, d, Some(m))?,
        None => Matrix::zeros(&f, p, m),
    };
    StateSpace::new(a, b, c, d)
}

/// Reads an analysis file: an object with `"matrix"`, `"matrices"`,
/// `"generator"`, or system keys, plus a field key.
pub fn parse_document(text: &str) -> Result<Document> {
    let v = parse_json(text)?;
    let obj = v.as_object().ok_or_else(|| bad("a JSON object", &v))?;
    if obj.contains_key("A") {
        return system_from_json(&v).map(Document::System);
    }
    let f = field_key(obj)?;
    if let Some(m) = obj.get("matrix") {
        return polymatrix_from_json(&f, m).map(Document::Matrix);
    }
    if let Some(g) = obj.get("generator") {
        return polymatrix_from_json(&f, g).map(Document::Generator);
    }
    if let Some(ms) = obj.get("matrices") {
        return rows_of(ms)?
            .iter()
            .map(|m| polymatrix_from_json(&f, m))
            .collect::<Result<Vec<_>>>()
            .map(Document::Matrices);
    }
    Err(Error::Parse(
        "expected one of \"matrix\", \"matrices\", \"generator\" or a system".into(),
    ))
}

pub fn poly_to_json(p: &Poly) -> Value {
    json!(p.values())
}

pub fn polymatrix_to_json(m: &PolyMatrix) -> Value {
    json!(m.to_coeff_rows())
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    json!(m.to_values())
}

pub fn system_to_json(s: &StateSpace) -> Value {
    json!({
        "field": s.field().notation(),
        "A": matrix_to_json(s.a()),
        "B": matrix_to_json(s.b()),
        "C": matrix_to_json(s.c()),
        "D": matrix_to_json(s.d()),
    })
}
