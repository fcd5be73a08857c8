//! JSON forms of rings, matrices, codes, product specs, profiles and weight
//! tables.
//!
//! ```text
//! matrix   {"ring": <ring>, "rows": [[lit, …], …]}
//! code     {"ring": <ring>, "length": n, "generators": [[lit, …], …]}
//!          {"ring": <ring>, "length": n, "codewords": [[lit, …], …]}
//! product  {"codes": [<code> | "path/to/code.json", …], "matrix": <matrix>}
//! profile  {"direction": "forward", "indices": [0, 2, 3]}
//!          {"direction": "reverse", "interior": [3]}
//! weights  {"weights": [w(0), w(1), …]}
//! ```

use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::classify::{Direction, SfrrProfile};
use crate::code::{Code, CodeKind};
use crate::error::{Error, Result};
use crate::matrix::RingMatrix;
use crate::mpc::MpcSpec;
use crate::ring::{Elem, Ring, RingSpec, WeightTable};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_err(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| parse_err(format!("{}: {e}", path.display())))
}

pub fn ring_spec_from_json(v: &Value) -> Result<RingSpec> {
    serde_json::from_value(v.clone()).map_err(|e| parse_err(format!("ring spec: {e}")))
}

pub fn ring_from_json(v: &Value) -> Result<Ring> {
    Ring::new(&ring_spec_from_json(v)?)
}

pub fn ring_to_json(r: &Ring) -> Value {
    serde_json::to_value(r.spec()).expect("ring specs serialize")
}

fn words_from_json(ring: &Ring, v: &Value, what: &str) -> Result<Vec<Vec<Elem>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| parse_err(format!("{what} must be an array of rows")))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err(format!("each of {what} must be an array")))?
                .iter()
                .map(|x| ring.parse_literal(x))
                .collect()
        })
        .collect()
}

fn words_to_json(ring: &Ring, rows: &[Vec<Elem>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| Value::Array(row.iter().map(|&x| ring.literal(x)).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<RingMatrix> {
    let ring = ring_from_json(field(v, "ring")?)?;
    let rows = words_from_json(&ring, field(v, "rows")?, "rows")?;
    if rows.is_empty() {
        return Err(parse_err("a matrix needs at least one row"));
    }
    RingMatrix::from_rows(&ring, &rows)
}

pub fn matrix_to_json(a: &RingMatrix) -> Value {
    json!({
        "ring": ring_to_json(a.ring()),
        "rows": words_to_json(a.ring(), &a.row_vecs()),
    })
}

/// A code object; product specs are accepted too, with file references
/// resolved against `base`.
pub fn code_from_json(v: &Value, base: &Path) -> Result<Code> {
    if v.get("codes").is_some() {
        return Ok(mpc_from_json(v, base)?.build());
    }
    let ring = ring_from_json(field(v, "ring")?)?;
    let length = field(v, "length")?
        .as_u64()
        .ok_or_else(|| parse_err("length must be a non-negative integer"))? as usize;
    match (v.get("generators"), v.get("codewords")) {
        (Some(g), None) => Code::linear(&ring, length, words_from_json(&ring, g, "generators")?),
        (None, Some(c)) => Code::explicit(&ring, length, words_from_json(&ring, c, "codewords")?),
        _ => Err(parse_err(
            "a code needs exactly one of \"generators\" or \"codewords\"",
        )),
    }
}

pub fn code_to_json(c: &Code) -> Value {
    let ring = c.ring();
    match c.kind() {
        CodeKind::Linear { generators } => json!({
            "ring": ring_to_json(ring),
            "length": c.length(),
            "generators": words_to_json(ring, generators),
        }),
        CodeKind::Explicit { codewords } => json!({
            "ring": ring_to_json(ring),
            "length": c.length(),
            "codewords": words_to_json(ring, codewords),
        }),
        CodeKind::MatrixProduct { codes, matrix } => json!({
            "codes": codes.iter().map(code_to_json).collect::<Vec<_>>(),
            "matrix": matrix_to_json(matrix),
        }),
    }
}

/// Linear code JSON listing a generating set of `c`.
pub fn code_to_generator_json(c: &Code) -> Result<Value> {
    Ok(json!({
        "ring": ring_to_json(c.ring()),
        "length": c.length(),
        "generators": words_to_json(c.ring(), &c.span_generators()?),
    }))
}

pub fn mpc_from_json(v: &Value, base: &Path) -> Result<MpcSpec> {
    let matrix = matrix_from_json(field(v, "matrix")?)?;
    let entries = field(v, "codes")?
        .as_array()
        .ok_or_else(|| parse_err("codes must be an array"))?;
    let mut codes = Vec::with_capacity(entries.len());
    for e in entries {
        let code = match e {
            Value::String(p) => {
                let path = resolve(base, p);
                let inner = read_json(&path)?;
                let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
                code_from_json(&inner, &dir)?
            }
            other => code_from_json(other, base)?,
        };
        codes.push(code);
    }
    MpcSpec::new(codes, matrix)
}

fn resolve(base: &Path, p: &str) -> PathBuf {
    let path = Path::new(p);
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}

pub fn mpc_to_json(spec: &MpcSpec) -> Value {
    json!({
        "codes": spec.codes().iter().map(code_to_json).collect::<Vec<_>>(),
        "matrix": matrix_to_json(spec.matrix()),
    })
}

/// Either `indices` (endpoints included) or `interior` must be given.
pub fn profile_from_json(v: &Value, m: usize) -> Result<SfrrProfile> {
    let direction: Direction = match v.get("direction") {
        None => Direction::Forward,
        Some(d) => serde_json::from_value(d.clone())
            .map_err(|e| parse_err(format!("profile direction: {e}")))?,
    };
    let list = |key: &str| -> Result<Option<Vec<usize>>> {
        v.get(key)
            .map(|x| {
                serde_json::from_value(x.clone())
                    .map_err(|e| parse_err(format!("profile {key}: {e}")))
            })
            .transpose()
    };
    match (list("indices")?, list("interior")?) {
        (Some(indices), None) => {
            let p = SfrrProfile { direction, indices };
            p.validate(m)?;
            Ok(p)
        }
        (None, Some(interior)) => match direction {
            Direction::Forward => SfrrProfile::forward(m, &interior),
            Direction::Reverse => SfrrProfile::reverse(m, &interior),
        },
        _ => Err(parse_err(
            "a profile needs exactly one of \"indices\" or \"interior\"",
        )),
    }
}

pub fn profile_to_json(p: &SfrrProfile) -> Value {
    serde_json::to_value(p).expect("profiles serialize")
}

pub fn weights_from_json(v: &Value, ring: &Ring) -> Result<WeightTable> {
    let weights: Vec<u64> = serde_json::from_value(field(v, "weights")?.clone())
        .map_err(|e| parse_err(format!("weights: {e}")))?;
    WeightTable::new(ring, weights)
}

pub fn weights_to_json(w: &WeightTable) -> Value {
    let mut m = Map::new();
    m.insert("weights".into(), json!(w.weights()));
    Value::Object(m)
}
