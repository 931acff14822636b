//! JSON forms of matrices, subspaces, reguli, transversal sets, dual-spread
//! candidates and `*`-transversal families.
//!
//! Scalars use the ring's own encoding (residue codes for finite fields,
//! arrays of four rational strings for quaternions). Composite objects carry
//! a `"kind"` tag:
//!
//! ```text
//! subspace      {"ambient": n, "rows": [[..], ..]}
//! regulus       {"kind": "regulus", "ambient": n, "members": [subspace, ..], "coverage": ..}
//! transversals  {"kind": "transversals", "ambient": n, "lines": [subspace, ..]}
//! dual spread   {"kind": "dual-spread", "gammas": [matrix, ..]}   or  "subspaces": [subspace, ..]
//! star family   {"kind": "star-family", "entries": [{"u": [..], "images": [[..], ..]}, ..]}
//! ```

use serde_json::{json, Value};

use crate::algebra::DivisionRing;
use crate::chart::AffineChart;
use crate::dualspread::{DualSpreadCandidate, StarTransversalFamily};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::projective::Subspace;
use crate::reguli::{Regulus, TransversalSet};

fn malformed(what: &str) -> Error {
    Error::Malformed(what.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| malformed(&format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| malformed(&format!("{what} must be an array")))
}

pub fn vector_to_json<R: DivisionRing>(ring: &R, v: &[R::Elem]) -> Value {
    Value::Array(v.iter().map(|e| ring.elem_to_json(e)).collect())
}

pub fn vector_from_json<R: DivisionRing>(ring: &R, v: &Value) -> Result<Vec<R::Elem>> {
    array(v, "vector")?.iter().map(|e| ring.elem_from_json(e)).collect()
}

pub fn matrix_to_json<R: DivisionRing>(m: &Matrix<R>) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_to_json(m.ring(), m.row(r))).collect())
}

/// Rows of a matrix; `cols` fixes the width when there may be no rows.
pub fn matrix_from_json<R: DivisionRing>(ring: &R, v: &Value, cols: Option<usize>) -> Result<Matrix<R>> {
    let rows = array(v, "matrix")?.iter().map(|r| vector_from_json(ring, r)).collect::<Result<Vec<_>>>()?;
    let width = cols.or_else(|| rows.first().map(|r| r.len())).unwrap_or(0);
    Matrix::from_rows(ring.clone(), width, rows)
}

pub fn subspace_to_json<R: DivisionRing>(s: &Subspace<R>) -> Value {
    json!({ "ambient": s.ambient(), "rows": matrix_to_json(s.basis()) })
}

/// Accepts `{"ambient", "rows"}` or a bare list of rows.
pub fn subspace_from_json<R: DivisionRing>(ring: &R, v: &Value, ambient: usize) -> Result<Subspace<R>> {
    let (rows, n) = match v {
        Value::Array(_) => (v, ambient),
        _ => {
            let n = field(v, "ambient")?.as_u64().ok_or_else(|| malformed("`ambient` must be an integer"))? as usize;
            (field(v, "rows")?, n)
        }
    };
    if n != ambient {
        return Err(Error::AmbientMismatch(n, ambient));
    }
    Ok(Subspace::span(&matrix_from_json(ring, rows, Some(n))?))
}

fn check_kind(v: &Value, kind: &str) -> Result<()> {
    match v.get("kind").and_then(Value::as_str) {
        Some(k) if k == kind => Ok(()),
        Some(k) => Err(malformed(&format!("expected kind `{kind}`, found `{k}`"))),
        None => Err(malformed(&format!("missing `kind` (expected `{kind}`)"))),
    }
}

pub fn regulus_to_json<R: DivisionRing>(r: &Regulus<R>, seed: u64) -> Result<Value> {
    let ms = r.members(seed)?;
    Ok(json!({
        "kind": "regulus",
        "ambient": r.chart().ambient_dim(),
        "members": ms.items.iter().map(subspace_to_json).collect::<Vec<_>>(),
        "coverage": ms.coverage,
    }))
}

pub fn transversals_to_json<R: DivisionRing>(ts: &TransversalSet<R>, ambient: usize) -> Value {
    json!({
        "kind": "transversals",
        "ambient": ambient,
        "lines": ts.lines.iter().map(subspace_to_json).collect::<Vec<_>>(),
        "coverage": ts.coverage,
    })
}

pub fn transversals_from_json<R: DivisionRing>(ring: &R, v: &Value, ambient: usize) -> Result<TransversalSet<R>> {
    check_kind(v, "transversals")?;
    let lines = array(field(v, "lines")?, "`lines`")?
        .iter()
        .map(|l| subspace_from_json(ring, l, ambient))
        .collect::<Result<Vec<_>>>()?;
    Ok(TransversalSet::from_lines(lines))
}

pub fn dual_spread_to_json<R: DivisionRing>(b: &DualSpreadCandidate<R>) -> Value {
    json!({
        "kind": "dual-spread",
        "gammas": b.members.iter().map(|c| matrix_to_json(c.gamma())).collect::<Vec<_>>(),
    })
}

/// Reads `"gammas"` (coordinates in the chart) or `"subspaces"` (coordinatized
/// through the chart; an entry equal to `W` is dropped since `W` is implicit).
pub fn dual_spread_from_json<R: DivisionRing>(chart: &AffineChart<R>, v: &Value) -> Result<DualSpreadCandidate<R>> {
    check_kind(v, "dual-spread")?;
    let ring = chart.ring();
    let mut members = Vec::new();
    if let Some(gs) = v.get("gammas") {
        for g in array(gs, "`gammas`")? {
            members.push(chart.coord(matrix_from_json(ring, g, Some(chart.k()))?)?);
        }
    } else if let Some(ss) = v.get("subspaces") {
        for s in array(ss, "`subspaces`")? {
            let s = subspace_from_json(ring, s, chart.ambient_dim())?;
            if s != *chart.w() {
                members.push(chart.coordinatize(&s)?);
            }
        }
    } else {
        return Err(malformed("a dual spread needs `gammas` or `subspaces`"));
    }
    Ok(DualSpreadCandidate::new(members))
}

pub fn family_to_json<R: DivisionRing>(ring: &R, f: &StarTransversalFamily<R>) -> Value {
    let entries: Vec<Value> = f
        .domain
        .iter()
        .zip(&f.table)
        .map(|(u, row)| {
            json!({
                "u": vector_to_json(ring, u),
                "images": row.iter().map(|x| vector_to_json(ring, x)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "kind": "star-family", "entries": entries })
}

pub fn family_from_json<R: DivisionRing>(ring: &R, v: &Value) -> Result<StarTransversalFamily<R>> {
    check_kind(v, "star-family")?;
    let mut domain = Vec::new();
    let mut table = Vec::new();
    for e in array(field(v, "entries")?, "`entries`")? {
        domain.push(vector_from_json(ring, field(e, "u")?)?);
        table.push(
            array(field(e, "images")?, "`images`")?
                .iter()
                .map(|x| vector_from_json(ring, x))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    StarTransversalFamily::new(domain, table)
}
