//! Canonical JSON documents for rings, elements, matrices, rows, witness
//! words and census reports.
//!
//! Emission is deterministic: object keys are sorted (serde_json's default
//! map) and every ring element prints through the canonical string grammar,
//! so identical inputs produce byte-identical documents. Loaders re-validate
//! every structural invariant (alternation, unimodularity certificates,
//! witness shapes) and reject violations.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::altform::AlternatingMatrix;
use crate::census::{CensusResult, CensusObject, CompareReport, GeneratorSet, ObjectKind};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::ring::{MonomialOrder, RingElement, RingHandle, RingKind};
use crate::vaserstein::UnimodularRow;
use crate::witt::{WitnessCheck, WitnessFactor, WitnessWord};

pub fn to_canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable value")
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| parse_err(format!("missing field {:?}", key)))
}

fn as_obj(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err("expected a JSON object"))
}

fn as_str(v: &Value) -> Result<&str> {
    v.as_str().ok_or_else(|| parse_err("expected a JSON string"))
}

fn as_array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err("expected a JSON array"))
}

pub fn ring_to_value(ring: &RingHandle) -> Value {
    match ring.kind() {
        RingKind::Integers => json!({"kind": "int"}),
        RingKind::Modular { modulus } => match modulus.to_u64() {
            Some(m) => json!({"kind": "mod", "m": m}),
            None => json!({"kind": "mod", "m": modulus.to_string()}),
        },
        RingKind::Polynomial { base, vars, order } => json!({
            "kind": "poly",
            "base": ring_to_value(base),
            "vars": vars,
            "order": order.tag(),
        }),
        RingKind::Quotient { base, .. } => {
            let rel = ring.relation().expect("quotient has a relation");
            json!({
                "kind": "quot",
                "base": ring_to_value(base),
                "relation": rel.to_canonical_string(),
            })
        }
    }
}

pub fn ring_from_value(v: &Value) -> Result<RingHandle> {
    let obj = as_obj(v)?;
    match as_str(get(obj, "kind")?)? {
        "int" => Ok(RingHandle::integers()),
        "mod" => {
            let m = match get(obj, "m")? {
                Value::Number(n) => n
                    .as_u64()
                    .map(BigUint::from)
                    .ok_or_else(|| parse_err("modulus must be a positive integer"))?,
                Value::String(s) => s
                    .parse::<BigUint>()
                    .map_err(|_| parse_err("modulus must be a positive integer"))?,
                _ => return Err(parse_err("modulus must be a number or string")),
            };
            RingHandle::modular(m)
        }
        "poly" => {
            let base = ring_from_value(get(obj, "base")?)?;
            let vars: Vec<String> = as_array(get(obj, "vars")?)?
                .iter()
                .map(|x| as_str(x).map(str::to_string))
                .collect::<Result<_>>()?;
            let order = match obj.get("order") {
                Some(o) => MonomialOrder::from_tag(as_str(o)?)
                    .ok_or_else(|| parse_err("unknown monomial order"))?,
                None => MonomialOrder::GrLex,
            };
            let names: Vec<&str> = vars.iter().map(String::as_str).collect();
            RingHandle::polynomial(base, &names, order)
        }
        "quot" => {
            let base = ring_from_value(get(obj, "base")?)?;
            let rel = base.parse(as_str(get(obj, "relation")?)?)?;
            RingHandle::quotient(base, &rel)
        }
        other => Err(parse_err(format!("unknown ring kind {:?}", other))),
    }
}

pub fn matrix_to_value(m: &ExactMatrix) -> Value {
    let rows: Vec<Value> = (0..m.nrows())
        .map(|i| {
            Value::Array(
                (0..m.ncols())
                    .map(|j| Value::String(m.entry(i, j).to_canonical_string()))
                    .collect(),
            )
        })
        .collect();
    json!({"ring": ring_to_value(m.ring()), "rows": rows})
}

pub fn matrix_from_value(v: &Value) -> Result<ExactMatrix> {
    let obj = as_obj(v)?;
    let ring = ring_from_value(get(obj, "ring")?)?;
    let rows_v = as_array(get(obj, "rows")?)?;
    let mut rows: Vec<Vec<RingElement>> = Vec::with_capacity(rows_v.len());
    for r in rows_v {
        let cells = as_array(r)?;
        let mut row = Vec::with_capacity(cells.len());
        for c in cells {
            row.push(ring.parse(as_str(c)?)?);
        }
        rows.push(row);
    }
    ExactMatrix::from_rows(ring, rows)
}

pub fn alt_to_value(m: &AlternatingMatrix) -> Value {
    let mut v = matrix_to_value(m.matrix());
    v.as_object_mut()
        .expect("matrix value is an object")
        .insert("alternating".into(), Value::Bool(true));
    v
}

/// Loads an alternating matrix; the invariant is re-validated and violations
/// rejected regardless of the flag in the document.
pub fn alt_from_value(v: &Value) -> Result<AlternatingMatrix> {
    let obj = as_obj(v)?;
    if let Some(flag) = obj.get("alternating") {
        if flag != &Value::Bool(true) {
            return Err(parse_err("field \"alternating\" must be true"));
        }
    }
    AlternatingMatrix::new(matrix_from_value(v)?)
}

pub fn row_to_value(r: &UnimodularRow) -> Value {
    let strings = |xs: &[RingElement]| -> Vec<Value> {
        xs.iter().map(|e| Value::String(e.to_canonical_string())).collect()
    };
    json!({
        "ring": ring_to_value(r.ring()),
        "a": strings(r.row()),
        "b": strings(r.section()),
    })
}

pub fn row_from_value(v: &Value) -> Result<UnimodularRow> {
    let (ring, a, b) = raw_row_from_value(v)?;
    UnimodularRow::new(ring, a, b)
}

/// Parse the row document without checking the certificate; used by the
/// Suslin constructor, whose determinant identity needs no unimodularity.
pub fn raw_row_from_value(v: &Value) -> Result<(RingHandle, Vec<RingElement>, Vec<RingElement>)> {
    let obj = as_obj(v)?;
    let ring = ring_from_value(get(obj, "ring")?)?;
    let parse_vec = |key: &str| -> Result<Vec<RingElement>> {
        as_array(get(obj, key)?)?
            .iter()
            .map(|x| ring.parse(as_str(x)?))
            .collect()
    };
    let a = parse_vec("a")?;
    let b = parse_vec("b")?;
    Ok((ring, a, b))
}

/// Witness words serialize with 1-based indices:
/// `{"s":1,"factors":[{"elem":[1,2,"lambda"]},{"sl":<matrix>}]}`.
pub fn witness_to_value(w: &WitnessWord) -> Value {
    let factors: Vec<Value> = w
        .factors
        .iter()
        .map(|f| match f {
            WitnessFactor::Elem { row, col, lambda } => json!({
                "elem": [row + 1, col + 1, lambda.to_canonical_string()],
            }),
            WitnessFactor::Explicit(m) => json!({"sl": matrix_to_value(m)}),
        })
        .collect();
    json!({"s": w.stabilization, "factors": factors})
}

pub fn witness_from_value(v: &Value, ring: &RingHandle) -> Result<WitnessWord> {
    let obj = as_obj(v)?;
    let s = get(obj, "s")?
        .as_u64()
        .ok_or_else(|| parse_err("stabilization level must be a nonnegative integer"))?
        as usize;
    let mut factors = Vec::new();
    for f in as_array(get(obj, "factors")?)? {
        let fo = as_obj(f)?;
        if let Some(e) = fo.get("elem") {
            let parts = as_array(e)?;
            if parts.len() != 3 {
                return Err(parse_err("\"elem\" factor needs [i, j, lambda]"));
            }
            let row = parts[0]
                .as_u64()
                .filter(|&i| i >= 1)
                .ok_or_else(|| parse_err("elementary indices are 1-based positive integers"))?
                as usize;
            let col = parts[1]
                .as_u64()
                .filter(|&j| j >= 1)
                .ok_or_else(|| parse_err("elementary indices are 1-based positive integers"))?
                as usize;
            let lambda = ring.parse(as_str(&parts[2])?)?;
            factors.push(WitnessFactor::Elem { row: row - 1, col: col - 1, lambda });
        } else if let Some(m) = fo.get("sl") {
            let mat = matrix_from_value(m)?;
            if mat.ring() != ring {
                return Err(Error::MixedRings);
            }
            factors.push(WitnessFactor::Explicit(mat));
        } else {
            return Err(parse_err("witness factor must be \"elem\" or \"sl\""));
        }
    }
    Ok(WitnessWord { factors, stabilization: s })
}

pub fn witness_check_to_value(c: &WitnessCheck) -> Value {
    match c {
        WitnessCheck::Verified => json!({"ok": true}),
        WitnessCheck::Mismatch { row, col, left, right } => json!({
            "ok": false,
            "mismatch": {
                "row": row,
                "col": col,
                "left": left.to_canonical_string(),
                "right": right.to_canonical_string(),
            }
        }),
    }
}

fn object_kind_value(k: &ObjectKind) -> Value {
    match k {
        ObjectKind::UnimodularRows { n } => json!({"kind": "umrows", "n": n}),
        ObjectKind::AlternatingInvertible { size } => json!({"kind": "alt", "size": size}),
    }
}

fn census_object_value(o: &CensusObject) -> Value {
    match o {
        CensusObject::Row(a) => Value::Array(
            a.iter().map(|e| Value::String(e.to_canonical_string())).collect(),
        ),
        CensusObject::Alt(m) => {
            let rows: Vec<Value> = (0..m.size())
                .map(|i| {
                    Value::Array(
                        (0..m.size())
                            .map(|j| Value::String(m.matrix().entry(i, j).to_canonical_string()))
                            .collect(),
                    )
                })
                .collect();
            Value::Array(rows)
        }
    }
}

/// The census report document; stable field order, suitable for golden-file
/// tests. Witness paths are not part of the report.
pub fn census_report(result: &CensusResult) -> Value {
    let orbits: Vec<Value> = result
        .orbits
        .iter()
        .map(|c| {
            let mut o = Map::new();
            o.insert("size".into(), json!(c.size));
            o.insert("rep".into(), census_object_value(&c.canonical));
            if let Some(pf) = &c.pfaffian {
                o.insert("pf".into(), Value::String(pf.to_canonical_string()));
            }
            Value::Object(o)
        })
        .collect();
    // The BFS seed is not echoed: results are seed-independent by contract,
    // so reports stay byte-identical across seeds.
    json!({
        "job": {
            "ring": ring_to_value(&result.job.ring),
            "object": object_kind_value(&result.job.object),
            "gens": result.job.generators.tag(),
            "budget": result.job.budget,
        },
        "object_count": result.object_count,
        "orbits": orbits,
        "generator_set": result.job.generators.tag(),
        "stab_cap": result.job.stab_cap,
    })
}

pub fn compare_report_value(r: &CompareReport) -> Value {
    let mut o = Map::new();
    o.insert("set_a".into(), json!(r.set_a.tag()));
    o.insert("set_b".into(), json!(r.set_b.tag()));
    o.insert("orbits_a".into(), json!(r.orbits_a));
    o.insert("orbits_b".into(), json!(r.orbits_b));
    o.insert("coincide".into(), json!(r.coincide));
    if let Some((x, y, side)) = &r.separating {
        o.insert(
            "separating".into(),
            json!({"first": x, "second": y, "joined_in": side}),
        );
    }
    Value::Object(o)
}

pub fn generator_set_from_tag(tag: &str) -> Result<GeneratorSet> {
    GeneratorSet::from_tag(tag).ok_or_else(|| parse_err(format!("unknown generator set {:?}", tag)))
}
