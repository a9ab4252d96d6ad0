//! JSON formats for categories, cocycles and matrices.
//!
//! An element key is either its index (`"3"`) or its coordinates joined by
//! `':'` (`"1:0"`); tuple keys join elements with `','`. Omitted table
//! entries are 1.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::cocycle::{AbelianCocycle, QuadraticForm};
use crate::cyclotomic::{CycloMatrix, RootOfUnity};
use crate::error::{Error, Result};
use crate::group::{AbelianGroup, Element, Subgroup};
use crate::metric::PointedBFC;
use crate::modules::{smatrix2, SMatrix2};

pub fn parse_element(group: &AbelianGroup, key: &str) -> Result<Element> {
    let key = key.trim();
    let bad = || Error::Parse(format!("bad element key {key:?} for {group}"));
    if !key.contains(':') && group.rank() > 1 {
        let idx: usize = key.parse().map_err(|_| bad())?;
        if idx >= group.order() {
            return Err(bad());
        }
        return Ok(group.element(idx));
    }
    let coords = key
        .split(':')
        .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
        .collect::<Result<Vec<u32>>>()?;
    let g = Element(coords);
    group.check(&g)?;
    Ok(g)
}

pub fn element_key(g: &Element) -> String {
    g.coords()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(":")
}

fn parse_tuple(group: &AbelianGroup, key: &str, arity: usize) -> Result<Vec<usize>> {
    let parts: Vec<&str> = key.split(',').collect();
    if parts.len() != arity {
        return Err(Error::Parse(format!(
            "expected {arity} elements in key {key:?}"
        )));
    }
    parts
        .iter()
        .map(|p| parse_element(group, p).map(|g| group.index(&g)))
        .collect()
}

fn parse_root(v: &Value) -> Result<RootOfUnity> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) if n.as_i64() == Some(1) => Ok(RootOfUnity::ONE),
        Value::Number(n) if n.as_i64() == Some(-1) => Ok(RootOfUnity::MINUS_ONE),
        _ => Err(Error::Parse(format!("expected a root of unity, got {v}"))),
    }
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Parse(format!("{what} must be a JSON object")))
}

/// Fills a dense table of `n^arity` entries from a keyed map.
fn parse_table(
    group: &AbelianGroup,
    v: Option<&Value>,
    arity: usize,
    what: &str,
) -> Result<Vec<RootOfUnity>> {
    let n = group.order();
    let mut table = vec![RootOfUnity::ONE; n.pow(arity as u32)];
    if let Some(v) = v {
        for (k, val) in as_object(v, what)? {
            let idx = parse_tuple(group, k, arity)?
                .iter()
                .fold(0, |acc, &i| acc * n + i);
            table[idx] = parse_root(val)?;
        }
    }
    Ok(table)
}

fn parse_group(obj: &Map<String, Value>) -> Result<AbelianGroup> {
    obj.get("group")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("missing \"group\" literal".into()))?
        .parse()
}

/// Unwraps a run report (`results.category` or `category`) to the category
/// object it carries.
fn unwrap_report(v: &Value) -> &Value {
    if let Some(c) = v.get("results").and_then(|r| r.get("category")) {
        return c;
    }
    if let Some(c) = v.get("category").filter(|c| c.is_object()) {
        return c;
    }
    v
}

/// A `(Ψ, Ω)` pair from `{"group", "psi", "omega"}`, not validated.
pub fn cocycle_from_json(v: &Value) -> Result<AbelianCocycle> {
    let obj = as_object(unwrap_report(v), "cocycle")?;
    let group = parse_group(obj)?;
    let psi = parse_table(&group, obj.get("psi"), 3, "psi")?;
    let omega = parse_table(&group, obj.get("omega"), 2, "omega")?;
    AbelianCocycle::new(&group, psi, omega)
}

/// Accepts a preset name as a JSON string, a `q` table, generator data
/// `q_gen` + `pairings`, or a cocycle `psi` + `omega` (optionally with `q`).
pub fn category_from_json(v: &Value) -> Result<PointedBFC> {
    let v = unwrap_report(v);
    if let Some(name) = v.as_str() {
        return PointedBFC::preset(name);
    }
    let obj = as_object(v, "category")?;
    let group = parse_group(obj)?;
    let label = obj
        .get("label")
        .and_then(Value::as_str)
        .unwrap_or("custom")
        .to_string();
    let form = if obj.contains_key("q") {
        Some(QuadraticForm::new(
            &group,
            parse_table(&group, obj.get("q"), 1, "q")?,
        )?)
    } else if let Some(gens) = obj.get("q_gen") {
        let gens = gens
            .as_array()
            .ok_or_else(|| Error::Parse("q_gen must be an array".into()))?
            .iter()
            .map(parse_root)
            .collect::<Result<Vec<_>>>()?;
        let mut pairings = BTreeMap::new();
        if let Some(p) = obj.get("pairings") {
            for (k, val) in as_object(p, "pairings")? {
                let ij: Vec<usize> = k
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad pairing key {k:?}")))
                    })
                    .collect::<Result<_>>()?;
                let [i, j] = ij[..] else {
                    return Err(Error::Parse(format!("bad pairing key {k:?}")));
                };
                pairings.insert((i, j), parse_root(val)?);
            }
        }
        Some(QuadraticForm::from_generators(&group, &gens, &pairings)?)
    } else {
        None
    };
    let cocycle = if obj.contains_key("psi") || obj.contains_key("omega") {
        Some(cocycle_from_json(&Value::Object(obj.clone()))?)
    } else {
        None
    };
    match (form, cocycle) {
        (Some(f), c) => PointedBFC::new(label, f, c),
        (None, Some(c)) => PointedBFC::from_cocycle(label, c),
        (None, None) => Err(Error::Parse(
            "a category needs \"q\", \"q_gen\" or \"psi\"/\"omega\"".into(),
        )),
    }
}

pub fn category_from_str(text: &str) -> Result<PointedBFC> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    category_from_json(&v)
}

/// Every `q` value is written; cocycle tables only list entries that are
/// not 1.
pub fn category_to_json(b: &PointedBFC) -> Value {
    let g = b.group();
    let elems = g.elements();
    let q: Map<String, Value> = elems
        .iter()
        .map(|e| (element_key(e), json!(b.form().value(e))))
        .collect();
    let mut out = json!({
        "label": b.label(),
        "group": g.to_string(),
        "q": q,
    });
    if let Some(c) = b.cocycle() {
        let mut psi = Map::new();
        let mut omega = Map::new();
        for x in &elems {
            for y in &elems {
                let w = c.omega(x, y);
                if !w.is_one() {
                    omega.insert(format!("{},{}", element_key(x), element_key(y)), json!(w));
                }
                for z in &elems {
                    let p = c.psi(x, y, z);
                    if !p.is_one() {
                        psi.insert(
                            format!("{},{},{}", element_key(x), element_key(y), element_key(z)),
                            json!(p),
                        );
                    }
                }
            }
        }
        out["psi"] = Value::Object(psi);
        out["omega"] = Value::Object(omega);
    }
    out
}

pub fn matrix_to_json(m: &CycloMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| json!(x.to_string())).collect()))
            .collect(),
    )
}

pub fn subgroup_to_json(h: &Subgroup) -> Value {
    json!(h.elements())
}

/// `{category, center, classes, matrix, square, invertible, character_table_match}`.
pub fn smatrix2_to_json(b: &PointedBFC, s: &SMatrix2, character_table_match: bool) -> Value {
    json!({
        "category": b.label(),
        "center": subgroup_to_json(&s.center),
        "classes": s.classes.iter().map(|c| c.character().coords().to_vec()).collect::<Vec<_>>(),
        "matrix": matrix_to_json(&s.matrix),
        "square": s.square,
        "invertible": s.invertible,
        "character_table_match": character_table_match,
    })
}

pub fn smatrix2_report(b: &PointedBFC) -> Result<Value> {
    let s = smatrix2(b)?;
    let matches = crate::modules::verify_character_table(b)?;
    Ok(smatrix2_to_json(b, &s, matches))
}
