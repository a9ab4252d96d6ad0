//! Human-readable tables.

use std::fmt::Write;

use serde_json::Value;
use smatrix_core::battery::BatterySummary;

fn s(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn elements(v: &Value) -> String {
    let items: Vec<String> = v
        .as_array()
        .map(|a| {
            a.iter()
                .map(|e| {
                    let c: Vec<String> = e.as_array().into_iter().flatten().map(s).collect();
                    format!("({})", c.join(","))
                })
                .collect()
        })
        .unwrap_or_default();
    format!("{{{}}}", items.join(", "))
}

/// Right-aligned columns.
pub fn matrix(v: &Value) -> String {
    let rows: Vec<Vec<String>> = v
        .as_array()
        .into_iter()
        .flatten()
        .map(|r| r.as_array().into_iter().flatten().map(s).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(out, "  [ {} ]", cells.join("  "));
    }
    out
}

pub fn smatrix(r: &Value) -> String {
    let mut out = format!("category: {}\n", s(&r["category"]));
    if !r["center"].is_null() {
        let _ = writeln!(out, "center: {}", elements(&r["center"]));
    }
    out += &matrix(&r["matrix"]);
    for key in ["rank", "square", "invertible", "character_table_match"] {
        if !r[key].is_null() {
            let _ = writeln!(out, "{key}: {}", s(&r[key]));
        }
    }
    out
}

pub fn center(r: &Value) -> String {
    format!(
        "category: {}\ncenter: {}\norder: {}\nnondegenerate: {}\nsymmetric: {}\n",
        s(&r["category"]),
        elements(&r["center"]),
        s(&r["order"]),
        s(&r["nondegenerate"]),
        s(&r["symmetric"]),
    )
}

pub fn lagrangian(r: &Value) -> String {
    let mut out = format!("category: {}\n", s(&r["category"]));
    for l in r["lagrangians"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "  {}", elements(l));
    }
    for key in ["count", "nondegenerate", "is_center"] {
        let _ = writeln!(out, "{key}: {}", s(&r[key]));
    }
    out
}

pub fn classify(r: &Value) -> String {
    let mut out = format!(
        "group: {}  values: mu_{}\n",
        s(&r["group"]),
        s(&r["values"])
    );
    for c in r["classes"].as_array().into_iter().flatten() {
        let q: Vec<String> = c["q"]
            .as_object()
            .into_iter()
            .flatten()
            .map(|(k, v)| format!("q({k}) = {}", s(v)))
            .collect();
        let _ = writeln!(out, "  {}   [{} cocycles]", q.join(", "), s(&c["size"]));
    }
    let _ = writeln!(out, "classes: {}", s(&r["count"]));
    out
}

pub fn modcats(r: &Value) -> String {
    let mut out = format!(
        "category: {}\ncenter: {}\n",
        s(&r["category"]),
        elements(&r["center"])
    );
    for c in r["classes"].as_array().into_iter().flatten() {
        let chi: Vec<String> = c["character"]
            .as_array()
            .into_iter()
            .flatten()
            .map(s)
            .collect();
        let _ = writeln!(
            out,
            "  chi({})  on H = {}",
            chi.join(","),
            elements(&c["subgroup"])
        );
    }
    let p = &r["pi0"];
    let _ = writeln!(
        out,
        "pi0: {}  transparent: {}  equal: {}",
        s(&p["pi0"]),
        s(&p["pi0_omega"]),
        s(&p["equal"])
    );
    out
}

pub fn cocycle_check(r: &Value) -> String {
    let mut out = format!("group: {}\nvalid: {}\n", s(&r["group"]), s(&r["valid"]));
    if !r["violation"].is_null() {
        let _ = writeln!(out, "violation: {}", s(&r["violation"]));
    }
    if let Some(q) = r["trace"].as_object() {
        let q: Vec<String> = q
            .iter()
            .map(|(k, v)| format!("q({k}) = {}", s(v)))
            .collect();
        let _ = writeln!(out, "trace: {}", q.join(", "));
    }
    out
}

pub fn battery(summary: &BatterySummary) -> String {
    let case_w = summary
        .results
        .iter()
        .map(|r| r.case.len())
        .max()
        .unwrap_or(0);
    let check_w = summary
        .results
        .iter()
        .map(|r| r.check.len())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for r in &summary.results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        let _ = write!(out, "{status}  {:case_w$}  ", r.case);
        match &r.witness {
            Some(w) => {
                let _ = write!(out, "{:check_w$}  {w}", r.check);
            }
            None => out.push_str(&r.check),
        }
        out.push('\n');
    }
    for w in &summary.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let failed = summary.failures().count();
    let _ = writeln!(
        out,
        "{}: {} checks, {} failed",
        if summary.pass { "PASS" } else { "FAIL" },
        summary.results.len(),
        failed
    );
    out
}
