//! JSON encodings of the core types, and DOT output for posets.

use kdilate_core::abelian::FgAbelianGroup;
use kdilate_core::colimit::{localized_summands, ColimitDescription};
use kdilate_core::kcrossed::{CuntzIndex, GradedPiece};
use kdilate_core::matrix::IntMatrix;
use kdilate_core::poset::PosetDiagram;
use kdilate_core::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::problem::MAX_SAFE_INTEGER;

/// A JSON number when it is safe to read back as one, otherwise a decimal string.
pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) if x.abs() <= BigInt::from(MAX_SAFE_INTEGER) => Value::from(i),
        _ => Value::String(x.to_string()),
    }
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.row_vecs().map(ints).collect())
}

pub fn group(g: &FgAbelianGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "invariant_factors": ints(g.invariant_factors()),
        "text": g.to_string(),
    })
}

pub fn description(d: &ColimitDescription) -> Value {
    let mut v = match d {
        ColimitDescription::FiniteOrFg { group: g, action } => json!({
            "group": group(g),
            "action": matrix(action.matrix()),
        }),
        ColimitDescription::LocalizedFree { matrix: m } => json!({
            "matrix": matrix(m),
            "summands": localized_summands(m).map_or(Value::Null, |s| ints(&s)),
        }),
        ColimitDescription::DirectSum(parts) => json!({
            "parts": parts.iter().map(description).collect::<Vec<_>>(),
        }),
        ColimitDescription::Extension { sub, quotient } => json!({
            "sub": description(sub),
            "quotient": description(quotient),
        }),
    };
    v["type"] = Value::from(d.tag());
    v["text"] = Value::from(d.to_string());
    v
}

pub fn piece(p: &GradedPiece) -> Value {
    json!({
        "sub": description(&p.sub),
        "quotient": description(&p.quotient),
        "resolved": p.resolved.as_ref().map_or(Value::Null, description),
        "resolution": p.resolution.tag(),
        "resolution_reason": p.resolution.as_str(),
        "text": p.to_string(),
    })
}

pub fn cuntz_index(n: &CuntzIndex) -> Value {
    match n {
        CuntzIndex::Finite(n) => int(n),
        CuntzIndex::Infinite => Value::Null,
    }
}

pub fn poset(p: &PosetDiagram) -> Value {
    let mut covers: Vec<(&str, &str)> = p.cover_labels().collect();
    covers.sort();
    let label = |i: &usize| Value::from(p.elements()[*i].as_str());
    json!({
        "elements": p.elements(),
        "covers": covers.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "minimal": p.minimal().iter().map(label).collect::<Vec<_>>(),
        "maximal": p.maximal().iter().map(label).collect::<Vec<_>>(),
    })
}

/// `digraph { "lower" -> "upper"; }`, nodes sorted by label and edges
/// sorted lexicographically.
pub fn dot(p: &PosetDiagram) -> String {
    let mut nodes: Vec<&str> = p.elements().iter().map(String::as_str).collect();
    nodes.sort();
    let mut edges: Vec<(&str, &str)> = p.cover_labels().collect();
    edges.sort();
    let mut out = String::from("digraph {\n");
    for n in nodes {
        out.push_str(&format!("  {};\n", quote(n)));
    }
    for (a, b) in edges {
        out.push_str(&format!("  {} -> {};\n", quote(a), quote(b)));
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Pretty-printed JSON; keys come out sorted, so output is canonical.
pub fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values built here always serialize");
    s.push('\n');
    s
}
