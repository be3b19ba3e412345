//! Problem files: a JSON object with a `"kind"` tag and a kind-specific payload.
//!
//! Integers are JSON integers of magnitude at most 2⁵³ or decimal strings.
//! Unknown keys are rejected.

use kdilate_core::abelian::Presentation;
use kdilate_core::graphalg::Graph;
use kdilate_core::kcrossed::CuntzIndex;
use kdilate_core::matrix::IntMatrix;
use kdilate_core::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{Map, Value};

use crate::error::CliError;

/// Largest magnitude accepted as a bare JSON number.
pub const MAX_SAFE_INTEGER: u64 = 1 << 53;

#[derive(Clone, Debug)]
pub enum Problem {
    Matrix(IntMatrix),
    GroupEndo { base: Presentation, endomorphism: IntMatrix },
    KData { k0: Presentation, k1: Presentation, map0: IntMatrix, map1: IntMatrix, multiplier: Option<BigInt> },
    Cuntz(Vec<(CuntzIndex, BigInt)>),
    Graph(Graph),
}

impl Problem {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Matrix(_) => "matrix",
            Self::GroupEndo { .. } => "group_endo",
            Self::KData { .. } => "k_data",
            Self::Cuntz(_) => "cuntz",
            Self::Graph(_) => "graph",
        }
    }
}

pub fn parse(text: &str) -> Result<Problem, CliError> {
    let doc: Value = serde_json::from_str(text)?;
    let obj = object(&doc, "$")?;
    let kind = obj.get("kind").ok_or_else(|| CliError::schema("$", "missing key \"kind\""))?;
    let kind = kind.as_str().ok_or_else(|| CliError::schema("$.kind", "expected a string"))?;
    match kind {
        "matrix" => {
            keys(obj, "$", &["kind", "rows"], &["cols"])?;
            let cols = obj.get("cols").map(|v| size(v, "$.cols")).transpose()?;
            Ok(Problem::Matrix(matrix(&obj["rows"], "$.rows", cols)?))
        }
        "group_endo" => {
            keys(obj, "$", &["kind", "generators", "relations", "endomorphism"], &[])?;
            let base = presentation(obj, "$")?;
            let g = base.generators();
            let endomorphism = matrix(&obj["endomorphism"], "$.endomorphism", Some(g))?;
            if endomorphism.rows() != g {
                return Err(CliError::schema("$.endomorphism", format!("expected {g} rows, found {}", endomorphism.rows())));
            }
            Ok(Problem::GroupEndo { base, endomorphism })
        }
        "k_data" => {
            keys(obj, "$", &["kind", "k0", "k1", "map0", "map1"], &["multiplier"])?;
            let k0 = group_object(&obj["k0"], "$.k0")?;
            let k1 = group_object(&obj["k1"], "$.k1")?;
            let map0 = square(&obj["map0"], "$.map0", k0.generators())?;
            let map1 = square(&obj["map1"], "$.map1", k1.generators())?;
            let multiplier = obj.get("multiplier").map(|v| integer(v, "$.multiplier")).transpose()?;
            Ok(Problem::KData { k0, k1, map0, map1, multiplier })
        }
        "cuntz" => {
            if obj.contains_key("cases") {
                keys(obj, "$", &["kind", "cases"], &[])?;
                let cases = array(&obj["cases"], "$.cases")?;
                let parsed = cases
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let path = format!("$.cases[{i}]");
                        let o = object(c, &path)?;
                        keys(o, &path, &["n", "m"], &[])?;
                        cuntz_case(o, &path)
                    })
                    .collect::<Result<_, _>>()?;
                Ok(Problem::Cuntz(parsed))
            } else {
                keys(obj, "$", &["kind", "n", "m"], &[])?;
                Ok(Problem::Cuntz(vec![cuntz_case(obj, "$")?]))
            }
        }
        "graph" => {
            keys(obj, "$", &["kind", "vertices", "adjacency"], &[])?;
            let names = array(&obj["vertices"], "$.vertices")?
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    v.as_str()
                        .map(String::from)
                        .ok_or_else(|| CliError::schema(format!("$.vertices[{i}]"), "expected a string"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let adjacency = square(&obj["adjacency"], "$.adjacency", names.len())?;
            Ok(Problem::Graph(Graph::new(names, adjacency)?))
        }
        other => Err(CliError::schema(
            "$.kind",
            format!("unknown kind {other:?} (expected matrix, group_endo, k_data, cuntz or graph)"),
        )),
    }
}

/// `inf` or an integer, as given on the command line.
pub fn cuntz_index_arg(s: &str) -> Result<CuntzIndex, CliError> {
    if s == "inf" {
        return Ok(CuntzIndex::Infinite);
    }
    decimal(s).map(CuntzIndex::Finite).ok_or_else(|| CliError::Usage(format!("expected an integer or \"inf\", got {s:?}")))
}

pub fn integer_arg(s: &str) -> Result<BigInt, CliError> {
    decimal(s).ok_or_else(|| CliError::Usage(format!("expected an integer, got {s:?}")))
}

fn cuntz_case(o: &Map<String, Value>, path: &str) -> Result<(CuntzIndex, BigInt), CliError> {
    let n_path = format!("{path}.n");
    let n = match o.get("n") {
        Some(Value::Null) => CuntzIndex::Infinite,
        Some(v) => CuntzIndex::Finite(integer(v, &n_path)?),
        None => return Err(CliError::schema(path, "missing key \"n\"")),
    };
    Ok((n, integer(&o["m"], &format!("{path}.m"))?))
}

fn presentation(o: &Map<String, Value>, path: &str) -> Result<Presentation, CliError> {
    let g = size(&o["generators"], &format!("{path}.generators"))?;
    let relations = matrix(&o["relations"], &format!("{path}.relations"), Some(g))?;
    Ok(Presentation::new(g, relations)?)
}

fn group_object(v: &Value, path: &str) -> Result<Presentation, CliError> {
    let o = object(v, path)?;
    keys(o, path, &["generators", "relations"], &[])?;
    presentation(o, path)
}

fn square(v: &Value, path: &str, n: usize) -> Result<IntMatrix, CliError> {
    let m = matrix(v, path, Some(n))?;
    if m.rows() != n {
        return Err(CliError::schema(path, format!("expected {n} rows, found {}", m.rows())));
    }
    Ok(m)
}

/// Rows of integers; all rows must have `cols` entries (or the first row's length).
fn matrix(v: &Value, path: &str, cols: Option<usize>) -> Result<IntMatrix, CliError> {
    let rows = array(v, path)?;
    let width = match (cols, rows.first()) {
        (Some(c), _) => c,
        (None, Some(first)) => array(first, &format!("{path}[0]"))?.len(),
        (None, None) => return Err(CliError::schema(path, "empty matrix needs an explicit \"cols\"")),
    };
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row_path = format!("{path}[{i}]");
        let entries = array(row, &row_path)?;
        if entries.len() != width {
            return Err(CliError::schema(&row_path, format!("expected {width} entries, found {}", entries.len())));
        }
        let row = entries
            .iter()
            .enumerate()
            .map(|(j, x)| integer(x, &format!("{row_path}[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        parsed.push(row);
    }
    Ok(IntMatrix::from_rows(width, parsed)?)
}

pub fn integer(v: &Value, path: &str) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => {
            let value = if let Some(i) = n.as_i64() {
                BigInt::from(i)
            } else if let Some(u) = n.as_u64() {
                BigInt::from(u)
            } else {
                return Err(CliError::schema(path, format!("{n} is not an integer")));
            };
            if value.abs() > BigInt::from(MAX_SAFE_INTEGER) {
                return Err(CliError::schema(path, "integers beyond 2^53 must be written as decimal strings"));
            }
            Ok(value)
        }
        Value::String(s) => decimal(s).ok_or_else(|| CliError::schema(path, format!("{s:?} is not a decimal integer"))),
        _ => Err(CliError::schema(path, "expected an integer")),
    }
}

fn decimal(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn size(v: &Value, path: &str) -> Result<usize, CliError> {
    let n = integer(v, path)?;
    if n.is_negative() {
        return Err(CliError::schema(path, "expected a nonnegative integer"));
    }
    n.to_usize().ok_or_else(|| CliError::schema(path, "too large"))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| CliError::schema(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| CliError::schema(path, "expected an array"))
}

fn keys(o: &Map<String, Value>, path: &str, required: &[&str], optional: &[&str]) -> Result<(), CliError> {
    if let Some(missing) = required.iter().find(|k| !o.contains_key(**k)) {
        return Err(CliError::schema(path, format!("missing key {missing:?}")));
    }
    if let Some(extra) = o.keys().find(|k| !required.contains(&k.as_str()) && !optional.contains(&k.as_str())) {
        return Err(CliError::schema(path, format!("unexpected key {extra:?}")));
    }
    Ok(())
}
