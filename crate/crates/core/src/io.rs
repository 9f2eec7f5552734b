//! JSON and DOT formats: group actions, poset dumps, elements and chains.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteGroup, GroupAction};
use crate::dowling::{DowlingPoset, PosetKind};
use crate::element::DowlingElement;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid group action: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("invalid element: {0}")]
    Element(String),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        // serde_json appends " at line L column C"; keep the message without it
        let message = match full.rfind(" at line ") {
            Some(p) => full[..p].to_string(),
            None => full,
        };
        IoError::Json {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionSpec {
    order: usize,
    mult: Vec<Vec<usize>>,
    set_size: usize,
    #[serde(default)]
    act: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    element_names: Option<Vec<String>>,
    #[serde(default)]
    color_names: Option<Vec<String>>,
}

/// Parses `{"order", "mult", "set_size", "act"}` with optional
/// `element_names` and `color_names`. `act` may be omitted when `set_size` is 0.
pub fn parse_action(text: &str) -> Result<GroupAction, IoError> {
    let spec: ActionSpec = serde_json::from_str(text)?;
    if spec.mult.len() != spec.order {
        return Err(AlgebraError::Shape {
            field: "mult".into(),
            expected: spec.order,
            found: spec.mult.len(),
        }
        .into());
    }
    let mut group = FiniteGroup::from_table(spec.mult)?;
    if let Some(names) = spec.element_names {
        group = group.with_names(names)?;
    }
    let act = match spec.act {
        Some(a) => a,
        None if spec.set_size == 0 => vec![Vec::new(); spec.order],
        None => {
            return Err(AlgebraError::Shape {
                field: "act".into(),
                expected: spec.order,
                found: 0,
            }
            .into())
        }
    };
    let mut action = GroupAction::new(group, spec.set_size, act)?;
    if let Some(names) = spec.color_names {
        action = action.with_color_names(names)?;
    }
    Ok(action)
}

/// Inverse of [`parse_action`]; names are always written.
pub fn action_to_json(action: &GroupAction) -> Value {
    let g = action.group();
    json!({
        "order": g.order(),
        "mult": g.table(),
        "set_size": action.set_size(),
        "act": action.table(),
        "element_names": g.names(),
        "color_names": action.color_names(),
    })
}

/// Integers that fit in `i64` become JSON numbers, larger ones decimal strings.
pub fn bigint_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

/// Points 1-based, colors as group or color-set indices:
/// `{"blocks": [[[point, g], ...], ...], "zero": [[point, s], ...]}`.
pub fn element_json(e: &DowlingElement) -> Value {
    let blocks: Vec<Value> = e
        .blocks()
        .iter()
        .map(|b| {
            Value::Array(
                b.members
                    .iter()
                    .zip(&b.colors)
                    .map(|(&i, &g)| json!([i + 1, g]))
                    .collect(),
            )
        })
        .collect();
    let zero: Vec<Value> = e.zero().iter().map(|&(i, s)| json!([i + 1, s])).collect();
    json!({ "blocks": blocks, "zero": zero })
}

fn pairs(v: &Value, what: &str) -> Result<Vec<(usize, usize)>, IoError> {
    let bad = || IoError::Element(format!("{what} must be a list of [point, color] pairs"));
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([a, b]) => Ok((
                a.as_u64().ok_or_else(bad)? as usize,
                b.as_u64().ok_or_else(bad)? as usize,
            )),
            _ => Err(bad()),
        })
        .collect()
}

/// Inverse of [`element_json`]; colorings need not be normalized.
pub fn element_from_json(v: &Value, n: usize, action: &GroupAction) -> Result<DowlingElement, IoError> {
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Element("element must be an object".into()))?;
    if let Some(k) = obj.keys().find(|k| *k != "blocks" && *k != "zero") {
        return Err(IoError::Element(format!("unknown key {k:?}")));
    }
    let empty = Value::Array(Vec::new());
    let mut seen = vec![false; n];
    let mut mark = |i: usize| -> Result<usize, IoError> {
        if i == 0 || i > n {
            return Err(IoError::Element(format!("point {i} out of range 1..={n}")));
        }
        if std::mem::replace(&mut seen[i - 1], true) {
            return Err(IoError::Element(format!("point {i} appears twice")));
        }
        Ok(i - 1)
    };
    let mut blocks = Vec::new();
    let raw_blocks = obj.get("blocks").unwrap_or(&empty);
    for b in raw_blocks
        .as_array()
        .ok_or_else(|| IoError::Element("blocks must be a list".into()))?
    {
        let ps = pairs(b, "a block")?;
        if ps.is_empty() {
            return Err(IoError::Element("blocks must be nonempty".into()));
        }
        let mut members = Vec::with_capacity(ps.len());
        let mut colors = Vec::with_capacity(ps.len());
        for (i, g) in ps {
            if g >= action.group().order() {
                return Err(IoError::Element(format!("group index {g} out of range")));
            }
            members.push(mark(i)?);
            colors.push(g);
        }
        blocks.push((members, colors));
    }
    let mut zero = Vec::new();
    for (i, s) in pairs(obj.get("zero").unwrap_or(&empty), "zero")? {
        if s >= action.set_size() {
            return Err(IoError::Element(format!("color index {s} out of range")));
        }
        zero.push((mark(i)?, s));
    }
    if let Some(i) = seen.iter().position(|&b| !b) {
        return Err(IoError::Element(format!("point {} is not covered", i + 1)));
    }
    Ok(DowlingElement::from_parts(n, action.group(), &blocks, &zero))
}

/// Chain as element objects plus their bracket renderings.
pub fn chain_json(chain: &[DowlingElement], action: &GroupAction, ascii: bool) -> Value {
    json!({
        "elements": chain.iter().map(element_json).collect::<Vec<_>>(),
        "render": chain.iter().map(|e| e.render(action, ascii)).collect::<Vec<_>>(),
    })
}

/// Reads `{"elements": [...]}` or a bare list of elements.
pub fn chain_from_json(v: &Value, n: usize, action: &GroupAction) -> Result<Vec<DowlingElement>, IoError> {
    let list = match v {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| IoError::Element("chain needs an \"elements\" list".into()))?,
        _ => return Err(IoError::Element("chain must be a list or an object".into())),
    };
    list.iter().map(|e| element_from_json(e, n, action)).collect()
}

/// Elements in bracket notation with ranks, and the cover edge list.
pub fn poset_json(p: &DowlingPoset, ascii: bool) -> Value {
    let q = p.poset();
    let elements: Vec<Value> = (0..q.len())
        .map(|i| {
            json!({
                "index": i,
                "label": p.render(i, ascii),
                "rank": q.rank_of(i),
            })
        })
        .collect();
    let covers: Vec<Value> = q.cover_edges().map(|(x, y)| json!([x, y])).collect();
    let (kind, t) = match &p.kind {
        PosetKind::Dowling => ("dowling", Value::Null),
        PosetKind::Subposet { t } => ("subposet", json!(t)),
    };
    json!({
        "kind": kind,
        "T": t,
        "n": p.n,
        "group_order": p.action.group().order(),
        "set_size": p.action.set_size(),
        "bounded": p.is_bounded(),
        "rank": q.rank(),
        "num_elements": q.len(),
        "num_covers": q.num_covers(),
        "elements": elements,
        "covers": covers,
    })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram with one `rank=same` layer per rank, bottom at the bottom.
pub fn poset_dot(p: &DowlingPoset, ascii: bool) -> String {
    let q = p.poset();
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n  edge [arrowhead=none];\n");
    for r in 0..=q.rank() {
        let layer: Vec<String> = (0..q.len())
            .filter(|&i| q.rank_of(i) == r)
            .map(|i| format!("n{i}"))
            .collect();
        if !layer.is_empty() {
            let _ = writeln!(s, "  {{ rank=same; {}; }}", layer.join("; "));
        }
    }
    for i in 0..q.len() {
        let _ = writeln!(s, "  n{i} [label=\"{}\"];", dot_escape(&p.render(i, ascii)));
    }
    for (x, y) in q.cover_edges() {
        let _ = writeln!(s, "  n{x} -> n{y};");
    }
    s.push_str("}\n");
    s
}
