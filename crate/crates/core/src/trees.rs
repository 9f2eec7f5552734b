//! Increasing ordered trees with blooms.
//!
//! A tree stores, for every labeled node, the ordered list of its children;
//! a child is either another labeled node or a bloom. Labels strictly grow
//! away from the root.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};
use thiserror::Error;

/// Token standing for a bloom in the JSON and text forms.
pub const BLOOM_TOKEN: &str = "*";

pub const DEFAULT_MAX_TREES: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("malformed tree: {0}")]
    MalformedTree(String),
    #[error("projected tree count {projected} exceeds the cap {cap}")]
    SizeLimitExceeded { projected: String, cap: usize },
    #[error("nodes must be at least 1")]
    NoNodes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Child {
    Bloom,
    Node(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BloomingTree {
    labels: Vec<usize>,
    children: Vec<Vec<Child>>,
}

impl BloomingTree {
    /// A root with `q` blooms and nothing else.
    pub fn root(label: usize, q: usize) -> Self {
        Self {
            labels: vec![label],
            children: vec![vec![Child::Bloom; q]],
        }
    }

    /// Builds a tree from `(label, children)` pairs and validates its shape.
    pub fn from_children(mut nodes: Vec<(usize, Vec<Child>)>) -> Result<Self, TreeError> {
        nodes.sort_by_key(|(l, _)| *l);
        let (labels, children) = nodes.into_iter().unzip();
        let t = Self { labels, children };
        t.check_shape()?;
        Ok(t)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn root_label(&self) -> usize {
        self.labels[0]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    fn pos(&self, label: usize) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn children(&self, label: usize) -> Option<&[Child]> {
        self.pos(label).map(|p| self.children[p].as_slice())
    }

    pub fn blooms(&self, label: usize) -> usize {
        self.children(label)
            .map_or(0, |c| c.iter().filter(|c| **c == Child::Bloom).count())
    }

    /// The same tree with every label increased by `by`.
    pub fn shifted(&self, by: usize) -> Self {
        let bump = |c: &Child| match *c {
            Child::Bloom => Child::Bloom,
            Child::Node(v) => Child::Node(v + by),
        };
        Self {
            labels: self.labels.iter().map(|l| l + by).collect(),
            children: self
                .children
                .iter()
                .map(|cs| cs.iter().map(bump).collect())
                .collect(),
        }
    }

    /// Appends a child at the end of `label`'s children, creating `label` if needed.
    pub(crate) fn push_child(&mut self, label: usize, child: Child) {
        let p = match self.labels.binary_search(&label) {
            Ok(p) => p,
            Err(p) => {
                self.labels.insert(p, label);
                self.children.insert(p, Vec::new());
                p
            }
        };
        self.children[p].push(child);
        if let Child::Node(v) = child {
            if let Err(q) = self.labels.binary_search(&v) {
                self.labels.insert(q, v);
                self.children.insert(q, Vec::new());
            }
        }
    }

    pub(crate) fn pad_blooms(&mut self, label: usize, target: usize) {
        while self.blooms(label) < target {
            self.push_child(label, Child::Bloom);
        }
    }

    /// Parent of every non-root node, increasing labels, single root.
    fn check_shape(&self) -> Result<(), TreeError> {
        if self.labels.is_empty() {
            return Err(TreeError::MalformedTree("no nodes".into()));
        }
        if self.labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(TreeError::MalformedTree("repeated label".into()));
        }
        let mut seen = HashSet::new();
        for (u, cs) in self.labels.iter().zip(&self.children) {
            for c in cs {
                if let Child::Node(v) = *c {
                    if v <= *u {
                        return Err(TreeError::MalformedTree(format!(
                            "child {v} of {u} does not increase"
                        )));
                    }
                    if self.pos(v).is_none() {
                        return Err(TreeError::MalformedTree(format!("unknown node {v}")));
                    }
                    if !seen.insert(v) {
                        return Err(TreeError::MalformedTree(format!("node {v} has two parents")));
                    }
                }
            }
        }
        let root = self.labels[0];
        if seen.contains(&root) {
            return Err(TreeError::MalformedTree("root has a parent".into()));
        }
        if let Some(orphan) = self.labels[1..].iter().find(|l| !seen.contains(l)) {
            return Err(TreeError::MalformedTree(format!("node {orphan} has no parent")));
        }
        Ok(())
    }

    /// Shape check plus `q` blooms at the root and `r` at every other node.
    pub fn validate(&self, q: usize, r: usize) -> Result<(), TreeError> {
        self.check_shape()?;
        for &l in &self.labels {
            let want = if l == self.root_label() { q } else { r };
            let have = self.blooms(l);
            if have != want {
                return Err(TreeError::MalformedTree(format!(
                    "node {l} has {have} blooms, expected {want}"
                )));
            }
        }
        Ok(())
    }

    /// Labeled parent-child couples `(u, v)` with the number of blooms of `u`
    /// before `v`, ordered by `u` descending, then by position among the children.
    pub fn couples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (u, cs) in self.labels.iter().zip(&self.children).rev() {
            let mut blooms = 0;
            for c in cs {
                match *c {
                    Child::Bloom => blooms += 1,
                    Child::Node(v) => out.push((*u, v, blooms)),
                }
            }
        }
        out
    }

    fn node_json(&self, label: usize) -> Value {
        let cs: Vec<Value> = self
            .children(label)
            .unwrap_or(&[])
            .iter()
            .map(|c| match *c {
                Child::Bloom => Value::String(BLOOM_TOKEN.into()),
                Child::Node(v) => self.node_json(v),
            })
            .collect();
        json!({ "label": label, "children": cs })
    }

    /// Nested `{"label", "children"}` objects, blooms as `"*"`.
    pub fn to_json(&self) -> Value {
        self.node_json(self.root_label())
    }

    pub fn from_json(v: &Value) -> Result<Self, TreeError> {
        fn walk(
            v: &Value,
            out: &mut Vec<(usize, Vec<Child>)>,
            depth: usize,
        ) -> Result<usize, TreeError> {
            if depth > 10_000 {
                return Err(TreeError::MalformedTree("nesting too deep".into()));
            }
            let bad = |m: &str| TreeError::MalformedTree(m.to_string());
            let obj = v.as_object().ok_or_else(|| bad("node must be an object"))?;
            let label = obj
                .get("label")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("node needs a non-negative integer \"label\""))?
                as usize;
            let cs = obj
                .get("children")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("node needs a \"children\" array"))?;
            let mut children = Vec::with_capacity(cs.len());
            for c in cs {
                if c.as_str() == Some(BLOOM_TOKEN) {
                    children.push(Child::Bloom);
                } else {
                    children.push(Child::Node(walk(c, out, depth + 1)?));
                }
            }
            out.push((label, children));
            Ok(label)
        }
        let mut nodes = Vec::new();
        let root = walk(v, &mut nodes, 0)?;
        let t = Self::from_children(nodes)?;
        if t.root_label() != root {
            return Err(TreeError::MalformedTree("outermost node is not the minimum".into()));
        }
        Ok(t)
    }

    fn fmt_node(&self, label: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{label}")?;
        let cs = self.children(label).unwrap_or(&[]);
        if cs.is_empty() {
            return Ok(());
        }
        write!(f, "(")?;
        for (i, c) in cs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match *c {
                Child::Bloom => write!(f, "{BLOOM_TOKEN}")?,
                Child::Node(v) => self.fmt_node(v, f)?,
            }
        }
        write!(f, ")")
    }
}

/// Compact text form, e.g. `0(*,*,3(*),*,1(2(*),*,4(*)))`.
impl fmt::Display for BloomingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_node(self.root_label(), f)
    }
}

/// `∏_{i=0}^{nodes-2} (q + 1 + (r + 2) i)`.
pub fn count_blooming(nodes: usize, q: usize, r: usize) -> BigUint {
    (0..nodes.saturating_sub(1))
        .map(|i| BigUint::from(q + 1 + (r + 2) * i))
        .fold(BigUint::one(), |a, b| a * b)
}

/// All `(q, r)`-blooming trees on labels `0..nodes`, by inserting the
/// largest label with its `r` blooms into every child slot of a smaller tree.
pub fn enumerate_blooming(
    nodes: usize,
    q: usize,
    r: usize,
    max_trees: usize,
) -> Result<Vec<BloomingTree>, TreeError> {
    if nodes == 0 {
        return Err(TreeError::NoNodes);
    }
    let projected = count_blooming(nodes, q, r);
    if projected.to_usize().is_none_or(|p| p > max_trees) {
        return Err(TreeError::SizeLimitExceeded {
            projected: projected.to_string(),
            cap: max_trees,
        });
    }
    let mut trees = vec![BloomingTree::root(0, q)];
    for j in 1..nodes {
        let mut next = Vec::new();
        for t in &trees {
            for p in 0..t.labels.len() {
                for slot in 0..=t.children[p].len() {
                    let mut u = t.clone();
                    u.children[p].insert(slot, Child::Node(j));
                    u.labels.push(j);
                    u.children.push(vec![Child::Bloom; r]);
                    next.push(u);
                }
            }
        }
        trees = next;
    }
    Ok(trees)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_node_increasing_trees() {
        let ts = enumerate_blooming(3, 0, 0, 100).unwrap();
        let shown: HashSet<String> = ts.iter().map(ToString::to_string).collect();
        let want: HashSet<String> = ["0(1(2))", "0(1,2)", "0(2,1)"].map(String::from).into();
        assert_eq!(shown, want);
        assert_eq!(ts.len(), 3);
    }

    #[test]
    fn counts_match_small_cases() {
        assert_eq!(count_blooming(3, 2, 1), BigUint::from(18u32));
        assert_eq!(count_blooming(4, 0, 0), BigUint::from(15u32));
        assert_eq!(count_blooming(1, 7, 7), BigUint::one());
        assert_eq!(enumerate_blooming(3, 2, 1, 100).unwrap().len(), 18);
        assert_eq!(enumerate_blooming(1, 3, 2, 100).unwrap(), vec![BloomingTree::root(0, 3)]);
    }

    #[test]
    fn enumeration_respects_cap() {
        assert!(matches!(
            enumerate_blooming(6, 3, 3, 10),
            Err(TreeError::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let t = BloomingTree::from_children(vec![
            (0, vec![Child::Bloom, Child::Bloom, Child::Node(3), Child::Bloom, Child::Node(1)]),
            (1, vec![Child::Node(2), Child::Bloom, Child::Node(4)]),
            (2, vec![Child::Bloom]),
            (3, vec![Child::Bloom]),
            (4, vec![Child::Bloom]),
        ])
        .unwrap();
        assert_eq!(t.to_string(), "0(*,*,3(*),*,1(2(*),*,4(*)))");
        t.validate(3, 1).unwrap();
        assert!(t.validate(2, 1).is_err());
        assert_eq!(BloomingTree::from_json(&t.to_json()).unwrap(), t);
        assert_eq!(
            t.couples(),
            vec![(1, 2, 0), (1, 4, 1), (0, 3, 2), (0, 1, 3)]
        );
    }

    #[test]
    fn malformed_trees_are_rejected() {
        let dec = BloomingTree::from_children(vec![(0, vec![Child::Node(2)]), (2, vec![Child::Node(1)]), (1, vec![])]);
        assert!(matches!(dec, Err(TreeError::MalformedTree(_))));
        let orphan = BloomingTree::from_children(vec![(0, vec![]), (1, vec![])]);
        assert!(matches!(orphan, Err(TreeError::MalformedTree(_))));
        let twice = BloomingTree::from_children(vec![
            (0, vec![Child::Node(2), Child::Node(1)]),
            (1, vec![Child::Node(2)]),
            (2, vec![]),
        ]);
        assert!(matches!(twice, Err(TreeError::MalformedTree(_))));
        assert!(BloomingTree::from_json(&json!({"label": 0})).is_err());
    }
}
