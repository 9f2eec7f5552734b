//! Decreasing maximal chains of `D̂_n(G,S)` under λ and blooming trees.
//!
//! Chains are passed as their Dowling elements from `0̂` up to a maximal
//! element of `D_n(G,S)`; the final `1̂` is implicit. Tree label `v >= 1`
//! stands for point `v` (1-based), label 0 for the color root.

use thiserror::Error;

use crate::algebra::GroupAction;
use crate::dowling::{DowlingPoset, Node};
use crate::element::DowlingElement;
use crate::labeling::{classify, lambda_of, CoverKind, EdgeLabel, LabelError};
use crate::trees::{BloomingTree, Child, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("the bijection needs |G| >= 2 and |S| = 0 or |S| >= 2 (got |G| = {group_order}, |S| = {set_size})")]
    UnsupportedCase { group_order: usize, set_size: usize },
    #[error("label word is not weakly decreasing at edge {0}")]
    NotDecreasing(usize),
    #[error("not a maximal chain: {0}")]
    NotAChain(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

impl From<LabelError> for BijectionError {
    fn from(e: LabelError) -> Self {
        BijectionError::NotAChain(e.to_string())
    }
}

fn check_case(action: &GroupAction) -> Result<(), BijectionError> {
    let (g, m) = (action.group().order(), action.set_size());
    if g < 2 || m == 1 {
        return Err(BijectionError::UnsupportedCase {
            group_order: g,
            set_size: m,
        });
    }
    Ok(())
}

/// Classified edges of a chain, the edge into `1̂` included.
pub fn chain_edges(
    chain: &[DowlingElement],
    action: &GroupAction,
) -> Result<Vec<CoverKind>, BijectionError> {
    let first = chain
        .first()
        .ok_or_else(|| BijectionError::NotAChain("empty chain".into()))?;
    let n = first.n();
    if *first != DowlingElement::bottom(n) {
        return Err(BijectionError::NotAChain("does not start at the bottom".into()));
    }
    let eps = usize::from(action.set_size() == 0);
    let last = chain.last().unwrap();
    if last.rank() != n - eps {
        return Err(BijectionError::NotAChain("does not end at a maximal element".into()));
    }
    let mut kinds = chain
        .windows(2)
        .map(|w| classify(action, Node::Element(&w[0]), Node::Element(&w[1])))
        .collect::<Result<Vec<_>, _>>()?;
    kinds.push(CoverKind::TopEdge);
    Ok(kinds)
}

pub fn chain_labels(
    chain: &[DowlingElement],
    action: &GroupAction,
) -> Result<Vec<EdgeLabel>, BijectionError> {
    Ok(chain_edges(chain, action)?.into_iter().map(lambda_of).collect())
}

fn check_decreasing(labels: &[EdgeLabel]) -> Result<(), BijectionError> {
    match labels.windows(2).position(|w| w[1] > w[0]) {
        Some(i) => Err(BijectionError::NotDecreasing(i + 1)),
        None => Ok(()),
    }
}

/// Tree of a λ-decreasing chain: a `(|S|-2, |G|-2)`-blooming tree on
/// `0..=n`, or a `(|G|-2, |G|-2)`-blooming tree on `1..=n` when `S` is empty.
pub fn psi(chain: &[DowlingElement], action: &GroupAction) -> Result<BloomingTree, BijectionError> {
    check_case(action)?;
    let kinds = chain_edges(chain, action)?;
    let labels: Vec<EdgeLabel> = kinds.iter().copied().map(lambda_of).collect();
    check_decreasing(&labels)?;
    let n = chain[0].n();
    let m = action.set_size();
    let k = action.group().order() - 1;
    let root = if m == 0 { 1 } else { 0 };
    let mut tree = BloomingTree::root(root, 0);

    let mut last_root_target = 0;
    for kind in &kinds {
        if let CoverKind::Colored { block_min, color } = *kind {
            let target = m - (color + 1);
            assert!(target >= last_root_target, "root bloom targets must not shrink");
            last_root_target = target;
            tree.pad_blooms(0, target);
            tree.push_child(0, Child::Node(block_min + 1));
        }
    }
    let mut last_target = vec![0usize; n + 1];
    for kind in &kinds {
        if let CoverKind::NonCoherent { min_a, min_b, alpha } = *kind {
            let u = min_a + 1;
            let target = k - alpha;
            assert!(target >= last_target[u], "bloom targets must not shrink");
            last_target[u] = target;
            tree.pad_blooms(u, target);
            tree.push_child(u, Child::Node(min_b + 1));
        }
    }
    let (q, r) = (if m == 0 { k - 1 } else { m - 2 }, k - 1);
    for label in root..=n {
        tree.pad_blooms(label, if label == root { q } else { r });
    }
    tree.validate(q, r)?;
    Ok(tree)
}

/// Inverse of [`psi`]: rebuilds the decreasing chain encoded by `tree`.
pub fn psi_inv(
    tree: &BloomingTree,
    n: usize,
    action: &GroupAction,
) -> Result<Vec<DowlingElement>, BijectionError> {
    check_case(action)?;
    let m = action.set_size();
    let k = action.group().order() - 1;
    let root = if m == 0 { 1 } else { 0 };
    let (q, r) = (if m == 0 { k - 1 } else { m - 2 }, k - 1);
    let expected: Vec<usize> = (root..=n).collect();
    if tree.labels() != expected.as_slice() {
        return Err(TreeError::MalformedTree(format!("labels must be {root}..={n}")).into());
    }
    tree.validate(q, r)?;

    let mut chain = vec![DowlingElement::bottom(n)];
    for (u, v, i) in tree.couples() {
        let want = if m > 0 && u == 0 {
            CoverKind::Colored {
                block_min: v - 1,
                color: m - i - 1,
            }
        } else {
            CoverKind::NonCoherent {
                min_a: u - 1,
                min_b: v - 1,
                alpha: k - i,
            }
        };
        let x = chain.last().unwrap();
        let y = x
            .upper_covers(action)
            .into_iter()
            .find(|y| classify(action, Node::Element(x), Node::Element(y)).ok() == Some(want))
            .ok_or_else(|| TreeError::MalformedTree(format!("no cover realizes couple ({u}, {v})")))?;
        chain.push(y);
    }
    let labels = chain_labels(&chain, action)?;
    check_decreasing(&labels)
        .map_err(|_| TreeError::MalformedTree("tree does not encode a decreasing chain".into()))?;
    Ok(chain)
}

/// Elements of a chain of poset indices, dropping an adjoined top.
pub fn chain_elements(poset: &DowlingPoset, chain: &[usize]) -> Vec<DowlingElement> {
    chain.iter().filter_map(|&i| poset.element(i).cloned()).collect()
}

/// Poset indices of a chain of elements, with the adjoined top appended when present.
pub fn chain_indices(poset: &DowlingPoset, chain: &[DowlingElement]) -> Option<Vec<usize>> {
    let mut out = chain
        .iter()
        .map(|e| poset.index_of(e))
        .collect::<Option<Vec<_>>>()?;
    out.extend(poset.top());
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;

    #[test]
    fn worked_example_roundtrips() {
        let a = GroupAction::trivial(FiniteGroup::cyclic(3), 5);
        let g = a.group();
        let el = |blocks: &[(Vec<usize>, Vec<usize>)], zero: &[(usize, usize)]| {
            DowlingElement::from_parts(4, g, blocks, zero)
        };
        let chain = vec![
            DowlingElement::bottom(4),
            el(&[(vec![0, 1], vec![0, 2]), (vec![2], vec![0]), (vec![3], vec![0])], &[]),
            el(&[(vec![0, 1, 3], vec![0, 2, 1]), (vec![2], vec![0])], &[]),
            el(&[(vec![0, 1, 3], vec![0, 2, 1])], &[(2, 2)]),
            el(&[], &[(0, 1), (1, 1), (2, 2), (3, 1)]),
        ];
        let labels: Vec<String> = chain_labels(&chain, &a).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(labels, ["(2,1,2)", "(2,1,1)", "(1,3)", "(1,2)", "(1,2)"]);
        let t = psi(&chain, &a).unwrap();
        assert_eq!(t.to_string(), "0(*,*,3(*),*,1(2(*),*,4(*)))");
        assert_eq!(psi_inv(&t, 4, &a).unwrap(), chain);
    }

    #[test]
    fn unsupported_cases() {
        let chain = vec![DowlingElement::bottom(1)];
        for a in [
            GroupAction::trivial(FiniteGroup::trivial(), 2),
            GroupAction::trivial(FiniteGroup::cyclic(2), 1),
        ] {
            assert!(matches!(psi(&chain, &a), Err(BijectionError::UnsupportedCase { .. })));
        }
    }

    #[test]
    fn increasing_chain_is_rejected() {
        let a = GroupAction::trivial(FiniteGroup::cyclic(2), 2);
        let g = a.group();
        let chain = vec![
            DowlingElement::bottom(2),
            DowlingElement::from_parts(2, g, &[(vec![0, 1], vec![0, 0])], &[]),
            DowlingElement::from_parts(2, g, &[], &[(0, 0), (1, 0)]),
        ];
        assert_eq!(psi(&chain, &a), Err(BijectionError::NotDecreasing(1)));
    }

    #[test]
    fn empty_s_uses_labels_from_one() {
        let a = GroupAction::trivial(FiniteGroup::cyclic(2), 0);
        let g = a.group();
        let chain = vec![
            DowlingElement::bottom(2),
            DowlingElement::from_parts(2, g, &[(vec![0, 1], vec![0, 1])], &[]),
        ];
        let t = psi(&chain, &a).unwrap();
        assert_eq!(t.to_string(), "1(2)");
        assert_eq!(psi_inv(&t, 2, &a).unwrap(), chain);
    }
}
