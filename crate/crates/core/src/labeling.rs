//! Edge types of the Hasse diagram and the labelings λ and μ.
//!
//! Points appear 1-based in labels, matching the bracket notation. The
//! discrepancy α of a non-coherent merge is stored as its index in the order
//! `1 < 2 < ... < |G|-1` of `G \ {e}`, never as a group element.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::GroupAction;
use crate::dowling::{DowlingPoset, Node};
use crate::element::DowlingElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("({0}, {1}) is not a cover")]
    NotACover(String, String),
    #[error("edge out of the adjoined top")]
    FromTop,
}

/// Classification of a cover `x ⋖ y`. Points are 0-based and `min_a < min_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverKind {
    Coherent { min_a: usize, min_b: usize },
    NonCoherent { min_a: usize, min_b: usize, alpha: usize },
    Colored { block_min: usize, color: usize },
    TopEdge,
}

/// Three-field label compared lexicographically; `b = -1` when absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeLabel {
    pub tag: u8,
    pub a: i32,
    pub b: i32,
}

impl EdgeLabel {
    pub const TOP: EdgeLabel = EdgeLabel { tag: 1, a: 2, b: -1 };

    pub fn coherent(a: usize) -> Self {
        Self { tag: 0, a: a as i32, b: -1 }
    }

    pub fn colored(k: usize) -> Self {
        Self { tag: 1, a: k as i32, b: -1 }
    }

    pub fn non_coherent(min_c: usize, alpha: usize) -> Self {
        Self {
            tag: 2,
            a: min_c as i32,
            b: alpha as i32,
        }
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b < 0 {
            write!(f, "({},{})", self.tag, self.a)
        } else {
            write!(f, "({},{},{})", self.tag, self.a, self.b)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Labeling {
    Lambda,
    Mu,
}

impl std::str::FromStr for Labeling {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lambda" => Ok(Self::Lambda),
            "mu" => Ok(Self::Mu),
            other => Err(format!("unknown labeling {other:?} (expected lambda or mu)")),
        }
    }
}

fn not_a_cover(x: &DowlingElement, y: &DowlingElement) -> LabelError {
    LabelError::NotACover(format!("{:?}", x.cells()), format!("{:?}", y.cells()))
}

/// Determines the type of the cover `x ⋖ y` from the data of both elements.
pub fn classify(
    action: &GroupAction,
    x: Node<'_>,
    y: Node<'_>,
) -> Result<CoverKind, LabelError> {
    let (x, y) = match (x, y) {
        (Node::Top, _) => return Err(LabelError::FromTop),
        (Node::Element(_), Node::Top) => return Ok(CoverKind::TopEdge),
        (Node::Element(x), Node::Element(y)) => (x, y),
    };
    if x.n() != y.n() || y.rank() != x.rank() + 1 || !x.leq(y, action) {
        return Err(not_a_cover(x, y));
    }
    let xb = x.blocks();
    let yb = y.blocks();
    if yb.len() + 1 == xb.len() && x.zero().len() == y.zero().len() {
        // merge: exactly one block of y is not a block of x
        let c = yb
            .iter()
            .find(|c| !xb.iter().any(|b| b.members == c.members))
            .ok_or_else(|| not_a_cover(x, y))?;
        let parts: Vec<_> = xb.iter().filter(|b| c.members.contains(&b.min())).collect();
        if parts.len() != 2 {
            return Err(not_a_cover(x, y));
        }
        let (min_a, min_b) = (parts[0].min(), parts[1].min());
        // c is normalized with c(min C) = c(min A) = e, so α = c(min B)
        let alpha = c.color_of(min_b).expect("min B lies in C");
        return Ok(if alpha == 0 {
            CoverKind::Coherent { min_a, min_b }
        } else {
            CoverKind::NonCoherent { min_a, min_b, alpha }
        });
    }
    if yb.len() + 1 == xb.len() {
        let b = xb
            .iter()
            .find(|b| y.zero_color(b.min()).is_some())
            .ok_or_else(|| not_a_cover(x, y))?;
        let color = y.zero_color(b.min()).unwrap();
        return Ok(CoverKind::Colored {
            block_min: b.min(),
            color,
        });
    }
    Err(not_a_cover(x, y))
}

/// λ on an already classified edge.
pub fn lambda_of(kind: CoverKind) -> EdgeLabel {
    match kind {
        CoverKind::Coherent { min_b, .. } => EdgeLabel::coherent(min_b + 1),
        CoverKind::NonCoherent { min_a, alpha, .. } => EdgeLabel::non_coherent(min_a + 1, alpha),
        CoverKind::Colored { color, .. } => EdgeLabel::colored(color + 1),
        CoverKind::TopEdge => EdgeLabel::TOP,
    }
}

/// μ on an already classified edge out of `x`: colored edges favor colors
/// already present in the zero block of `x`.
pub fn mu_of(kind: CoverKind, x: Node<'_>) -> EdgeLabel {
    match (kind, x) {
        (CoverKind::Colored { color, .. }, Node::Element(x)) => {
            let used = x.zero_image();
            if used.contains(&color) {
                EdgeLabel::colored(used.iter().filter(|&&r| r <= color).count())
            } else {
                // |S_{<=s} ∪ S(x)| = (s + 1) + |{r in S(x) : r > s}|
                EdgeLabel::colored(color + 1 + used.iter().filter(|&&r| r > color).count())
            }
        }
        _ => lambda_of(kind),
    }
}

pub fn label_lambda(
    action: &GroupAction,
    x: Node<'_>,
    y: Node<'_>,
) -> Result<EdgeLabel, LabelError> {
    classify(action, x, y).map(lambda_of)
}

pub fn label_mu(action: &GroupAction, x: Node<'_>, y: Node<'_>) -> Result<EdgeLabel, LabelError> {
    classify(action, x, y).map(|k| mu_of(k, x))
}

pub fn label(
    labeling: Labeling,
    action: &GroupAction,
    x: Node<'_>,
    y: Node<'_>,
) -> Result<EdgeLabel, LabelError> {
    match labeling {
        Labeling::Lambda => label_lambda(action, x, y),
        Labeling::Mu => label_mu(action, x, y),
    }
}

/// Labels of every cover, aligned with `poset.up(x)`.
#[derive(Debug, Clone)]
pub struct EdgeLabels {
    labels: Vec<Vec<EdgeLabel>>,
}

impl EdgeLabels {
    pub fn from_fn(
        poset: &crate::poset::RankedPoset,
        mut f: impl FnMut(usize, usize) -> EdgeLabel,
    ) -> Self {
        Self {
            labels: (0..poset.len())
                .map(|x| poset.up(x).iter().map(|&y| f(x, y)).collect())
                .collect(),
        }
    }

    pub fn for_poset(p: &DowlingPoset, labeling: Labeling) -> Result<Self, LabelError> {
        let poset = p.poset();
        let labels = (0..poset.len())
            .map(|x| {
                poset
                    .up(x)
                    .iter()
                    .map(|&y| label(labeling, &p.action, p.node(x), p.node(y)))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { labels })
    }

    /// Label of the `i`-th upper cover of `x`.
    #[inline]
    pub fn at(&self, x: usize, i: usize) -> EdgeLabel {
        self.labels[x][i]
    }

    pub fn of(&self, poset: &crate::poset::RankedPoset, x: usize, y: usize) -> Option<EdgeLabel> {
        poset
            .up(x)
            .binary_search(&y)
            .ok()
            .map(|i| self.labels[x][i])
    }

    pub fn word(&self, poset: &crate::poset::RankedPoset, chain: &[usize]) -> Vec<EdgeLabel> {
        chain
            .windows(2)
            .map(|w| self.of(poset, w[0], w[1]).expect("chain of covers"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteGroup;
    use crate::presets;

    fn el(
        a: &GroupAction,
        n: usize,
        blocks: &[(Vec<usize>, Vec<usize>)],
        zero: &[(usize, usize)],
    ) -> DowlingElement {
        DowlingElement::from_parts(n, a.group(), blocks, zero)
    }

    #[test]
    fn coherent_merge() {
        let a = GroupAction::trivial(FiniteGroup::cyclic(2), 0);
        let x = DowlingElement::bottom(3);
        let y = el(&a, 3, &[(vec![0, 2], vec![0, 0]), (vec![1], vec![0])], &[]);
        let k = classify(&a, Node::Element(&x), Node::Element(&y)).unwrap();
        assert_eq!(k, CoverKind::Coherent { min_a: 0, min_b: 2 });
        assert_eq!(lambda_of(k), EdgeLabel::coherent(3));
    }

    #[test]
    fn non_coherent_merge_reports_alpha() {
        let a = GroupAction::trivial(FiniteGroup::cyclic(2), 0);
        let x = DowlingElement::bottom(2);
        let y = el(&a, 2, &[(vec![0, 1], vec![0, 1])], &[]);
        let k = classify(&a, Node::Element(&x), Node::Element(&y)).unwrap();
        assert_eq!(k, CoverKind::NonCoherent { min_a: 0, min_b: 1, alpha: 1 });
        assert_eq!(lambda_of(k), EdgeLabel::non_coherent(1, 1));
    }

    #[test]
    fn colored_edge_and_top_edge() {
        let a = GroupAction::trivial(FiniteGroup::trivial(), 3);
        let x = DowlingElement::bottom(1);
        let y = el(&a, 1, &[], &[(0, 2)]);
        let k = classify(&a, Node::Element(&x), Node::Element(&y)).unwrap();
        assert_eq!(k, CoverKind::Colored { block_min: 0, color: 2 });
        assert_eq!(lambda_of(k), EdgeLabel::colored(3));
        assert_eq!(
            label_lambda(&a, Node::Element(&y), Node::Top).unwrap(),
            EdgeLabel { tag: 1, a: 2, b: -1 }
        );
    }

    #[test]
    fn non_cover_is_rejected() {
        let a = GroupAction::trivial(FiniteGroup::trivial(), 1);
        let x = DowlingElement::bottom(2);
        let y = el(&a, 2, &[], &[(0, 0), (1, 0)]);
        assert!(matches!(
            classify(&a, Node::Element(&x), Node::Element(&y)),
            Err(LabelError::NotACover(..))
        ));
    }

    #[test]
    fn mu_counts_used_colors() {
        let a = GroupAction::trivial(FiniteGroup::trivial(), 3);
        // x = [1 | 2 || 3_s2], coloring block {1} by s2 (already used) and by s1, s3
        let x = el(&a, 3, &[(vec![0], vec![0]), (vec![1], vec![0])], &[(2, 1)]);
        let y_used = el(&a, 3, &[(vec![1], vec![0])], &[(0, 1), (2, 1)]);
        let y_s1 = el(&a, 3, &[(vec![1], vec![0])], &[(0, 0), (2, 1)]);
        let y_s3 = el(&a, 3, &[(vec![1], vec![0])], &[(0, 2), (2, 1)]);
        let mu = |y: &DowlingElement| label_mu(&a, Node::Element(&x), Node::Element(y)).unwrap();
        assert_eq!(mu(&y_used), EdgeLabel::colored(1));
        // s1 not in S(x) = {s2}: |{s1} ∪ {s2}| = 2
        assert_eq!(mu(&y_s1), EdgeLabel::colored(2));
        assert_eq!(mu(&y_s3), EdgeLabel::colored(3));
        // with S(x) empty μ agrees with λ
        let b = DowlingElement::bottom(1);
        let c = el(&a, 1, &[], &[(0, 1)]);
        assert_eq!(
            label_mu(&a, Node::Element(&b), Node::Element(&c)).unwrap(),
            label_lambda(&a, Node::Element(&b), Node::Element(&c)).unwrap()
        );
    }

    #[test]
    fn every_cover_classifies() {
        let act = std::sync::Arc::new(presets::z2_swap_fixed());
        let d = crate::dowling::build_dowling(2, act, 1000).unwrap().adjoin_top().unwrap();
        for (x, y) in d.poset().cover_edges() {
            classify(&d.action, d.node(x), d.node(y)).unwrap();
        }
    }

    #[test]
    fn label_order_is_lexicographic() {
        assert!(EdgeLabel::coherent(5) < EdgeLabel::colored(1));
        assert!(EdgeLabel::colored(2) == EdgeLabel::TOP);
        assert!(EdgeLabel::non_coherent(1, 1) < EdgeLabel::non_coherent(1, 2));
        assert!(EdgeLabel::non_coherent(1, 3) < EdgeLabel::non_coherent(2, 1));
        assert_eq!(EdgeLabel::non_coherent(1, 2).to_string(), "(2,1,2)");
    }
}
