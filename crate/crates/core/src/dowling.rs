//! Construction of `D_n(G,S)`, its bounded extension and the subposets `P_n(G,S,T)`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::GroupAction;
use crate::element::DowlingElement;
use crate::poset::{PosetError, RankedPoset};

pub const DEFAULT_MAX_ELEMENTS: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DowlingError {
    #[error("n must be at least 1")]
    ZeroN,
    #[error("n = {0} is too large (at most 64 points supported)")]
    NTooLarge(usize),
    #[error("projected element count {projected} exceeds the cap {cap}")]
    SizeLimitExceeded { projected: String, cap: usize },
    #[error("T = {0:?} is not invariant under the action")]
    NonInvariantT(Vec<usize>),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Which family a [`DowlingPoset`] belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetKind {
    Dowling,
    /// `P_n(G,S,T)` with sorted, invariant `T`.
    Subposet { t: Vec<usize> },
}

/// A node of a (possibly bounded) Dowling poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node<'a> {
    Element(&'a DowlingElement),
    Top,
}

/// A generated poset of partial G-partitions.
///
/// Indices `0..elements.len()` are Dowling elements sorted by `(rank, key)`,
/// so index 0 is the bottom. An adjoined top, if any, has index `elements.len()`.
#[derive(Debug, Clone)]
pub struct DowlingPoset {
    pub n: usize,
    pub action: Arc<GroupAction>,
    pub kind: PosetKind,
    elements: Vec<DowlingElement>,
    index: HashMap<DowlingElement, usize>,
    poset: RankedPoset,
}

impl DowlingPoset {
    pub fn poset(&self) -> &RankedPoset {
        &self.poset
    }

    pub fn elements(&self) -> &[DowlingElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> Option<&DowlingElement> {
        self.elements.get(i)
    }

    pub fn node(&self, i: usize) -> Node<'_> {
        match self.elements.get(i) {
            Some(e) => Node::Element(e),
            None => Node::Top,
        }
    }

    pub fn index_of(&self, e: &DowlingElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn top(&self) -> Option<usize> {
        self.poset.top()
    }

    pub fn is_bounded(&self) -> bool {
        self.poset.top().is_some()
    }

    pub fn t(&self) -> Option<&[usize]> {
        match &self.kind {
            PosetKind::Dowling => None,
            PosetKind::Subposet { t } => Some(t),
        }
    }

    /// Adds `1̂` above every maximal element.
    pub fn adjoin_top(&self) -> Result<DowlingPoset, DowlingError> {
        Ok(DowlingPoset {
            poset: self.poset.adjoin_top()?,
            ..self.clone()
        })
    }

    /// Renders node `i` in bracket notation (`1̂` for the adjoined top).
    pub fn render(&self, i: usize, ascii: bool) -> String {
        match self.node(i) {
            Node::Element(e) => e.render(&self.action, ascii),
            Node::Top => if ascii { "top" } else { "1̂" }.to_string(),
        }
    }

    fn from_elements(
        n: usize,
        action: Arc<GroupAction>,
        kind: PosetKind,
        mut elements: Vec<DowlingElement>,
        up: impl Fn(&[DowlingElement], &HashMap<DowlingElement, usize>) -> Vec<Vec<usize>>,
    ) -> Self {
        elements.sort_by_cached_key(|e| (e.rank(), e.canonical_key()));
        let index: HashMap<DowlingElement, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let up = up(&elements, &index);
        let rank = elements.iter().map(DowlingElement::rank).collect();
        DowlingPoset {
            n,
            action,
            kind,
            poset: RankedPoset::from_parts(up, rank, 0, None),
            elements,
            index,
        }
    }
}

/// Number of G-partitions of an `m`-set: `sum_j S(m,j) |G|^(m-j)`.
fn g_partitions(m: usize, g: usize) -> BigUint {
    // stirling[j] = S(i, j) built row by row
    let mut stirling = vec![BigUint::one()];
    for i in 1..=m {
        let mut next = vec![BigUint::zero(); i + 1];
        for j in 1..=i {
            let keep = if j < i { &stirling[j] * j } else { BigUint::zero() };
            next[j] = keep + &stirling[j - 1];
        }
        stirling = next;
    }
    (0..=m)
        .map(|j| &stirling[j] * BigUint::from(g).pow((m - j) as u32))
        .sum()
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Exact `|D_n(G,S)|`, from the decomposition by zero-block size.
pub fn projected_size(n: usize, group_order: usize, set_size: usize) -> BigUint {
    (0..=n)
        .map(|k| {
            binomial(n, k) * BigUint::from(set_size).pow(k as u32) * g_partitions(n - k, group_order)
        })
        .sum()
}

fn check_cap(projected: BigUint, cap: usize) -> Result<(), DowlingError> {
    match projected.to_usize() {
        Some(p) if p <= cap => Ok(()),
        _ => Err(DowlingError::SizeLimitExceeded {
            projected: projected.to_string(),
            cap,
        }),
    }
}

/// Generates `D_n(G,S)` breadth-first by rank from the bottom.
pub fn build_dowling(
    n: usize,
    action: Arc<GroupAction>,
    max_elements: usize,
) -> Result<DowlingPoset, DowlingError> {
    if n == 0 {
        return Err(DowlingError::ZeroN);
    }
    if n > 64 {
        return Err(DowlingError::NTooLarge(n));
    }
    check_cap(
        projected_size(n, action.group().order(), action.set_size()),
        max_elements,
    )?;
    let mut seen: HashMap<DowlingElement, ()> = HashMap::new();
    let mut all = Vec::new();
    let mut level = vec![DowlingElement::bottom(n)];
    seen.insert(level[0].clone(), ());
    while !level.is_empty() {
        let mut next = Vec::new();
        for x in &level {
            for y in x.upper_covers(&action) {
                if seen.insert(y.clone(), ()).is_none() {
                    next.push(y);
                }
            }
        }
        all.append(&mut level);
        level = next;
    }
    let act = action.clone();
    Ok(DowlingPoset::from_elements(
        n,
        action,
        PosetKind::Dowling,
        all,
        move |elements, index| {
            elements
                .iter()
                .map(|x| x.upper_covers(&act).iter().map(|y| index[y]).collect())
                .collect()
        },
    ))
}

/// Membership test for `P_n(G,S,T)`: no orbit outside `T` colors exactly one point.
pub fn in_subposet(x: &DowlingElement, orbits_outside_t: &[Vec<usize>]) -> bool {
    orbits_outside_t.iter().all(|orbit| {
        x.cells()
            .iter()
            .filter(|c| matches!(c, crate::element::Cell::Zero(s) if orbit.contains(&(*s as usize))))
            .count()
            != 1
    })
}

/// Induced subposet `P_n(G,S,T)` of `D_n(G,S)`, with covers recomputed inside
/// the filtered element set.
pub fn build_subposet(
    n: usize,
    action: Arc<GroupAction>,
    t: &[usize],
    max_elements: usize,
) -> Result<DowlingPoset, DowlingError> {
    let mut t: Vec<usize> = t.to_vec();
    t.sort_unstable();
    t.dedup();
    if !action.is_invariant(&t) {
        return Err(DowlingError::NonInvariantT(t));
    }
    let ambient = build_dowling(n, action.clone(), max_elements)?;
    let outside: Vec<Vec<usize>> = action
        .orbits()
        .into_iter()
        .filter(|o| !o.iter().any(|s| t.contains(s)))
        .collect();
    let keep: Vec<usize> = (0..ambient.elements.len())
        .filter(|&i| in_subposet(&ambient.elements[i], &outside))
        .collect();
    let elements: Vec<DowlingElement> = keep.iter().map(|&i| ambient.elements[i].clone()).collect();
    let amb = ambient.poset();
    let size = amb.len();
    let mut mask = fixedbitset::FixedBitSet::with_capacity(size);
    for &i in &keep {
        mask.insert(i);
    }
    let ambient_index = &ambient.index;
    Ok(DowlingPoset::from_elements(
        n,
        action,
        PosetKind::Subposet { t },
        elements,
        |elements, index| {
            elements
                .iter()
                .map(|x| {
                    let xi = ambient_index[x];
                    let mut strict = amb.above()[xi].clone();
                    strict.intersect_with(&mask);
                    strict.set(xi, false);
                    let mut shadow = fixedbitset::FixedBitSet::with_capacity(size);
                    for z in strict.ones() {
                        let mut a = amb.above()[z].clone();
                        a.set(z, false);
                        shadow.union_with(&a);
                    }
                    strict.difference_with(&shadow);
                    strict
                        .ones()
                        .map(|yi| index[&ambient.elements[yi]])
                        .collect()
                })
                .collect()
        },
    ))
}
