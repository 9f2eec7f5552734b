//! Exhaustive EL-labeling verification over every closed interval.
//!
//! For each lower endpoint `x` two passes run over the up-set of `x`:
//! a forward dynamic program computing the lexicographically least maximal
//! chain `x -> z` for every `z`, and a depth-first walk along strictly
//! increasing labels counting the increasing maximal chains `x -> z`.
//! `[x, z]` passes when there is exactly one increasing chain and its word is
//! the least word. Lower endpoints are processed in parallel and the results
//! are merged in index order, so the report does not depend on the thread count.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::labeling::{EdgeLabel, EdgeLabels};
use crate::poset::RankedPoset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElError {
    #[error("poset is not bounded")]
    NotBounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FailureReason {
    NoIncreasing,
    MultipleIncreasing,
    NotLexFirst,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalFailure {
    pub bottom: usize,
    pub top: usize,
    pub reason: FailureReason,
    /// Lexicographically least chain first, then up to two increasing chains.
    pub witnesses: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElReport {
    pub passed: bool,
    pub intervals_checked: usize,
    pub failures: Vec<IntervalFailure>,
    pub decreasing_chain_count: usize,
}

fn check_from(poset: &RankedPoset, labels: &EdgeLabels, x: usize) -> (usize, Vec<IntervalFailure>) {
    let n = poset.len();
    let up = &poset.above()[x];
    let mut members: Vec<usize> = up.ones().collect();
    members.sort_by_key(|&z| (poset.rank_of(z), z));

    // least word to each z and the predecessor realizing it
    let mut best: Vec<Option<(Vec<EdgeLabel>, usize)>> = vec![None; n];
    best[x] = Some((Vec::new(), x));
    for &z in &members {
        if z == x {
            continue;
        }
        let mut cand: Option<(Vec<EdgeLabel>, usize)> = None;
        for &w in poset.down(z) {
            let Some((wword, _)) = &best[w] else { continue };
            let i = poset.up(w).binary_search(&z).expect("cover");
            let mut word = wword.clone();
            word.push(labels.at(w, i));
            if cand.as_ref().is_none_or(|(c, _)| word < *c) {
                cand = Some((word, w));
            }
        }
        best[z] = cand;
    }

    // increasing chains from x
    let mut inc_count = vec![0usize; n];
    let mut inc_paths: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    let mut path = vec![x];
    let mut last: Vec<Option<EdgeLabel>> = vec![None];
    let mut cursor = vec![0usize];
    while let Some(&node) = path.last() {
        let i = *cursor.last().unwrap();
        if i == 0 && node != x {
            inc_count[node] += 1;
            if inc_paths[node].len() < 2 {
                inc_paths[node].push(path.clone());
            }
        }
        let prev = *last.last().unwrap();
        let ups = poset.up(node);
        let next = (i..ups.len()).find(|&j| prev.is_none_or(|p| labels.at(node, j) > p));
        match next {
            Some(j) => {
                *cursor.last_mut().unwrap() = j + 1;
                path.push(ups[j]);
                last.push(Some(labels.at(node, j)));
                cursor.push(0);
            }
            None => {
                path.pop();
                last.pop();
                cursor.pop();
            }
        }
    }

    let chain_to = |z: usize| -> Vec<usize> {
        let mut c = vec![z];
        let mut cur = z;
        while cur != x {
            cur = best[cur].as_ref().unwrap().1;
            c.push(cur);
        }
        c.reverse();
        c
    };

    let mut failures = Vec::new();
    let mut checked = 0;
    for &z in &members {
        if z == x {
            continue;
        }
        checked += 1;
        let least = &best[z].as_ref().expect("reachable").0;
        let reason = match inc_count[z] {
            0 => Some(FailureReason::NoIncreasing),
            1 => {
                let word = labels.word(poset, &inc_paths[z][0]);
                (word != *least).then_some(FailureReason::NotLexFirst)
            }
            _ => Some(FailureReason::MultipleIncreasing),
        };
        if let Some(reason) = reason {
            let mut witnesses = vec![chain_to(z)];
            witnesses.extend(inc_paths[z].iter().cloned());
            failures.push(IntervalFailure {
                bottom: x,
                top: z,
                reason,
                witnesses,
            });
        }
    }
    (checked, failures)
}

/// Checks the EL property on every interval `[x, y]`, `x < y`, of a bounded poset.
pub fn verify_el(poset: &RankedPoset, labels: &EdgeLabels) -> Result<ElReport, ElError> {
    if poset.top().is_none() {
        return Err(ElError::NotBounded);
    }
    poset.above();
    let results: Vec<(usize, Vec<IntervalFailure>)> = (0..poset.len())
        .into_par_iter()
        .map(|x| check_from(poset, labels, x))
        .collect();
    let mut intervals_checked = 0;
    let mut failures = Vec::new();
    for (c, f) in results {
        intervals_checked += c;
        failures.extend(f);
    }
    failures.sort_by_key(|f| (f.bottom, f.top));
    let decreasing_chain_count = count_decreasing_chains(poset, labels)?;
    Ok(ElReport {
        passed: failures.is_empty(),
        intervals_checked,
        failures,
        decreasing_chain_count,
    })
}

fn walk_decreasing(
    poset: &RankedPoset,
    labels: &EdgeLabels,
    mut visit: impl FnMut(&[usize]),
) -> Result<(), ElError> {
    let top = poset.top().ok_or(ElError::NotBounded)?;
    let start = poset.bottom();
    if start == top {
        visit(&[start]);
        return Ok(());
    }
    let mut path = vec![start];
    let mut last: Vec<Option<EdgeLabel>> = vec![None];
    let mut cursor = vec![0usize];
    while let Some(&node) = path.last() {
        if node == top {
            visit(&path);
            path.pop();
            last.pop();
            cursor.pop();
            continue;
        }
        let i = *cursor.last().unwrap();
        let prev = *last.last().unwrap();
        let ups = poset.up(node);
        let next = (i..ups.len()).find(|&j| prev.is_none_or(|p| labels.at(node, j) <= p));
        match next {
            Some(j) => {
                *cursor.last_mut().unwrap() = j + 1;
                path.push(ups[j]);
                last.push(Some(labels.at(node, j)));
                cursor.push(0);
            }
            None => {
                path.pop();
                last.pop();
                cursor.pop();
            }
        }
    }
    Ok(())
}

/// Maximal `0̂ -> 1̂` chains with weakly decreasing label words, in
/// lexicographic order of index sequences.
pub fn decreasing_chains(poset: &RankedPoset, labels: &EdgeLabels) -> Result<Vec<Vec<usize>>, ElError> {
    let mut out = Vec::new();
    walk_decreasing(poset, labels, |c| out.push(c.to_vec()))?;
    Ok(out)
}

pub fn count_decreasing_chains(poset: &RankedPoset, labels: &EdgeLabels) -> Result<usize, ElError> {
    let mut count = 0;
    walk_decreasing(poset, labels, |_| count += 1)?;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::tests::{boolean2, chain};

    fn lab(tag: u8, a: i32) -> EdgeLabel {
        EdgeLabel { tag, a, b: -1 }
    }

    #[test]
    fn single_cover_passes() {
        let p = chain(1);
        let l = EdgeLabels::from_fn(&p, |_, _| lab(1, 2));
        let r = verify_el(&p, &l).unwrap();
        assert!(r.passed);
        assert_eq!(r.intervals_checked, 1);
        assert_eq!(r.decreasing_chain_count, 1);
    }

    #[test]
    fn boolean_lattice_with_atom_labels() {
        let p = boolean2();
        // label by the atom being added: 0->1 and 2->3 get 1, 0->2 and 1->3 get 2
        let l = EdgeLabels::from_fn(&p, |x, y| match (x, y) {
            (0, 1) | (2, 3) => lab(0, 1),
            _ => lab(0, 2),
        });
        let r = verify_el(&p, &l).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.intervals_checked, 5);
        assert_eq!(decreasing_chains(&p, &l).unwrap(), vec![vec![0, 2, 3]]);
    }

    #[test]
    fn constant_labels_fail_with_witnesses() {
        let p = boolean2();
        let l = EdgeLabels::from_fn(&p, |_, _| lab(0, 1));
        let r = verify_el(&p, &l).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].reason, FailureReason::NoIncreasing);
        assert_eq!((r.failures[0].bottom, r.failures[0].top), (0, 3));
        assert_eq!(r.decreasing_chain_count, 2);
    }

    #[test]
    fn increasing_chain_that_is_not_least() {
        let p = boolean2();
        // chain 0-1-3 reads (0,2)(0,3) increasing, chain 0-2-3 reads (0,1)(0,1)
        let l = EdgeLabels::from_fn(&p, |x, y| match (x, y) {
            (0, 1) => lab(0, 2),
            (1, 3) => lab(0, 3),
            _ => lab(0, 1),
        });
        let r = verify_el(&p, &l).unwrap();
        assert_eq!(r.failures[0].reason, FailureReason::NotLexFirst);
        assert_eq!(r.failures[0].witnesses, vec![vec![0, 2, 3], vec![0, 1, 3]]);
    }

    #[test]
    fn multiple_increasing_chains() {
        let p = boolean2();
        let l = EdgeLabels::from_fn(&p, |x, _| if x == 0 { lab(0, 1) } else { lab(0, 2) });
        let r = verify_el(&p, &l).unwrap();
        assert_eq!(r.failures[0].reason, FailureReason::MultipleIncreasing);
    }

    #[test]
    fn unbounded_is_rejected() {
        let p = RankedPoset::from_parts(vec![vec![1, 2], vec![], vec![]], vec![0, 1, 1], 0, None);
        let l = EdgeLabels::from_fn(&p, |_, _| lab(0, 1));
        assert_eq!(verify_el(&p, &l), Err(ElError::NotBounded));
    }
}
