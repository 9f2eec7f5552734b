//! Ranked posets given by their Hasse diagram.

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("poset already has an adjoined top")]
    AlreadyBounded,
    #[error("poset is not bounded")]
    NotBounded,
    #[error("poset is not graded: cover ({0}, {1}) has rank jump {2}")]
    NotGraded(usize, usize, i64),
    #[error("({0}, {1}) is not a cover")]
    NotACover(usize, usize),
    #[error("element index {0} out of range")]
    OutOfRange(usize),
}

/// Hasse diagram with a rank function and a unique bottom.
///
/// Up and down adjacency lists are sorted by index. Comparability is answered
/// from up-set / down-set bitsets built on first use.
#[derive(Debug)]
pub struct RankedPoset {
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    rank: Vec<usize>,
    bottom: usize,
    top: Option<usize>,
    above: OnceLock<Vec<FixedBitSet>>,
    below: OnceLock<Vec<FixedBitSet>>,
}

impl Clone for RankedPoset {
    fn clone(&self) -> Self {
        Self::from_parts(self.up.clone(), self.rank.clone(), self.bottom, self.top)
    }
}

impl RankedPoset {
    /// `up[x]` lists the upper covers of `x`; the rank function is given
    /// explicitly (checked by [`RankedPoset::check_graded`]).
    pub fn from_parts(
        mut up: Vec<Vec<usize>>,
        rank: Vec<usize>,
        bottom: usize,
        top: Option<usize>,
    ) -> Self {
        let n = up.len();
        let mut down = vec![Vec::new(); n];
        for (x, ys) in up.iter_mut().enumerate() {
            ys.sort_unstable();
            ys.dedup();
            for &y in ys.iter() {
                down[y].push(x);
            }
        }
        for d in &mut down {
            d.sort_unstable();
        }
        Self {
            up,
            down,
            rank,
            bottom,
            top,
            above: OnceLock::new(),
            below: OnceLock::new(),
        }
    }

    /// Builds a poset from covers, computing ranks by longest path from `bottom`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)], bottom: usize) -> Self {
        let mut up = vec![Vec::new(); n];
        for &(x, y) in covers {
            up[x].push(y);
        }
        let mut indeg = vec![0usize; n];
        for ys in &up {
            for &y in ys {
                indeg[y] += 1;
            }
        }
        let mut rank = vec![0usize; n];
        let mut stack: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        while let Some(x) = stack.pop() {
            for &y in &up[x] {
                rank[y] = rank[y].max(rank[x] + 1);
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        let maximal: Vec<usize> = (0..n).filter(|&x| up[x].is_empty()).collect();
        let top = (maximal.len() == 1).then(|| maximal[0]);
        Self::from_parts(up, rank, bottom, top)
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn up(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn down(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    pub fn rank_of(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    /// Maximum rank over all elements.
    pub fn rank(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.up[x].is_empty()).collect()
    }

    pub fn cover_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    pub fn num_covers(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.up[x].binary_search(&y).is_ok()
    }

    /// Adjoins a new maximum covering exactly the current maximal elements.
    pub fn adjoin_top(&self) -> Result<RankedPoset, PosetError> {
        if self.top.is_some() {
            return Err(PosetError::AlreadyBounded);
        }
        let t = self.len();
        let mut up = self.up.clone();
        let maximal = self.maximal_elements();
        let top_rank = maximal.iter().map(|&m| self.rank[m]).max().unwrap_or(0) + 1;
        for m in maximal {
            up[m].push(t);
        }
        up.push(Vec::new());
        let mut rank = self.rank.clone();
        rank.push(top_rank);
        Ok(Self::from_parts(up, rank, self.bottom, Some(t)))
    }

    /// Strict up-sets including the element itself.
    pub fn above(&self) -> &[FixedBitSet] {
        self.above.get_or_init(|| {
            let n = self.len();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&x| std::cmp::Reverse(self.rank[x]));
            let mut sets = vec![FixedBitSet::with_capacity(n); n];
            for &x in &order {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(x);
                for &y in &self.up[x] {
                    s.union_with(&sets[y]);
                }
                sets[x] = s;
            }
            sets
        })
    }

    /// Down-sets including the element itself.
    pub fn below(&self) -> &[FixedBitSet] {
        self.below.get_or_init(|| {
            let n = self.len();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&x| self.rank[x]);
            let mut sets = vec![FixedBitSet::with_capacity(n); n];
            for &x in &order {
                let mut s = FixedBitSet::with_capacity(n);
                s.insert(x);
                for &y in &self.down[x] {
                    s.union_with(&sets[y]);
                }
                sets[x] = s;
            }
            sets
        })
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.above()[x].contains(y)
    }

    /// Every cover raises the rank by exactly one and the bottom has rank 0.
    /// Under this condition no cover is implied by a longer path.
    pub fn check_graded(&self) -> Result<(), PosetError> {
        if self.rank[self.bottom] != 0 {
            return Err(PosetError::NotGraded(self.bottom, self.bottom, 0));
        }
        for (x, y) in self.cover_edges() {
            let jump = self.rank[y] as i64 - self.rank[x] as i64;
            if jump != 1 {
                return Err(PosetError::NotGraded(x, y, jump));
            }
        }
        Ok(())
    }

    /// Closed interval `[x, y]`, members sorted by index.
    pub fn interval(&self, x: usize, y: usize) -> Result<Interval, PosetError> {
        if x >= self.len() || y >= self.len() {
            return Err(PosetError::OutOfRange(x.max(y)));
        }
        if !self.leq(x, y) {
            return Err(PosetError::NotComparable(x, y));
        }
        let mut members = self.above()[x].clone();
        members.intersect_with(&self.below()[y]);
        Ok(Interval {
            bottom: x,
            top: y,
            members: members.ones().collect(),
        })
    }

    /// All saturated chains from `x` to `y`, in lexicographic order of the
    /// index sequences.
    pub fn maximal_chains(&self, x: usize, y: usize) -> Result<Vec<Vec<usize>>, PosetError> {
        let mut out = Vec::new();
        self.for_each_maximal_chain(x, y, |c| out.push(c.to_vec()))?;
        Ok(out)
    }

    /// Visits saturated chains from `x` to `y` with an explicit stack.
    pub fn for_each_maximal_chain(
        &self,
        x: usize,
        y: usize,
        mut visit: impl FnMut(&[usize]),
    ) -> Result<(), PosetError> {
        if x >= self.len() || y >= self.len() {
            return Err(PosetError::OutOfRange(x.max(y)));
        }
        if !self.leq(x, y) {
            return Err(PosetError::NotComparable(x, y));
        }
        let below_y = &self.below()[y];
        let mut path = vec![x];
        let mut cursor = vec![0usize];
        while let Some(&node) = path.last() {
            if node == y {
                visit(&path);
                path.pop();
                cursor.pop();
                continue;
            }
            let i = cursor.last_mut().unwrap();
            let next = self.up[node][*i..].iter().position(|&z| below_y.contains(z));
            match next {
                Some(off) => {
                    let z = self.up[node][*i + off];
                    *i += off + 1;
                    path.push(z);
                    cursor.push(0);
                }
                None => {
                    path.pop();
                    cursor.pop();
                }
            }
        }
        Ok(())
    }
}

/// Closed interval of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub bottom: usize,
    pub top: usize,
    pub members: Vec<usize>,
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn chain(len: usize) -> RankedPoset {
        let covers: Vec<(usize, usize)> = (0..len).map(|i| (i, i + 1)).collect();
        RankedPoset::from_covers(len + 1, &covers, 0)
    }

    pub fn boolean2() -> RankedPoset {
        RankedPoset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], 0)
    }

    #[test]
    fn chain_has_one_maximal_chain() {
        let p = chain(3);
        assert_eq!(p.maximal_chains(0, 3).unwrap(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(p.maximal_chains(2, 2).unwrap(), vec![vec![2]]);
        assert_eq!(p.top(), Some(3));
    }

    #[test]
    fn boolean_lattice_has_two_chains() {
        let p = boolean2();
        assert_eq!(
            p.maximal_chains(0, 3).unwrap(),
            vec![vec![0, 1, 3], vec![0, 2, 3]]
        );
        assert_eq!(
            p.maximal_chains(1, 2),
            Err(PosetError::NotComparable(1, 2))
        );
        assert_eq!(p.interval(0, 3).unwrap().members, vec![0, 1, 2, 3]);
        assert_eq!(p.interval(1, 3).unwrap().members, vec![1, 3]);
    }

    #[test]
    fn adjoin_top_extends_chain() {
        let p = RankedPoset::from_parts(vec![vec![1], vec![2], vec![]], vec![0, 1, 2], 0, None);
        let q = p.adjoin_top().unwrap();
        assert_eq!(q.len(), 4);
        assert_eq!(q.top(), Some(3));
        assert_eq!(q.rank_of(3), 3);
        assert_eq!(q.maximal_chains(0, 3).unwrap().len(), 1);
        assert_eq!(q.adjoin_top().unwrap_err(), PosetError::AlreadyBounded);
    }

    #[test]
    fn rank_jump_is_detected() {
        let p = RankedPoset::from_parts(vec![vec![1, 2], vec![2], vec![]], vec![0, 1, 2], 0, None);
        assert_eq!(p.check_graded(), Err(PosetError::NotGraded(0, 2, 2)));
    }
}
