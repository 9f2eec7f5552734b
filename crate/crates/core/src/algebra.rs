//! Finite groups given by Cayley tables and their actions on finite color sets.
//!
//! The identity is always index 0. The total order on `G \ {e}` used by the
//! edge labelings is the index order `1 < 2 < ... < order-1`, and the total
//! order on the color set is the index order as well.

use std::collections::BTreeSet;

use thiserror::Error;

/// Largest group order / color set size representable in a [`crate::DowlingElement`] cell.
pub const MAX_TABLE_SIZE: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("table is empty")]
    Empty,
    #[error("table too large: {0} > {MAX_TABLE_SIZE}")]
    TooLarge(usize),
    #[error("{field}: expected {expected} entries, found {found}")]
    Shape {
        field: String,
        expected: usize,
        found: usize,
    },
    #[error("{field}: entry {value} out of range 0..{bound}")]
    EntryOutOfRange {
        field: String,
        value: usize,
        bound: usize,
    },
    #[error("index 0 is not a two-sided identity")]
    NoIdentity,
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("act[0][{0}] != {0}: identity does not act trivially")]
    IdentityActsNontrivially(usize),
    #[error("not an action: act[{g}][act[{h}][{s}]] != act[{g}*{h}][{s}]")]
    NotCompatible { g: usize, h: usize, s: usize },
    #[error("color index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("subset {0:?} is not invariant under the action")]
    NotInvariant(Vec<usize>),
    #[error("{field}: expected {expected} names, found {found}")]
    Names {
        field: String,
        expected: usize,
        found: usize,
    },
}

/// A finite group stored extensionally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mult: Vec<Vec<u8>>,
    inv: Vec<u8>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validates a Cayley table, reporting the first violated axiom.
    ///
    /// Checks run in the order: shape and range, identity at index 0,
    /// associativity over all triples, two-sided inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let k = table.len();
        if k == 0 {
            return Err(AlgebraError::Empty);
        }
        if k > MAX_TABLE_SIZE {
            return Err(AlgebraError::TooLarge(k));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != k {
                return Err(AlgebraError::Shape {
                    field: format!("mult[{i}]"),
                    expected: k,
                    found: row.len(),
                });
            }
            if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= k) {
                return Err(AlgebraError::EntryOutOfRange {
                    field: format!("mult[{i}][{j}]"),
                    value: v,
                    bound: k,
                });
            }
        }
        for i in 0..k {
            if table[0][i] != i || table[i][0] != i {
                return Err(AlgebraError::NoIdentity);
            }
        }
        for i in 0..k {
            for j in 0..k {
                let ij = table[i][j];
                for l in 0..k {
                    if table[ij][l] != table[i][table[j][l]] {
                        return Err(AlgebraError::NonAssociative(i, j, l));
                    }
                }
            }
        }
        let mut inv = Vec::with_capacity(k);
        for i in 0..k {
            match (0..k).find(|&j| table[i][j] == 0 && table[j][i] == 0) {
                Some(j) => inv.push(j as u8),
                None => return Err(AlgebraError::NoInverse(i)),
            }
        }
        let mult = table
            .into_iter()
            .map(|row| row.into_iter().map(|v| v as u8).collect())
            .collect();
        Ok(Self {
            mult,
            inv,
            names: default_group_names(k),
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z_k` with index `i` standing for `g^i`.
    pub fn cyclic(k: usize) -> Self {
        let table = (0..k)
            .map(|i| (0..k).map(|j| (i + j) % k).collect())
            .collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    /// Direct product; element `(a, b)` has index `a + |G1| * b`.
    pub fn product(g1: &FiniteGroup, g2: &FiniteGroup) -> Self {
        let (k1, k2) = (g1.order(), g2.order());
        let table = (0..k1 * k2)
            .map(|x| {
                (0..k1 * k2)
                    .map(|y| {
                        let a = g1.mul(x % k1, y % k1);
                        let b = g2.mul(x / k1, y / k1);
                        a + k1 * b
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("product of groups is a group")
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, AlgebraError> {
        if names.len() != self.order() {
            return Err(AlgebraError::Names {
                field: "element_names".into(),
                expected: self.order(),
                found: names.len(),
            });
        }
        self.names = names;
        Ok(self)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.mult.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult
            .iter()
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }
}

fn default_group_names(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") })
        .collect()
}

fn default_color_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("s{i}")).collect()
}

/// A left action `G x S -> S`, `act[g][s] = g . s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    act: Vec<Vec<u8>>,
    set_size: usize,
    color_names: Vec<String>,
}

impl GroupAction {
    pub fn new(
        group: FiniteGroup,
        set_size: usize,
        act: Vec<Vec<usize>>,
    ) -> Result<Self, AlgebraError> {
        if set_size > MAX_TABLE_SIZE {
            return Err(AlgebraError::TooLarge(set_size));
        }
        let k = group.order();
        if act.len() != k {
            return Err(AlgebraError::Shape {
                field: "act".into(),
                expected: k,
                found: act.len(),
            });
        }
        for (g, row) in act.iter().enumerate() {
            if row.len() != set_size {
                return Err(AlgebraError::Shape {
                    field: format!("act[{g}]"),
                    expected: set_size,
                    found: row.len(),
                });
            }
            if let Some((s, &v)) = row.iter().enumerate().find(|(_, &v)| v >= set_size) {
                return Err(AlgebraError::EntryOutOfRange {
                    field: format!("act[{g}][{s}]"),
                    value: v,
                    bound: set_size,
                });
            }
        }
        for s in 0..set_size {
            if act[0][s] != s {
                return Err(AlgebraError::IdentityActsNontrivially(s));
            }
        }
        for g in 0..k {
            for h in 0..k {
                let gh = group.mul(g, h);
                for s in 0..set_size {
                    if act[g][act[h][s]] != act[gh][s] {
                        return Err(AlgebraError::NotCompatible { g, h, s });
                    }
                }
            }
        }
        let act = act
            .into_iter()
            .map(|r| r.into_iter().map(|v| v as u8).collect())
            .collect();
        Ok(Self {
            group,
            act,
            set_size,
            color_names: default_color_names(set_size),
        })
    }

    pub fn trivial(group: FiniteGroup, set_size: usize) -> Self {
        let act = vec![(0..set_size).collect(); group.order()];
        Self::new(group, set_size, act).expect("trivial action")
    }

    /// Builds the action `g . s = rho(g)[s]` from a candidate homomorphism into
    /// the symmetric group on `set_size` points.
    pub fn from_permutations(
        group: FiniteGroup,
        set_size: usize,
        rho: impl Fn(usize) -> Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        let act = (0..group.order()).map(rho).collect();
        Self::new(group, set_size, act)
    }

    pub fn with_color_names(mut self, names: Vec<String>) -> Result<Self, AlgebraError> {
        if names.len() != self.set_size {
            return Err(AlgebraError::Names {
                field: "color_names".into(),
                expected: self.set_size,
                found: names.len(),
            });
        }
        self.color_names = names;
        Ok(self)
    }

    #[inline]
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn set_size(&self) -> usize {
        self.set_size
    }

    #[inline]
    pub fn act(&self, g: usize, s: usize) -> usize {
        self.act[g][s] as usize
    }

    pub fn color_name(&self, s: usize) -> &str {
        &self.color_names[s]
    }

    pub fn color_names(&self) -> &[String] {
        &self.color_names
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.act
            .iter()
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn orbit_of(&self, s: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = (0..self.group.order()).map(|g| self.act(g, s)).collect();
        set.into_iter().collect()
    }

    /// Orbits, each sorted ascending, listed by minimum element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.set_size];
        let mut out = Vec::new();
        for s in 0..self.set_size {
            if seen[s] {
                continue;
            }
            let orbit = self.orbit_of(s);
            for &t in &orbit {
                seen[t] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn stabilizer_order(&self, s: usize) -> Result<usize, AlgebraError> {
        if s >= self.set_size {
            return Err(AlgebraError::IndexOutOfRange(s));
        }
        Ok((0..self.group.order())
            .filter(|&g| self.act(g, s) == s)
            .count())
    }

    pub fn is_trivial_on(&self, subset: &[usize]) -> bool {
        subset
            .iter()
            .all(|&s| (0..self.group.order()).all(|g| self.act(g, s) == s))
    }

    pub fn is_invariant(&self, subset: &[usize]) -> bool {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        subset.iter().all(|&s| {
            s < self.set_size && (0..self.group.order()).all(|g| set.contains(&self.act(g, s)))
        })
    }

    /// Restriction to an invariant subset. Colors are renumbered in increasing
    /// order; the returned vector maps new color index -> old color index.
    pub fn restrict(&self, subset: &[usize]) -> Result<(GroupAction, Vec<usize>), AlgebraError> {
        let keep: Vec<usize> = subset
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if let Some(&bad) = keep.iter().find(|&&s| s >= self.set_size) {
            return Err(AlgebraError::IndexOutOfRange(bad));
        }
        if !self.is_invariant(&keep) {
            return Err(AlgebraError::NotInvariant(keep));
        }
        let mut new_index = vec![usize::MAX; self.set_size];
        for (i, &s) in keep.iter().enumerate() {
            new_index[s] = i;
        }
        let act = (0..self.group.order())
            .map(|g| keep.iter().map(|&s| new_index[self.act(g, s)]).collect())
            .collect();
        let names = keep.iter().map(|&s| self.color_names[s].clone()).collect();
        let restricted = GroupAction::new(self.group.clone(), keep.len(), act)?
            .with_color_names(names)?;
        Ok((restricted, keep))
    }
}
