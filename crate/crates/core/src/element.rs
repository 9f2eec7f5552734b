//! Partial G-partitions with an S-colored zero block, in canonical form.
//!
//! An element of `D_n(G,S)` is stored as one [`Cell`] per point of `[n]`.
//! A point either belongs to a non-zero block (identified by the rank of the
//! block's minimum among all block minima) together with its G-color, or to
//! the zero block together with its S-color. Block colorings are normalized so
//! that the minimum of every block is colored by the identity; this picks the
//! canonical representative of the class `b ~ b g`.

use std::fmt::Write as _;

use crate::algebra::{FiniteGroup, GroupAction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Block { block: u8, color: u8 },
    Zero(u8),
}

/// A non-zero block: sorted support and the (normalized) coloring of each member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub members: Vec<usize>,
    pub colors: Vec<usize>,
}

impl Block {
    pub fn min(&self) -> usize {
        self.members[0]
    }

    pub fn color_of(&self, i: usize) -> Option<usize> {
        self.members
            .iter()
            .position(|&m| m == i)
            .map(|p| self.colors[p])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DowlingElement {
    cells: Vec<Cell>,
}

impl DowlingElement {
    /// The bottom element: every point a singleton block colored by `e`.
    pub fn bottom(n: usize) -> Self {
        Self {
            cells: (0..n)
                .map(|i| Cell::Block {
                    block: i as u8,
                    color: 0,
                })
                .collect(),
        }
    }

    /// Builds the canonical element from arbitrary (unnormalized) block
    /// colorings and a zero coloring. Points are 0-based.
    ///
    /// Panics if the blocks and the zero block do not partition `0..n`.
    pub fn from_parts(
        n: usize,
        group: &FiniteGroup,
        blocks: &[(Vec<usize>, Vec<usize>)],
        zero: &[(usize, usize)],
    ) -> Self {
        let mut cells: Vec<Option<Cell>> = vec![None; n];
        let mut raw: Vec<(Vec<usize>, Vec<usize>)> = blocks
            .iter()
            .filter(|(m, _)| !m.is_empty())
            .map(|(m, c)| {
                let mut pairs: Vec<(usize, usize)> =
                    m.iter().copied().zip(c.iter().copied()).collect();
                pairs.sort_unstable();
                let shift = group.inv(pairs[0].1);
                (
                    pairs.iter().map(|p| p.0).collect(),
                    pairs.iter().map(|p| group.mul(p.1, shift)).collect(),
                )
            })
            .collect();
        raw.sort_by_key(|(m, _)| m[0]);
        for (b, (members, colors)) in raw.iter().enumerate() {
            for (&i, &g) in members.iter().zip(colors) {
                assert!(cells[i].is_none(), "point {i} appears twice");
                cells[i] = Some(Cell::Block {
                    block: b as u8,
                    color: g as u8,
                });
            }
        }
        for &(i, s) in zero {
            assert!(cells[i].is_none(), "point {i} appears twice");
            cells[i] = Some(Cell::Zero(s as u8));
        }
        Self {
            cells: cells
                .into_iter()
                .enumerate()
                .map(|(i, c)| c.unwrap_or_else(|| panic!("point {i} not covered")))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn num_blocks(&self) -> usize {
        self.cells
            .iter()
            .filter_map(|c| match c {
                Cell::Block { block, .. } => Some(*block as usize + 1),
                Cell::Zero(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.n() - self.num_blocks()
    }

    /// Non-zero blocks ordered by minimum.
    pub fn blocks(&self) -> Vec<Block> {
        let mut out: Vec<Block> = vec![
            Block {
                members: Vec::new(),
                colors: Vec::new()
            };
            self.num_blocks()
        ];
        for (i, c) in self.cells.iter().enumerate() {
            if let Cell::Block { block, color } = *c {
                out[block as usize].members.push(i);
                out[block as usize].colors.push(color as usize);
            }
        }
        out
    }

    /// Zero block as `(point, color)` pairs in increasing point order.
    pub fn zero(&self) -> Vec<(usize, usize)> {
        self.cells
            .iter()
            .enumerate()
            .filter_map(|(i, c)| match c {
                Cell::Zero(s) => Some((i, *s as usize)),
                Cell::Block { .. } => None,
            })
            .collect()
    }

    pub fn zero_color(&self, i: usize) -> Option<usize> {
        match self.cells[i] {
            Cell::Zero(s) => Some(s as usize),
            Cell::Block { .. } => None,
        }
    }

    /// Colors used by the zero block, ascending and deduplicated.
    pub fn zero_image(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.zero().into_iter().map(|(_, s)| s).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Byte key, injective on canonical forms: two bytes per point.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(2 * self.cells.len());
        for c in &self.cells {
            match *c {
                Cell::Block { block, color } => {
                    key.push(block);
                    key.push(color);
                }
                Cell::Zero(s) => {
                    key.push(0xFF);
                    key.push(s);
                }
            }
        }
        key
    }

    /// All upper covers: merges of two blocks with every relative translation
    /// `g`, and colorings of one block with every `s in S`. Not deduplicated.
    pub fn upper_covers(&self, action: &GroupAction) -> Vec<DowlingElement> {
        let group = action.group();
        let n = self.n();
        let blocks = self.blocks();
        let zero = self.zero();
        let mut out = Vec::new();
        let parts = |skip: &[usize]| -> Vec<(Vec<usize>, Vec<usize>)> {
            blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| !skip.contains(i))
                .map(|(_, b)| (b.members.clone(), b.colors.clone()))
                .collect()
        };
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                for g in 0..group.order() {
                    let mut members = blocks[a].members.clone();
                    let mut colors = blocks[a].colors.clone();
                    members.extend_from_slice(&blocks[b].members);
                    colors.extend(blocks[b].colors.iter().map(|&c| group.mul(c, g)));
                    let mut rest = parts(&[a, b]);
                    rest.push((members, colors));
                    out.push(Self::from_parts(n, group, &rest, &zero));
                }
            }
        }
        for b in 0..blocks.len() {
            for s in 0..action.set_size() {
                let mut z = zero.clone();
                z.extend(
                    blocks[b]
                        .members
                        .iter()
                        .zip(&blocks[b].colors)
                        .map(|(&i, &g)| (i, action.act(g, s))),
                );
                out.push(Self::from_parts(n, group, &parts(&[b]), &z));
            }
        }
        out
    }

    /// Order relation of `D_n(G,S)` tested directly on the data: every block of
    /// `self` lies in a block of `other` with a translated coloring, or in the
    /// zero block of `other` with an equivariant coloring; the zero coloring of
    /// `self` is a restriction of that of `other`.
    pub fn leq(&self, other: &Self, action: &GroupAction) -> bool {
        let group = action.group();
        if self.n() != other.n() {
            return false;
        }
        for (i, s) in self.zero() {
            if other.zero_color(i) != Some(s) {
                return false;
            }
        }
        let upper = other.blocks();
        for b in self.blocks() {
            let m = b.min();
            match other.cells[m] {
                Cell::Block { block, color } => {
                    let c = &upper[block as usize];
                    // c(i) = b(i) g with g = b(m)^-1 c(m)
                    let g = group.mul(group.inv(b.colors[0]), color as usize);
                    for (&i, &bi) in b.members.iter().zip(&b.colors) {
                        if c.color_of(i) != Some(group.mul(bi, g)) {
                            return false;
                        }
                    }
                }
                Cell::Zero(sm) => {
                    let s = action.act(group.inv(b.colors[0]), sm as usize);
                    for (&i, &bi) in b.members.iter().zip(&b.colors) {
                        if other.zero_color(i) != Some(action.act(bi, s)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Bracket notation: `[1_e 2_g | 3_e || 4_s1]`, with `∥`/`∅` unless `ascii`.
    pub fn render(&self, action: &GroupAction, ascii: bool) -> String {
        let (sep, empty) = if ascii { ("||", "{}") } else { ("∥", "∅") };
        let mut s = String::from("[");
        let blocks = self.blocks();
        if blocks.is_empty() {
            s.push_str(empty);
        }
        for (bi, b) in blocks.iter().enumerate() {
            if bi > 0 {
                s.push_str(" | ");
            }
            for (k, (&i, &g)) in b.members.iter().zip(&b.colors).enumerate() {
                if k > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{}_{}", i + 1, action.group().name(g));
            }
        }
        let _ = write!(s, " {sep} ");
        let zero = self.zero();
        if zero.is_empty() {
            s.push_str(empty);
        }
        for (k, (i, c)) in zero.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{}_{}", i + 1, action.color_name(*c));
        }
        s.push(']');
        s
    }
}
