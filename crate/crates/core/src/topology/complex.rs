//! Order complexes: faces are the chains of a poset.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::TopologyError;
use crate::poset::RankedPoset;

pub const DEFAULT_MAX_FACES: usize = 2_000_000;

/// Faces grouped by dimension; a face is its vertex list in increasing poset order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderComplex {
    pub vertices: Vec<usize>,
    pub faces: Vec<Vec<Vec<u32>>>,
    /// Set when there are no vertices at all.
    pub empty_warning: bool,
}

impl OrderComplex {
    /// `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// `Σ (-1)^d f_d`, unreduced.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, f)| if d % 2 == 0 { f.len() as i64 } else { -(f.len() as i64) })
            .sum()
    }
}

fn vertex_set(poset: &RankedPoset, strip_bounds: bool) -> Vec<usize> {
    let mut vs: Vec<usize> = (0..poset.len())
        .filter(|&x| !strip_bounds || (x != poset.bottom() && Some(x) != poset.top()))
        .collect();
    vs.sort_by_key(|&x| (poset.rank_of(x), x));
    vs
}

/// Number of chains by dimension without building them.
pub fn count_faces(poset: &RankedPoset, strip_bounds: bool) -> Vec<BigUint> {
    let vs = vertex_set(poset, strip_bounds);
    let mut inside = fixedbitset::FixedBitSet::with_capacity(poset.len());
    for &v in &vs {
        inside.insert(v);
    }
    // ending[v][d] = chains of dimension d with top vertex v
    let mut ending: Vec<Vec<BigUint>> = vec![Vec::new(); poset.len()];
    let mut totals: Vec<BigUint> = Vec::new();
    for &v in &vs {
        let mut row = vec![BigUint::from(1u32)];
        let mut below = poset.below()[v].clone();
        below.intersect_with(&inside);
        below.set(v, false);
        for w in below.ones() {
            for (d, c) in ending[w].iter().enumerate() {
                if row.len() <= d + 1 {
                    row.push(BigUint::zero());
                }
                row[d + 1] += c;
            }
        }
        for (d, c) in row.iter().enumerate() {
            if totals.len() <= d {
                totals.push(BigUint::zero());
            }
            totals[d] += c;
        }
        ending[v] = row;
    }
    totals
}

/// Order complex of `poset`, optionally without its bottom and top.
/// Refuses to build more than `max_faces` faces.
pub fn order_complex(
    poset: &RankedPoset,
    strip_bounds: bool,
    max_faces: usize,
) -> Result<OrderComplex, TopologyError> {
    let total: BigUint = count_faces(poset, strip_bounds).iter().sum();
    if total.to_usize().is_none_or(|t| t > max_faces) {
        return Err(TopologyError::SizeLimitExceeded {
            projected: total.to_string(),
            cap: max_faces,
        });
    }
    let vertices = vertex_set(poset, strip_bounds);
    let mut inside = fixedbitset::FixedBitSet::with_capacity(poset.len());
    for &v in &vertices {
        inside.insert(v);
    }
    let above: Vec<Vec<u32>> = (0..poset.len())
        .map(|x| {
            let mut a = poset.above()[x].clone();
            a.intersect_with(&inside);
            a.set(x, false);
            let mut v: Vec<u32> = a.ones().map(|y| y as u32).collect();
            v.sort_by_key(|&y| (poset.rank_of(y as usize), y));
            v
        })
        .collect();
    let mut faces: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut current: Vec<Vec<u32>> = vertices.iter().map(|&v| vec![v as u32]).collect();
    while !current.is_empty() {
        let next: Vec<Vec<u32>> = current
            .par_iter()
            .flat_map_iter(|f| {
                let last = *f.last().unwrap() as usize;
                above[last].iter().map(move |&y| {
                    let mut g = f.clone();
                    g.push(y);
                    g
                })
            })
            .collect();
        faces.push(current);
        current = next;
    }
    for fs in &mut faces {
        fs.sort_unstable();
    }
    Ok(OrderComplex {
        empty_warning: vertices.is_empty(),
        vertices,
        faces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::tests::{boolean2, chain};

    #[test]
    fn stripped_chain_is_a_point() {
        let c = order_complex(&chain(2), true, 100).unwrap();
        assert_eq!(c.face_counts(), vec![1]);
        assert_eq!(c.dimension(), 0);
        assert!(!c.empty_warning);
    }

    #[test]
    fn unstripped_boolean_lattice() {
        let c = order_complex(&boolean2(), false, 100).unwrap();
        // four vertices, five comparable pairs, two maximal chains
        assert_eq!(c.face_counts(), vec![4, 5, 2]);
        assert_eq!(c.euler_characteristic(), 1);
        let counts: Vec<usize> = count_faces(&boolean2(), false)
            .iter()
            .map(|c| c.to_usize().unwrap())
            .collect();
        assert_eq!(counts, vec![4, 5, 2]);
    }

    #[test]
    fn empty_proper_part_is_flagged() {
        let c = order_complex(&chain(1), true, 100).unwrap();
        assert!(c.empty_warning);
        assert_eq!(c.dimension(), -1);
    }

    #[test]
    fn face_cap() {
        assert!(matches!(
            order_complex(&boolean2(), false, 10),
            Err(TopologyError::SizeLimitExceeded { .. })
        ));
    }
}
