//! Integer homology of order complexes and wedge-of-spheres certificates.
//!
//! Certificates compare reduced homology only. A passing certificate means
//! the homology is consistent with the predicted wedge of spheres.

pub mod complex;
pub mod snf;

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::dowling::{DowlingPoset, PosetKind};
use crate::moebius::sphere_count_product;
pub use complex::{count_faces, order_complex, OrderComplex, DEFAULT_MAX_FACES};
pub use snf::{smith, Snf};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("projected face count {projected} exceeds the cap {cap}")]
    SizeLimitExceeded { projected: String, cap: usize },
    #[error("poset is not bounded")]
    NotBounded,
}

/// Reduced integer homology by dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    /// `reduced_betti[d]` for `d = 0..=dim`.
    pub reduced_betti: Vec<u64>,
    /// Rank of `H̃_{-1}`; 1 exactly for the empty complex.
    pub betti_minus_one: u64,
    /// Invariant factors greater than one of `H̃_d`, aligned with `reduced_betti`.
    pub torsion: Vec<Vec<BigInt>>,
    pub face_counts: Vec<usize>,
}

impl HomologyProfile {
    pub fn betti(&self, d: i64) -> u64 {
        match d {
            -1 => self.betti_minus_one,
            d if d >= 0 => self.reduced_betti.get(d as usize).copied().unwrap_or(0),
            _ => 0,
        }
    }

    /// Dimensions (from -1 up) with nonzero reduced Betti number.
    pub fn nonzero_dimensions(&self) -> Vec<i64> {
        (-1..self.reduced_betti.len() as i64)
            .filter(|&d| self.betti(d) > 0)
            .collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    /// Reduced Euler characteristic from face counts equals the alternating Betti sum.
    pub fn euler_consistent(&self) -> bool {
        let from_faces: i64 = -1 + self
            .face_counts
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum::<i64>();
        let from_betti: i64 = -(self.betti_minus_one as i64)
            + self
                .reduced_betti
                .iter()
                .enumerate()
                .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum::<i64>();
        from_faces == from_betti
    }
}

/// Boundary map from dimension `d` faces to dimension `d - 1` faces, as
/// triples `(face of dim d, face of dim d-1, sign)`.
fn boundary(c: &OrderComplex, d: usize, lower: &HashMap<&[u32], usize>) -> Vec<(usize, usize, i64)> {
    let mut out = Vec::with_capacity(c.faces[d].len() * (d + 1));
    let mut buf = Vec::with_capacity(d);
    for (i, f) in c.faces[d].iter().enumerate() {
        for skip in 0..=d {
            buf.clear();
            buf.extend(f.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, v)| *v));
            let j = lower[buf.as_slice()];
            out.push((i, j, if skip % 2 == 0 { 1 } else { -1 }));
        }
    }
    out
}

/// Reduced homology of the augmented chain complex of `c`.
pub fn homology(c: &OrderComplex) -> HomologyProfile {
    let top = c.faces.len();
    let counts = c.face_counts();
    // snfs[d] for the boundary out of dimension d, d = 1..top-1
    let snfs: Vec<Snf> = (1..top)
        .into_par_iter()
        .map(|d| {
            let lower: HashMap<&[u32], usize> = c.faces[d - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect();
            smith(counts[d], counts[d - 1], &boundary(c, d, &lower))
        })
        .collect();
    let rank_out = |d: usize| -> usize {
        match d {
            0 => usize::from(counts.first().is_some_and(|&f| f > 0)),
            d => snfs.get(d - 1).map_or(0, |s| s.rank),
        }
    };
    let reduced_betti = (0..top)
        .map(|d| (counts[d] - rank_out(d) - rank_out(d + 1)) as u64)
        .collect();
    let torsion = (0..top)
        .map(|d| snfs.get(d).map_or_else(Vec::new, |s| s.torsion.clone()))
        .collect();
    HomologyProfile {
        reduced_betti,
        betti_minus_one: (1 - rank_out(0)) as u64,
        torsion,
        face_counts: counts,
    }
}

/// Reduced homology of the proper part of a bounded poset.
pub fn proper_part_homology(
    poset: &crate::poset::RankedPoset,
    max_faces: usize,
) -> Result<HomologyProfile, TopologyError> {
    if poset.top().is_none() {
        return Err(TopologyError::NotBounded);
    }
    Ok(homology(&order_complex(poset, true, max_faces)?))
}

/// Expected shape of the proper part's homology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub dimension: Option<i64>,
    pub count: Option<BigInt>,
    pub basis: &'static str,
}

/// Predicted wedge of spheres for the proper part of `D̂_n(G,S)` or `P̂_n(G,S,T)`.
pub fn predict(p: &DowlingPoset) -> Prediction {
    let a = &p.action;
    let (n, g, m) = (p.n, a.group().order(), a.set_size());
    let dowling = |n: usize, k: usize, basis| Prediction {
        dimension: Some(n as i64 - 1 - i64::from(k == 0)),
        count: Some(sphere_count_product(n, g, k)),
        basis,
    };
    let t = match &p.kind {
        PosetKind::Dowling => return dowling(n, m, "dowling"),
        PosetKind::Subposet { t } if t.len() == m => return dowling(n, m, "dowling"),
        PosetKind::Subposet { t } => t.clone(),
    };
    if n == 1 {
        return dowling(1, t.len(), "subposet-n1");
    }
    let outside: Vec<Vec<usize>> = a
        .orbits()
        .into_iter()
        .filter(|o| !o.iter().any(|s| t.contains(s)))
        .collect();
    let trivial: Vec<bool> = outside.iter().map(|o| o.len() == 1).collect();
    let free: Vec<bool> = outside.iter().map(|o| o.len() == g).collect();
    if free.iter().all(|&f| f) {
        // every orbit outside T reduces away, leaving D_n(G,T)
        return dowling(n, t.len(), "orbit-reduction");
    }
    if trivial.iter().zip(&free).all(|(&t, &f)| t || f) {
        let d = if !t.is_empty() || trivial.iter().any(|&b| b) { n - 1 } else { n - 2 };
        return Prediction {
            dimension: Some(d as i64),
            count: None,
            basis: "trivial-or-free-orbits",
        };
    }
    Prediction {
        dimension: None,
        count: None,
        basis: "none",
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub prediction: Prediction,
    pub profile: HomologyProfile,
    /// At most one nonzero reduced Betti number and no torsion.
    pub wedge_shape: bool,
    pub passed: bool,
    pub verdict: String,
}

/// Compares the homology of the proper part of a bounded Dowling poset or
/// subposet against [`predict`].
pub fn certify_wedge(p: &DowlingPoset, max_faces: usize) -> Result<CertificateReport, TopologyError> {
    let profile = proper_part_homology(p.poset(), max_faces)?;
    let prediction = predict(p);
    let nz = profile.nonzero_dimensions();
    let wedge_shape = nz.len() <= 1 && profile.is_torsion_free();
    let observed_count = nz.first().map_or(0, |&d| profile.betti(d));
    let count_ok = prediction
        .count
        .as_ref()
        .is_none_or(|c| *c == BigInt::from(observed_count));
    let dim_ok = match (prediction.dimension, nz.first()) {
        (Some(d), Some(&o)) => d == o,
        _ => true,
    };
    let passed = wedge_shape && count_ok && dim_ok;
    let verdict = if passed {
        match nz.first() {
            Some(&d) => format!(
                "homology-consistent with a wedge of {observed_count} spheres of dimension {d}"
            ),
            None => "homology-consistent with a point (all reduced Betti numbers vanish)".into(),
        }
    } else if !wedge_shape {
        format!(
            "not a wedge of equidimensional spheres: nonzero reduced homology in dimensions {nz:?}{}",
            if profile.is_torsion_free() { "" } else { ", torsion present" }
        )
    } else {
        format!(
            "homology does not match the prediction (observed {observed_count} in dimensions {nz:?})"
        )
    };
    Ok(CertificateReport {
        prediction,
        profile,
        wedge_shape,
        passed,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::RankedPoset;
    use crate::poset::tests::chain;

    fn cycle_poset(k: usize) -> RankedPoset {
        // bottom, k atoms, k coatoms in a crown, top: proper part is a 2k-cycle
        let mut covers = Vec::new();
        for i in 0..k {
            covers.push((0, 1 + i));
            covers.push((1 + i, 1 + k + i));
            covers.push((1 + i, 1 + k + (i + 1) % k));
            covers.push((1 + k + i, 1 + 2 * k));
        }
        RankedPoset::from_covers(2 * k + 2, &covers, 0)
    }

    #[test]
    fn point_has_no_reduced_homology() {
        let h = proper_part_homology(&chain(2), 10).unwrap();
        assert_eq!(h.reduced_betti, vec![0]);
        assert_eq!(h.betti_minus_one, 0);
        assert!(h.euler_consistent());
    }

    #[test]
    fn crown_is_a_circle() {
        let h = proper_part_homology(&cycle_poset(3), 100).unwrap();
        assert_eq!(h.reduced_betti, vec![0, 1]);
        assert!(h.is_torsion_free());
        assert_eq!(h.nonzero_dimensions(), vec![1]);
    }

    #[test]
    fn empty_complex_has_minus_one_class() {
        let h = proper_part_homology(&chain(1), 10).unwrap();
        assert!(h.reduced_betti.is_empty());
        assert_eq!(h.betti_minus_one, 1);
        assert_eq!(h.nonzero_dimensions(), vec![-1]);
        assert!(h.euler_consistent());
    }

    #[test]
    fn unbounded_is_rejected() {
        let p = RankedPoset::from_parts(vec![vec![1, 2], vec![], vec![]], vec![0, 1, 1], 0, None);
        assert_eq!(proper_part_homology(&p, 10), Err(TopologyError::NotBounded));
    }
}
