//! Generalized Dowling posets `D_n(G,S)` and their subposets `P_n(G,S,T)`:
//! construction from a finite group action, the edge labelings λ and μ with
//! an exhaustive EL verifier, decreasing chains and their blooming-tree
//! encoding, and integer homology of order complexes.

pub mod algebra;
pub mod bijection;
pub mod cli;
pub mod dowling;
pub mod el;
pub mod io;
pub mod element;
pub mod labeling;
pub mod moebius;
pub mod poset;
pub mod presets;
pub mod reduction;
pub mod suite;
pub mod topology;
pub mod trees;

pub use algebra::{AlgebraError, FiniteGroup, GroupAction};
pub use bijection::{psi, psi_inv, BijectionError};
pub use dowling::{build_dowling, build_subposet, DowlingError, DowlingPoset, Node, PosetKind};
pub use el::{decreasing_chains, verify_el, ElError, ElReport, FailureReason, IntervalFailure};
pub use element::{Block, Cell, DowlingElement};
pub use labeling::{CoverKind, EdgeLabel, EdgeLabels, LabelError, Labeling};
pub use moebius::{characteristic_polynomial, moebius, MoebiusError, MoebiusTable, Polynomial};
pub use poset::{Interval, PosetError, RankedPoset};
pub use trees::{count_blooming, enumerate_blooming, BloomingTree, Child, TreeError};
pub use topology::{certify_wedge, homology, order_complex, CertificateReport, HomologyProfile, OrderComplex, TopologyError};
pub use reduction::{closure_f, reduce_poset, verify_closure, ClosureReport, OrbitReductionSpec, ReductionError};
