//! Property tests against independent oracles.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use dowling_core::dowling::DEFAULT_MAX_ELEMENTS;
use dowling_core::el::count_decreasing_chains;
use dowling_core::io::{element_from_json, element_json};
use dowling_core::labeling::{label_lambda, label_mu, lambda_of, mu_of, classify};
use dowling_core::presets::grid_actions;
use dowling_core::topology::{proper_part_homology, smith, DEFAULT_MAX_FACES};
use dowling_core::trees::{enumerate_blooming, BloomingTree};
use dowling_core::{
    bijection, build_dowling, decreasing_chains, moebius, CoverKind, DowlingElement, EdgeLabel,
    EdgeLabels, FiniteGroup, GroupAction, Labeling, MoebiusTable, Node,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // (a ∘ b)(i) = a(b(i))
    b.iter().map(|&i| a[i]).collect()
}

/// Closure of a set of permutations under composition, identity first.
fn generate(gens: &[Perm], degree: usize, limit: usize) -> Option<Vec<Perm>> {
    let id: Perm = (0..degree).collect();
    let mut elems = vec![id];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let h = compose(g, &elems[i]);
            if !elems.contains(&h) {
                if elems.len() == limit {
                    return None;
                }
                elems.push(h);
            }
        }
        i += 1;
    }
    Some(elems)
}

fn cayley(elems: &[Perm]) -> Vec<Vec<usize>> {
    let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    elems
        .iter()
        .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
        .collect()
}

/// Group test through the left-regular representation: every row is a
/// permutation, row 0 and column 0 are the identity, and `L_g ∘ L_h = L_{gh}`.
fn is_group_oracle(t: &[Vec<usize>]) -> bool {
    let k = t.len();
    if k == 0 || t.iter().any(|r| r.len() != k || r.iter().any(|&v| v >= k)) {
        return false;
    }
    let rows_are_perms = t.iter().all(|r| r.iter().collect::<BTreeSet<_>>().len() == k);
    let identity = (0..k).all(|i| t[0][i] == i && t[i][0] == i);
    let regular = (0..k).all(|g| (0..k).all(|h| compose(&t[g], &t[h]) == t[t[g][h]]));
    rows_are_perms && identity && regular
}

fn relabel(t: &[Vec<usize>], p: &[usize]) -> Vec<Vec<usize>> {
    // p fixes 0; new table entry at (p[i], p[j]) is p[t[i][j]]
    let k = t.len();
    let mut out = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            out[p[i]][p[j]] = p[t[i][j]];
        }
    }
    out
}

fn perm_strategy(k: usize) -> impl Strategy<Value = Perm> {
    Just((0..k).collect::<Vec<_>>()).prop_shuffle()
}

fn permutation_groups() -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1usize..=3, 3usize..=4)
        .prop_flat_map(|(ngens, degree)| proptest::collection::vec(perm_strategy(degree), ngens).prop_map(move |g| (g, degree)))
        .prop_filter_map("group too large", |(gens, degree)| generate(&gens, degree, 8).map(|e| cayley(&e)))
}

fn grid_point() -> impl Strategy<Value = (usize, GroupAction)> {
    let actions: Vec<GroupAction> = grid_actions().into_iter().map(|g| g.action).collect();
    (1usize..=3, proptest::sample::select(actions))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutation_groups_are_accepted(t in permutation_groups(), seed in any::<u64>()) {
        let k = t.len();
        let mut p: Vec<usize> = (1..k).collect();
        // a deterministic shuffle fixing 0 keeps the identity at index 0
        let mut s = seed;
        for i in (1..p.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            p.swap(i, (s >> 33) as usize % (i + 1));
        }
        p.insert(0, 0);
        let t = relabel(&t, &p);
        prop_assert!(is_group_oracle(&t));
        prop_assert!(FiniteGroup::from_table(t).is_ok());
    }

    #[test]
    fn perturbed_tables_agree_with_oracle(t in permutation_groups(), i in 0usize..8, j in 0usize..8, v in 0usize..8) {
        let k = t.len();
        let mut t = t;
        t[i % k][j % k] = v % k;
        prop_assert_eq!(FiniteGroup::from_table(t.clone()).is_ok(), is_group_oracle(&t));
    }

    #[test]
    fn random_tables_agree_with_oracle(t in (1usize..=3).prop_flat_map(|k| proptest::collection::vec(proptest::collection::vec(0..k, k), k))) {
        prop_assert_eq!(FiniteGroup::from_table(t.clone()).is_ok(), is_group_oracle(&t));
    }

    #[test]
    fn orbit_stabilizer((_, a) in grid_point()) {
        let orbits = a.orbits();
        prop_assert_eq!(orbits.iter().map(Vec::len).sum::<usize>(), a.set_size());
        for s in 0..a.set_size() {
            prop_assert_eq!(a.orbit_of(s).len() * a.stabilizer_order(s).unwrap(), a.group().order());
        }
    }

    #[test]
    fn moebius_rows_sum_to_zero((n, a) in grid_point(), pick in any::<prop::sample::Index>()) {
        let p = build_dowling(n, Arc::new(a), DEFAULT_MAX_ELEMENTS).unwrap().adjoin_top().unwrap();
        let q = p.poset();
        let x = pick.index(q.len());
        let table = MoebiusTable::new(q);
        for y in q.above()[x].ones() {
            let sum: BigInt = q.interval(x, y).unwrap().members.iter().map(|&z| table.value(x, z).unwrap()).sum();
            let want = if x == y { BigInt::one() } else { BigInt::zero() };
            prop_assert_eq!(sum, want);
        }
    }

    #[test]
    fn homology_matches_euler_characteristic((n, a) in grid_point()) {
        let p = build_dowling(n, Arc::new(a), DEFAULT_MAX_ELEMENTS).unwrap().adjoin_top().unwrap();
        let h = proper_part_homology(p.poset(), DEFAULT_MAX_FACES).unwrap();
        prop_assert!(h.euler_consistent());
        // reduced Euler characteristic of the proper part is μ(0̂,1̂)
        let mu = moebius(p.poset(), 0, p.poset().len() - 1).unwrap();
        let chi: i64 = -(h.betti_minus_one as i64)
            + h.reduced_betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum::<i64>();
        prop_assert_eq!(BigInt::from(chi), mu);
    }

    #[test]
    fn canonical_form_ignores_block_translation((n, a) in grid_point(), shifts in proptest::collection::vec(0usize..4, 3), pick in any::<prop::sample::Index>()) {
        let p = build_dowling(n, Arc::new(a.clone()), DEFAULT_MAX_ELEMENTS).unwrap();
        let e = &p.elements()[pick.index(p.elements().len())];
        let g = a.group();
        let blocks: Vec<(Vec<usize>, Vec<usize>)> = e
            .blocks()
            .into_iter()
            .zip(shifts.iter().cycle())
            .map(|(b, &s)| {
                let h = s % g.order();
                (b.members, b.colors.iter().map(|&c| g.mul(c, h)).collect())
            })
            .collect();
        let again = DowlingElement::from_parts(n, g, &blocks, &e.zero());
        prop_assert_eq!(&again, e);
        prop_assert_eq!(&element_from_json(&element_json(e), n, &a).unwrap(), e);
    }

    #[test]
    fn blooming_tree_json_roundtrips(k in 1usize..=4, q in 0usize..=3, r in 0usize..=2, pick in any::<prop::sample::Index>()) {
        let trees = enumerate_blooming(k, q, r, 10_000).unwrap();
        let t = &trees[pick.index(trees.len())];
        let back = BloomingTree::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(&back, t);
        prop_assert!(back.validate(q, r).is_ok());
    }

    #[test]
    fn label_order_is_lexicographic(a in (0u8..3, 0i32..5, -1i32..5), b in (0u8..3, 0i32..5, -1i32..5)) {
        let la = EdgeLabel { tag: a.0, a: a.1, b: a.2 };
        let lb = EdgeLabel { tag: b.0, a: b.1, b: b.2 };
        prop_assert_eq!(la.cmp(&lb), a.cmp(&b));
    }

    #[test]
    fn psi_roundtrips_on_sampled_chains(g in 2usize..=3, m in proptest::sample::select(vec![0usize, 2, 3]), n in 1usize..=3, pick in any::<prop::sample::Index>()) {
        let a = GroupAction::trivial(FiniteGroup::cyclic(g), m);
        let p = build_dowling(n, Arc::new(a.clone()), DEFAULT_MAX_ELEMENTS).unwrap().adjoin_top().unwrap();
        let labels = EdgeLabels::for_poset(&p, Labeling::Lambda).unwrap();
        let chains = decreasing_chains(p.poset(), &labels).unwrap();
        let c = bijection::chain_elements(&p, &chains[pick.index(chains.len())]);
        let t = bijection::psi(&c, &a).unwrap();
        prop_assert_eq!(bijection::psi_inv(&t, n, &a).unwrap(), c);
    }
}

#[test]
fn lambda_and_mu_agree_off_colored_edges() {
    for g in grid_actions() {
        for n in 1..=3 {
            let p = build_dowling(n, Arc::new(g.action.clone()), DEFAULT_MAX_ELEMENTS)
                .unwrap()
                .adjoin_top()
                .unwrap();
            let q = p.poset();
            for (x, y) in q.cover_edges() {
                let kind = classify(&p.action, p.node(x), p.node(y)).unwrap();
                if !matches!(kind, CoverKind::Colored { .. }) {
                    assert_eq!(lambda_of(kind), mu_of(kind, p.node(x)));
                    assert_eq!(
                        label_lambda(&p.action, p.node(x), p.node(y)).unwrap(),
                        label_mu(&p.action, p.node(x), p.node(y)).unwrap()
                    );
                }
                if matches!(p.node(y), Node::Top) {
                    assert_eq!(lambda_of(kind), EdgeLabel::TOP);
                }
            }
        }
    }
}

/// Rank and `|det|` by fraction-free elimination over the integers.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let v = &m[rank][c] * &m[r][j] - &m[r][c] * &m[rank][j];
                m[r][j] = v / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    (rank, prev.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_rank_and_determinant(k in 1usize..=5, entries in proptest::collection::vec(-3i64..=3, 25), extra_rows in 0usize..=2) {
        let rows = k + extra_rows;
        let dense: Vec<Vec<i64>> = (0..rows).map(|i| (0..k).map(|j| entries[(i * k + j) % 25] * if i >= k { 2 } else { 1 }).collect()).collect();
        let triples: Vec<(usize, usize, i64)> = dense
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v)))
            .filter(|e| e.2 != 0)
            .collect();
        let s = smith(rows, k, &triples);
        let big: Vec<Vec<BigInt>> = dense.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let (rank, _) = bareiss(big.clone());
        prop_assert_eq!(s.rank, rank);
        for w in s.torsion.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        if extra_rows == 0 && rank == k {
            let (_, det) = bareiss(big);
            let prod: BigInt = s.torsion.iter().product();
            prop_assert_eq!(prod, det);
        }
    }
}

#[test]
fn chain_count_is_independent_of_worker_count() {
    let a = Arc::new(dowling_core::presets::z2_swap_fixed());
    let p = build_dowling(3, a, DEFAULT_MAX_ELEMENTS).unwrap().adjoin_top().unwrap();
    let labels = EdgeLabels::for_poset(&p, Labeling::Lambda).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                (
                    dowling_core::verify_el(p.poset(), &labels).unwrap(),
                    count_decreasing_chains(p.poset(), &labels).unwrap(),
                    proper_part_homology(p.poset(), DEFAULT_MAX_FACES).unwrap(),
                )
            })
    };
    assert_eq!(run(1), run(4));
}
