//! Named group actions used by the CLI and the verification suite.

use crate::algebra::{FiniteGroup, GroupAction};

fn swap_prefix(set_size: usize, swap: bool) -> Vec<usize> {
    let mut p: Vec<usize> = (0..set_size).collect();
    if swap {
        p.swap(0, 1);
    }
    p
}

/// `Z_2` exchanging `+` and `-`.
pub fn z2_swap() -> GroupAction {
    GroupAction::from_permutations(FiniteGroup::cyclic(2), 2, |g| swap_prefix(2, g == 1))
        .expect("valid action")
        .with_color_names(vec!["+".into(), "-".into()])
        .expect("two names")
}

/// `Z_2` exchanging `+` and `-` and fixing `0`.
pub fn z2_swap_fixed() -> GroupAction {
    GroupAction::from_permutations(FiniteGroup::cyclic(2), 3, |g| swap_prefix(3, g == 1))
        .expect("valid action")
        .with_color_names(vec!["+".into(), "-".into(), "0".into()])
        .expect("three names")
}

/// `Z_4` acting on `{+,-}` through its quotient `Z_2`.
pub fn z4_swap() -> GroupAction {
    GroupAction::from_permutations(FiniteGroup::cyclic(4), 2, |g| swap_prefix(2, g % 2 == 1))
        .expect("valid action")
        .with_color_names(vec!["+".into(), "-".into()])
        .expect("two names")
}

/// `Z_k` acting on `k` points by rotation (one free orbit), plus `extra_fixed` fixed points.
pub fn cyclic_free(k: usize, extra_fixed: usize) -> GroupAction {
    GroupAction::from_permutations(FiniteGroup::cyclic(k), k + extra_fixed, |g| {
        (0..k)
            .map(|s| (s + g) % k)
            .chain(k..k + extra_fixed)
            .collect()
    })
    .expect("valid action")
}

pub fn klein() -> FiniteGroup {
    FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
}

/// Groups of the verification grid: trivial, Z2, Z3, Z4, Z2xZ2.
pub fn grid_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("e", FiniteGroup::trivial()),
        ("z2", FiniteGroup::cyclic(2)),
        ("z3", FiniteGroup::cyclic(3)),
        ("z4", FiniteGroup::cyclic(4)),
        ("klein", klein()),
    ]
}

/// A nontrivial action of the named grid group on `m` points, when one exists.
pub fn nontrivial_action(name: &str, group: &FiniteGroup, m: usize) -> Option<GroupAction> {
    let g = group.clone();
    match (name, m) {
        ("z2", 2 | 3) => GroupAction::from_permutations(g, m, |x| swap_prefix(m, x == 1)).ok(),
        ("z3", 3) => GroupAction::from_permutations(g, 3, |x| (0..3).map(|s| (s + x) % 3).collect()).ok(),
        ("z4", 2 | 3) => {
            GroupAction::from_permutations(g, m, |x| swap_prefix(m, x % 2 == 1)).ok()
        }
        // (a, b) with index a + 2b: on two points through the first factor, on
        // three points through the quotient by the diagonal.
        ("klein", 2) => GroupAction::from_permutations(g, 2, |x| swap_prefix(2, x % 2 == 1)).ok(),
        ("klein", 3) => {
            GroupAction::from_permutations(g, 3, |x| swap_prefix(3, (x % 2) != (x / 2))).ok()
        }
        _ => None,
    }
}

/// One entry of the parameter grid `G x |S| x {trivial, nontrivial}`.
#[derive(Debug, Clone)]
pub struct GridAction {
    pub label: String,
    pub action: GroupAction,
}

pub fn grid_actions() -> Vec<GridAction> {
    let mut out = Vec::new();
    for (name, group) in grid_groups() {
        for m in 0..=3 {
            out.push(GridAction {
                label: format!("{name}/trivial/{m}"),
                action: GroupAction::trivial(group.clone(), m),
            });
            if let Some(a) = nontrivial_action(name, &group, m) {
                out.push(GridAction {
                    label: format!("{name}/nontrivial/{m}"),
                    action: a,
                });
            }
        }
    }
    out
}

/// Resolves `z2-swap`, `z2-swap-fixed`, `z4-swap`, `z3-free`, `z3-free-fixed`,
/// `<group>-trivial-<m>` and `<group>-nontrivial-<m>` with `<group>` one of
/// `e`, `z2`, `z3`, `z4`, `klein`.
pub fn by_name(name: &str) -> Option<GroupAction> {
    match name {
        "z2-swap" => return Some(z2_swap()),
        "z2-swap-fixed" => return Some(z2_swap_fixed()),
        "z4-swap" => return Some(z4_swap()),
        "z3-free" => return Some(cyclic_free(3, 0)),
        "z3-free-fixed" => return Some(cyclic_free(3, 1)),
        _ => {}
    }
    let mut parts = name.split('-');
    let (g, kind, m) = (parts.next()?, parts.next()?, parts.next()?);
    if parts.next().is_some() {
        return None;
    }
    let m: usize = m.parse().ok()?;
    let (gname, group) = grid_groups().into_iter().find(|(n, _)| *n == g)?;
    match kind {
        "trivial" => Some(GroupAction::trivial(group, m)),
        "nontrivial" => nontrivial_action(gname, &group, m),
        _ => None,
    }
}
