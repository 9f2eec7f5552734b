//! The ten acceptance criteria, one test each. Every test prints a single
//! `[PASS]` or `[FAIL]` line; run with `--nocapture` to see them.

use dowling_core::suite::{self, CriterionResult};

fn check(r: CriterionResult) {
    println!("{r}");
    assert!(r.passed, "criterion {} failed: {}", r.id, r.failures.join("; "));
}

#[test]
fn criterion_01_lambda_is_el_on_dowling_posets() {
    check(suite::criterion_1());
}

#[test]
fn criterion_02_mu_is_el_on_subposets() {
    check(suite::criterion_2());
}

#[test]
fn criterion_03_decreasing_chain_count() {
    check(suite::criterion_3());
}

#[test]
fn criterion_04_blooming_tree_count() {
    check(suite::criterion_4());
}

#[test]
fn criterion_05_tree_bijection_roundtrips() {
    check(suite::criterion_5());
}

#[test]
fn criterion_06_homology_is_a_wedge_of_spheres() {
    check(suite::criterion_6());
}

#[test]
fn criterion_07_non_shellable_subposets() {
    check(suite::criterion_7());
}

#[test]
fn criterion_08_orbit_reduction() {
    check(suite::criterion_8());
}

#[test]
fn criterion_09_characteristic_polynomial() {
    check(suite::criterion_9());
}

#[test]
fn criterion_10_moebius_chain_duality() {
    check(suite::criterion_10());
}

#[test]
fn informational_notes() {
    for n in [suite::note_subposet_n1(), suite::note_swap_fixed_n3()] {
        println!("[NOTE] {}: {}", n.name, n.detail);
    }
}
