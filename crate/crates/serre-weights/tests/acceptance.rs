//! Acceptance gate: one test per criterion, each printing its own
//! pass/fail line. Tolerances and grids are pinned inside the criterion
//! bodies in `serre_weights::acceptance`.

use serre_weights::acceptance::run_criterion;

fn check(id: usize) {
    let result = run_criterion(id);
    match &result.outcome {
        Ok(()) => println!("criterion {} ({}): pass", result.id, result.name),
        Err(msg) => println!("criterion {} ({}): FAIL: {msg}", result.id, result.name),
    }
    if let Err(msg) = result.outcome {
        panic!("criterion {} ({}) failed: {msg}", result.id, result.name);
    }
}

#[test]
fn criterion_01_trivial_extension_space_at_the_top_weight() {
    check(1);
}

#[test]
fn criterion_02_class_count_matches_the_hodge_profile_exponent() {
    check(2);
}

#[test]
fn criterion_03_normal_form_is_constant_on_coboundary_cosets() {
    check(3);
}

#[test]
fn criterion_04_transforms_preserve_membership_with_verified_morphisms() {
    check(4);
}

#[test]
fn criterion_05_irreducible_membership_agrees_with_the_brute_force() {
    check(5);
}

#[test]
fn criterion_06_deep_ramification_reduces_membership_to_the_determinant() {
    check(6);
}

#[test]
fn criterion_07_model_extremes_agree_with_exhaustive_enumeration() {
    check(7);
}

#[test]
fn criterion_08_loop_class_splits_after_degree_p_base_change() {
    check(8);
}

#[test]
fn criterion_09_tau_valuations_respect_the_ramification_threshold() {
    check(9);
}

#[test]
fn criterion_10_structure_sampler_stays_inside_the_divisibility_boxes() {
    check(10);
}

#[test]
fn criterion_11_taylor_coefficient_valuations_meet_the_level_bounds() {
    check(11);
}
