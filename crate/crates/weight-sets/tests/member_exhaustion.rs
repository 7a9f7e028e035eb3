use algebra_core::ArithCtx;
use kisin_rank1::determinant_code;
use tame_characters::TameChar;
use weight_sets::{detwist, member_irred, SerreWeight};

/// With e >= p the parameter boxes cover every exponent pattern, so
/// membership in the irreducible case collapses to the determinant
/// condition alone. Checked exhaustively at p = 3, f = 1, e = 3.
#[test]
fn wide_ramification_membership_is_exactly_the_determinant_condition() {
    let c = ArithCtx::new(3, 1, 3, 2).unwrap();
    let niveau_two_codes: Vec<u128> = (0..8).filter(|&code| code * 3 % 8 != code).collect();
    assert_eq!(niveau_two_codes.len(), 6);
    let mut members = 0usize;
    for b in 0..2i64 {
        for gap in 0..3i64 {
            let w = SerreWeight::new(&c, vec![b + gap], vec![b]).unwrap();
            let (r, twist) = detwist(&c, &w).unwrap();
            let det = determinant_code(&c, &r).lift_to_quadratic();
            for &code in &niveau_two_codes {
                let chi = TameChar::new(3, 1, 2, code).unwrap();
                let detwisted = chi.div(&twist.lift_to_quadratic()).unwrap();
                let satisfies_det =
                    detwisted.mul(&detwisted.q_twist().unwrap()).unwrap() == det;
                let witness = member_irred(&c, &w, &chi).unwrap();
                assert_eq!(witness.is_some(), satisfies_det);
                if witness.is_some() {
                    members += 1;
                }
            }
        }
    }
    assert!(members > 0, "the exhaustion law must be witnessed positively");
}
