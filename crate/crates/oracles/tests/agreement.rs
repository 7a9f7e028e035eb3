use algebra_core::ArithCtx;
use kisin_rank1::WeightParams;
use oracles::{brute_balanced, brute_maxmin};
use tame_characters::{GKChar, TameChar};
use weight_sets::{member_irred, SerreWeight};

fn ctx(p: u64, f: usize, e: usize, m: usize) -> ArithCtx {
    ArithCtx::new(p, f, e, m).unwrap()
}

/// The decider and the brute force must agree on existence for every full-
/// niveau character and every weight vector; zero-twist weights make the
/// decider's detwisted character equal the raw input.
fn check_irred_agreement(c: &ArithCtx) {
    let p = c.p();
    let f = c.f();
    let modulus = (p as u128).pow(2 * f as u32) - 1;
    for pick in 0..(p as usize).pow(f as u32) {
        let mut gaps = Vec::with_capacity(f);
        let mut rest = pick;
        for _ in 0..f {
            gaps.push((rest % p as usize) as i64);
            rest /= p as usize;
        }
        let w = SerreWeight::new(c, gaps.clone(), vec![0; f]).unwrap();
        let r = WeightParams::new(c, gaps.iter().map(|&g| g as usize + 1).collect()).unwrap();
        for code in 0..modulus {
            let chi = TameChar::new(p, f, 2, code).unwrap();
            if chi.niveau_of() != 2 * f {
                continue;
            }
            let decided = member_irred(c, &w, &chi).unwrap();
            let brute = brute_balanced(c, &chi, &r);
            assert_eq!(
                decided.is_some(),
                brute.is_some(),
                "disagreement at code {code} weights {gaps:?}"
            );
        }
    }
}

#[test]
fn irreducible_decider_agrees_with_direct_search_unramified() {
    check_irred_agreement(&ctx(3, 1, 1, 2));
    check_irred_agreement(&ctx(3, 2, 1, 4));
}

#[test]
fn irreducible_decider_agrees_with_direct_search_ramified() {
    check_irred_agreement(&ctx(3, 1, 2, 2));
    check_irred_agreement(&ctx(3, 2, 2, 4));
}

/// brute_maxmin carries its own internal agreement assertions against the
/// closed form; driving it over every character pair and weight exercises
/// them, and the complementary-shift law is checked here on top.
#[test]
fn model_pair_enumeration_agrees_with_the_closed_form() {
    let c = ctx(3, 1, 2, 2);
    for r_val in 1..=3usize {
        let r = WeightParams::new(&c, vec![r_val]).unwrap();
        for code2 in 0..2u128 {
            for code1 in 0..2u128 {
                let chi2 = GKChar::new(TameChar::new(3, 1, 1, code2).unwrap(), c.f_one()).unwrap();
                let chi = GKChar::new(TameChar::new(3, 1, 1, code1).unwrap(), c.f_one()).unwrap();
                if let Some((n, p)) = brute_maxmin(&c, &chi2, &chi, &r) {
                    assert_eq!(n.s()[0] + p.s()[0], r_val + c.e() - 1);
                }
            }
        }
    }
    let c = ctx(3, 2, 2, 4);
    for r_vec in [[1usize, 2], [2, 2], [3, 1]] {
        let r = WeightParams::new(&c, r_vec.to_vec()).unwrap();
        for code2 in 0..8u128 {
            for code1 in 0..8u128 {
                let chi2 = GKChar::new(TameChar::new(3, 2, 1, code2).unwrap(), c.f_one()).unwrap();
                let chi = GKChar::new(TameChar::new(3, 2, 1, code1).unwrap(), c.f_one()).unwrap();
                if let Some((n, p)) = brute_maxmin(&c, &chi2, &chi, &r) {
                    for i in 0..2 {
                        assert_eq!(n.s()[i] + p.s()[i], r_vec[i] + c.e() - 1);
                    }
                }
            }
        }
    }
}
