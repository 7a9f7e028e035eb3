use algebra_core::ArithCtx;
use kisin_rank1::{
    determinant_code, exists_map, generic_fibre, maxmin_pair, ModelError, RankOneKisin,
    WeightParams,
};
use tame_characters::{GKChar, TameChar};
use weight_sets::BalancedWitness;

/// Exhaustive search for a balanced witness presenting `chi`: scans the
/// 2^f balanced subsets in lexicographic order and the e^f symmetric
/// parameter vectors, computing each candidate's character code from first
/// principles (index i carries weight p^((2f-i) mod 2f)). Returns the
/// least witness found.
pub fn brute_balanced(
    ctx: &ArithCtx,
    chi: &TameChar,
    r: &WeightParams,
) -> Option<BalancedWitness> {
    let f = ctx.f();
    let e = ctx.e();
    assert_eq!(chi.p(), ctx.p(), "character lives over the context prime");
    assert_eq!(chi.f(), f, "character lives over the context degree");
    assert_eq!(chi.niveau_factor(), 2, "quadratic-niveau code expected");
    assert_eq!(chi.niveau_of(), 2 * f, "input must have full niveau");

    let p = ctx.p() as u128;
    let modulus = p.pow(2 * f as u32) - 1;
    let target = chi.code() as u128;

    let mut subsets: Vec<Vec<usize>> = (0..1u32 << f)
        .map(|mask| {
            let mut j: Vec<usize> = (0..f)
                .map(|i| if mask & (1 << i) != 0 { i } else { i + f })
                .collect();
            j.sort_unstable();
            j
        })
        .collect();
    subsets.sort();

    for j in &subsets {
        let total = e.pow(f as u32);
        for pick in 0..total {
            let mut half = vec![0usize; f];
            let mut rest = pick;
            for slot in half.iter_mut() {
                *slot = rest % e;
                rest /= e;
            }
            let mut code = 0u128;
            for i in 0..2 * f {
                let exp = if j.binary_search(&i).is_ok() {
                    (r.r()[i % f] + half[i % f]) as u128
                } else {
                    (e - 1 - half[i % f]) as u128
                };
                code = (code + exp * (p.pow(((2 * f - i) % (2 * f)) as u32) % modulus)) % modulus;
            }
            if code == target {
                let mut x = half.clone();
                x.extend(half.iter().copied());
                return Some(BalancedWitness::new(ctx, j.clone(), x).unwrap());
            }
        }
    }
    None
}

/// All admissible rank-one models of `chi` for weights `r`, by direct
/// odometer over the per-index degree boxes [0, e-1] union
/// [r_i, r_i+e-1], filtered on generic-fibre equality.
fn enumerate_models(ctx: &ArithCtx, chi: &GKChar, r: &WeightParams) -> Vec<RankOneKisin> {
    let f = ctx.f();
    let e = ctx.e();
    let boxes: Vec<Vec<usize>> = (0..f)
        .map(|i| {
            let ri = r.r()[i];
            let mut degrees: Vec<usize> = (0..e).chain(ri..ri + e).collect();
            degrees.sort_unstable();
            degrees.dedup();
            degrees
        })
        .collect();
    let mut found = Vec::new();
    let mut idx = vec![0usize; f];
    loop {
        let s: Vec<usize> = (0..f).map(|i| boxes[i][idx[i]]).collect();
        let model = RankOneKisin::new(ctx, s, chi.unramified.clone()).unwrap();
        if generic_fibre(ctx, &model) == *chi {
            found.push(model);
        }
        let mut carry = f;
        for i in (0..f).rev() {
            idx[i] += 1;
            if idx[i] < boxes[i].len() {
                carry = i;
                break;
            }
            idx[i] = 0;
        }
        if carry == f {
            break;
        }
    }
    found
}

/// Brute-force distinguished model pair: enumerate every admissible model
/// of the quotient character `chi2` and the sub character `chi`, pick the
/// unique minimal (maps to all candidates) and maximal (receives from all
/// candidates) models by pairwise map existence, and assert agreement with
/// the closed-form `maxmin_pair` at every step. Returns `None` exactly
/// when no admissible pair exists (determinant failure or empty model
/// sets).
pub fn brute_maxmin(
    ctx: &ArithCtx,
    chi2: &GKChar,
    chi: &GKChar,
    r: &WeightParams,
) -> Option<(RankOneKisin, RankOneKisin)> {
    let det = determinant_code(ctx, r);
    let prod = chi2.tame.mul(&chi.tame).unwrap();
    if prod != det {
        let algo = maxmin_pair(ctx, chi2, chi, r);
        assert!(
            matches!(algo, Err(ModelError::DeterminantMismatch { .. })),
            "determinant failure must be mirrored by the closed form"
        );
        return None;
    }
    let quot_models = enumerate_models(ctx, chi2, r);
    let sub_models = enumerate_models(ctx, chi, r);
    let algo = maxmin_pair(ctx, chi2, chi, r).expect("determinant already checked");
    if quot_models.is_empty() && sub_models.is_empty() {
        assert_eq!(algo, None, "closed form must agree the model sets are empty");
        return None;
    }
    let minima: Vec<&RankOneKisin> = quot_models
        .iter()
        .filter(|n| quot_models.iter().all(|m| exists_map(ctx, n, m)))
        .collect();
    let maxima: Vec<&RankOneKisin> = sub_models
        .iter()
        .filter(|p| sub_models.iter().all(|m| exists_map(ctx, m, p)))
        .collect();
    assert_eq!(minima.len(), 1, "the minimal model is unique");
    assert_eq!(maxima.len(), 1, "the maximal model is unique");
    let pair = (minima[0].clone(), maxima[0].clone());
    assert_eq!(
        algo.as_ref(),
        Some(&pair),
        "closed form and enumeration must pick the same pair"
    );
    Some(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, f: usize, e: usize, m: usize) -> ArithCtx {
        ArithCtx::new(p, f, e, m).unwrap()
    }

    #[test]
    fn direct_search_finds_the_doubly_included_witness() {
        let c = ctx(3, 1, 1, 2);
        let r = WeightParams::new(&c, vec![2]).unwrap();
        let chi = TameChar::new(3, 1, 2, 2).unwrap();
        let w = brute_balanced(&c, &chi, &r).unwrap();
        assert_eq!(w.j(), &[0]);
        assert_eq!(w.x(), &[0, 0]);
    }

    #[test]
    fn direct_search_reports_the_odd_power_as_unreachable() {
        let c = ctx(3, 1, 1, 2);
        let r = WeightParams::new(&c, vec![2]).unwrap();
        let chi = TameChar::new(3, 1, 2, 1).unwrap();
        assert!(brute_balanced(&c, &chi, &r).is_none());
    }

    #[test]
    fn unramified_scan_reduces_to_the_balanced_subsets() {
        // e = 1 forces x = 0, so the scan is over balanced subsets only;
        // every witness found must have the zero parameter vector.
        let c = ctx(3, 2, 1, 4);
        let r = WeightParams::new(&c, vec![2, 3]).unwrap();
        for code in 0..80u128 {
            let chi = TameChar::new(3, 2, 2, code).unwrap();
            if chi.niveau_of() != 4 {
                continue;
            }
            if let Some(w) = brute_balanced(&c, &chi, &r) {
                assert_eq!(w.x(), &[0, 0, 0, 0]);
            }
        }
    }

    #[test]
    fn trivial_characters_select_the_extreme_shift_pair() {
        let c = ctx(3, 1, 1, 2);
        let r = WeightParams::new(&c, vec![2]).unwrap();
        let trivial_tame = TameChar::trivial(3, 1, 1);
        let chi2 = GKChar::new(trivial_tame.clone(), c.f_one()).unwrap();
        let chi = GKChar::new(trivial_tame, c.f_one()).unwrap();
        let (n, p) = brute_maxmin(&c, &chi2, &chi, &r).unwrap();
        assert_eq!(n.s(), &[2]);
        assert_eq!(p.s(), &[0]);
    }

    #[test]
    fn determinant_failure_empties_the_pair() {
        let c = ctx(3, 1, 1, 2);
        let r = WeightParams::new(&c, vec![2]).unwrap();
        let chi2 = GKChar::new(TameChar::new(3, 1, 1, 1).unwrap(), c.f_one()).unwrap();
        let chi = GKChar::new(TameChar::trivial(3, 1, 1), c.f_one()).unwrap();
        assert!(brute_maxmin(&c, &chi2, &chi, &r).is_none());
    }
}
