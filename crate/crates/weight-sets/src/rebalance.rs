use crate::membership::{balanced_subsets_lex, irred_summand, next_lex};
use crate::witness::{check_params, check_subset, BalancedWitness};
use crate::WeightError;
use algebra_core::ArithCtx;
use kisin_rank1::{determinant_code, WeightParams};
use tame_characters::TameChar;

/// Outcome of rebalancing a subset/parameter presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rebalanced {
    /// A balanced symmetric witness cutting out the same character pair.
    Balanced(BalancedWitness),
    /// The presented character is fixed by conjugation, so the pair
    /// collapses to niveau f and no balanced witness is sought.
    NiveauDegeneracy { code: u64 },
}

/// Conjugation-difference exponents per embedding class: the exponent of
/// the class-`i` fundamental character in `(first summand) * (conjugate
/// of first summand) / determinant`.
fn class_y(ind: &[bool], xs: &[usize], r: &WeightParams, e: usize) -> Vec<i64> {
    let f = r.r().len();
    (0..f)
        .map(|i| {
            let ri = r.r()[i] as i64;
            let (lo, hi) = (xs[i] as i64, xs[i + f] as i64);
            match (ind[i], ind[i + f]) {
                (true, true) => ri + lo + hi - (e as i64 - 1),
                (false, false) => (e as i64 - 1) - ri - lo - hi,
                (true, false) => lo - hi,
                (false, true) => hi - lo,
            }
        })
        .collect()
}

fn summand_code(ctx: &ArithCtx, ind: &[bool], xs: &[usize], r: &WeightParams) -> TameChar {
    irred_summand(ctx, ind, xs, r)
}

/// Rewrites the presentation `(J, x)` of a conjugate character pair as a
/// balanced presentation with conjugation-symmetric parameters, cutting
/// out the same unordered pair. `J` is any strictly increasing subset of
/// the `2f` quadratic embeddings and `x` has `2f` entries in `[0, e-1]`.
///
/// The pair of diagonal characters determined by `(J, x)` always multiplies
/// to the fixed determinant `prod_i omega_i^{r_i + e - 1}`; the pair is
/// conjugate (a precondition for a balanced presentation to exist) exactly
/// when the first summand times its own conjugate also equals that
/// determinant, and otherwise `DeterminantObstruction` is returned. A
/// conjugation-fixed summand yields `NiveauDegeneracy`. For `e >= p` the
/// witness is found by direct search; for `e <= p - 1` the interval and
/// boundary-rotation rewriting rules are applied, with the character code
/// re-checked after every mutation.
pub fn rebalance(
    ctx: &ArithCtx,
    j: &[usize],
    x: &[usize],
    r: &WeightParams,
) -> Result<Rebalanced, WeightError> {
    let f = ctx.f();
    let e = ctx.e();
    let p = ctx.p() as usize;
    check_subset(j, 2 * f)?;
    check_params(x, 2 * f, e)?;

    let mut ind = vec![false; 2 * f];
    for &idx in j {
        ind[idx] = true;
    }
    let target = summand_code(ctx, &ind, x, r);
    let target_conj = target.q_twist().expect("summand has niveau factor 2");

    let det = determinant_code(ctx, r).lift_to_quadratic();
    let prod = target.mul(&target_conj).expect("same ring");
    if prod != det {
        return Err(WeightError::DeterminantObstruction {
            expected: det.code(),
            got: prod.code(),
        });
    }
    if target.niveau_of() == f {
        return Ok(Rebalanced::NiveauDegeneracy {
            code: target.code(),
        });
    }

    if e >= p {
        // Balanced symmetric presentations exhaust all conjugate pairs with
        // the right determinant once e >= p, so scan directly.
        for cand in balanced_subsets_lex(f) {
            let mut cand_ind = vec![false; 2 * f];
            for &idx in &cand {
                cand_ind[idx] = true;
            }
            let mut half = vec![0usize; f];
            loop {
                let mut xs = half.clone();
                xs.extend_from_slice(&half);
                let summand = summand_code(ctx, &cand_ind, &xs, r);
                if summand == target || summand == target_conj {
                    let witness = BalancedWitness::new(ctx, cand, xs)?;
                    return Ok(Rebalanced::Balanced(witness));
                }
                if !next_lex(&mut half, e) {
                    break;
                }
            }
        }
        unreachable!("a balanced witness exists for e >= p once the determinant matches");
    }

    let mut xs = x.to_vec();

    // Solve y_i = p a_i - a_{i+1} cyclically; the determinant identity
    // makes the leading coefficient integral.
    let y = class_y(&ind, &xs, r, e);
    let p_i = p as i128;
    let pf1: i128 = p_i.pow(f as u32) - 1;
    let s_sum: i128 = y.iter().fold(0i128, |acc, &yi| acc * p_i + yi as i128);
    assert_eq!(
        s_sum.rem_euclid(pf1),
        0,
        "determinant identity must make the carry coefficient integral"
    );
    let mut a = vec![0i64; f];
    a[0] = i64::try_from(s_sum.div_euclid(pf1)).expect("carry coefficient is small");
    for i in 0..f - 1 {
        a[i + 1] = p as i64 * a[i] - y[i];
    }
    assert_eq!(
        p as i64 * a[f - 1] - y[f - 1],
        a[0],
        "carry recursion must close cyclically"
    );
    assert!(a.iter().all(|&v| v.abs() <= 2), "carries are bounded by 2");
    if a.iter().all(|&v| v == 2) || a.iter().all(|&v| v == -2) {
        unreachable!("uniform extreme carries force a conjugation-fixed summand");
    }
    assert!(
        a.iter().all(|&v| v.abs() <= 1),
        "non-uniform carries are bounded by 1"
    );

    if a.iter().any(|&v| v == 0) {
        rebalance_with_zero_carry(ctx, &mut ind, &mut xs, r, &a, &target);
        let jj: Vec<usize> = (0..2 * f).filter(|&t| ind[t]).collect();
        let witness = BalancedWitness::new(ctx, jj, xs)?;
        let final_code = summand_code(ctx, &witness.indicator(f), witness.x(), r);
        assert_eq!(final_code, target, "rewriting preserves the summand");
        Ok(Rebalanced::Balanced(witness))
    } else {
        let expect_conj = rebalance_unit_carries(ctx, &mut ind, &mut xs, r, &a);
        let jj: Vec<usize> = (0..2 * f).filter(|&t| ind[t]).collect();
        let witness = BalancedWitness::new(ctx, jj, xs)?;
        let final_code = summand_code(ctx, &witness.indicator(f), witness.x(), r);
        let expected = if expect_conj { &target_conj } else { &target };
        assert_eq!(
            final_code, *expected,
            "boundary rewriting preserves the summand up to conjugation"
        );
        Ok(Rebalanced::Balanced(witness))
    }
}

/// Case of at least one zero carry: rewrite each interval of nonzero
/// conjugation-difference exponents, then settle the remaining unbalanced
/// conjugate pairs one slot at a time.
fn rebalance_with_zero_carry(
    ctx: &ArithCtx,
    ind: &mut [bool],
    xs: &mut [usize],
    r: &WeightParams,
    a: &[i64],
    target: &TameChar,
) {
    let f = ctx.f();
    let e = ctx.e();

    // Maximal cyclic runs of nonzero carries, keyed by ascending start.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for z in 0..f {
        if a[z] == 0 && a[(z + 1) % f] != 0 {
            let start = (z + 1) % f;
            let mut len = 0;
            while a[(start + len) % f] != 0 {
                len += 1;
            }
            runs.push((start, len));
        }
    }
    runs.sort_unstable();

    for &(start, len) in &runs {
        // The interval of nonzero difference exponents is [i0, i0 + len],
        // starting one class before the carry run.
        let i0 = (start + f - 1) % f;
        let both = ind[i0] == ind[i0 + f];
        let snapshot = xs.to_vec();
        for t in 0..=len {
            let slot = (i0 + t) % (2 * f);
            xs[slot] = snapshot[(slot + f) % (2 * f)];
        }
        let toggle_from = usize::from(!both);
        for t in toggle_from..=len {
            let slot = (i0 + t) % (2 * f);
            ind[slot] = !ind[slot];
        }
        assert_eq!(
            &summand_code(ctx, ind, xs, r),
            target,
            "interval rewriting preserves the summand"
        );
    }

    let y_after = class_y(ind, xs, r, e);
    assert!(
        y_after.iter().all(|&v| v == 0),
        "interval rewriting clears every difference exponent"
    );

    for i in 0..f {
        if ind[i] == ind[i + f] {
            ind[i] = !ind[i];
            xs[i] = xs[i + f];
            assert_eq!(
                &summand_code(ctx, ind, xs, r),
                target,
                "pair settling preserves the summand"
            );
        }
    }
}

/// Case of all carries equal to plus or minus one: every conjugate pair is
/// doubly included or doubly excluded. Normalize to include a pair (by
/// complementing if necessary, which swaps the summand with its conjugate),
/// rotate a doubly-included class to the front, and read off the balanced
/// parameters from the boundary table. Returns whether the summand was
/// swapped with its conjugate.
fn rebalance_unit_carries(
    ctx: &ArithCtx,
    ind: &mut [bool],
    xs: &mut [usize],
    r: &WeightParams,
    a: &[i64],
) -> bool {
    let f = ctx.f();
    let e = ctx.e();

    let mut a = a.to_vec();
    let complemented = a.iter().all(|&v| v == -1);
    if complemented {
        for slot in ind.iter_mut() {
            *slot = !*slot;
        }
        for v in a.iter_mut() {
            *v = -*v;
        }
    }
    for i in 0..f {
        assert_eq!(ind[i], ind[i + f], "unit carries pair the conjugate slots");
        assert_eq!(ind[i], a[i] == 1, "inclusion tracks the carry sign");
    }

    let c = if a.iter().all(|&v| v == 1) {
        // Everything doubly included: rotate a non-maximal parameter into
        // the last class so the final increment stays in range.
        let pivot = (0..2 * f)
            .find(|&t| xs[t] != e - 1)
            .expect("conjugation-fixed summands were filtered out");
        (pivot + 2 * f - (f - 1)) % (2 * f)
    } else {
        // Rotate so class 0 is doubly included and class f-1 doubly
        // excluded, picking the least boundary.
        (0..f)
            .find(|&cc| a[cc] == 1 && a[(cc + f - 1) % f] == -1)
            .expect("mixed carries have an exclusion-to-inclusion boundary")
    };

    let rot_ind: Vec<bool> = (0..2 * f).map(|t| ind[(t + c) % (2 * f)]).collect();
    let rot_x: Vec<usize> = (0..2 * f).map(|t| xs[(t + c) % (2 * f)]).collect();
    let rot_r =
        WeightParams::new(ctx, (0..f).map(|i| r.r()[(i + c) % f]).collect()).expect("permuted");

    assert!(rot_ind[0], "class 0 is doubly included after rotation");
    if a.iter().any(|&v| v == -1) {
        assert!(!rot_ind[f - 1], "class f-1 is doubly excluded after rotation");
    } else {
        assert_ne!(rot_x[f - 1], e - 1, "the pivot parameter is non-maximal");
    }

    let mut xp = vec![0usize; 2 * f];
    for i in 0..f {
        let cur = rot_ind[i];
        let next = rot_ind[(i + 1) % f];
        let base = match (cur, next) {
            (true, true) => rot_x[i] as i64,
            (true, false) => rot_x[i] as i64 - 1,
            (false, true) => rot_x[i + f] as i64 - 1,
            (false, false) => rot_x[i + f] as i64,
        };
        let v = if i == f - 1 { base + 1 } else { base };
        assert!(
            (0..e as i64).contains(&v),
            "boundary table stays inside the parameter range"
        );
        xp[i] = v as usize;
        xp[i + f] = v as usize;
    }

    // In the rotated frame the witness includes exactly the first f slots;
    // it must present the same character as the rotated summand.
    let wit_ind: Vec<bool> = (0..2 * f).map(|t| t < f).collect();
    assert_eq!(
        irred_summand(ctx, &wit_ind, &xp, &rot_r),
        irred_summand(ctx, &rot_ind, &rot_x, &rot_r),
        "boundary table preserves the rotated character"
    );

    // Undo the rotation.
    for t in 0..2 * f {
        ind[t] = (t + 2 * f - c) % (2 * f) < f;
        xs[t] = xp[(t + 2 * f - c) % (2 * f)];
    }
    complemented
}
