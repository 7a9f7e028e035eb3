use crate::weight::{detwist, SerreWeight};
use crate::witness::{BalancedWitness, SplitWitness};
use crate::WeightError;
use algebra_core::ArithCtx;
use kisin_rank1::{determinant_code, WeightParams};
use tame_characters::{encode, TameChar};

pub(crate) fn check_ring(
    ctx: &ArithCtx,
    chi: &TameChar,
    niveau_factor: u8,
) -> Result<(), WeightError> {
    if chi.p() != ctx.p() || chi.f() != ctx.f() || chi.niveau_factor() != niveau_factor {
        return Err(WeightError::RingMismatch);
    }
    Ok(())
}

/// All subsets of `0..n` as strictly increasing index lists, ordered
/// lexicographically by list.
pub(crate) fn subsets_lex(n: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (0u64..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort();
    subsets
}

/// All balanced subsets of `0..2f` (one slot per conjugate pair) as
/// strictly increasing index lists, ordered lexicographically by list.
pub(crate) fn balanced_subsets_lex(f: usize) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (0u64..1 << f)
        .map(|mask| {
            let mut j: Vec<usize> = (0..f)
                .map(|i| if mask >> i & 1 == 1 { i + f } else { i })
                .collect();
            j.sort_unstable();
            j
        })
        .collect();
    subsets.sort();
    subsets
}

/// Advances `x` through `[0, e-1]^len` in lexicographic order; returns
/// false once the odometer wraps back to all zeros.
pub(crate) fn next_lex(x: &mut [usize], e: usize) -> bool {
    for slot in x.iter_mut().rev() {
        if *slot + 1 < e {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

/// The ordered diagonal character pair cut out by `(J, x)` from a weight:
/// on `J` the first character takes `a_i + 1 + x_i` and the second
/// `b_i + e - 1 - x_i`; off `J` the first takes `b_i + x_i` and the second
/// `a_i + e - x_i`.
pub fn split_pair(
    ctx: &ArithCtx,
    w: &SerreWeight,
    in_j: &[bool],
    x: &[usize],
) -> (TameChar, TameChar) {
    let f = ctx.f();
    let e = ctx.e() as i64;
    assert_eq!(in_j.len(), f);
    assert_eq!(x.len(), f);
    let mut first = Vec::with_capacity(f);
    let mut second = Vec::with_capacity(f);
    for i in 0..f {
        let (a, b, xi) = (w.a()[i], w.b()[i], x[i] as i64);
        if in_j[i] {
            first.push(a + 1 + xi);
            second.push(b + e - 1 - xi);
        } else {
            first.push(b + xi);
            second.push(a + e - xi);
        }
    }
    let c1 = encode(ctx.p(), f, 1, &first).expect("exponent vector has length f");
    let c2 = encode(ctx.p(), f, 1, &second).expect("exponent vector has length f");
    (c1, c2)
}

/// The diagonal summand cut out by `(J, x)` at the quadratic level:
/// `r_i + x_i` on `J` and `e - 1 - x_i` off `J`, per quadratic embedding.
pub fn irred_summand(ctx: &ArithCtx, in_j: &[bool], x: &[usize], r: &WeightParams) -> TameChar {
    let f = ctx.f();
    let e = ctx.e() as i64;
    assert_eq!(in_j.len(), 2 * f);
    assert_eq!(x.len(), 2 * f);
    let exps: Vec<i64> = (0..2 * f)
        .map(|slot| {
            if in_j[slot] {
                r.r()[slot % f] as i64 + x[slot] as i64
            } else {
                e - 1 - x[slot] as i64
            }
        })
        .collect();
    encode(ctx.p(), f, 2, &exps).expect("exponent vector has length 2f")
}

fn indicator(j: &[usize], len: usize) -> Vec<bool> {
    let mut ind = vec![false; len];
    for &idx in j {
        ind[idx] = true;
    }
    ind
}

/// Decides membership of `w` in the explicit set of the split residual
/// representation with ordered diagonal characters `(chi1, chi2)`, both of
/// niveau factor 1. Returns the lexicographically least witness `(J, x)`
/// whose diagonal pair matches `(chi1, chi2)` in order, or `None`.
pub fn member_split(
    ctx: &ArithCtx,
    w: &SerreWeight,
    chi1: &TameChar,
    chi2: &TameChar,
) -> Result<Option<SplitWitness>, WeightError> {
    check_ring(ctx, chi1, 1)?;
    check_ring(ctx, chi2, 1)?;
    let f = ctx.f();
    let e = ctx.e();
    for j in subsets_lex(f) {
        let in_j = indicator(&j, f);
        let mut x = vec![0usize; f];
        loop {
            let (c1, c2) = split_pair(ctx, w, &in_j, &x);
            if c1 == *chi1 && c2 == *chi2 {
                let witness = SplitWitness::new(ctx, j.clone(), x.clone())?;
                let recheck = split_pair(ctx, w, &witness.indicator(f), witness.x());
                assert_eq!(
                    (&recheck.0, &recheck.1),
                    (chi1, chi2),
                    "witness must satisfy the diagonal character equations"
                );
                return Ok(Some(witness));
            }
            if !next_lex(&mut x, e) {
                break;
            }
        }
    }
    Ok(None)
}

/// Decides membership of `w` in the explicit set of the irreducible
/// residual representation induced from the niveau-2f character `chi`
/// (the conjugate summand is implied). Returns the lexicographically least
/// balanced symmetric witness matching the detwisted `chi` or its
/// conjugate, or `None`. A character fixed by conjugation is rejected.
pub fn member_irred(
    ctx: &ArithCtx,
    w: &SerreWeight,
    chi: &TameChar,
) -> Result<Option<BalancedWitness>, WeightError> {
    check_ring(ctx, chi, 2)?;
    let f = ctx.f();
    let e = ctx.e();
    if chi.niveau_of() == f {
        return Err(WeightError::NiveauF);
    }
    let (r, twist) = detwist(ctx, w)?;
    let twist2 = twist.lift_to_quadratic();
    let chi_d = chi.div(&twist2).expect("twist lift lives over the same ring");
    let chi_d_conj = chi_d.q_twist().expect("chi has niveau factor 2");

    // The two diagonal summands of any witness multiply to the determinant
    // code, so a conjugate pair can only match when chi_d * chi_d^q does.
    let det = determinant_code(ctx, &r).lift_to_quadratic();
    let prod = chi_d.mul(&chi_d_conj).expect("same ring");
    if prod != det {
        return Ok(None);
    }

    for j in balanced_subsets_lex(f) {
        let in_j = indicator(&j, 2 * f);
        let mut half = vec![0usize; f];
        loop {
            let mut x = half.clone();
            x.extend_from_slice(&half);
            let summand = irred_summand(ctx, &in_j, &x, &r);
            if summand == chi_d || summand == chi_d_conj {
                let witness = BalancedWitness::new(ctx, j.clone(), x)?;
                let recheck = irred_summand(ctx, &witness.indicator(f), witness.x(), &r);
                assert!(
                    recheck == chi_d || recheck == chi_d_conj,
                    "witness must cut out the detwisted character or its conjugate"
                );
                return Ok(Some(witness));
            }
            if !next_lex(&mut half, e) {
                break;
            }
        }
    }
    Ok(None)
}
