//! Comparison transforms between model pairs and unramified base change.

use crate::{normal_form, ExtData, ExtError};
use algebra_core::{rat_int, rat_to_i64, ArithCtx, Rat, TruncSeries};
use kisin_rank1::{alpha, exists_map, RankOneKisin, WeightParams};
use num::traits::Signed;

/// Result of a comparison transform: the directly shifted parameters and
/// their normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformResult {
    pub raw: ExtData,
    pub normal: ExtData,
}

fn nonneg_int_shift(v: &Rat) -> usize {
    assert!(
        v.is_integer() && !v.is_negative(),
        "map existence makes the twist exponents non-negative integers"
    );
    usize::try_from(rat_to_i64(v).expect("twist exponent fits i64")).unwrap()
}

/// Moves the class of `x` from its model pair `(N, P)` to `(N2, P2)`, a
/// second pair of rank-one models for the same generic-fibre characters and
/// labeled weights `r`: the parameters pick up the monomial twist
///
/// ```text
/// y'_i = u^{p g_{i-1} + b_i} y_i,
/// g_i = alpha_i(N2) - alpha_i(N),   b_i = alpha_i(P) - alpha_i(P2).
/// ```
///
/// Preconditions, each with its own error: a nonzero map `P -> P2` and a
/// nonzero map `N2 -> N` must exist (the twist exponents are then
/// non-negative integers), the shift sums `s_i + t_i` must equal
/// `r_i + e - 1` on both pairs, and `max(s_i, t_i) >= r_i` must hold on both
/// pairs.
pub fn transform(
    ctx: &ArithCtx,
    x: &ExtData,
    quotient2: &RankOneKisin,
    sub2: &RankOneKisin,
    r: &WeightParams,
) -> Result<TransformResult, ExtError> {
    let f = ctx.f();
    let e = ctx.e();
    if !exists_map(ctx, x.sub(), sub2) {
        return Err(ExtError::SubMapMissing);
    }
    if !exists_map(ctx, quotient2, x.quotient()) {
        return Err(ExtError::QuotientMapMissing);
    }
    for index in 0..f {
        let sum = r.r()[index] + e - 1;
        if x.quotient().s()[index] + x.sub().s()[index] != sum
            || quotient2.s()[index] + sub2.s()[index] != sum
        {
            return Err(ExtError::ShiftSumMismatch { index });
        }
    }
    for index in 0..f {
        let ri = r.r()[index];
        if x.quotient().s()[index].max(x.sub().s()[index]) < ri
            || quotient2.s()[index].max(sub2.s()[index]) < ri
        {
            return Err(ExtError::WeightFloorViolated { index });
        }
    }
    let p = rat_int(ctx.p() as i64);
    let y2: Vec<TruncSeries> = (0..f as i64)
        .map(|i| {
            let gamma_prev = alpha(ctx, quotient2, i - 1) - alpha(ctx, x.quotient(), i - 1);
            let beta = alpha(ctx, x.sub(), i) - alpha(ctx, sub2, i);
            let shift = nonneg_int_shift(&(gamma_prev * p.clone() + beta));
            ctx.s_shift(&x.y()[i as usize], shift)
        })
        .collect();
    let raw = ExtData::new(ctx, quotient2.clone(), sub2.clone(), y2)?;
    let normal = normal_form(ctx, &raw);
    Ok(TransformResult { raw, normal })
}

type Mat2 = [[TruncSeries; 2]; 2];

fn mat_mul(ctx: &ArithCtx, x: &Mat2, y: &Mat2) -> Mat2 {
    std::array::from_fn(|j| {
        std::array::from_fn(|k| {
            ctx.s_add(
                &ctx.s_mul(&x[j][0], &y[0][k]),
                &ctx.s_mul(&x[j][1], &y[1][k]),
            )
        })
    })
}

fn mat_frobenius(ctx: &ArithCtx, x: &Mat2) -> Mat2 {
    std::array::from_fn(|j| std::array::from_fn(|k| ctx.s_frobenius(&x[j][k])))
}

/// The matrix of phi at index `i` in the basis `(e_i, f_i)`: columns are the
/// images of `e_{i-1}` and `f_{i-1}`.
fn phi_matrix(ctx: &ArithCtx, x: &ExtData, i: usize) -> Mat2 {
    let a = x.quotient().coeff_at(ctx, i as i64);
    let b = x.sub().coeff_at(ctx, i as i64);
    [
        [
            ctx.s_monomial(x.sub().s()[i], b),
            x.y()[i].clone(),
        ],
        [ctx.s_zero(), ctx.s_monomial(x.quotient().s()[i], a)],
    ]
}

fn diag(ctx: &ArithCtx, top: TruncSeries, bottom: TruncSeries) -> Mat2 {
    [[top, ctx.s_zero()], [ctx.s_zero(), bottom]]
}

/// Certifies a transform by exhibiting the two morphisms it factors
/// through. With `g_i = alpha_i(N2) - alpha_i(N)` and
/// `b_i = alpha_i(P) - alpha_i(P2)`, the intermediate module `M''` carries
/// the quotient shifts of `N2`, the sub shifts of `P`, and parameters
/// `u^{p g_{i-1}} y_i`; then
///
/// ```text
/// diag(1, u^{g_i})  : M'' -> M    and    diag(u^{b_i}, 1) : M'' -> M2
/// ```
///
/// are phi-equivariant, i.e. `H_i A''_i = A_i phi(H_{i-1})` for the matrices
/// `A` of phi. Both identities are checked coefficientwise below the
/// truncation order; `x2` should be the `raw` half of a transform of `x`.
pub fn verify_transform_morphisms(ctx: &ArithCtx, x: &ExtData, x2: &ExtData) -> bool {
    let f = ctx.f();
    let p = rat_int(ctx.p() as i64);
    let gamma: Vec<Rat> = (0..f as i64)
        .map(|i| alpha(ctx, x2.quotient(), i) - alpha(ctx, x.quotient(), i))
        .collect();
    let beta: Vec<Rat> = (0..f as i64)
        .map(|i| alpha(ctx, x.sub(), i) - alpha(ctx, x2.sub(), i))
        .collect();
    if gamma
        .iter()
        .chain(beta.iter())
        .any(|v| !v.is_integer() || v.is_negative())
    {
        return false;
    }
    // The intermediate module: quotient shifts from x2, sub shifts from x,
    // parameters u^{p g_{i-1}} y_i.
    let mid = {
        let y_mid: Vec<TruncSeries> = (0..f)
            .map(|i| {
                let g_prev = &gamma[(i + f - 1) % f];
                let shift = nonneg_int_shift(&(g_prev.clone() * p.clone()));
                ctx.s_shift(&x.y()[i], shift)
            })
            .collect();
        match ExtData::new(ctx, x2.quotient().clone(), x.sub().clone(), y_mid) {
            Ok(m) => m,
            Err(_) => return false,
        }
    };
    (0..f).all(|i| {
        let prev = (i + f - 1) % f;
        let a_mid = phi_matrix(ctx, &mid, i);
        let h = |j: usize| {
            diag(
                ctx,
                ctx.s_one(),
                ctx.s_monomial(nonneg_int_shift(&gamma[j]), ctx.f_one()),
            )
        };
        let h2 = |j: usize| {
            diag(
                ctx,
                ctx.s_monomial(nonneg_int_shift(&beta[j]), ctx.f_one()),
                ctx.s_one(),
            )
        };
        let into_x = mat_mul(ctx, &h(i), &a_mid)
            == mat_mul(ctx, &phi_matrix(ctx, x, i), &mat_frobenius(ctx, &h(prev)));
        let into_x2 = mat_mul(ctx, &h2(i), &a_mid)
            == mat_mul(ctx, &phi_matrix(ctx, x2, i), &mat_frobenius(ctx, &h2(prev)));
        into_x && into_x2
    })
}

/// Base change along the unramified extension of residue degree `n`: the
/// context grows to residue degree `n f` (same coefficient field and
/// truncation order), and shifts, scalars, and parameters repeat with
/// period `f`.
pub fn base_change_unramified(
    ctx: &ArithCtx,
    x: &ExtData,
    n: usize,
) -> Result<(ArithCtx, ExtData), ExtError> {
    if n == 0 {
        return Err(ExtError::BadBaseChangeDegree);
    }
    let ctx2 = ctx.extend_residue_degree(n)?;
    let f = ctx.f();
    let cycle = |s: &RankOneKisin| {
        let shifts: Vec<usize> = (0..n * f).map(|i| s.s()[i % f]).collect();
        RankOneKisin::new(&ctx2, shifts, s.a().clone()).expect("cycled shifts stay valid")
    };
    let quotient = cycle(x.quotient());
    let sub = cycle(x.sub());
    let y: Vec<TruncSeries> = (0..n * f).map(|i| x.y()[i % f].clone()).collect();
    let out = ExtData::new(&ctx2, quotient, sub, y)?;
    Ok((ctx2, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form;
    use algebra_core::FieldElem;

    fn ctx(p: u64, f: usize, e: usize, m: usize) -> ArithCtx {
        ArithCtx::new(p, f, e, m).unwrap()
    }

    fn model(c: &ArithCtx, s: &[usize], a: FieldElem) -> RankOneKisin {
        RankOneKisin::new(c, s.to_vec(), a).unwrap()
    }

    fn weights(c: &ArithCtx, r: &[usize]) -> WeightParams {
        WeightParams::new(c, r.to_vec()).unwrap()
    }

    fn monomial(c: &ArithCtx, deg: usize, coef: FieldElem) -> TruncSeries {
        let mut s = c.s_zero();
        c.s_add_monomial(&mut s, deg, &coef);
        s
    }

    fn ramified_example(c: &ArithCtx) -> (ExtData, RankOneKisin, RankOneKisin, WeightParams) {
        let n = model(c, &[1], c.f_one());
        let p = model(c, &[2], c.f_one());
        let x = ExtData::new(c, n, p, vec![monomial(c, 0, c.f_gen())]).unwrap();
        let n2 = model(c, &[3], c.f_one());
        let p2 = model(c, &[0], c.f_one());
        (x, n2, p2, weights(c, &[1]))
    }

    #[test]
    fn same_pair_transform_is_the_identity() {
        let c = ctx(3, 1, 3, 2);
        let (x, _, _, r) = ramified_example(&c);
        let got = transform(&c, &x, &x.quotient().clone(), &x.sub().clone(), &r).unwrap();
        assert_eq!(got.raw, x);
        assert_eq!(got.normal, normal_form(&c, &x));
    }

    #[test]
    fn split_class_transforms_to_split() {
        let c = ctx(3, 1, 3, 2);
        let (x, n2, p2, r) = ramified_example(&c);
        let zero = ExtData::zero(&c, x.quotient().clone(), x.sub().clone());
        let got = transform(&c, &zero, &n2, &p2, &r).unwrap();
        assert!(got.raw.is_split_representative());
        assert!(got.normal.is_split_representative());
    }

    #[test]
    fn ramified_shift_example_twists_by_degree_four() {
        let c = ctx(3, 1, 3, 2);
        let (x, n2, p2, r) = ramified_example(&c);
        let got = transform(&c, &x, &n2, &p2, &r).unwrap();
        // gamma = alpha(N2) - alpha(N) = 1, beta = alpha(P) - alpha(P2) = 1,
        // so the twist is u^{3*1 + 1} = u^4; the chase brings it back down.
        assert_eq!(got.raw.y(), &[monomial(&c, 4, c.f_gen())]);
        assert_eq!(got.normal.y(), &[monomial(&c, 0, c.f_gen())]);
    }

    #[test]
    fn transform_requires_a_map_into_the_target_sub() {
        let c = ctx(3, 1, 3, 2);
        let (x, n2, p2, r) = ramified_example(&c);
        let back = transform(
            &c,
            &ExtData::zero(&c, n2, p2),
            &x.quotient().clone(),
            &x.sub().clone(),
            &r,
        );
        assert_eq!(back.unwrap_err(), ExtError::SubMapMissing);
    }

    #[test]
    fn transform_requires_a_map_from_the_target_quotient() {
        let c = ctx(3, 1, 3, 2);
        let n = model(&c, &[1], c.f_gen());
        let p = model(&c, &[2], c.f_one());
        let x = ExtData::zero(&c, n, p);
        let n2 = model(&c, &[3], c.f_one());
        let p2 = model(&c, &[0], c.f_one());
        let got = transform(&c, &x, &n2, &p2, &weights(&c, &[1]));
        assert_eq!(got.unwrap_err(), ExtError::QuotientMapMissing);
    }

    #[test]
    fn transform_checks_the_shift_sums() {
        let c = ctx(3, 1, 3, 2);
        let (x, n2, p2, _) = ramified_example(&c);
        let got = transform(&c, &x, &n2, &p2, &weights(&c, &[2]));
        assert_eq!(got.unwrap_err(), ExtError::ShiftSumMismatch { index: 0 });
    }

    #[test]
    fn transform_checks_the_weight_floor() {
        let c = ctx(5, 1, 1, 2);
        let n = model(&c, &[2], c.f_one());
        let p = model(&c, &[2], c.f_one());
        let x = ExtData::zero(&c, n.clone(), p.clone());
        let got = transform(&c, &x, &n, &p, &weights(&c, &[4]));
        assert_eq!(got.unwrap_err(), ExtError::WeightFloorViolated { index: 0 });
    }

    #[test]
    fn morphism_check_passes_on_the_worked_example() {
        let c = ctx(3, 1, 3, 2);
        let (x, n2, p2, r) = ramified_example(&c);
        let got = transform(&c, &x, &n2, &p2, &r).unwrap();
        assert!(verify_transform_morphisms(&c, &x, &got.raw));
    }

    #[test]
    fn morphism_check_passes_on_the_identity() {
        let c = ctx(3, 1, 3, 2);
        let (x, _, _, _) = ramified_example(&c);
        assert!(verify_transform_morphisms(&c, &x, &x));
    }

    #[test]
    fn morphism_check_rejects_a_tampered_twist() {
        let c = ctx(3, 1, 3, 2);
        let (x, n2, p2, r) = ramified_example(&c);
        let got = transform(&c, &x, &n2, &p2, &r).unwrap();
        let tampered = ExtData::new(
            &c,
            got.raw.quotient().clone(),
            got.raw.sub().clone(),
            vec![c.s_add(&got.raw.y()[0], &monomial(&c, 1, c.f_one()))],
        )
        .unwrap();
        assert!(!verify_transform_morphisms(&c, &x, &tampered));
    }

    #[test]
    fn base_change_multiplicity_one_is_the_identity() {
        let c = ctx(3, 1, 1, 6);
        let n = model(&c, &[2], c.f_one());
        let p = model(&c, &[0], c.f_one());
        let x = ExtData::new(&c, n, p, vec![monomial(&c, 3, c.f_gen())]).unwrap();
        let (c2, out) = base_change_unramified(&c, &x, 1).unwrap();
        assert_eq!(c2.f(), 1);
        assert_eq!(out, x);
    }

    #[test]
    fn loop_class_splits_after_degree_p_base_change() {
        let c = ctx(3, 1, 1, 6);
        let n = model(&c, &[2], c.f_one());
        let p = model(&c, &[0], c.f_one());
        let x = ExtData::new(&c, n, p, vec![monomial(&c, 3, c.f_gen())]).unwrap();
        assert!(!normal_form(&c, &x).is_split_representative());
        let (c2, out) = base_change_unramified(&c, &x, 3).unwrap();
        assert_eq!(c2.f(), 3);
        assert_eq!(out.quotient().s(), &[2, 2, 2]);
        // Three copies of the loop coefficient consolidate to 3c = 0.
        assert!(normal_form(&c2, &out).is_split_representative());
    }

    #[test]
    fn loop_class_stays_nonsplit_after_degree_two_base_change() {
        let c = ctx(3, 1, 1, 4);
        let n = model(&c, &[2], c.f_one());
        let p = model(&c, &[0], c.f_one());
        let g = c.f_gen();
        let x = ExtData::new(&c, n, p, vec![monomial(&c, 3, g.clone())]).unwrap();
        let (c2, out) = base_change_unramified(&c, &x, 2).unwrap();
        let nf = normal_form(&c2, &out);
        assert!(!nf.is_split_representative());
        let two_c = c2.f_add(&g, &g);
        assert_eq!(nf.y()[0], monomial(&c2, 3, two_c));
        assert!(nf.y()[1].is_zero());
    }

    #[test]
    fn base_change_rejects_zero_multiplicity() {
        let c = ctx(3, 1, 1, 2);
        let x = ExtData::zero(
            &c,
            model(&c, &[1], c.f_one()),
            model(&c, &[0], c.f_one()),
        );
        assert_eq!(
            base_change_unramified(&c, &x, 0).unwrap_err(),
            ExtError::BadBaseChangeDegree
        );
    }

    #[test]
    fn base_change_propagates_context_size_errors() {
        let c = ctx(3, 1, 1, 2);
        let x = ExtData::zero(
            &c,
            model(&c, &[1], c.f_one()),
            model(&c, &[0], c.f_one()),
        );
        assert!(matches!(
            base_change_unramified(&c, &x, 2),
            Err(ExtError::Ctx(_))
        ));
    }
}
