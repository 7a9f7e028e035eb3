//! Valuation criterion for uniqueness of the tame descent datum.

use crate::{shape_params, ExtError};
use algebra_core::{rat_int, rat_of, ArithCtx, Rat};
use kisin_rank1::{alpha, RankOneKisin, WeightParams};

/// The per-index valuations measuring how close a shape pair sits to the
/// degenerate boundary, the boundary value itself, and the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauReport {
    /// `v_i = sum_j p^{f-j} (s_{i+j} - t_{i+j}) / (e (p^f - 1))` over
    /// `j = 0..f-1`, each at most `threshold`.
    pub valuations: Vec<Rat>,
    /// `p / (p - 1) + p / e`, attained by `v_i` exactly when every
    /// `s_{i+j} - t_{i+j}` equals `p + e - 1`.
    pub threshold: Rat,
    /// Whether the descent datum is pinned down: false exactly in the
    /// degenerate case `t_i = 0` and `r_i = p` at every index, where all
    /// valuations sit on the boundary.
    pub unique: bool,
}

/// Decides whether the shape pair `(N, P)` determines its descent datum
/// uniquely. The valuations are `v_i = p (alpha_{i-1}(N) - alpha_{i-1}(P)) / e`
/// (computed both ways and cross-checked); uniqueness fails exactly when
/// every valuation equals the boundary `p / (p - 1) + p / e`, which happens
/// exactly for the everywhere-degenerate shape `t_i = 0`, `r_i = p`.
pub fn tau_uniqueness(
    ctx: &ArithCtx,
    quotient: &RankOneKisin,
    sub: &RankOneKisin,
    r: &WeightParams,
) -> Result<TauReport, ExtError> {
    shape_params(ctx, quotient, sub, r)?;
    let f = ctx.f();
    let p = ctx.p() as i64;
    let e = ctx.e() as i64;
    let threshold = rat_of(p, p - 1) + rat_of(p, e);
    let pf_minus_one = {
        let mut pf = rat_int(1);
        for _ in 0..f {
            pf = pf * rat_int(p);
        }
        pf - rat_int(1)
    };
    let valuations: Vec<Rat> = (0..f as i64)
        .map(|i| {
            let mut num = rat_int(0);
            let mut weight = rat_int(1);
            for j in (0..f as i64).rev() {
                weight = weight * rat_int(p);
                let d = quotient.s_at(i + j) as i64 - sub.s_at(i + j) as i64;
                num = num + weight.clone() * rat_int(d);
            }
            let v = num / pf_minus_one.clone() / rat_int(e);
            let via_alpha =
                (alpha(ctx, quotient, i - 1) - alpha(ctx, sub, i - 1)) * rat_int(p) / rat_int(e);
            assert_eq!(v, via_alpha, "valuation must match the alpha-gap form");
            assert!(v <= threshold, "valuations are bounded by the threshold");
            v
        })
        .collect();
    let degenerate = (0..f).all(|i| sub.s()[i] == 0 && r.r()[i] == ctx.p() as usize);
    assert_eq!(
        degenerate,
        valuations.iter().all(|v| *v == threshold),
        "boundary valuations must coincide with the degenerate shape"
    );
    Ok(TauReport {
        valuations,
        threshold,
        unique: !degenerate,
    })
}
