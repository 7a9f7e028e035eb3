use crate::weight::{detwist, SerreWeight};
use crate::WeightError;
use algebra_core::ArithCtx;
use kisin_ext::{is_pseudo_bt, tau_uniqueness, transform, ExtData, TauReport};
use kisin_rank1::{generic_fibre, maxmin_pair, ModelError};
use tame_characters::{cyclotomic_tame_code, GKChar};

/// Outcome of a non-split membership decision.
#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub member: bool,
    pub diagnostics: Vec<String>,
    /// Uniqueness report for the descent datum of the distinguished model
    /// pair; absent when no admissible model pair exists.
    pub tau: Option<TauReport>,
    /// Set when every weight equals `p` and the maximal sub-side model is
    /// unramified: the one shape where the crystalline comparison depends
    /// on the choice of lift pair.
    pub unramified_caveat: bool,
}

/// Whether the tame part of the quotient-side character divided by the
/// sub-side character equals the mod-p cyclotomic tame character.
pub fn cyclotomic_tame_check(ctx: &ArithCtx, quotient_char: &GKChar, sub_char: &GKChar) -> bool {
    let ratio = quotient_char
        .tame
        .div(&sub_char.tame)
        .expect("fibre characters live over the same ring");
    ratio == cyclotomic_tame_code(ctx)
}

/// Decides membership of `w` in the explicit set of the non-split residual
/// extension presented by `x`: detwist, locate the distinguished
/// minimal/maximal model pair for the generic-fibre characters of `x`,
/// move the class onto that pair, and test the normal form against the
/// allowed degrees. `cyclotomic_flag` asserts that the quotient-to-sub
/// character ratio is the full mod-p cyclotomic character (its tame part
/// is checkable here, its unramified part is configuration); when the
/// weights and models degenerate to the everywhere-unramified top shape,
/// a cyclotomic ratio makes every extension a member.
pub fn member_nonsplit(
    ctx: &ArithCtx,
    x: &ExtData,
    w: &SerreWeight,
    cyclotomic_flag: bool,
) -> Result<MembershipReport, WeightError> {
    let (r, _twist) = detwist(ctx, w)?;
    let quotient_char = generic_fibre(ctx, x.quotient());
    let sub_char = generic_fibre(ctx, x.sub());
    let (n_min, p_max) = match maxmin_pair(ctx, &quotient_char, &sub_char, &r) {
        Ok(Some(pair)) => pair,
        Ok(None) | Err(ModelError::DeterminantMismatch { .. }) => {
            return Ok(MembershipReport {
                member: false,
                diagnostics: vec!["no admissible rank-one models".to_string()],
                tau: None,
                unramified_caveat: false,
            });
        }
        Err(err) => return Err(err.into()),
    };
    let tau = tau_uniqueness(ctx, &n_min, &p_max, &r)?;
    let exceptional_shape = r.r().iter().all(|&ri| ri == ctx.p() as usize)
        && p_max.s().iter().all(|&t| t == 0);
    let mut diagnostics = Vec::new();
    if exceptional_shape {
        diagnostics.push(
            "maximal sub-side model is unramified at the top weight; \
             the comparison depends on the choice of lift pair"
                .to_string(),
        );
    }
    if exceptional_shape && cyclotomic_flag {
        diagnostics
            .push("every extension in the cyclotomic top-weight shape is a member".to_string());
        return Ok(MembershipReport {
            member: true,
            diagnostics,
            tau: Some(tau),
            unramified_caveat: true,
        });
    }
    let moved = transform(ctx, x, &n_min, &p_max, &r)?;
    let member = is_pseudo_bt(ctx, &moved.normal, &r)?;
    diagnostics.push(if member {
        "normal form over the distinguished model pair is supported on allowed degrees".to_string()
    } else {
        "normal form over the distinguished model pair leaves the allowed degrees".to_string()
    });
    Ok(MembershipReport {
        member,
        diagnostics,
        tau: Some(tau),
        unramified_caveat: exceptional_shape,
    })
}
