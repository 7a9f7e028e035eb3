//! Subcommand implementations.
//!
//! Every function returns the `result` body for the report envelope, or a
//! precondition message (mapped to exit code 2 by the binary). Internal
//! invariant violations panic and are mapped to exit code 3.

use crate::json;
use algebra_core::{ArithCtx, FieldElem};
use kisin_ext::{allowed_pseudo_bt, dim_count, normal_form, transform, verify_transform_morphisms};
use kisin_rank1::{maxmin_pair, RankOneKisin, WeightParams};
use num::BigUint;
use oracles::{
    brute_balanced, brute_maxmin, check_taylor_valuations, random_level_samples, sample_struct,
    sufficient_precision, valuation_bounds,
};
use serde_json::{json, Value};
use tame_characters::{GKChar, TameChar};
use weight_sets::{member_irred, member_nonsplit, member_split, rebalance, Rebalanced, SerreWeight};

pub type CmdResult = Result<Value, String>;

fn err<T>(message: impl std::fmt::Display) -> Result<T, String> {
    Err(message.to_string())
}

fn tame(ctx: &ArithCtx, niveau_factor: u8, code: u64) -> Result<TameChar, String> {
    TameChar::new(ctx.p(), ctx.f(), niveau_factor, code as u128).map_err(|e| e.to_string())
}

fn scalar_from(ctx: &ArithCtx, coords: Option<&[u64]>, what: &str) -> Result<FieldElem, String> {
    match coords {
        None => Ok(ctx.f_one()),
        Some(raw) => json::parse_field(ctx, &json!(raw), what),
    }
}

fn weight_params(ctx: &ArithCtx, r: &[usize]) -> Result<WeightParams, String> {
    WeightParams::new(ctx, r.to_vec()).map_err(|e| e.to_string())
}

fn model(ctx: &ArithCtx, s: &[usize], a: FieldElem, what: &str) -> Result<RankOneKisin, String> {
    RankOneKisin::new(ctx, s.to_vec(), a).map_err(|e| format!("{what}: {e}"))
}

fn witness_value(j: &[usize], x: &[usize]) -> Value {
    json!({ "j": j, "x": x })
}

/// All Serre weights of the context in lexicographic `(b, a - b)` order.
pub fn enumerate_weights(ctx: &ArithCtx) -> Vec<SerreWeight> {
    let f = ctx.f();
    let top = ctx.p() as i64 - 1;
    let mut out = Vec::new();
    let mut b = vec![0i64; f];
    loop {
        if !b.iter().all(|&bi| bi == top) {
            let mut gap = vec![0i64; f];
            loop {
                let a: Vec<i64> = b.iter().zip(&gap).map(|(bi, gi)| bi + gi).collect();
                out.push(SerreWeight::new(ctx, a, b.clone()).expect("ranges respected"));
                if !next_vec(&mut gap, top) {
                    break;
                }
            }
        }
        if !next_vec(&mut b, top) {
            break;
        }
    }
    out
}

/// Lexicographic odometer over `[0, max]^len`; false once wrapped to zero.
pub fn next_vec(v: &mut [i64], max: i64) -> bool {
    for slot in v.iter_mut().rev() {
        if *slot < max {
            *slot += 1;
            return true;
        }
        *slot = 0;
    }
    false
}

pub fn weights_split(ctx: &ArithCtx, chi1_code: u64, chi2_code: u64) -> CmdResult {
    let chi1 = tame(ctx, 1, chi1_code)?;
    let chi2 = tame(ctx, 1, chi2_code)?;
    let mut results = Vec::new();
    for w in enumerate_weights(ctx) {
        match member_split(ctx, &w, &chi1, &chi2) {
            Ok(Some(witness)) => results.push(json!({
                "weight": json::weight_value(&w),
                "witness": witness_value(witness.j(), witness.x()),
            })),
            Ok(None) => {}
            Err(e) => return err(e),
        }
    }
    Ok(json!({ "count": results.len(), "members": results }))
}

pub fn weights_irred(ctx: &ArithCtx, chi_code: u64) -> CmdResult {
    let chi = tame(ctx, 2, chi_code)?;
    let mut results = Vec::new();
    for w in enumerate_weights(ctx) {
        match member_irred(ctx, &w, &chi) {
            Ok(Some(witness)) => results.push(json!({
                "weight": json::weight_value(&w),
                "witness": witness_value(witness.j(), witness.x()),
            })),
            Ok(None) => {}
            Err(e) => return err(e),
        }
    }
    Ok(json!({ "count": results.len(), "members": results }))
}

pub fn weights_ext(ctx: &ArithCtx, ext: &Value, weight: &Value, cyclotomic: bool) -> CmdResult {
    let x = json::parse_ext(ctx, ext)?;
    let w = json::parse_weight(ctx, weight)?;
    let report = member_nonsplit(ctx, &x, &w, cyclotomic).map_err(|e| e.to_string())?;
    Ok(json!({
        "member": report.member,
        "diagnostics": report.diagnostics,
        "tau": report.tau.as_ref().map(json::tau_value),
        "unramified_caveat": report.unramified_caveat,
    }))
}

pub fn maxmin(
    ctx: &ArithCtx,
    chi2_code: u64,
    chi_code: u64,
    a2: Option<&[u64]>,
    a: Option<&[u64]>,
    r: &[usize],
) -> CmdResult {
    let chi2 = GKChar::new(tame(ctx, 1, chi2_code)?, scalar_from(ctx, a2, "--a2")?)
        .map_err(|e| e.to_string())?;
    let chi = GKChar::new(tame(ctx, 1, chi_code)?, scalar_from(ctx, a, "--a")?)
        .map_err(|e| e.to_string())?;
    let params = weight_params(ctx, r)?;
    match maxmin_pair(ctx, &chi2, &chi, &params) {
        Err(e) => err(e),
        Ok(None) => Ok(json!({ "pair": null })),
        Ok(Some((n_min, p_max))) => {
            let e = ctx.e();
            let sums: Vec<Value> = (0..ctx.f())
                .map(|i| {
                    json!({
                        "index": i,
                        "sum": n_min.s()[i] + p_max.s()[i],
                        "expected": params.r()[i] + e - 1,
                    })
                })
                .collect();
            Ok(json!({
                "pair": { "N_min": json::model_value(&n_min), "P_max": json::model_value(&p_max) },
                "sum_check": sums,
            }))
        }
    }
}

pub fn ext_count(
    ctx: &ArithCtx,
    quotient_s: &[usize],
    quotient_a: Option<&[u64]>,
    sub_s: &[usize],
    sub_a: Option<&[u64]>,
    r: &[usize],
) -> CmdResult {
    let quotient = model(ctx, quotient_s, scalar_from(ctx, quotient_a, "--quotient-a")?, "quotient")?;
    let sub = model(ctx, sub_s, scalar_from(ctx, sub_a, "--sub-a")?, "sub")?;
    let params = weight_params(ctx, r)?;
    let allowed = allowed_pseudo_bt(ctx, &quotient, &sub, &params).map_err(|e| e.to_string())?;
    let count = dim_count(ctx, &quotient, &sub, &params).map_err(|e| e.to_string())?;
    let exact = BigUint::from(count.field_order).pow(count.log_count() as u32);
    Ok(json!({
        "d": count.d,
        "delta": count.delta,
        "log_count": count.log_count(),
        "field_order": count.field_order.to_string(),
        "count": exact.to_string(),
        "allowed": {
            "degree_sets": allowed.degree_sets(),
            "exceptional": allowed.exceptional().map(|(slot, deg)| json!([slot, deg])),
        },
    }))
}

pub fn ext_normal_form(ctx: &ArithCtx, ext: &Value) -> CmdResult {
    let x = json::parse_ext(ctx, ext)?;
    let nf = normal_form(ctx, &x);
    Ok(json!({
        "normal": json::ext_value(&nf),
        "split": nf.is_split_representative(),
    }))
}

pub fn ext_transform(
    ctx: &ArithCtx,
    ext: &Value,
    quotient_s: &[usize],
    quotient_a: Option<&[u64]>,
    sub_s: &[usize],
    sub_a: Option<&[u64]>,
    r: &[usize],
) -> CmdResult {
    let x = json::parse_ext(ctx, ext)?;
    let quotient = model(ctx, quotient_s, scalar_from(ctx, quotient_a, "--quotient-a")?, "quotient")?;
    let sub = model(ctx, sub_s, scalar_from(ctx, sub_a, "--sub-a")?, "sub")?;
    let params = weight_params(ctx, r)?;
    let moved = transform(ctx, &x, &quotient, &sub, &params).map_err(|e| e.to_string())?;
    let verified = verify_transform_morphisms(ctx, &x, &moved.raw);
    assert!(verified, "transform must come with verified morphisms");
    Ok(json!({
        "raw": json::ext_value(&moved.raw),
        "normal": json::ext_value(&moved.normal),
        "morphisms_verified": verified,
    }))
}

pub fn rebalance_cmd(ctx: &ArithCtx, j: &[usize], x: &[usize], r: &[usize]) -> CmdResult {
    let params = weight_params(ctx, r)?;
    match rebalance(ctx, j, x, &params) {
        Err(e) => err(e),
        Ok(Rebalanced::Balanced(witness)) => Ok(json!({
            "balanced": witness_value(witness.j(), witness.x()),
        })),
        Ok(Rebalanced::NiveauDegeneracy { code }) => Ok(json!({
            "niveau_degeneracy": { "code": code },
        })),
    }
}

pub fn oracle_struct(ctx: &ArithCtx, r: &[usize], seed: u64, count: u64) -> CmdResult {
    let params = weight_params(ctx, r)?;
    let samples: Vec<Value> = (0..count)
        .map(|k| {
            let sample = sample_struct(ctx, &params, seed + k);
            json!({ "seed": seed + k, "observed": sample.observed() })
        })
        .collect();
    let e = ctx.e();
    let boxes: Vec<Value> = params
        .r()
        .iter()
        .map(|&ri| json!([[0, e - 1], [ri, ri + e - 1]]))
        .collect();
    Ok(json!({ "boxes": boxes, "count": count, "samples": samples }))
}

pub fn oracle_balanced(ctx: &ArithCtx, chi_code: u64, r: &[usize]) -> CmdResult {
    let chi = tame(ctx, 2, chi_code)?;
    if chi.niveau_of() != 2 * ctx.f() {
        return err(format!(
            "character code {chi_code} has niveau {}, the balanced search needs niveau {}",
            chi.niveau_of(),
            2 * ctx.f()
        ));
    }
    let params = weight_params(ctx, r)?;
    let witness = brute_balanced(ctx, &chi, &params);
    Ok(json!({
        "witness": witness.map(|w| witness_value(w.j(), w.x())),
    }))
}

pub fn oracle_maxmin(ctx: &ArithCtx, chi2_code: u64, chi_code: u64, r: &[usize]) -> CmdResult {
    let chi2 = GKChar::new(tame(ctx, 1, chi2_code)?, ctx.f_one()).map_err(|e| e.to_string())?;
    let chi = GKChar::new(tame(ctx, 1, chi_code)?, ctx.f_one()).map_err(|e| e.to_string())?;
    let params = weight_params(ctx, r)?;
    let pair = brute_maxmin(ctx, &chi2, &chi, &params);
    Ok(json!({
        "agrees": true,
        "pair": pair.map(|(n_min, p_max)| {
            json!({ "N_min": json::model_value(&n_min), "P_max": json::model_value(&p_max) })
        }),
    }))
}

pub fn oracle_taylor(ctx: &ArithCtx, ell: usize, seed: u64, count: u64) -> CmdResult {
    if ctx.f() != 1 {
        return err("the valuation oracle fixes f = 1; rerun with a totally ramified context");
    }
    let (p, e) = (ctx.p(), ctx.e());
    if ell == 0 || ell > p as usize {
        return err(format!("level ell = {ell} must lie in [1, p = {p}]"));
    }
    let mut samples = Vec::new();
    for k in 0..count {
        let zs = random_level_samples(seed + k, ell, 4, 3, 4);
        let m_prec = sufficient_precision(p, e, ell, &zs);
        let ok = check_taylor_valuations(p, e, ell, &zs, m_prec).map_err(|err| err.to_string())?;
        assert!(ok, "valuation bound violated at seed {}", seed + k);
        samples.push(json!({ "seed": seed + k, "ok": true }));
    }
    Ok(json!({
        "bounds": valuation_bounds(p, e, ell),
        "count": count,
        "samples": samples,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ArithCtx {
        ArithCtx::new(3, 1, 1, 2).unwrap()
    }

    #[test]
    fn weight_enumeration_covers_the_twist_gap_grid() {
        let c = ctx();
        let all = enumerate_weights(&c);
        // b in {0, 1} (b = 2 would be the excluded all-maximal twist), three gaps each
        assert_eq!(all.len(), 6);
        assert!(all.iter().all(|w| w.b()[0] < 2));
    }

    #[test]
    fn split_membership_lists_the_trivial_pair_example() {
        let c = ctx();
        let out = weights_split(&c, 0, 0).unwrap();
        let members = out["members"].as_array().unwrap();
        assert_eq!(out["count"], json!(members.len()));
        // sigma_{(1),(0)} with the empty-subset witness is a member
        let hit = members.iter().any(|m| {
            m["weight"] == json!({ "a": [1], "b": [0] })
                && m["witness"]["j"].as_array().unwrap().is_empty()
        });
        assert!(hit, "got {members:?}");
    }

    #[test]
    fn ext_count_reports_no_extensions_at_the_top_weight() {
        let c = ctx();
        let out = ext_count(&c, &[0], None, &[2], None, &[2]).unwrap();
        assert_eq!(out["d"], json!(0));
        assert_eq!(out["delta"], json!(0));
        assert_eq!(out["count"], json!("1"));
    }

    #[test]
    fn maxmin_reports_the_pair_with_sum_checks() {
        let c = ctx();
        let out = maxmin(&c, 0, 0, None, None, &[2]).unwrap();
        assert_eq!(out["pair"]["N_min"]["s"], json!([2]));
        assert_eq!(out["pair"]["P_max"]["s"], json!([0]));
        assert_eq!(out["sum_check"][0]["sum"], out["sum_check"][0]["expected"]);
    }

    #[test]
    fn degenerate_rebalance_reports_the_collapsed_code() {
        let c = ctx();
        let out = rebalance_cmd(&c, &[0, 1], &[0, 0], &[2]).unwrap();
        assert_eq!(out["niveau_degeneracy"]["code"], json!(0));
    }

    #[test]
    fn taylor_oracle_requires_a_totally_ramified_context() {
        let c = ArithCtx::new(3, 2, 1, 4).unwrap();
        assert!(oracle_taylor(&c, 1, 0, 1).is_err());
    }
}
