//! JSON encoding and decoding of the domain values.
//!
//! Field elements travel as coordinate vectors over the prime field, series
//! as dense coefficient lists from degree zero (trailing zeros trimmed),
//! rationals as `num/den` strings. serde_json's map keeps keys sorted, so
//! identical inputs serialize byte-identically.

use algebra_core::{ArithCtx, FieldElem, Rat, TruncSeries};
use kisin_ext::{ExtData, TauReport};
use kisin_rank1::RankOneKisin;
use serde_json::{json, Value};
use tame_characters::{GKChar, TameChar};
use weight_sets::SerreWeight;

pub fn field_value(elem: &FieldElem) -> Value {
    json!(elem.coords())
}

pub fn series_value(series: &TruncSeries) -> Value {
    let coeffs = series.coeffs();
    let last = coeffs.iter().rposition(|c| !c.is_zero());
    let dense: Vec<Value> = match last {
        Some(hi) => coeffs[..=hi].iter().map(field_value).collect(),
        None => Vec::new(),
    };
    Value::Array(dense)
}

pub fn model_value(model: &RankOneKisin) -> Value {
    json!({ "s": model.s(), "a": field_value(model.a()) })
}

pub fn tame_value(chi: &TameChar) -> Value {
    json!({ "niveau_factor": chi.niveau_factor(), "code": chi.code() })
}

pub fn gk_value(chi: &GKChar) -> Value {
    json!({ "tame": tame_value(&chi.tame), "unramified": field_value(&chi.unramified) })
}

pub fn ext_value(x: &ExtData) -> Value {
    json!({
        "N": model_value(x.quotient()),
        "P": model_value(x.sub()),
        "y": x.y().iter().map(series_value).collect::<Vec<_>>(),
    })
}

pub fn weight_value(w: &SerreWeight) -> Value {
    json!({ "a": w.a(), "b": w.b() })
}

pub fn rat_value(r: &Rat) -> Value {
    Value::String(r.to_string())
}

pub fn tau_value(rep: &TauReport) -> Value {
    json!({
        "valuations": rep.valuations.iter().map(rat_value).collect::<Vec<_>>(),
        "threshold": rat_value(&rep.threshold),
        "unique": rep.unique,
    })
}

/// Report envelope shared by every subcommand: tool identity, the context
/// the computation ran in, and the coefficient-field description.
pub fn report(ctx: &ArithCtx, body: Value) -> Value {
    json!({
        "tool": { "name": "serre-weights", "version": env!("CARGO_PKG_VERSION") },
        "context": { "p": ctx.p(), "f": ctx.f(), "e": ctx.e(), "m": ctx.m(), "trunc": ctx.trunc() },
        "field": { "order": ctx.field_order().to_string(), "modulus": ctx.modulus_coeffs() },
        "result": body,
    })
}

fn coords_from(value: &Value, what: &str) -> Result<Vec<u64>, String> {
    let arr = value
        .as_array()
        .ok_or_else(|| format!("{what}: expected an array of coordinates"))?;
    arr.iter()
        .map(|v| {
            v.as_u64()
                .ok_or_else(|| format!("{what}: coordinates must be nonnegative integers"))
        })
        .collect()
}

pub fn parse_field(ctx: &ArithCtx, value: &Value, what: &str) -> Result<FieldElem, String> {
    let mut coords = coords_from(value, what)?;
    if coords.len() > ctx.m() {
        return Err(format!(
            "{what}: got {} coordinates, the coefficient field has degree {}",
            coords.len(),
            ctx.m()
        ));
    }
    coords.resize(ctx.m(), 0);
    ctx.f_from_coords(&coords)
        .ok_or_else(|| format!("{what}: coordinates must lie below p = {}", ctx.p()))
}

pub fn parse_series(ctx: &ArithCtx, value: &Value, what: &str) -> Result<TruncSeries, String> {
    let arr = value
        .as_array()
        .ok_or_else(|| format!("{what}: expected an array of coefficient vectors"))?;
    let mut series = ctx.s_zero();
    for (deg, entry) in arr.iter().enumerate() {
        let coeff = parse_field(ctx, entry, &format!("{what} degree {deg}"))?;
        if coeff.is_zero() {
            continue;
        }
        if deg >= ctx.trunc() {
            return Err(format!(
                "{what}: degree {deg} reaches the truncation order {}",
                ctx.trunc()
            ));
        }
        ctx.s_add_monomial(&mut series, deg, &coeff);
    }
    Ok(series)
}

pub fn parse_model(ctx: &ArithCtx, value: &Value, what: &str) -> Result<RankOneKisin, String> {
    let obj = value
        .as_object()
        .ok_or_else(|| format!("{what}: expected an object with \"s\" and \"a\""))?;
    let shifts_value = obj
        .get("s")
        .ok_or_else(|| format!("{what}: missing shift vector \"s\""))?;
    let shifts: Vec<usize> = coords_from(shifts_value, &format!("{what} shifts"))?
        .into_iter()
        .map(|v| v as usize)
        .collect();
    let scalar = match obj.get("a") {
        Some(v) => parse_field(ctx, v, &format!("{what} scalar"))?,
        None => ctx.f_one(),
    };
    RankOneKisin::new(ctx, shifts, scalar).map_err(|err| format!("{what}: {err}"))
}

pub fn parse_ext(ctx: &ArithCtx, value: &Value) -> Result<ExtData, String> {
    let obj = value
        .as_object()
        .ok_or_else(|| "extension file: expected an object with \"N\", \"P\", \"y\"".to_string())?;
    let quotient = parse_model(
        ctx,
        obj.get("N").ok_or("extension file: missing quotient \"N\"")?,
        "quotient N",
    )?;
    let sub = parse_model(
        ctx,
        obj.get("P").ok_or("extension file: missing sub \"P\"")?,
        "sub P",
    )?;
    let y_value = obj
        .get("y")
        .and_then(Value::as_array)
        .ok_or("extension file: missing series list \"y\"")?;
    if y_value.len() != ctx.f() {
        return Err(format!(
            "extension file: got {} series, expected f = {}",
            y_value.len(),
            ctx.f()
        ));
    }
    let y = y_value
        .iter()
        .enumerate()
        .map(|(i, v)| parse_series(ctx, v, &format!("series {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    ExtData::new(ctx, quotient, sub, y).map_err(|err| format!("extension file: {err}"))
}

pub fn parse_weight(ctx: &ArithCtx, value: &Value) -> Result<SerreWeight, String> {
    let obj = value
        .as_object()
        .ok_or_else(|| "weight file: expected an object with \"a\" and \"b\"".to_string())?;
    let read = |key: &str| -> Result<Vec<i64>, String> {
        let arr = obj
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| format!("weight file: missing integer array \"{key}\""))?;
        arr.iter()
            .map(|v| {
                v.as_i64()
                    .ok_or_else(|| format!("weight file: \"{key}\" entries must be integers"))
            })
            .collect()
    };
    SerreWeight::new(ctx, read("a")?, read("b")?).map_err(|err| format!("weight file: {err}"))
}
