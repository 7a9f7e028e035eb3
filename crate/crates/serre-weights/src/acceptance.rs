//! Acceptance suite: eleven end-to-end checks tying the library crates
//! together, shared by the `selftest` subcommand and the integration tests.
//!
//! Each criterion body asserts internally; `run_criterion` converts a panic
//! into a failure message so callers can report one pass/fail line per
//! criterion.

use algebra_core::{rat_of, ArithCtx, FieldElem, TruncSeries};
use kisin_ext::{
    allowed_pseudo_bt, base_change_unramified, coboundary, dim_count, is_pseudo_bt, normal_form,
    tau_uniqueness, transform, verify_transform_morphisms, ExtData,
};
use kisin_rank1::{
    candidate_models, determinant_code, exists_map, maxmin_pair, RankOneKisin, WeightParams,
};
use num::BigUint;
use oracles::{
    brute_balanced, brute_maxmin, check_taylor_valuations, random_level_samples, sample_struct,
    sufficient_precision, taylor_valuations, valuation_bounds, SPrimeSample, TaylorValuation,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use tame_characters::{GKChar, TameChar};
use weight_sets::{
    crystalline_profile, detwist, irred_summand, member_irred, SerreWeight,
};

pub const CRITERIA: [&str; 11] = [
    "trivial extension space at the top weight, and its reverse",
    "pseudo-BT class count equals the Hodge-profile exponent",
    "normal form is constant on coboundary cosets",
    "transforms preserve membership with verified morphisms",
    "irreducible membership agrees with the balanced brute force",
    "deep ramification reduces membership to the determinant",
    "model extremes agree with exhaustive enumeration",
    "loop class splits after degree-p unramified base change",
    "tau valuations respect the ramification threshold",
    "structure sampler stays inside the divisibility boxes",
    "Taylor coefficient valuations meet the level bounds",
];

pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

/// Runs criterion `id` (1-based), converting assertion failures into an
/// error message.
pub fn run_criterion(id: usize) -> CriterionResult {
    assert!((1..=CRITERIA.len()).contains(&id), "criterion ids are 1..=11");
    let body: fn() = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ][id - 1];
    let outcome = catch_unwind(AssertUnwindSafe(body)).map_err(|payload| {
        if let Some(s) = payload.downcast_ref::<&str>() {
            (*s).to_string()
        } else if let Some(s) = payload.downcast_ref::<String>() {
            s.clone()
        } else {
            "non-string panic payload".to_string()
        }
    });
    CriterionResult {
        id,
        name: CRITERIA[id - 1],
        outcome,
    }
}

pub fn run_all(only: Option<usize>) -> Vec<CriterionResult> {
    match only {
        Some(id) => vec![run_criterion(id)],
        None => (1..=CRITERIA.len()).map(run_criterion).collect(),
    }
}

// ---------------------------------------------------------------- helpers

fn small_ctx(p: u64, f: usize, e: usize) -> ArithCtx {
    ArithCtx::new(p, f, e, 2 * f).unwrap()
}

fn model(ctx: &ArithCtx, s: Vec<usize>, a: FieldElem) -> RankOneKisin {
    RankOneKisin::new(ctx, s, a).unwrap()
}

/// All vectors in `[lo, hi]^len` in lexicographic order.
fn vectors(len: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut v = vec![lo; len];
    'outer: loop {
        out.push(v.clone());
        for i in (0..len).rev() {
            if v[i] < hi {
                v[i] += 1;
                v[i + 1..].fill(lo);
                continue 'outer;
            }
        }
        return out;
    }
}

fn rand_elem(ctx: &ArithCtx, rng: &mut ChaCha20Rng) -> FieldElem {
    let coords: Vec<u64> = (0..ctx.m()).map(|_| rng.gen_range(0..ctx.p())).collect();
    ctx.f_from_coords(&coords).unwrap()
}

fn rand_unit(ctx: &ArithCtx, rng: &mut ChaCha20Rng) -> FieldElem {
    loop {
        let elem = rand_elem(ctx, rng);
        if !elem.is_zero() {
            return elem;
        }
    }
}

fn rand_series(ctx: &ArithCtx, rng: &mut ChaCha20Rng, max_terms: usize) -> TruncSeries {
    let mut series = ctx.s_zero();
    for _ in 0..rng.gen_range(0..=max_terms) {
        let deg = rng.gen_range(0..ctx.trunc());
        let coeff = rand_elem(ctx, rng);
        ctx.s_add_monomial(&mut series, deg, &coeff);
    }
    series
}

fn flat(x: &ExtData) -> Vec<u64> {
    x.y()
        .iter()
        .flat_map(|s| s.coeffs().iter().flat_map(|c| c.coords().iter().copied()))
        .collect()
}

/// Verifies #(pseudo-BT classes over `(n_min, p_max)`) = |k|^(d + delta):
/// every monomial on an allowed degree is its own normal form (so the
/// allowed-coefficient space consists of pairwise-distinct normal forms),
/// random probes confirm idempotence and that membership is exactly
/// allowed-degree support of the normal form, and small spaces are counted
/// by literal enumeration. `d` is cross-checked against the labeled
/// Hodge-Tate weight count.
fn count_identity(
    ctx: &ArithCtx,
    n_min: &RankOneKisin,
    p_max: &RankOneKisin,
    r: &WeightParams,
    rng: &mut ChaCha20Rng,
) {
    let allowed = allowed_pseudo_bt(ctx, n_min, p_max, r).unwrap();
    let counts = dim_count(ctx, n_min, p_max, r).unwrap();
    let profile = crystalline_profile(ctx, n_min, p_max, r).unwrap();
    assert_eq!(
        counts.d,
        profile.d(),
        "window dimension equals the labeled Hodge-Tate excess count"
    );
    assert_eq!(counts.delta, usize::from(allowed.exceptional().is_some()));
    assert_eq!(counts.field_order, ctx.field_order());

    let slots: Vec<(usize, usize)> = allowed
        .degree_sets()
        .iter()
        .enumerate()
        .flat_map(|(i, ds)| ds.iter().map(move |&d| (i, d)))
        .chain(allowed.exceptional())
        .collect();
    assert_eq!(slots.len(), counts.log_count());

    let m = ctx.m();
    let f = ctx.f();
    let monomial_class = |slot: usize, deg: usize, coeff: &FieldElem| -> ExtData {
        let mut y = vec![ctx.s_zero(); f];
        ctx.s_add_monomial(&mut y[slot], deg, coeff);
        ExtData::new(ctx, n_min.clone(), p_max.clone(), y).unwrap()
    };

    // Basis monomials are fixed points of the reduction.
    for &(slot, deg) in &slots {
        for t in 0..m {
            let mut coords = vec![0u64; m];
            coords[t] = 1;
            let x = monomial_class(slot, deg, &ctx.f_from_coords(&coords).unwrap());
            assert_eq!(
                normal_form(ctx, &x),
                x,
                "allowed-degree monomial is its own normal form"
            );
        }
    }

    // Random allowed-coefficient combinations are fixed points too.
    for _ in 0..3 {
        let mut y = vec![ctx.s_zero(); f];
        for &(slot, deg) in &slots {
            let coeff = rand_elem(ctx, rng);
            ctx.s_add_monomial(&mut y[slot], deg, &coeff);
        }
        let x = ExtData::new(ctx, n_min.clone(), p_max.clone(), y).unwrap();
        assert_eq!(normal_form(ctx, &x), x);
        assert!(is_pseudo_bt(ctx, &x, r).unwrap());
    }

    // Whole-space probes: idempotence, and membership is exactly
    // allowed-degree support of the normal form.
    for _ in 0..2 {
        let y: Vec<TruncSeries> = (0..f).map(|_| rand_series(ctx, rng, 5)).collect();
        let x = ExtData::new(ctx, n_min.clone(), p_max.clone(), y).unwrap();
        let nf = normal_form(ctx, &x);
        assert_eq!(normal_form(ctx, &nf), nf, "normal form is idempotent");
        let supported = nf
            .y()
            .iter()
            .enumerate()
            .all(|(i, s)| s.support().iter().all(|&d| allowed.allows(i, d)));
        assert_eq!(is_pseudo_bt(ctx, &x, r).unwrap(), supported);
    }

    // Literal enumeration of the whole class space when it is small.
    let log_fp = m * counts.log_count();
    let space = (ctx.p() as u128).checked_pow(log_fp as u32);
    if let Some(total) = space.filter(|&t| t <= 729) {
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        for digits in vectors(log_fp, 0, ctx.p() as usize - 1) {
            let mut y = vec![ctx.s_zero(); f];
            for (idx, &(slot, deg)) in slots.iter().enumerate() {
                let coords: Vec<u64> =
                    digits[idx * m..(idx + 1) * m].iter().map(|&d| d as u64).collect();
                let coeff = ctx.f_from_coords(&coords).unwrap();
                if !coeff.is_zero() {
                    ctx.s_add_monomial(&mut y[slot], deg, &coeff);
                }
            }
            let x = ExtData::new(ctx, n_min.clone(), p_max.clone(), y).unwrap();
            let nf = normal_form(ctx, &x);
            assert_eq!(nf, x);
            seen.insert(flat(&nf));
        }
        assert_eq!(
            seen.len() as u128,
            total,
            "enumerated normal forms are pairwise distinct"
        );
    }

    // The identity itself: p^(m (d + delta)) = |k|^(d + delta).
    let direct = BigUint::from(ctx.p()).pow(log_fp as u32);
    let via_field = BigUint::from(counts.field_order).pow(counts.log_count() as u32);
    assert_eq!(direct, via_field);
}

// -------------------------------------------------------------- criteria

/// Extensions of M(0;1) by M(p-1;1) at f = e = 1 are all trivial, and the
/// reversed pair carries exactly |k|^2 classes.
fn criterion_1() {
    let mut rng = ChaCha20Rng::seed_from_u64(0xACC1);
    for &p in &[3u64, 5, 7] {
        let c = small_ctx(p, 1, 1);
        let top = p as usize - 1;
        let n0 = model(&c, vec![0], c.f_one());
        let ntop = model(&c, vec![top], c.f_one());
        let r = WeightParams::new(&c, vec![top]).unwrap();

        let counts = dim_count(&c, &n0, &ntop, &r).unwrap();
        assert_eq!((counts.d, counts.delta), (0, 0), "p = {p}: d = delta = 0");
        // With no allowed degrees at all, every class reduces to zero.
        for _ in 0..8 {
            let y = vec![rand_series(&c, &mut rng, 5)];
            let x = ExtData::new(&c, n0.clone(), ntop.clone(), y).unwrap();
            assert!(
                normal_form(&c, &x).is_split_representative(),
                "p = {p}: every extension of M(0;1) by M(p-1;1) splits"
            );
        }

        let reversed = dim_count(&c, &ntop, &n0, &r).unwrap();
        assert_eq!((reversed.d, reversed.delta), (1, 1), "p = {p}: reversed pair");
        assert_eq!(reversed.log_count(), 2, "p = {p}: count is |k|^2");
        assert_eq!(reversed.field_order, (p as u128).pow(2));
        count_identity(&c, &ntop, &n0, &r, &mut rng);
    }
}

/// The pseudo-BT class count is |k|^(d + delta) for every small context,
/// weight, and character pair admitting models.
fn criterion_2() {
    let mut rng = ChaCha20Rng::seed_from_u64(0xACC2);
    for &p in &[3u64, 5] {
        for f in 1..=2usize {
            for e in 1..=3usize {
                let c = small_ctx(p, f, e);
                let niveau1_modulus = p.pow(f as u32) - 1;
                for r_vec in vectors(f, 1, p as usize) {
                    let r = WeightParams::new(&c, r_vec).unwrap();
                    let det = determinant_code(&c, &r);
                    for code2 in 0..niveau1_modulus {
                        let chi2t = TameChar::new(p, f, 1, code2 as u128).unwrap();
                        let chit = det.div(&chi2t).unwrap();
                        let chi2 = GKChar::new(chi2t, c.f_one()).unwrap();
                        let chi = GKChar::new(chit, c.f_one()).unwrap();
                        let Some((n_min, p_max)) = maxmin_pair(&c, &chi2, &chi, &r).unwrap()
                        else {
                            continue;
                        };
                        count_identity(&c, &n_min, &p_max, &r, &mut rng);
                    }
                }
            }
        }
    }
}

/// normal_form(y + coboundary(z)) = normal_form(y) on random data.
fn criterion_3() {
    let mut rng = ChaCha20Rng::seed_from_u64(0xACC3);
    for f in 1..=2usize {
        for e in 1..=3usize {
            let c = small_ctx(3, f, e);
            for _ in 0..1000 {
                let (n, pm) = random_shape_pair(&c, &mut rng);
                let y: Vec<TruncSeries> = (0..f).map(|_| rand_series(&c, &mut rng, 4)).collect();
                let z: Vec<TruncSeries> = (0..f).map(|_| rand_series(&c, &mut rng, 4)).collect();
                let x = ExtData::new(&c, n.clone(), pm.clone(), y.clone()).unwrap();
                let dz = coboundary(&c, &n, &pm, &z);
                let shifted: Vec<TruncSeries> =
                    y.iter().zip(&dz).map(|(a, b)| c.s_add(a, b)).collect();
                let x2 = ExtData::new(&c, n, pm, shifted).unwrap();
                assert_eq!(normal_form(&c, &x), normal_form(&c, &x2));
            }
        }
    }
}

/// A random admissible shape pair `(N, P)` with independent unit scalars.
fn random_shape_pair(c: &ArithCtx, rng: &mut ChaCha20Rng) -> (RankOneKisin, RankOneKisin) {
    let (e, f) = (c.e(), c.f());
    let mut s = Vec::with_capacity(f);
    let mut t = Vec::with_capacity(f);
    for _ in 0..f {
        let ri = rng.gen_range(1..=c.p() as usize);
        let xi = rng.gen_range(0..e);
        let (hi, lo) = (ri + xi, e - 1 - xi);
        if rng.gen_bool(0.5) {
            s.push(hi);
            t.push(lo);
        } else {
            s.push(lo);
            t.push(hi);
        }
    }
    let a = rand_unit(c, rng);
    let b = rand_unit(c, rng);
    (model(c, s, a), model(c, t, b))
}

/// Transforms of pseudo-BT classes to admissible model pairs keep
/// membership, verify their morphisms, and fix normal forms on round trips.
fn criterion_4() {
    let mut rng = ChaCha20Rng::seed_from_u64(0xACC4);
    for f in 1..=2usize {
        for e in 1..=3usize {
            let c = small_ctx(3, f, e);
            for _ in 0..200 {
                let r_vec: Vec<usize> =
                    (0..f).map(|_| rng.gen_range(1..=c.p() as usize)).collect();
                let x_vec: Vec<usize> = (0..f).map(|_| rng.gen_range(0..e)).collect();
                let s: Vec<usize> = r_vec.iter().zip(&x_vec).map(|(r, x)| r + x).collect();
                let t: Vec<usize> = x_vec.iter().map(|x| e - 1 - x).collect();
                let a = rand_unit(&c, &mut rng);
                let b = rand_unit(&c, &mut rng);
                let n1 = model(&c, s, a.clone());
                let p1 = model(&c, t, b.clone());
                let r = WeightParams::new(&c, r_vec.clone()).unwrap();

                let allowed = allowed_pseudo_bt(&c, &n1, &p1, &r).unwrap();
                let mut y = vec![c.s_zero(); f];
                for (i, ds) in allowed.degree_sets().iter().enumerate() {
                    for &deg in ds {
                        let coeff = rand_elem(&c, &mut rng);
                        c.s_add_monomial(&mut y[i], deg, &coeff);
                    }
                }
                if let Some((slot, deg)) = allowed.exceptional() {
                    let coeff = rand_elem(&c, &mut rng);
                    c.s_add_monomial(&mut y[slot], deg, &coeff);
                }
                let x = ExtData::new(&c, n1.clone(), p1.clone(), y).unwrap();
                assert!(is_pseudo_bt(&c, &x, &r).unwrap());

                // Round trip on the original pair.
                let stay = transform(&c, &x, &n1, &p1, &r).unwrap();
                assert_eq!(stay.normal, normal_form(&c, &x), "self-transform fixes the class");

                // Every admissible target pair with the same scalars.
                for x2_vec in vectors(f, 0, e - 1) {
                    let s2: Vec<usize> = r_vec.iter().zip(&x2_vec).map(|(r, x)| r + x).collect();
                    let t2: Vec<usize> = x2_vec.iter().map(|x| e - 1 - x).collect();
                    let n2 = model(&c, s2, a.clone());
                    let p2 = model(&c, t2, b.clone());
                    if !exists_map(&c, &n2, &n1) || !exists_map(&c, &p1, &p2) {
                        continue;
                    }
                    let moved = transform(&c, &x, &n2, &p2, &r).unwrap();
                    assert!(
                        verify_transform_morphisms(&c, &x, &moved.raw),
                        "transform morphisms must verify"
                    );
                    assert!(
                        is_pseudo_bt(&c, &moved.normal, &r).unwrap(),
                        "transform preserves pseudo-BT membership"
                    );
                    assert_eq!(moved.normal, normal_form(&c, &moved.raw));
                    let again = transform(&c, &moved.raw, &n2, &p2, &r).unwrap();
                    assert_eq!(again.normal, moved.normal, "round trip fixes the normal form");
                }
            }
        }
    }
}

/// member_irred vs the balanced brute force, with witness shape and the
/// determinant identity checked on every member.
fn criterion_5() {
    for f in 1..=2usize {
        for e in 1..=2usize {
            let c = small_ctx(3, f, e);
            let two_f = 2 * f;
            let modulus = 3u64.pow(two_f as u32) - 1;
            let weights = all_weights(&c);
            for code in 0..modulus {
                let chi = TameChar::new(3, f, 2, code as u128).unwrap();
                if chi.niveau_of() != two_f {
                    continue;
                }
                for w in &weights {
                    let got = member_irred(&c, w, &chi).unwrap();
                    let (r, twist) = detwist(&c, w).unwrap();
                    let chi_d = chi.div(&twist.lift_to_quadratic()).unwrap();
                    let chi_dc = chi_d.q_twist().unwrap();
                    let brute = brute_balanced(&c, &chi_d, &r);
                    assert_eq!(
                        got.is_some(),
                        brute.is_some(),
                        "membership agrees with the brute force at code {code}"
                    );
                    let Some(witness) = got else { continue };
                    for i in 0..f {
                        assert_eq!(witness.x()[i], witness.x()[i + f], "symmetric x");
                    }
                    let ind = witness.indicator(f);
                    for i in 0..f {
                        assert!(ind[i] ^ ind[i + f], "balanced subset");
                    }
                    let summand = irred_summand(&c, &ind, witness.x(), &r);
                    assert!(summand == chi_d || summand == chi_dc);
                    let det2 = determinant_code(&c, &r).lift_to_quadratic();
                    assert_eq!(
                        summand.mul(&summand.q_twist().unwrap()).unwrap(),
                        det2,
                        "summand pair multiplies to the forced determinant"
                    );
                }
            }
        }
    }
}

fn all_weights(c: &ArithCtx) -> Vec<SerreWeight> {
    crate::commands::enumerate_weights(c)
}

/// At e = p the determinant condition is the whole membership test.
fn criterion_6() {
    let c = ArithCtx::new(3, 1, 3, 2).unwrap();
    let mut members = 0usize;
    for code in 0..8u64 {
        let chi = TameChar::new(3, 1, 2, code as u128).unwrap();
        if chi.niveau_of() != 2 {
            continue;
        }
        for w in all_weights(&c) {
            let (r, twist) = detwist(&c, &w).unwrap();
            let chi_d = chi.div(&twist.lift_to_quadratic()).unwrap();
            let det2 = determinant_code(&c, &r).lift_to_quadratic();
            let det_ok = chi_d.mul(&chi_d.q_twist().unwrap()).unwrap() == det2;
            let got = member_irred(&c, &w, &chi).unwrap();
            assert_eq!(
                got.is_some(),
                det_ok,
                "membership is exactly the determinant condition at code {code}"
            );
            members += usize::from(det_ok);
        }
    }
    assert!(members > 0, "the determinant condition holds somewhere");
}

/// maxmin_pair agrees with the exhaustive enumeration, and the extremes
/// really are extreme among all candidates.
fn criterion_7() {
    for f in 1..=2usize {
        for e in 1..=2usize {
            let c = small_ctx(3, f, e);
            let modulus = 3u64.pow(f as u32) - 1;
            for r_vec in vectors(f, 1, 3) {
                let r = WeightParams::new(&c, r_vec).unwrap();
                for code2 in 0..modulus {
                    for code1 in 0..modulus {
                        let chi2 =
                            GKChar::new(TameChar::new(3, f, 1, code2 as u128).unwrap(), c.f_one())
                                .unwrap();
                        let chi =
                            GKChar::new(TameChar::new(3, f, 1, code1 as u128).unwrap(), c.f_one())
                                .unwrap();
                        // Internally asserts agreement with maxmin_pair.
                        let Some((n_min, p_max)) = brute_maxmin(&c, &chi2, &chi, &r) else {
                            continue;
                        };
                        for cand in candidate_models(&c, &chi, &r) {
                            assert!(
                                exists_map(&c, &cand, &p_max),
                                "every sub-side candidate maps into the maximal model"
                            );
                        }
                        for cand in candidate_models(&c, &chi2, &r) {
                            assert!(
                                exists_map(&c, &n_min, &cand),
                                "the minimal model maps into every quotient-side candidate"
                            );
                        }
                    }
                }
            }
        }
    }
}

/// The canonical loop class splits after unramified base change of degree
/// p and stays non-split at degree 2 for p = 3.
fn criterion_8() {
    for &(p, m) in &[(3u64, 12usize), (5, 10)] {
        let c = ArithCtx::new(p, 1, 1, m).unwrap();
        let top = p as usize - 1;
        let n = model(&c, vec![top], c.f_one());
        let sub = model(&c, vec![0], c.f_one());
        let mut y = vec![c.s_zero()];
        c.s_add_monomial(&mut y[0], p as usize, &c.f_one());
        let x = ExtData::new(&c, n, sub, y).unwrap();
        assert!(
            !normal_form(&c, &x).is_split_representative(),
            "p = {p}: the loop class is non-split over the base"
        );
        let (c_split, x_split) = base_change_unramified(&c, &x, p as usize).unwrap();
        assert!(
            normal_form(&c_split, &x_split).is_split_representative(),
            "p = {p}: split after base change of degree p"
        );
    }
    let c = ArithCtx::new(3, 1, 1, 12).unwrap();
    let n = model(&c, vec![2], c.f_one());
    let sub = model(&c, vec![0], c.f_one());
    let mut y = vec![c.s_zero()];
    c.s_add_monomial(&mut y[0], 3, &c.f_one());
    let x = ExtData::new(&c, n, sub, y).unwrap();
    let (c2, x2) = base_change_unramified(&c, &x, 2).unwrap();
    assert!(
        !normal_form(&c2, &x2).is_split_representative(),
        "still non-split after base change of degree 2"
    );
}

/// tau valuations never exceed p/(p-1) + p/e, with equality at all indices
/// exactly in the all-(t_i = 0, r_i = p) configuration.
fn criterion_9() {
    for &p in &[3u64, 5] {
        for f in 1..=2usize {
            for e in 1..=3usize {
                let c = small_ctx(p, f, e);
                let bound = rat_of(p as i64, p as i64 - 1) + rat_of(p as i64, e as i64);
                for r_vec in vectors(f, 1, p as usize) {
                    let r = WeightParams::new(&c, r_vec.clone()).unwrap();
                    for x_vec in vectors(f, 0, e - 1) {
                        for orient in vectors(f, 0, 1) {
                            let mut s = Vec::with_capacity(f);
                            let mut t = Vec::with_capacity(f);
                            for i in 0..f {
                                let (hi, lo) = (r_vec[i] + x_vec[i], e - 1 - x_vec[i]);
                                if orient[i] == 0 {
                                    s.push(hi);
                                    t.push(lo);
                                } else {
                                    s.push(lo);
                                    t.push(hi);
                                }
                            }
                            let n = model(&c, s, c.f_one());
                            let pm = model(&c, t.clone(), c.f_one());
                            let report = tau_uniqueness(&c, &n, &pm, &r).unwrap();
                            assert_eq!(report.threshold, bound);
                            let mut all_equal = true;
                            for v in &report.valuations {
                                assert!(v <= &bound, "valuation {v} exceeds {bound}");
                                all_equal &= v == &bound;
                            }
                            let extremal = t.iter().all(|&ti| ti == 0)
                                && r_vec.iter().all(|&ri| ri == p as usize);
                            assert_eq!(
                                all_equal, extremal,
                                "equality exactly at the unramified-sub top-weight shape \
                                 (r = {r_vec:?}, t = {t:?})"
                            );
                        }
                    }
                }
            }
        }
    }
}

/// 500 structure samples per point stay inside the divisibility boxes.
fn criterion_10() {
    let mut rng = ChaCha20Rng::seed_from_u64(0xACCA);
    for f in 1..=2usize {
        for e in 1..=3usize {
            let c = small_ctx(3, f, e);
            for seed in 0..500u64 {
                let r_vec: Vec<usize> = (0..f).map(|_| rng.gen_range(1..=3)).collect();
                let r = WeightParams::new(&c, r_vec.clone()).unwrap();
                // compute() asserts the range internally; re-check here.
                let sample = sample_struct(&c, &r, seed);
                for (i, &obs) in sample.observed().iter().enumerate() {
                    let ri = r_vec[i];
                    assert!(
                        obs <= e - 1 || (ri <= obs && obs <= ri + e - 1),
                        "observed divisibility {obs} outside both boxes at index {i}"
                    );
                }
            }
        }
    }
}

/// The valuation oracle holds on random samples, and the binomial edge
/// meets the i >= 1 bounds with equality.
fn criterion_11() {
    for &p in &[3u64, 5] {
        for e in 1..=6usize {
            for ell in 1..=p as usize {
                for k in 0..200u64 {
                    let seed = k
                        .wrapping_mul(1_000_003)
                        .wrapping_add(p * 10_000 + e as u64 * 100 + ell as u64);
                    let zs = random_level_samples(seed, ell, 4, 3, 4);
                    let m_prec = sufficient_precision(p, e, ell, &zs);
                    let ok = check_taylor_valuations(p, e, ell, &zs, m_prec).unwrap();
                    assert!(ok, "bounds hold at p = {p}, e = {e}, ell = {ell}, seed {seed}");
                }
            }
            let zs = vec![SPrimeSample::one()];
            let m_prec = sufficient_precision(p, e, 1, &zs);
            let vals = taylor_valuations(p, e, 1, &zs, m_prec).unwrap();
            let bounds = valuation_bounds(p, e, 1);
            for (i, (val, bound)) in vals.iter().zip(&bounds).enumerate() {
                match val {
                    TaylorValuation::Exact(v) => {
                        if i >= 1 {
                            assert_eq!(v, bound, "binomial edge equality at i = {i}");
                        } else {
                            assert!(v >= bound);
                        }
                    }
                    TaylorValuation::AtLeast(_) => {
                        panic!("binomial edge coefficients must be exact")
                    }
                }
            }
        }
    }
}
