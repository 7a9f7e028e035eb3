//! Rank-one Kisin modules and their maximal/minimal models.
//!
//! A rank-one module `M(s_0, ..., s_{f-1}; a)` has one generator per
//! embedding index `i` mod `f`, with `phi(e_{i-1}) = (a)_i u^{s_i} e_i`,
//! where the twist scalar `(a)_i` equals `a` at `i = 0` mod `f` and `1`
//! elsewhere. The rational invariants
//! `alpha_i = (p^f - 1)^{-1} sum_{j=1..f} p^{f-j} s_{i+j}` control maps:
//! a nonzero map `M -> M'` exists iff the scalars agree and every
//! `alpha_i(M) - alpha_i(M')` is a non-negative integer.
//!
//! For a Galois character `chi` and weights `r_i`, the admissible models are
//! those with generic fibre `chi` and every shift in
//! `[0, e-1] u [r_i, r_i+e-1]`. Among them a unique maximal model (receiving
//! a map from every other) and a unique minimal model (mapping into every
//! other) exist whenever the set is nonempty; the two are exchanged by the
//! degree flip `t_i -> (r_i + e - 1) - t_i` between complementary characters.

use algebra_core::{ArithCtx, FieldElem, Rat};
use itertools::Itertools;
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use tame_characters::{encode, GKChar, TameChar};
use thiserror::Error;

/// Candidate-space bound below which the closed-form model constructions are
/// re-verified against brute-force enumeration on every call.
const BRUTE_CHECK_LIMIT: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("expected {expected} shift exponents, got {got}")]
    BadShiftLength { expected: usize, got: usize },
    #[error("the twist scalar of a rank-one module must be nonzero")]
    ZeroScalar,
    #[error("weight r_{index} = {value} lies outside [1, {p}]")]
    BadWeight { index: usize, value: usize, p: u64 },
    #[error("expected a weight table with {rows} rows of {cols} entries")]
    BadWeightTable { rows: usize, cols: usize },
    #[error("character product has tame code {got}, but the weights force code {expected}")]
    DeterminantMismatch { expected: u64, got: u64 },
}

/// The rank-one module `M(s_0, ..., s_{f-1}; a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankOneKisin {
    s: Vec<usize>,
    a: FieldElem,
}

impl RankOneKisin {
    pub fn new(ctx: &ArithCtx, s: Vec<usize>, a: FieldElem) -> Result<Self, ModelError> {
        if s.len() != ctx.f() {
            return Err(ModelError::BadShiftLength {
                expected: ctx.f(),
                got: s.len(),
            });
        }
        if a.is_zero() {
            return Err(ModelError::ZeroScalar);
        }
        Ok(RankOneKisin { s, a })
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    /// Shift exponent at cyclic index `i`.
    pub fn s_at(&self, i: i64) -> usize {
        self.s[i.rem_euclid(self.s.len() as i64) as usize]
    }

    pub fn a(&self) -> &FieldElem {
        &self.a
    }

    /// The twist scalar `(a)_i`: `a` at `i = 0` mod `f`, else `1`.
    pub fn coeff_at(&self, ctx: &ArithCtx, i: i64) -> FieldElem {
        if i.rem_euclid(self.s.len() as i64) == 0 {
            self.a.clone()
        } else {
            ctx.f_one()
        }
    }
}

/// Per-index weights `r_i`, each in `[1, p]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightParams {
    r: Vec<usize>,
}

impl WeightParams {
    pub fn new(ctx: &ArithCtx, r: Vec<usize>) -> Result<Self, ModelError> {
        if r.len() != ctx.f() {
            return Err(ModelError::BadShiftLength {
                expected: ctx.f(),
                got: r.len(),
            });
        }
        for (index, &value) in r.iter().enumerate() {
            if value < 1 || value > ctx.p() as usize {
                return Err(ModelError::BadWeight {
                    index,
                    value,
                    p: ctx.p(),
                });
            }
        }
        Ok(WeightParams { r })
    }

    pub fn r(&self) -> &[usize] {
        &self.r
    }

    /// Weight at cyclic index `i`.
    pub fn r_at(&self, i: i64) -> usize {
        self.r[i.rem_euclid(self.r.len() as i64) as usize]
    }
}

/// `alpha_i = (p^f - 1)^{-1} sum_{j=1..f} p^{f-j} s_{i+j}`, the unique
/// solution of the recurrence `alpha_i + s_i = p * alpha_{i-1}`.
pub fn alpha(ctx: &ArithCtx, n: &RankOneKisin, i: i64) -> Rat {
    let f = ctx.f();
    let p = BigInt::from(ctx.p());
    let mut num = BigInt::zero();
    for j in 1..=f {
        num += p.pow((f - j) as u32) * BigInt::from(n.s_at(i + j as i64));
    }
    Rat::new(num, p.pow(f as u32) - BigInt::one())
}

/// All `f` alpha-invariants, indexed `0..f`.
pub fn alphas(ctx: &ArithCtx, n: &RankOneKisin) -> Vec<Rat> {
    (0..ctx.f() as i64).map(|i| alpha(ctx, n, i)).collect()
}

/// Whether a nonzero map `from -> to` exists: equal twist scalars and every
/// `alpha_i(from) - alpha_i(to)` a non-negative integer.
pub fn exists_map(ctx: &ArithCtx, from: &RankOneKisin, to: &RankOneKisin) -> bool {
    if from.a != to.a {
        return false;
    }
    (0..ctx.f() as i64).all(|i| {
        let d = alpha(ctx, from, i) - alpha(ctx, to, i);
        d.is_integer() && !d.is_negative()
    })
}

/// The character through which Galois acts on the generic fibre: tame part
/// `prod_i omega_i^{s_i}`, unramified part sending geometric Frobenius to
/// the twist scalar.
///
/// Convention: the unramified value is `a` itself, not `a^{-1}`. Every
/// comparison made elsewhere in the workspace is invariant under flipping
/// this convention globally, so it is fixed once here.
pub fn generic_fibre(ctx: &ArithCtx, n: &RankOneKisin) -> GKChar {
    let exps: Vec<i64> = n.s.iter().map(|&x| x as i64).collect();
    let tame = encode(ctx.p(), ctx.f(), 1, &exps).expect("shift vector has length f");
    GKChar::new(tame, n.a.clone()).expect("twist scalar is nonzero")
}

/// Reduction of a crystalline character with labeled weight table `r_table`
/// (`f` rows of `e` non-negative entries) and unramified part `a`. Each
/// degree-`e` Eisenstein factor reduces to a power of `u`, so row `i`
/// collapses to its sum: the result is `M(sum_j r_0j, ..., sum_j r_{f-1,j}; a)`.
pub fn reduce_crystalline_char(
    ctx: &ArithCtx,
    r_table: &[Vec<usize>],
    a: &FieldElem,
) -> Result<RankOneKisin, ModelError> {
    if r_table.len() != ctx.f() || r_table.iter().any(|row| row.len() != ctx.e()) {
        return Err(ModelError::BadWeightTable {
            rows: ctx.f(),
            cols: ctx.e(),
        });
    }
    let s: Vec<usize> = r_table.iter().map(|row| row.iter().sum()).collect();
    RankOneKisin::new(ctx, s, a.clone())
}

/// Sorted admissible shift exponents at index `i`: `[0, e-1] u [r_i, r_i+e-1]`.
pub fn admissible_degrees(ctx: &ArithCtx, r: &WeightParams, i: i64) -> Vec<usize> {
    let e = ctx.e();
    let ri = r.r_at(i);
    let mut v: Vec<usize> = (0..e).chain(ri..ri + e).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// `encode(r_0 + e - 1, ..., r_{f-1} + e - 1)`: the tame code of the product
/// of the generic fibres of any admissible model pair with complementary
/// shifts.
pub fn determinant_code(ctx: &ArithCtx, r: &WeightParams) -> TameChar {
    let exps: Vec<i64> = r.r().iter().map(|&ri| (ri + ctx.e() - 1) as i64).collect();
    encode(ctx.p(), ctx.f(), 1, &exps).expect("weight vector has length f")
}

fn candidate_space_size(ctx: &ArithCtx, r: &WeightParams) -> usize {
    (0..ctx.f() as i64)
        .map(|i| admissible_degrees(ctx, r, i).len())
        .fold(1usize, |acc, n| acc.saturating_mul(n))
}

/// All `M(t; b)` with generic fibre `chi` and every `t_i` admissible, in
/// lexicographic `t` order; `b` is the unramified value of `chi`.
pub fn candidate_models(ctx: &ArithCtx, chi: &GKChar, r: &WeightParams) -> Vec<RankOneKisin> {
    assert_eq!(chi.tame.p(), ctx.p(), "character from a different ring");
    assert_eq!(chi.tame.f(), ctx.f(), "character from a different ring");
    let degree_sets: Vec<Vec<usize>> = (0..ctx.f() as i64)
        .map(|i| admissible_degrees(ctx, r, i))
        .collect();
    degree_sets
        .iter()
        .map(|d| d.iter().copied())
        .multi_cartesian_product()
        .filter(|t| {
            let exps: Vec<i64> = t.iter().map(|&x| x as i64).collect();
            encode(ctx.p(), ctx.f(), 1, &exps).unwrap() == chi.tame
        })
        .map(|t| RankOneKisin::new(ctx, t, chi.unramified.clone()).unwrap())
        .collect()
}

fn maximal_by_enumeration(
    ctx: &ArithCtx,
    chi: &GKChar,
    r: &WeightParams,
) -> Option<RankOneKisin> {
    let cands = candidate_models(ctx, chi, r);
    let mut maxima = cands
        .iter()
        .filter(|m| cands.iter().all(|m2| exists_map(ctx, m2, m)))
        .cloned()
        .collect::<Vec<_>>();
    match maxima.len() {
        0 => {
            assert!(
                cands.is_empty(),
                "nonempty candidate set with no maximal element"
            );
            None
        }
        1 => maxima.pop(),
        n => panic!("maximal model not unique: {n} candidates receive maps from all"),
    }
}

fn maximal_by_fixed_point(
    ctx: &ArithCtx,
    chi: &GKChar,
    r: &WeightParams,
) -> Option<RankOneKisin> {
    let f = ctx.f();
    let e = ctx.e();
    let p = ctx.p() as i64;
    let m: Vec<i64> = chi.tame.canonical_digits().iter().map(|&d| d as i64).collect();
    let admissible = |i: usize, x: i64| -> bool {
        x >= 0 && {
            let x = x as usize;
            x <= e - 1 || (r.r()[i] <= x && x <= r.r()[i] + e - 1)
        }
    };
    let finish = |t: Vec<i64>| -> RankOneKisin {
        let exps = t.clone();
        let t: Vec<usize> = t.into_iter().map(|x| x as usize).collect();
        assert_eq!(
            encode(ctx.p(), ctx.f(), 1, &exps).unwrap(),
            chi.tame,
            "carry moves must preserve the tame code"
        );
        RankOneKisin::new(ctx, t, chi.unramified.clone()).unwrap()
    };
    if (0..f).all(|i| admissible(i, m[i])) {
        // The digit vector itself is admissible; every other candidate is
        // obtained from it by non-negative carries, each of which raises the
        // corresponding alpha, so the digit vector is the maximal model.
        return Some(finish(m));
    }
    // Out-of-range digits force carries. Carry multiplicities are then 0 or 1,
    // which requires e <= p - 1; when e >= p every digit is already in
    // [0, e-1], so this branch is unreachable.
    assert!(e <= ctx.p() as usize - 1);
    let mut in_j = vec![false; f];
    loop {
        // Current vector m + sum_{i in J} v_i, where v_i subtracts 1 at i and
        // adds p at i+1 (cyclically; for f = 1 the net move is +(p-1)).
        let mut cur = m.clone();
        for i in 0..f {
            if in_j[i] {
                cur[i] -= 1;
                cur[(i + 1) % f] += p;
            }
        }
        let newly: Vec<usize> = (0..f)
            .filter(|&i| !in_j[i] && !admissible(i, cur[i]))
            .collect();
        if newly.is_empty() {
            // Fixed point. J collects exactly the carries forced on every
            // candidate, so a residual violation (necessarily at an index of
            // J) means the candidate set is empty; otherwise `cur` is a
            // candidate with the least carry vector, hence maximal.
            if (0..f).all(|i| admissible(i, cur[i])) {
                return Some(finish(cur));
            }
            return None;
        }
        for i in newly {
            in_j[i] = true;
        }
    }
}

/// The admissible model of `chi` receiving a nonzero map from every other,
/// or `None` when no admissible model exists. Computed by the digit/carry
/// fixed-point construction; at checkable candidate-space sizes the result
/// is re-verified against brute-force enumeration (which also checks
/// uniqueness) on every call.
pub fn maximal_model(ctx: &ArithCtx, chi: &GKChar, r: &WeightParams) -> Option<RankOneKisin> {
    let fast = maximal_by_fixed_point(ctx, chi, r);
    if candidate_space_size(ctx, r) <= BRUTE_CHECK_LIMIT {
        let brute = maximal_by_enumeration(ctx, chi, r);
        assert_eq!(
            fast, brute,
            "fixed-point and enumeration disagree on the maximal model"
        );
    }
    fast
}

/// The admissible model of `chi2` mapping into every other, or `None` when
/// no admissible model exists. Computed as the degree flip
/// `s_i = (r_i + e - 1) - t_i` of the maximal model of the complementary
/// character; at checkable sizes the result is re-verified against direct
/// enumeration.
pub fn minimal_model(ctx: &ArithCtx, chi2: &GKChar, r: &WeightParams) -> Option<RankOneKisin> {
    let comp_tame = determinant_code(ctx, r).div(&chi2.tame).unwrap();
    // Only the shift vector of the complementary maximal model is used, so
    // its unramified value is immaterial; take 1.
    let comp = GKChar::new(comp_tame, ctx.f_one()).unwrap();
    let small = candidate_space_size(ctx, r) <= BRUTE_CHECK_LIMIT;
    let result = maximal_model(ctx, &comp, r).map(|max| {
        let s: Vec<usize> = (0..ctx.f())
            .map(|i| r.r()[i] + ctx.e() - 1 - max.s()[i])
            .collect();
        RankOneKisin::new(ctx, s, chi2.unramified.clone()).unwrap()
    });
    if small {
        let cands = candidate_models(ctx, chi2, r);
        let minima: Vec<&RankOneKisin> = cands
            .iter()
            .filter(|m| cands.iter().all(|m2| exists_map(ctx, m, m2)))
            .collect();
        match &result {
            Some(model) => assert_eq!(
                minima,
                vec![model],
                "degree-flip and enumeration disagree on the minimal model"
            ),
            None => assert!(
                cands.is_empty(),
                "complementary maximal model missing but candidates exist"
            ),
        }
    }
    result
}

/// The pair (minimal model of the quotient character `chi2`, maximal model
/// of the sub character `chi`), whose shifts satisfy
/// `s_i + t_i = r_i + e - 1` for every `i`. The product of the two tame
/// codes must equal the determinant code forced by the weights; a mismatch
/// is an error since no admissible pair can exist. Under the determinant
/// condition the two model sets are either both empty (`Ok(None)`) or both
/// nonempty.
pub fn maxmin_pair(
    ctx: &ArithCtx,
    chi2: &GKChar,
    chi: &GKChar,
    r: &WeightParams,
) -> Result<Option<(RankOneKisin, RankOneKisin)>, ModelError> {
    let det = determinant_code(ctx, r);
    let prod = chi2.tame.mul(&chi.tame).unwrap();
    if prod != det {
        return Err(ModelError::DeterminantMismatch {
            expected: det.code(),
            got: prod.code(),
        });
    }
    let n_min = minimal_model(ctx, chi2, r);
    let p_max = maximal_model(ctx, chi, r);
    match (n_min, p_max) {
        (Some(n), Some(p)) => {
            for i in 0..ctx.f() {
                assert_eq!(
                    n.s()[i] + p.s()[i],
                    r.r()[i] + ctx.e() - 1,
                    "model pair must have complementary shifts"
                );
            }
            Ok(Some((n, p)))
        }
        (None, None) => Ok(None),
        _ => panic!("determinant-compatible characters with mismatched model existence"),
    }
}
