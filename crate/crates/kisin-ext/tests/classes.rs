//! Class-level properties of the coboundary reduction: well-definedness on
//! cosets, the window transversal, and the dimension counts.

use algebra_core::{ArithCtx, FieldElem, TruncSeries};
use kisin_ext::{
    allowed_pseudo_bt, coboundary, dim_count, is_pseudo_bt, is_pseudo_bt_saturated, normal_form,
    ExtData,
};
use kisin_rank1::{RankOneKisin, WeightParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

const GRID: [(usize, usize); 6] = [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)];

fn ctx_for(f: usize, e: usize) -> ArithCtx {
    ArithCtx::new(3, f, e, 2 * f).unwrap()
}

fn rand_elem(ctx: &ArithCtx, rng: &mut ChaCha20Rng) -> FieldElem {
    let coords: Vec<u64> = (0..ctx.m()).map(|_| rng.gen_range(0..ctx.p())).collect();
    ctx.f_from_coords(&coords).unwrap()
}

fn rand_nonzero(ctx: &ArithCtx, rng: &mut ChaCha20Rng) -> FieldElem {
    loop {
        let c = rand_elem(ctx, rng);
        if !c.is_zero() {
            return c;
        }
    }
}

fn rand_series(ctx: &ArithCtx, rng: &mut ChaCha20Rng) -> TruncSeries {
    let mut s = ctx.s_zero();
    for _ in 0..rng.gen_range(0..6) {
        let deg = rng.gen_range(0..ctx.trunc());
        ctx.s_add_monomial(&mut s, deg, &rand_elem(ctx, rng));
    }
    s
}

fn rand_model(ctx: &ArithCtx, rng: &mut ChaCha20Rng, scalar: FieldElem) -> RankOneKisin {
    let bound = ctx.p() as usize + ctx.e();
    let s: Vec<usize> = (0..ctx.f()).map(|_| rng.gen_range(0..bound)).collect();
    RankOneKisin::new(ctx, s, scalar).unwrap()
}

fn add_coboundary(
    ctx: &ArithCtx,
    x: &ExtData,
    z: &[TruncSeries],
) -> ExtData {
    let moved: Vec<TruncSeries> = x
        .y()
        .iter()
        .zip(coboundary(ctx, x.quotient(), x.sub(), z))
        .map(|(yi, dz)| ctx.s_add(yi, &dz))
        .collect();
    ExtData::new(ctx, x.quotient().clone(), x.sub().clone(), moved).unwrap()
}

#[test]
fn normal_form_is_constant_on_cosets_and_idempotent() {
    for (f, e) in GRID {
        let ctx = ctx_for(f, e);
        let mut rng = ChaCha20Rng::seed_from_u64(0xc0_5e75 + (f * 8 + e) as u64);
        for round in 0..120 {
            // Equal scalars about half the time keeps the loop phase hot.
            let a = rand_nonzero(&ctx, &mut rng);
            let b = if round % 2 == 0 {
                a.clone()
            } else {
                rand_nonzero(&ctx, &mut rng)
            };
            let n = rand_model(&ctx, &mut rng, a);
            let p = rand_model(&ctx, &mut rng, b);
            let y: Vec<TruncSeries> = (0..f).map(|_| rand_series(&ctx, &mut rng)).collect();
            let z: Vec<TruncSeries> = (0..f).map(|_| rand_series(&ctx, &mut rng)).collect();
            let x = ExtData::new(&ctx, n, p, y).unwrap();
            let nf = normal_form(&ctx, &x);
            assert_eq!(normal_form(&ctx, &add_coboundary(&ctx, &x, &z)), nf);
            assert_eq!(normal_form(&ctx, &nf), nf);
        }
    }
}

#[test]
fn coboundaries_always_normalize_to_the_split_class() {
    for (f, e) in GRID {
        let ctx = ctx_for(f, e);
        let mut rng = ChaCha20Rng::seed_from_u64(0x5b117 + (f * 8 + e) as u64);
        for round in 0..60 {
            let a = rand_nonzero(&ctx, &mut rng);
            let b = if round % 2 == 0 {
                a.clone()
            } else {
                rand_nonzero(&ctx, &mut rng)
            };
            let n = rand_model(&ctx, &mut rng, a);
            let p = rand_model(&ctx, &mut rng, b);
            let z: Vec<TruncSeries> = (0..f).map(|_| rand_series(&ctx, &mut rng)).collect();
            let split = ExtData::zero(&ctx, n, p);
            let x = add_coboundary(&ctx, &split, &z);
            assert!(normal_form(&ctx, &x).is_split_representative());
        }
    }
}

/// All field elements, by coordinate odometer.
fn all_elems(ctx: &ArithCtx) -> Vec<FieldElem> {
    let mut out = Vec::new();
    let mut coords = vec![0u64; ctx.m()];
    loop {
        out.push(ctx.f_from_coords(&coords).unwrap());
        let mut i = 0;
        loop {
            if i == ctx.m() {
                return out;
            }
            coords[i] += 1;
            if coords[i] < ctx.p() {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
    }
}

/// Every parameter vector supported on the allowed window positions must be
/// its own normal form: the window is a transversal of the pseudo-BT
/// classes, which is what makes the count |k_E|^{d+delta} exact.
#[test]
fn window_positions_enumerate_pairwise_distinct_classes() {
    for (e, r_val, s_shift) in [(1usize, 2usize, 2usize), (2, 1, 2)] {
        let ctx = ArithCtx::new(3, 1, e, 2).unwrap();
        let n = RankOneKisin::new(&ctx, vec![s_shift], ctx.f_one()).unwrap();
        let p = RankOneKisin::new(&ctx, vec![0], ctx.f_one()).unwrap();
        let r = WeightParams::new(&ctx, vec![r_val]).unwrap();
        let allowed = allowed_pseudo_bt(&ctx, &n, &p, &r).unwrap();
        let mut positions: Vec<(usize, usize)> = Vec::new();
        for (i, set) in allowed.degree_sets().iter().enumerate() {
            positions.extend(set.iter().map(|&d| (i, d)));
        }
        positions.extend(allowed.exceptional());
        let count = dim_count(&ctx, &n, &p, &r).unwrap();
        assert_eq!(positions.len(), count.log_count());

        let elems = all_elems(&ctx);
        let mut assignment = vec![0usize; positions.len()];
        let mut seen = 0usize;
        'enumerate: loop {
            let mut y = vec![ctx.s_zero(); ctx.f()];
            for (&(slot, deg), &idx) in positions.iter().zip(&assignment) {
                ctx.s_add_monomial(&mut y[slot], deg, &elems[idx]);
            }
            let x = ExtData::new(&ctx, n.clone(), p.clone(), y).unwrap();
            assert_eq!(normal_form(&ctx, &x), x);
            assert!(is_pseudo_bt(&ctx, &x, &r).unwrap());
            seen += 1;
            let mut i = 0;
            loop {
                if i == assignment.len() {
                    break 'enumerate;
                }
                assignment[i] += 1;
                if assignment[i] < elems.len() {
                    break;
                }
                assignment[i] = 0;
                i += 1;
            }
        }
        assert_eq!(
            seen,
            elems.len().pow(positions.len() as u32),
            "every window assignment is visited exactly once"
        );
    }
}

/// The reversed pair admits no nontrivial extensions at all: every
/// parameter vector is a coboundary.
#[test]
fn reversed_pair_classes_are_all_trivial() {
    let ctx = ArithCtx::new(3, 1, 1, 2).unwrap();
    let n = RankOneKisin::new(&ctx, vec![0], ctx.f_one()).unwrap();
    let p = RankOneKisin::new(&ctx, vec![2], ctx.f_one()).unwrap();
    let r = WeightParams::new(&ctx, vec![2]).unwrap();
    assert_eq!(dim_count(&ctx, &n, &p, &r).unwrap().log_count(), 0);
    let mut rng = ChaCha20Rng::seed_from_u64(0x721_01a1);
    for _ in 0..40 {
        let y = vec![rand_series(&ctx, &mut rng)];
        let x = ExtData::new(&ctx, n.clone(), p.clone(), y).unwrap();
        assert!(normal_form(&ctx, &x).is_split_representative());
    }
}

#[test]
fn saturation_test_agrees_with_membership_on_arbitrary_representatives() {
    for (f, e) in GRID {
        let ctx = ctx_for(f, e);
        let mut rng = ChaCha20Rng::seed_from_u64(0x5a7 + (f * 8 + e) as u64);
        for round in 0..100 {
            let r: Vec<usize> = (0..f).map(|_| rng.gen_range(1..=ctx.p() as usize)).collect();
            let mut s = Vec::with_capacity(f);
            let mut t = Vec::with_capacity(f);
            for i in 0..f {
                let x = rng.gen_range(0..e);
                let (hi, lo) = (r[i] + x, e - 1 - x);
                if rng.gen_bool(0.5) {
                    s.push(hi);
                    t.push(lo);
                } else {
                    s.push(lo);
                    t.push(hi);
                }
            }
            let a = rand_nonzero(&ctx, &mut rng);
            let b = if round % 2 == 0 {
                a.clone()
            } else {
                rand_nonzero(&ctx, &mut rng)
            };
            let n = RankOneKisin::new(&ctx, s, a).unwrap();
            let p = RankOneKisin::new(&ctx, t, b).unwrap();
            let r = WeightParams::new(&ctx, r).unwrap();
            let y: Vec<TruncSeries> = (0..f).map(|_| rand_series(&ctx, &mut rng)).collect();
            let x = ExtData::new(&ctx, n, p, y).unwrap();
            assert_eq!(
                is_pseudo_bt(&ctx, &x, &r).unwrap(),
                is_pseudo_bt_saturated(&ctx, &x, &r).unwrap()
            );
        }
    }
}

#[test]
fn dimension_counts_cover_every_shape_on_the_small_grid() {
    for (f, e) in GRID {
        let ctx = ctx_for(f, e);
        let p_int = ctx.p() as usize;
        let mut shapes = 0usize;
        let mut r = vec![1usize; f];
        'weights: loop {
            let weights = WeightParams::new(&ctx, r.clone()).unwrap();
            let mut x = vec![0usize; f];
            'xs: loop {
                for swap_mask in 0..1u32 << f {
                    for scalars_equal in [true, false] {
                        let a = ctx.f_gen();
                        let b = if scalars_equal { ctx.f_gen() } else { ctx.f_one() };
                        let mut s = Vec::with_capacity(f);
                        let mut t = Vec::with_capacity(f);
                        for i in 0..f {
                            let (hi, lo) = (r[i] + x[i], e - 1 - x[i]);
                            if swap_mask >> i & 1 == 1 {
                                s.push(lo);
                                t.push(hi);
                            } else {
                                s.push(hi);
                                t.push(lo);
                            }
                        }
                        let n = RankOneKisin::new(&ctx, s, a).unwrap();
                        let p = RankOneKisin::new(&ctx, t, b).unwrap();
                        let count = dim_count(&ctx, &n, &p, &weights).unwrap();
                        let allowed = allowed_pseudo_bt(&ctx, &n, &p, &weights).unwrap();
                        assert_eq!(allowed.total(), count.log_count());
                        assert_eq!(count.field_order, ctx.field_order());
                        shapes += 1;
                    }
                }
                let mut i = 0;
                loop {
                    if i == f {
                        break 'xs;
                    }
                    x[i] += 1;
                    if x[i] < e {
                        continue 'xs;
                    }
                    x[i] = 0;
                    i += 1;
                }
            }
            let mut i = 0;
            loop {
                if i == f {
                    break 'weights;
                }
                r[i] += 1;
                if r[i] <= p_int {
                    continue 'weights;
                }
                r[i] = 1;
                i += 1;
            }
        }
        assert_eq!(
            shapes,
            p_int.pow(f as u32) * e.pow(f as u32) * (1 << f) * 2,
            "shape odometer must cover the whole grid"
        );
    }
}
