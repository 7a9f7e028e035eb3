use crate::WeightError;
use algebra_core::ArithCtx;
use kisin_ext::{dim_count, shape_params};
use kisin_rank1::{RankOneKisin, WeightParams};

/// Labeled Hodge-Tate weights of the crystalline lift pair attached to a
/// minimal/maximal model pair: entry `(i, j)` holds the ordered pair
/// (maximal-side weight, minimal-side weight) at the `j`-th label of
/// embedding `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HTProfile {
    rows: Vec<Vec<(usize, usize)>>,
}

impl HTProfile {
    pub fn rows(&self) -> &[Vec<(usize, usize)>] {
        &self.rows
    }

    /// Count of labels where the minimal-side weight exceeds the
    /// maximal-side weight.
    pub fn d(&self) -> usize {
        self.rows
            .iter()
            .flatten()
            .filter(|(mx, mn)| mn > mx)
            .count()
    }
}

/// Lays out the labeled weights of the crystalline character pair whose
/// reductions are the minimal quotient-side model `n_min` and the maximal
/// sub-side model `p_max`. Per embedding `i` with shifts `s_i` (quotient)
/// and `t_i` (sub): when `t_i >= r_i` the leading label carries
/// `(r_i, 0)`, followed by `t_i - r_i` labels `(1, 0)` and `s_i` labels
/// `(0, 1)`; when `t_i < r_i` the leading label carries `(0, r_i)`,
/// followed by `t_i` labels `(1, 0)` and `s_i - r_i` labels `(0, 1)`.
/// The per-label excess count agrees with the extension dimension count.
pub fn crystalline_profile(
    ctx: &ArithCtx,
    n_min: &RankOneKisin,
    p_max: &RankOneKisin,
    r: &WeightParams,
) -> Result<HTProfile, WeightError> {
    shape_params(ctx, n_min, p_max, r)?;
    let e = ctx.e();
    let mut rows = Vec::with_capacity(ctx.f());
    for i in 0..ctx.f() {
        let (s, t, ri) = (n_min.s()[i], p_max.s()[i], r.r()[i]);
        let mut row: Vec<(usize, usize)> = Vec::with_capacity(e);
        if t >= ri {
            row.push((ri, 0));
            row.extend(std::iter::repeat((1, 0)).take(t - ri));
            row.extend(std::iter::repeat((0, 1)).take(s));
        } else {
            row.push((0, ri));
            row.extend(std::iter::repeat((1, 0)).take(t));
            row.extend(std::iter::repeat((0, 1)).take(s - ri));
        }
        assert_eq!(row.len(), e, "labels must fill the ramification degree");
        let max_sum: usize = row.iter().map(|pair| pair.0).sum();
        let min_sum: usize = row.iter().map(|pair| pair.1).sum();
        assert_eq!(max_sum, t, "maximal-side weights must sum to the sub shift");
        assert_eq!(
            min_sum, s,
            "minimal-side weights must sum to the quotient shift"
        );
        rows.push(row);
    }
    let profile = HTProfile { rows };
    let count = dim_count(ctx, n_min, p_max, r)?;
    assert_eq!(
        profile.d(),
        count.d,
        "per-label excess count must match the extension dimension count"
    );
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use algebra_core::FieldElem;

    fn ctx(p: u64, f: usize, e: usize, m: usize) -> ArithCtx {
        ArithCtx::new(p, f, e, m).unwrap()
    }

    fn model(c: &ArithCtx, s: &[usize], a: FieldElem) -> RankOneKisin {
        RankOneKisin::new(c, s.to_vec(), a).unwrap()
    }

    #[test]
    fn unramified_sub_model_puts_the_full_weight_on_the_minimal_side() {
        let c = ctx(3, 1, 1, 2);
        let r = WeightParams::new(&c, vec![2]).unwrap();
        let n_min = model(&c, &[2], c.f_one());
        let p_max = model(&c, &[0], c.f_one());
        let profile = crystalline_profile(&c, &n_min, &p_max, &r).unwrap();
        assert_eq!(profile.rows(), &[vec![(0, 2)]]);
        assert_eq!(profile.d(), 1);
    }

    #[test]
    fn ramified_labels_append_unit_weights_on_the_minimal_side() {
        let c = ctx(3, 1, 2, 2);
        let r = WeightParams::new(&c, vec![1]).unwrap();
        let n_min = model(&c, &[2], c.f_one());
        let p_max = model(&c, &[0], c.f_one());
        let profile = crystalline_profile(&c, &n_min, &p_max, &r).unwrap();
        assert_eq!(profile.rows(), &[vec![(0, 1), (0, 1)]]);
        assert_eq!(profile.d(), 2);
    }

    #[test]
    fn dominant_sub_shift_with_split_quotient_has_no_excess_labels() {
        let c = ctx(3, 1, 1, 2);
        let r = WeightParams::new(&c, vec![1]).unwrap();
        let n_min = model(&c, &[0], c.f_one());
        let p_max = model(&c, &[1], c.f_one());
        let profile = crystalline_profile(&c, &n_min, &p_max, &r).unwrap();
        assert_eq!(profile.rows(), &[vec![(1, 0)]]);
        assert_eq!(profile.d(), 0);
    }

    #[test]
    fn profile_rejects_shift_pairs_outside_the_shape() {
        let c = ctx(3, 1, 2, 2);
        let r = WeightParams::new(&c, vec![2]).unwrap();
        let n_min = model(&c, &[1], c.f_one());
        let p_max = model(&c, &[1], c.f_one());
        assert!(matches!(
            crystalline_profile(&c, &n_min, &p_max, &r),
            Err(WeightError::Ext(_))
        ));
    }

    #[test]
    fn mixed_embeddings_count_excess_labels_per_case() {
        let c = ctx(3, 2, 2, 4);
        let r = WeightParams::new(&c, vec![2, 1]).unwrap();
        // i = 0: t = 3 >= r = 2, s = 0; i = 1: t = 0 < r = 1, s = 2.
        let n_min = model(&c, &[0, 2], c.f_one());
        let p_max = model(&c, &[3, 0], c.f_one());
        let profile = crystalline_profile(&c, &n_min, &p_max, &r).unwrap();
        assert_eq!(
            profile.rows(),
            &[vec![(2, 0), (1, 0)], vec![(0, 1), (0, 1)]]
        );
        assert_eq!(profile.d(), 2);
    }
}
