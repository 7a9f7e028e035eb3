//! Extensions of rank-one Kisin modules.
//!
//! An extension `0 -> P -> M -> N -> 0` of a quotient `N = M(s; a)` by a sub
//! `P = M(t; b)` is recorded by `f` truncated series `y_i`:
//!
//! ```text
//! phi(e_{i-1}) = (b)_i u^{t_i} e_i
//! phi(f_{i-1}) = (a)_i u^{s_i} f_i + y_i e_i
//! ```
//!
//! A basis change `f'_i = f_i + z_i e_i` shifts `y` by the coboundary
//! `d(z)_i = (b)_i u^{t_i} phi(z_{i-1}) - (a)_i u^{s_i} z_i`, and extension
//! classes are cosets of the coboundary image. [`normal_form`] computes the
//! canonical coset representative: support below `s_i` at every index, plus
//! at most one exceptional monomial at index 0 whose degree is the loop
//! degree `s_0 + alpha_0(N) - alpha_0(P)`, present only when a nonzero map
//! `N -> P` exists.
//!
//! On top of the normal form sit the pseudo-Barsotti-Tate degree windows and
//! dimension counts, the comparison transform moving a class between model
//! pairs of the same pair of characters, unramified base change, and the
//! valuation criterion deciding uniqueness of the crystalline descent datum.

use algebra_core::{ArithCtx, CtxError, TruncSeries};
use kisin_rank1::RankOneKisin;
use thiserror::Error;

mod pseudo_bt;
mod reduce;
mod tau;
mod transform;

pub use pseudo_bt::{
    allowed_pseudo_bt, dim_count, is_pseudo_bt, is_pseudo_bt_saturated, shape_params,
    AllowedDegrees, DimCount,
};
pub use reduce::{coboundary, normal_form};
pub use tau::{tau_uniqueness, TauReport};
pub use transform::{
    base_change_unramified, transform, verify_transform_morphisms, TransformResult,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtError {
    #[error("expected {expected} extension series, got {got}")]
    BadSeriesCount { expected: usize, got: usize },
    #[error("extension series {index} is not truncated at order {expected}")]
    BadSeriesLength { index: usize, expected: usize },
    #[error(
        "shifts at index {index} (s = {s}, t = {t}) are not of the form \
         {{r + x, e - 1 - x}} for r = {r}, e = {e}"
    )]
    ShapeViolation {
        index: usize,
        s: usize,
        t: usize,
        r: usize,
        e: usize,
    },
    #[error("no nonzero map from the sub module into the target sub module")]
    SubMapMissing,
    #[error("no nonzero map from the target quotient module onto the quotient")]
    QuotientMapMissing,
    #[error("shift sums at index {index} do not equal r + e - 1 on both sides")]
    ShiftSumMismatch { index: usize },
    #[error("max(s, t) at index {index} is below the weight r")]
    WeightFloorViolated { index: usize },
    #[error("base-change multiplicity must be positive")]
    BadBaseChangeDegree,
    #[error(transparent)]
    Ctx(#[from] CtxError),
}

/// An extension of the quotient `N` by the sub `P`, given by the series
/// `y_i` in `phi(f_{i-1}) = (a)_i u^{s_i} f_i + y_i e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtData {
    quotient: RankOneKisin,
    sub: RankOneKisin,
    y: Vec<TruncSeries>,
}

impl ExtData {
    pub fn new(
        ctx: &ArithCtx,
        quotient: RankOneKisin,
        sub: RankOneKisin,
        y: Vec<TruncSeries>,
    ) -> Result<Self, ExtError> {
        if y.len() != ctx.f() {
            return Err(ExtError::BadSeriesCount {
                expected: ctx.f(),
                got: y.len(),
            });
        }
        for (index, yi) in y.iter().enumerate() {
            if !ctx.s_valid(yi) {
                return Err(ExtError::BadSeriesLength {
                    index,
                    expected: ctx.trunc(),
                });
            }
        }
        assert_eq!(quotient.s().len(), ctx.f(), "quotient from a different ring");
        assert_eq!(sub.s().len(), ctx.f(), "sub from a different ring");
        Ok(ExtData { quotient, sub, y })
    }

    /// The split extension of `quotient` by `sub`.
    pub fn zero(ctx: &ArithCtx, quotient: RankOneKisin, sub: RankOneKisin) -> Self {
        let y = vec![ctx.s_zero(); ctx.f()];
        Self::new(ctx, quotient, sub, y).unwrap()
    }

    pub fn quotient(&self) -> &RankOneKisin {
        &self.quotient
    }

    pub fn sub(&self) -> &RankOneKisin {
        &self.sub
    }

    pub fn y(&self) -> &[TruncSeries] {
        &self.y
    }

    /// Whether every `y_i` vanishes.
    pub fn is_split_representative(&self) -> bool {
        self.y.iter().all(|yi| yi.is_zero())
    }
}
