use crate::WeightError;
use algebra_core::ArithCtx;
use kisin_rank1::{generic_fibre, reduce_crystalline_char, WeightParams};
use tame_characters::{encode, TameChar};

/// A Serre weight `sigma_{a,b}`: per embedding `i`, the symmetric-power
/// degree is `a_i - b_i` and the determinant twist is `b_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SerreWeight {
    a: Vec<i64>,
    b: Vec<i64>,
}

impl SerreWeight {
    /// Requires `b_i in [0, p-1]` and `a_i - b_i in [0, p-1]` for all `i`,
    /// with not every `b_i` equal to `p - 1`.
    pub fn new(ctx: &ArithCtx, a: Vec<i64>, b: Vec<i64>) -> Result<Self, WeightError> {
        let f = ctx.f();
        let max = ctx.p() - 1;
        for v in [&a, &b] {
            if v.len() != f {
                return Err(WeightError::BadLength {
                    expected: f,
                    got: v.len(),
                });
            }
        }
        for (index, &value) in b.iter().enumerate() {
            if value < 0 || value > max as i64 {
                return Err(WeightError::TwistOutOfRange { index, value, max });
            }
        }
        for (index, (&ai, &bi)) in a.iter().zip(&b).enumerate() {
            let value = ai - bi;
            if value < 0 || value > max as i64 {
                return Err(WeightError::GapOutOfRange { index, value, max });
            }
        }
        if b.iter().all(|&bi| bi == max as i64) {
            return Err(WeightError::AllTwistsMaximal);
        }
        Ok(SerreWeight { a, b })
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }
}

/// Splits a weight into Barsotti-Tate-normalized shift parameters
/// `r_i = a_i - b_i + 1 in [1, p]` and the tame twist character carrying
/// the `b_i`. The twist is computed as the reduction of a crystalline
/// character with one labeled weight `b_i` per embedding and cross-checked
/// against the direct exponent encoding.
pub fn detwist(ctx: &ArithCtx, w: &SerreWeight) -> Result<(WeightParams, TameChar), WeightError> {
    let r: Vec<usize> = w
        .a()
        .iter()
        .zip(w.b())
        .map(|(&ai, &bi)| (ai - bi + 1) as usize)
        .collect();
    let r = WeightParams::new(ctx, r)?;
    let rows: Vec<Vec<usize>> = w
        .b()
        .iter()
        .map(|&bi| {
            let mut row = vec![0usize; ctx.e()];
            row[0] = bi as usize;
            row
        })
        .collect();
    let reduced = reduce_crystalline_char(ctx, &rows, &ctx.f_one())?;
    let twist = generic_fibre(ctx, &reduced).tame;
    let direct = encode(ctx.p(), ctx.f(), 1, w.b()).expect("twist exponents have length f");
    assert_eq!(
        twist, direct,
        "crystalline reduction must agree with the direct twist encoding"
    );
    Ok((r, twist))
}
