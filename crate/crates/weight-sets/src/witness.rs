use crate::WeightError;
use algebra_core::ArithCtx;

pub(crate) fn check_subset(j: &[usize], bound: usize) -> Result<(), WeightError> {
    for (pos, &idx) in j.iter().enumerate() {
        if idx >= bound {
            return Err(WeightError::BadWitnessIndex { index: idx });
        }
        if pos > 0 && j[pos - 1] >= idx {
            return Err(WeightError::BadWitnessIndex { index: idx });
        }
    }
    Ok(())
}

pub(crate) fn check_params(x: &[usize], len: usize, e: usize) -> Result<(), WeightError> {
    if x.len() != len {
        return Err(WeightError::BadLength {
            expected: len,
            got: x.len(),
        });
    }
    for (index, &value) in x.iter().enumerate() {
        if value >= e {
            return Err(WeightError::WitnessEntryOutOfRange {
                index,
                value,
                max: e - 1,
            });
        }
    }
    Ok(())
}

/// Witness for split membership: a subset `J` of the `f` embeddings and
/// parameters `x_i in [0, e-1]`, one per embedding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitWitness {
    j: Vec<usize>,
    x: Vec<usize>,
}

impl SplitWitness {
    /// `j` must be a strictly increasing subset of `0..f`; `x` must have
    /// `f` entries below `e`.
    pub fn new(ctx: &ArithCtx, j: Vec<usize>, x: Vec<usize>) -> Result<Self, WeightError> {
        check_subset(&j, ctx.f())?;
        check_params(&x, ctx.f(), ctx.e())?;
        Ok(SplitWitness { j, x })
    }

    pub fn j(&self) -> &[usize] {
        &self.j
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    /// Membership indicator over `0..f`.
    pub fn indicator(&self, f: usize) -> Vec<bool> {
        let mut ind = vec![false; f];
        for &idx in &self.j {
            ind[idx] = true;
        }
        ind
    }
}

/// Witness for irreducible membership: a balanced subset `J` of the `2f`
/// quadratic embeddings (exactly one of each conjugate pair `{i, i+f}`)
/// and conjugation-symmetric parameters `x_i = x_{i+f} in [0, e-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BalancedWitness {
    j: Vec<usize>,
    x: Vec<usize>,
}

impl BalancedWitness {
    /// `j` must be strictly increasing inside `0..2f` and pick exactly one
    /// of `{i, i+f}` for each `i`; `x` must have `2f` entries below `e`
    /// with `x_i = x_{i+f}`.
    pub fn new(ctx: &ArithCtx, j: Vec<usize>, x: Vec<usize>) -> Result<Self, WeightError> {
        let f = ctx.f();
        check_subset(&j, 2 * f)?;
        check_params(&x, 2 * f, ctx.e())?;
        let mut ind = vec![false; 2 * f];
        for &idx in &j {
            ind[idx] = true;
        }
        for i in 0..f {
            if ind[i] == ind[i + f] {
                return Err(WeightError::NotBalanced { index: i });
            }
            if x[i] != x[i + f] {
                return Err(WeightError::NotSymmetric { index: i });
            }
        }
        Ok(BalancedWitness { j, x })
    }

    pub fn j(&self) -> &[usize] {
        &self.j
    }

    pub fn x(&self) -> &[usize] {
        &self.x
    }

    /// Membership indicator over `0..2f`.
    pub fn indicator(&self, f: usize) -> Vec<bool> {
        let mut ind = vec![false; 2 * f];
        for &idx in &self.j {
            ind[idx] = true;
        }
        ind
    }
}
