//! Independent verifiers for the weight-set machinery. Everything here
//! recomputes its target from first principles: the brute-force searches
//! use their own enumeration and character arithmetic, the structure
//! sampler drives random matrix chains through the divisibility claim, and
//! the valuation oracle does exact arithmetic in a ramified extension.

mod brute;
mod structure;
mod valuation;

pub use brute::{brute_balanced, brute_maxmin};
pub use structure::{sample_struct, ConstMat, SeriesMat, StructureSample};
pub use valuation::{
    check_taylor_valuations, random_level_samples, sufficient_precision, taylor_valuations,
    valuation_bounds, OracleError, RamifiedElem, SPrimeSample, TaylorValuation,
};
