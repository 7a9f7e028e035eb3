//! Exact rationals, re-exported from `num` with small construction helpers.
//!
//! The alpha-invariants have denominator dividing `p^f - 1` and the
//! tau-valuations denominator dividing `e(p^f - 1)`; both stay well inside
//! fixed-precision range for validated parameters, but arbitrary precision
//! costs nothing here and removes the overflow question entirely.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::ToPrimitive;

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_of(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The value as an `i64` when it is an integer in range, else `None`.
pub fn rat_to_i64(r: &Rat) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    r.to_integer().to_i64()
}
