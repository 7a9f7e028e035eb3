//! Exact arithmetic substrate for the Serre-weight toolkit.
//!
//! Everything downstream works over three kinds of values, all exact:
//!
//! * elements of a finite coefficient field `F_{p^m}`, represented by
//!   coordinate vectors relative to a fixed, deterministically chosen
//!   irreducible modulus polynomial;
//! * univariate power series in `u` over that field, truncated at a fixed
//!   order `N` (degrees `>= N` are discarded by every operation);
//! * arbitrary-precision rationals, used for the alpha-invariants and
//!   valuation bookkeeping. No floating point appears anywhere.
//!
//! All operations hang off [`ArithCtx`], which owns the parameters
//! `(p, f, e, m, N)` and the field modulus. Values do not carry a context
//! pointer; callers pass the context explicitly, and mixing values built
//! under different contexts is a caller error that the length/range
//! validators catch.

mod ctx;
mod field;
mod mat2;
mod rat;
mod series;

pub use ctx::{ArithCtx, CtxError};
pub use field::FieldElem;
pub use mat2::Mat2;
pub use rat::{rat_int, rat_of, rat_to_i64, Rat};
pub use series::{TruncSeries, UValuation};
