//! Explicit Serre weight sets for two-dimensional mod-p representations
//! over arbitrarily ramified p-adic base fields.
//!
//! A [`SerreWeight`] is a pair of twist/gap exponent vectors `(a, b)`.
//! Detwisting splits it into Barsotti-Tate-normalized shift parameters
//! `r_i = a_i - b_i + 1` and a twist character. Membership of a weight in
//! the explicit set attached to a residual representation is decided by
//! shape:
//!
//! * [`member_split`] for a sum of two niveau-f characters,
//! * [`member_irred`] for an irreducible induction of a niveau-2f character,
//! * [`member_nonsplit`] for a non-split extension given as Kisin-module
//!   extension data.
//!
//! [`rebalance`] turns any subset/parameter presentation of a niveau-2f
//! character pair into a balanced symmetric one, and
//! [`crystalline_profile`] lays out the labeled Hodge-Tate weights of the
//! distinguished crystalline lift pair attached to a maximal/minimal model
//! pair.

use kisin_ext::ExtError;
use kisin_rank1::ModelError;
use thiserror::Error;

mod membership;
mod nonsplit;
mod profile;
mod rebalance;
mod weight;
mod witness;

pub use membership::{irred_summand, member_irred, member_split, split_pair};
pub use nonsplit::{cyclotomic_tame_check, member_nonsplit, MembershipReport};
pub use profile::{crystalline_profile, HTProfile};
pub use rebalance::{rebalance, Rebalanced};
pub use weight::{detwist, SerreWeight};
pub use witness::{BalancedWitness, SplitWitness};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("expected {expected} entries, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("twist entry {index} is {value}, outside [0, {max}]")]
    TwistOutOfRange { index: usize, value: i64, max: u64 },
    #[error("weight gap at index {index} is {value}, outside [0, {max}]")]
    GapOutOfRange { index: usize, value: i64, max: u64 },
    #[error("every twist entry equals p - 1; use the equivalent all-zero twist")]
    AllTwistsMaximal,
    #[error("character does not live over the expected residue ring")]
    RingMismatch,
    #[error("character has niveau f, not 2f")]
    NiveauF,
    #[error("witness index {index} is out of range")]
    BadWitnessIndex { index: usize },
    #[error("witness entry {index} is {value}, outside [0, {max}]")]
    WitnessEntryOutOfRange {
        index: usize,
        value: usize,
        max: usize,
    },
    #[error("subset picks both or neither of the conjugate pair at index {index}")]
    NotBalanced { index: usize },
    #[error("parameter vector differs across the conjugate pair at index {index}")]
    NotSymmetric { index: usize },
    #[error("character pair fails the determinant identity: expected code {expected}, got {got}")]
    DeterminantObstruction { expected: u64, got: u64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Ext(#[from] ExtError),
}
