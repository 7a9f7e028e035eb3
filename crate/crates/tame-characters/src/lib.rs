//! Characters of tame inertia as exponent codes.
//!
//! A tame character of niveau dividing `nf` (here `n` is 1 or 2) is a power
//! of a fundamental character of level `nf`, so it is determined by an
//! exponent modulo `p^{nf} - 1`. We store that exponent, the "code", as its
//! least non-negative representative.
//!
//! Encoding convention: the fundamental character with index `i` has code
//! `p^{(nf - i) mod nf}`. This is the unique assignment under which the
//! carrying identity `p * code(omega_i) = code(omega_{i-1})` holds, matching
//! the relation `omega_i^p = omega_{i-1}` that index shifting is built on.
//! Index arithmetic on `i` is always modulo `nf`.
//!
//! Multiplying characters adds codes; the `q`-twist at niveau `2f` (conjugation
//! by the degree-`f` Frobenius, `q = p^f`) multiplies codes by `p^f`. A
//! niveau-`f` character sits inside the niveau-`2f` ring via
//! `code -> code * (p^f + 1)`, and a niveau-`2f` code is fixed by the
//! `q`-twist exactly when it is such a multiple.

use algebra_core::{ArithCtx, FieldElem};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TameError {
    #[error("niveau factor must be 1 or 2, got {0}")]
    BadNiveauFactor(u8),
    #[error("q-twist requires niveau 2f")]
    QTwistNeedsQuadratic,
    #[error("expected a vector of {expected} exponents, got {got}")]
    BadExponentLength { expected: usize, got: usize },
    #[error("characters live in different rings (p, f, or niveau factor differ)")]
    RingMismatch,
    #[error("unramified value must be nonzero")]
    ZeroUnramified,
    #[error("the tame part of a Galois character must have niveau factor 1")]
    GaloisNeedsNiveauOne,
}

/// A character of tame inertia, as an exponent code mod `p^{nf} - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TameChar {
    p: u64,
    f: usize,
    niveau_factor: u8,
    code: u64,
}

impl TameChar {
    pub fn new(p: u64, f: usize, niveau_factor: u8, code: u128) -> Result<Self, TameError> {
        if niveau_factor != 1 && niveau_factor != 2 {
            return Err(TameError::BadNiveauFactor(niveau_factor));
        }
        let modulus = pow_u128(p, f * niveau_factor as usize) - 1;
        Ok(TameChar {
            p,
            f,
            niveau_factor,
            code: (code % modulus) as u64,
        })
    }

    pub fn trivial(p: u64, f: usize, niveau_factor: u8) -> Self {
        Self::new(p, f, niveau_factor, 0).unwrap()
    }

    /// The fundamental character with index `i` (mod `nf`).
    pub fn fundamental(p: u64, f: usize, niveau_factor: u8, i: i64) -> Result<Self, TameError> {
        if niveau_factor != 1 && niveau_factor != 2 {
            return Err(TameError::BadNiveauFactor(niveau_factor));
        }
        let nf = f * niveau_factor as usize;
        let i = i.rem_euclid(nf as i64) as usize;
        let exp = (nf - i) % nf;
        Self::new(p, f, niveau_factor, pow_u128(p, exp))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn niveau_factor(&self) -> u8 {
        self.niveau_factor
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    /// `p^{nf} - 1`, the modulus the code lives under.
    pub fn code_modulus(&self) -> u64 {
        (pow_u128(self.p, self.f * self.niveau_factor as usize) - 1) as u64
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.niveau_factor == other.niveau_factor
    }

    pub fn mul(&self, other: &Self) -> Result<Self, TameError> {
        if !self.same_ring(other) {
            return Err(TameError::RingMismatch);
        }
        Self::new(
            self.p,
            self.f,
            self.niveau_factor,
            self.code as u128 + other.code as u128,
        )
    }

    pub fn inverse(&self) -> Self {
        let modulus = self.code_modulus() as u128;
        Self::new(
            self.p,
            self.f,
            self.niveau_factor,
            modulus - self.code as u128 % modulus,
        )
        .unwrap()
    }

    pub fn div(&self, other: &Self) -> Result<Self, TameError> {
        self.mul(&other.inverse())
    }

    pub fn pow(&self, k: i64) -> Self {
        let modulus = self.code_modulus() as u128;
        let k = k.rem_euclid(modulus as i64) as u128;
        Self::new(self.p, self.f, self.niveau_factor, self.code as u128 * k).unwrap()
    }

    /// Conjugation by the degree-`f` Frobenius; defined at niveau `2f` only.
    pub fn q_twist(&self) -> Result<Self, TameError> {
        if self.niveau_factor != 2 {
            return Err(TameError::QTwistNeedsQuadratic);
        }
        let q = pow_u128(self.p, self.f);
        Self::new(self.p, self.f, 2, self.code as u128 * q)
    }

    /// `f` when the character descends to niveau `f`, else `2f`.
    pub fn niveau_of(&self) -> usize {
        match self.niveau_factor {
            1 => self.f,
            _ => {
                if self.q_twist().unwrap() == *self {
                    self.f
                } else {
                    2 * self.f
                }
            }
        }
    }

    /// The same character viewed in the niveau-`2f` ring.
    pub fn lift_to_quadratic(&self) -> Self {
        match self.niveau_factor {
            2 => self.clone(),
            _ => {
                let q = pow_u128(self.p, self.f);
                Self::new(self.p, self.f, 2, self.code as u128 * (q + 1)).unwrap()
            }
        }
    }

    /// Descends a `q`-fixed niveau-`2f` code to the niveau-`f` ring.
    pub fn descend_to_base(&self) -> Option<Self> {
        match self.niveau_factor {
            1 => Some(self.clone()),
            _ => {
                let q1 = (pow_u128(self.p, self.f) + 1) as u64;
                if self.code % q1 != 0 {
                    return None;
                }
                Some(Self::new(self.p, self.f, 1, (self.code / q1) as u128).unwrap())
            }
        }
    }

    /// Equality as characters, comparing across niveau rings via the lift.
    pub fn eq_as_character(&self, other: &Self) -> bool {
        if self.p != other.p || self.f != other.f {
            return false;
        }
        self.lift_to_quadratic() == other.lift_to_quadratic()
    }

    /// Base-`p` digit vector `(m_0, ..., m_{nf-1})` with `m_i` the exponent of
    /// the fundamental character `omega_i`; entries in `[0, p-1]` and never
    /// the all-`(p-1)` vector.
    pub fn canonical_digits(&self) -> Vec<u64> {
        let nf = self.f * self.niveau_factor as usize;
        let mut digits = vec![0u64; nf];
        let mut c = self.code;
        for d in digits.iter_mut() {
            *d = c % self.p;
            c /= self.p;
        }
        // encode uses exponent (nf - i) mod nf for index i.
        let mut m = vec![0u64; nf];
        for (i, mi) in m.iter_mut().enumerate() {
            *mi = digits[(nf - i) % nf];
        }
        m
    }
}

/// Builds the character `prod_i omega_i^{m_i}` from `nf` integer exponents
/// (negative exponents allowed).
pub fn encode(p: u64, f: usize, niveau_factor: u8, m_vec: &[i64]) -> Result<TameChar, TameError> {
    if niveau_factor != 1 && niveau_factor != 2 {
        return Err(TameError::BadNiveauFactor(niveau_factor));
    }
    let nf = f * niveau_factor as usize;
    if m_vec.len() != nf {
        return Err(TameError::BadExponentLength {
            expected: nf,
            got: m_vec.len(),
        });
    }
    let modulus = (pow_u128(p, nf) - 1) as i128;
    let mut acc: i128 = 0;
    for (i, &mi) in m_vec.iter().enumerate() {
        let exp = (nf - i) % nf;
        acc += (mi as i128).rem_euclid(modulus) * (pow_u128(p, exp) as i128);
        acc %= modulus;
    }
    TameChar::new(p, f, niveau_factor, acc.rem_euclid(modulus) as u128)
}

/// Tame part of the mod-`p` cyclotomic character: every fundamental character
/// appears with exponent `e`.
pub fn cyclotomic_tame_code(ctx: &ArithCtx) -> TameChar {
    let m = vec![ctx.e() as i64; ctx.f()];
    encode(ctx.p(), ctx.f(), 1, &m).unwrap()
}

/// A character of the absolute Galois group with tame inertial part of
/// niveau `f` and a nonzero value on the geometric Frobenius.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GKChar {
    pub tame: TameChar,
    pub unramified: FieldElem,
}

impl GKChar {
    pub fn new(tame: TameChar, unramified: FieldElem) -> Result<Self, TameError> {
        if tame.niveau_factor() != 1 {
            return Err(TameError::GaloisNeedsNiveauOne);
        }
        if unramified.is_zero() {
            return Err(TameError::ZeroUnramified);
        }
        Ok(GKChar { tame, unramified })
    }

    pub fn unramified_twist_of(ctx: &ArithCtx, tame: TameChar) -> Result<Self, TameError> {
        Self::new(tame, ctx.f_one())
    }

    pub fn mul(&self, ctx: &ArithCtx, other: &Self) -> Result<Self, TameError> {
        Self::new(
            self.tame.mul(&other.tame)?,
            ctx.f_mul(&self.unramified, &other.unramified),
        )
    }
}

fn pow_u128(base: u64, exp: usize) -> u128 {
    (base as u128).pow(exp as u32)
}
