//! Ambient parameters and the deterministic choice of field modulus.
//!
//! A context fixes `(p, f, e, m, N)`:
//! * `p`: an odd prime (the residue characteristic);
//! * `f`: the residue degree, so embedding indices live in `Z/f`;
//! * `e`: the ramification index;
//! * `m`: the degree of the coefficient field `k_E = F_{p^m}` over `F_p`,
//!   required divisible by `2f` so that both the degree-`f` and degree-`2f`
//!   subfields embed in `k_E`;
//! * `N`: the series truncation order. The default `N = p(p+e) + e + 1`
//!   dominates every degree the reduction machinery can produce for weights
//!   in range (`s_i <= p+e-1` and alpha-gaps at most `s_max/(p-1)`), so
//!   coefficients at degree `>= N` are always discardable.
//!
//! The modulus of `k_E` is the least irreducible monic polynomial of degree
//! `m` over `F_p`, where candidates `x^m + c_{m-1}x^{m-1} + ... + c_0` are
//! ordered by the integer encoding `sum_i c_i p^i`. This makes every run of
//! the tool, on every machine, agree on coordinates.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CtxError {
    #[error("p must be a prime with 3 <= p < 2^16, got {0}")]
    BadPrime(u64),
    #[error("f must be positive, got {0}")]
    BadResidueDegree(usize),
    #[error("e must be positive, got {0}")]
    BadRamification(usize),
    #[error("m must be positive and divisible by 2f (f = {f}), got m = {m}")]
    BadFieldDegree { m: usize, f: usize },
    #[error("p^m does not fit the supported field-order range (p = {p}, m = {m})")]
    FieldTooLarge { p: u64, m: usize },
    #[error("truncation order must be at least 2, got {0}")]
    BadTruncation(usize),
}

/// Shared parameters for all arithmetic. Cheap to clone; immutable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithCtx {
    p: u64,
    f: usize,
    e: usize,
    m: usize,
    n_trunc: usize,
    /// Low coefficients `c_0..c_{m-1}` of the monic modulus of `k_E`.
    modulus_low: Vec<u64>,
}

impl ArithCtx {
    /// Context with the default truncation order `N = p(p+e) + e + 1`.
    pub fn new(p: u64, f: usize, e: usize, m: usize) -> Result<Self, CtxError> {
        let n = (p as usize) * (p as usize + e) + e + 1;
        Self::with_truncation(p, f, e, m, n)
    }

    /// Context with an explicit truncation order (still `>= 2`).
    pub fn with_truncation(
        p: u64,
        f: usize,
        e: usize,
        m: usize,
        n_trunc: usize,
    ) -> Result<Self, CtxError> {
        if p < 3 || p >= (1 << 16) || !is_prime(p) {
            return Err(CtxError::BadPrime(p));
        }
        if f == 0 {
            return Err(CtxError::BadResidueDegree(f));
        }
        if e == 0 {
            return Err(CtxError::BadRamification(e));
        }
        if m == 0 || m % (2 * f) != 0 {
            return Err(CtxError::BadFieldDegree { m, f });
        }
        // Exponents like p^m - 2 (inversion) and |k_E| itself are carried as
        // u128, so the field order must fit.
        if (p as u128).checked_pow(m as u32).is_none() {
            return Err(CtxError::FieldTooLarge { p, m });
        }
        if n_trunc < 2 {
            return Err(CtxError::BadTruncation(n_trunc));
        }
        let modulus_low = least_irreducible_monic(p, m);
        Ok(ArithCtx {
            p,
            f,
            e,
            m,
            n_trunc,
            modulus_low,
        })
    }

    /// Same parameters with the residue degree multiplied by `n`, as needed
    /// for unramified base change. Fails if `2nf` no longer divides `m`.
    pub fn extend_residue_degree(&self, n: usize) -> Result<Self, CtxError> {
        Self::with_truncation(self.p, self.f * n, self.e, self.m, self.n_trunc)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The truncation order `N`: series keep coefficients of `u^0..u^{N-1}`.
    pub fn trunc(&self) -> usize {
        self.n_trunc
    }

    /// `|k_E| = p^m`, exact (fits in u128 for all validated parameters).
    pub fn field_order(&self) -> u128 {
        (self.p as u128).pow(self.m as u32)
    }

    /// Full coefficient vector `c_0..c_m` of the modulus (`c_m = 1`).
    pub fn modulus_coeffs(&self) -> Vec<u64> {
        let mut v = self.modulus_low.clone();
        v.push(1);
        v
    }

    pub(crate) fn modulus_low(&self) -> &[u64] {
        &self.modulus_low
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Little-endian polynomials over `F_p`, used only for modulus selection.
mod poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r: Vec<u64> = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = super::pow_mod(b[db], p - 2, p);
        while r.len() > db {
            let dr = r.len() - 1;
            let c = r[dr] * lead_inv % p;
            for i in 0..=db {
                let idx = dr - db + i;
                r[idx] = (r[idx] + p - c * b[i] % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        rem(&prod, modulus, p)
    }

    pub fn powmod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, modulus, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(&acc, &b, modulus, p);
            }
            b = mulmod(&b, &b, modulus, p);
            exp >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let ai = a.get(i).copied().unwrap_or(0);
            let bi = b.get(i).copied().unwrap_or(0);
            *o = (ai + p - bi) % p;
        }
        trim(&mut out);
        out
    }
}

/// Monic irreducibility: `g` of degree `m` is irreducible over `F_p` iff
/// `x^{p^m} = x (mod g)` and `gcd(x^{p^{m/q}} - x, g) = 1` for every prime
/// `q | m`.
fn is_irreducible(low: &[u64], p: u64) -> bool {
    let m = low.len();
    let mut modulus = low.to_vec();
    modulus.push(1);
    let x = vec![0u64, 1];
    // Iterated p-th powers of x modulo g: frob[k] = x^{p^k} mod g.
    let mut frob = x.clone();
    let mut frob_at = vec![frob.clone()]; // index k = 0
    for _ in 0..m {
        frob = poly::powmod(&frob, p, &modulus, p);
        frob_at.push(frob.clone());
    }
    if poly::sub(&frob_at[m], &x, p) != Vec::<u64>::new() {
        return false;
    }
    let mut q = 2;
    let mut mm = m;
    let mut prime_divisors = vec![];
    while q * q <= mm {
        if mm % q == 0 {
            prime_divisors.push(q);
            while mm % q == 0 {
                mm /= q;
            }
        }
        q += 1;
    }
    if mm > 1 {
        prime_divisors.push(mm);
    }
    for q in prime_divisors {
        let diff = poly::sub(&frob_at[m / q], &x, p);
        let g = poly::gcd(&modulus, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Low coefficients of the least irreducible monic polynomial of degree `m`,
/// candidates ordered by the integer encoding `sum c_i p^i`.
fn least_irreducible_monic(p: u64, m: usize) -> Vec<u64> {
    let mut low = vec![0u64; m];
    loop {
        if is_irreducible(&low, p) {
            return low;
        }
        // Increment the base-p counter c_0, c_1, ...
        let mut i = 0;
        loop {
            assert!(i < m, "no irreducible monic of degree {m} found");
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_truncation_order() {
        let ctx = ArithCtx::new(3, 1, 1, 2).unwrap();
        assert_eq!(ctx.trunc(), 3 * (3 + 1) + 1 + 1);
        let ctx = ArithCtx::new(5, 2, 3, 4).unwrap();
        assert_eq!(ctx.trunc(), 5 * (5 + 3) + 3 + 1);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            ArithCtx::new(2, 1, 1, 2).unwrap_err(),
            CtxError::BadPrime(2)
        );
        assert_eq!(
            ArithCtx::new(9, 1, 1, 2).unwrap_err(),
            CtxError::BadPrime(9)
        );
        assert_eq!(
            ArithCtx::new(3, 1, 1, 3).unwrap_err(),
            CtxError::BadFieldDegree { m: 3, f: 1 }
        );
        assert_eq!(
            ArithCtx::new(3, 2, 1, 2).unwrap_err(),
            CtxError::BadFieldDegree { m: 2, f: 2 }
        );
        assert_eq!(ArithCtx::new(3, 0, 1, 2).unwrap_err(), CtxError::BadResidueDegree(0));
        assert_eq!(ArithCtx::new(3, 1, 0, 2).unwrap_err(), CtxError::BadRamification(0));
    }

    // Moduli below were frozen from an independent computer-algebra check of
    // "least irreducible monic in counting order".
    #[test]
    fn modulus_is_least_irreducible_f9() {
        let ctx = ArithCtx::new(3, 1, 1, 2).unwrap();
        assert_eq!(ctx.modulus_coeffs(), vec![1, 0, 1]); // x^2 + 1
    }

    #[test]
    fn modulus_is_least_irreducible_f25() {
        let ctx = ArithCtx::new(5, 1, 1, 2).unwrap();
        assert_eq!(ctx.modulus_coeffs(), vec![2, 0, 1]); // x^2 + 2
    }

    #[test]
    fn modulus_is_least_irreducible_f49() {
        let ctx = ArithCtx::new(7, 1, 1, 2).unwrap();
        assert_eq!(ctx.modulus_coeffs(), vec![1, 0, 1]); // x^2 + 1
    }

    #[test]
    fn modulus_is_least_irreducible_f81() {
        let ctx = ArithCtx::new(3, 2, 1, 4).unwrap();
        assert_eq!(ctx.modulus_coeffs(), vec![2, 1, 0, 0, 1]); // x^4 + x + 2
    }

    #[test]
    fn modulus_is_least_irreducible_3_pow_12() {
        let ctx = ArithCtx::new(3, 6, 1, 12).unwrap();
        // x^12 + x^2 + 2
        let mut want = vec![0u64; 13];
        want[0] = 2;
        want[2] = 1;
        want[12] = 1;
        assert_eq!(ctx.modulus_coeffs(), want);
    }

    #[test]
    fn modulus_is_least_irreducible_5_pow_4() {
        let ctx = ArithCtx::new(5, 2, 1, 4).unwrap();
        assert_eq!(ctx.modulus_coeffs(), vec![2, 0, 0, 0, 1]); // x^4 + 2
    }

    #[test]
    fn rejects_oversized_field_order() {
        assert_eq!(
            ArithCtx::new(65521, 1, 1, 12).unwrap_err(),
            CtxError::FieldTooLarge { p: 65521, m: 12 }
        );
    }

    #[test]
    fn extend_residue_degree_checks_field_degree() {
        let ctx = ArithCtx::new(3, 1, 1, 12).unwrap();
        assert_eq!(ctx.extend_residue_degree(3).unwrap().f(), 3);
        let small = ArithCtx::new(3, 1, 1, 2).unwrap();
        assert!(small.extend_residue_degree(2).is_err());
    }
}
