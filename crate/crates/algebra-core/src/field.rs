//! Elements of the coefficient field `k_E = F_{p^m}`.
//!
//! An element is the coordinate vector `(c_0, ..., c_{m-1})` of a residue
//! `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` modulo the context's modulus
//! polynomial. All arithmetic goes through [`ArithCtx`] methods so the
//! modulus never needs to travel with the value.

use crate::ctx::ArithCtx;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldElem {
    coords: Vec<u64>,
}

impl FieldElem {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl ArithCtx {
    pub fn f_zero(&self) -> FieldElem {
        FieldElem {
            coords: vec![0; self.m()],
        }
    }

    pub fn f_one(&self) -> FieldElem {
        self.f_from_u64(1)
    }

    /// The residue class of the variable `x` (a canonical element outside
    /// the prime field whenever `m > 1`).
    pub fn f_gen(&self) -> FieldElem {
        let mut coords = vec![0; self.m()];
        if self.m() > 1 {
            coords[1] = 1;
        } else {
            coords[0] = 1;
        }
        FieldElem { coords }
    }

    pub fn f_from_u64(&self, c: u64) -> FieldElem {
        let mut coords = vec![0; self.m()];
        coords[0] = c % self.p();
        FieldElem { coords }
    }

    /// Builds an element from raw coordinates, reducing mod `p`; the length
    /// must match `m`.
    pub fn f_from_coords(&self, coords: &[u64]) -> Option<FieldElem> {
        if coords.len() != self.m() {
            return None;
        }
        Some(FieldElem {
            coords: coords.iter().map(|&c| c % self.p()).collect(),
        })
    }

    pub fn f_valid(&self, a: &FieldElem) -> bool {
        a.coords.len() == self.m() && a.coords.iter().all(|&c| c < self.p())
    }

    pub fn f_add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        debug_assert!(self.f_valid(a) && self.f_valid(b));
        let p = self.p();
        FieldElem {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(&x, &y)| (x + y) % p)
                .collect(),
        }
    }

    pub fn f_neg(&self, a: &FieldElem) -> FieldElem {
        let p = self.p();
        FieldElem {
            coords: a.coords.iter().map(|&x| (p - x) % p).collect(),
        }
    }

    pub fn f_sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let p = self.p();
        FieldElem {
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(&x, &y)| (x + p - y) % p)
                .collect(),
        }
    }

    /// Multiplies by a prime-field scalar.
    pub fn f_scale(&self, c: u64, a: &FieldElem) -> FieldElem {
        let p = self.p();
        let c = c % p;
        FieldElem {
            coords: a.coords.iter().map(|&x| x * c % p).collect(),
        }
    }

    pub fn f_mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        debug_assert!(self.f_valid(a) && self.f_valid(b));
        let m = self.m();
        let p = self.p();
        // Schoolbook product; coefficients stay below m * (p-1)^2 < 2^64.
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &ai) in a.coords.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.coords.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % p;
            }
        }
        self.reduce_by_modulus(&mut prod);
        prod.truncate(m);
        FieldElem { coords: prod }
    }

    /// Reduces a little-endian polynomial of degree `< 2m-1` by the monic
    /// modulus, in place; the result occupies the first `m` slots.
    fn reduce_by_modulus(&self, poly: &mut [u64]) {
        let m = self.m();
        let p = self.p();
        let low = self.modulus_low();
        for i in (m..poly.len()).rev() {
            let c = poly[i];
            if c == 0 {
                continue;
            }
            poly[i] = 0;
            // x^i = x^{i-m} * x^m = -x^{i-m} * (low part)
            for (j, &lj) in low.iter().enumerate() {
                if lj != 0 {
                    let idx = i - m + j;
                    poly[idx] = (poly[idx] + (p - lj) * c) % p;
                }
            }
        }
    }

    pub fn f_pow(&self, a: &FieldElem, mut exp: u128) -> FieldElem {
        let mut acc = self.f_one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.f_mul(&acc, &base);
            }
            base = self.f_mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn f_inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        // a^{p^m - 2} = a^{-1} in F_{p^m}.
        Some(self.f_pow(a, self.field_order() - 2))
    }

    pub fn f_div(&self, a: &FieldElem, b: &FieldElem) -> Option<FieldElem> {
        self.f_inv(b).map(|binv| self.f_mul(a, &binv))
    }
}
