//! Truncated power series over the coefficient field.
//!
//! A series holds exactly `N` coefficients, `u^0` through `u^{N-1}`; every
//! operation silently discards degrees `>= N`. Equality is coefficientwise
//! below `N`, which is the right notion for the reduction machinery: two
//! series that agree below `N` are interchangeable everywhere downstream.

use crate::ctx::ArithCtx;
use crate::field::FieldElem;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<FieldElem>,
}

/// Result of a `u`-valuation query. `AtLeastTrunc` means every stored
/// coefficient vanishes; the true valuation is `>= N` or the series is zero,
/// and the truncated model cannot tell the two apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UValuation {
    Finite(usize),
    AtLeastTrunc,
}

impl UValuation {
    pub fn finite(self) -> Option<usize> {
        match self {
            UValuation::Finite(v) => Some(v),
            UValuation::AtLeastTrunc => None,
        }
    }
}

impl TruncSeries {
    pub fn coeff(&self, deg: usize) -> &FieldElem {
        &self.coeffs[deg]
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Smallest degree with a nonzero coefficient, or the `>= N` flag.
    pub fn u_valuation(&self) -> UValuation {
        for (g, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                return UValuation::Finite(g);
            }
        }
        UValuation::AtLeastTrunc
    }

    /// Degrees with nonzero coefficients, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, _)| g)
            .collect()
    }
}

impl ArithCtx {
    pub fn s_zero(&self) -> TruncSeries {
        TruncSeries {
            coeffs: vec![self.f_zero(); self.trunc()],
        }
    }

    pub fn s_one(&self) -> TruncSeries {
        self.s_monomial(0, self.f_one())
    }

    /// `c * u^deg`; the zero series when `deg >= N`.
    pub fn s_monomial(&self, deg: usize, c: FieldElem) -> TruncSeries {
        let mut s = self.s_zero();
        if deg < self.trunc() {
            s.coeffs[deg] = c;
        }
        s
    }

    /// Builds a series from the low coefficients given (padded with zeros).
    pub fn s_from_coeffs(&self, coeffs: &[FieldElem]) -> Option<TruncSeries> {
        if coeffs.len() > self.trunc() || !coeffs.iter().all(|c| self.f_valid(c)) {
            return None;
        }
        let mut s = self.s_zero();
        s.coeffs[..coeffs.len()].clone_from_slice(coeffs);
        Some(s)
    }

    pub fn s_valid(&self, a: &TruncSeries) -> bool {
        a.coeffs.len() == self.trunc() && a.coeffs.iter().all(|c| self.f_valid(c))
    }

    pub fn s_add(&self, a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
        debug_assert!(self.s_valid(a) && self.s_valid(b));
        TruncSeries {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.f_add(x, y))
                .collect(),
        }
    }

    pub fn s_sub(&self, a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
        TruncSeries {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.f_sub(x, y))
                .collect(),
        }
    }

    pub fn s_neg(&self, a: &TruncSeries) -> TruncSeries {
        TruncSeries {
            coeffs: a.coeffs.iter().map(|x| self.f_neg(x)).collect(),
        }
    }

    /// Adds `c * u^deg` in place (no-op past the truncation order).
    pub fn s_add_monomial(&self, a: &mut TruncSeries, deg: usize, c: &FieldElem) {
        if deg < self.trunc() {
            a.coeffs[deg] = self.f_add(&a.coeffs[deg], c);
        }
    }

    pub fn s_scale(&self, c: &FieldElem, a: &TruncSeries) -> TruncSeries {
        TruncSeries {
            coeffs: a.coeffs.iter().map(|x| self.f_mul(c, x)).collect(),
        }
    }

    /// Product truncated at `N`.
    pub fn s_mul(&self, a: &TruncSeries, b: &TruncSeries) -> TruncSeries {
        debug_assert!(self.s_valid(a) && self.s_valid(b));
        let n = self.trunc();
        let mut out = self.s_zero();
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                if bj.is_zero() {
                    continue;
                }
                let t = self.f_mul(ai, bj);
                out.coeffs[i + j] = self.f_add(&out.coeffs[i + j], &t);
            }
        }
        out
    }

    /// Multiplication by the monomial `u^shift`.
    pub fn s_shift(&self, a: &TruncSeries, shift: usize) -> TruncSeries {
        let n = self.trunc();
        let mut out = self.s_zero();
        for (g, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if g + shift < n {
                out.coeffs[g + shift] = c.clone();
            }
        }
        out
    }

    /// The Frobenius substitution `u -> u^p`. Coefficients are untouched:
    /// the coefficient field acts linearly, only the variable moves.
    pub fn s_frobenius(&self, a: &TruncSeries) -> TruncSeries {
        let n = self.trunc();
        let p = self.p() as usize;
        let mut out = self.s_zero();
        for (g, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let gp = g.checked_mul(p).unwrap();
            if gp < n {
                out.coeffs[gp] = c.clone();
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx() -> ArithCtx {
        ArithCtx::new(3, 1, 1, 2).unwrap()
    }

    #[test]
    fn one_plus_u_times_one_minus_u() {
        let c = ctx();
        let one_plus_u = c.s_add(&c.s_one(), &c.s_monomial(1, c.f_one()));
        let one_minus_u = c.s_sub(&c.s_one(), &c.s_monomial(1, c.f_one()));
        let got = c.s_mul(&one_plus_u, &one_minus_u);
        let want = c.s_sub(&c.s_one(), &c.s_monomial(2, c.f_one()));
        assert_eq!(got, want);
    }

    #[test]
    fn zero_is_absorbing() {
        let c = ctx();
        let a = c.s_add(&c.s_monomial(3, c.f_from_u64(2)), &c.s_one());
        assert!(c.s_mul(&a, &c.s_zero()).is_zero());
    }

    #[test]
    fn truncation_kills_top_degree_product() {
        let c = ctx();
        let n = c.trunc();
        let top = c.s_monomial(n - 1, c.f_one());
        let u = c.s_monomial(1, c.f_one());
        assert!(c.s_mul(&top, &u).is_zero());
    }

    #[test]
    fn frobenius_moves_linear_term_to_u_p() {
        let c = ctx();
        let a = c.s_monomial(1, c.f_gen());
        let got = c.s_frobenius(&a);
        assert_eq!(got, c.s_monomial(3, c.f_gen()));
    }

    #[test]
    fn frobenius_fixes_constants() {
        let c = ctx();
        assert_eq!(c.s_frobenius(&c.s_one()), c.s_one());
    }

    #[test]
    fn frobenius_truncates_upper_range() {
        let c = ctx();
        let n = c.trunc();
        let g = n.div_ceil(3);
        assert!(c.s_frobenius(&c.s_monomial(g, c.f_one())).is_zero());
    }

    #[test]
    fn valuation_examples() {
        let c = ctx();
        let a = c.s_add(&c.s_monomial(2, c.f_one()), &c.s_monomial(3, c.f_one()));
        assert_eq!(a.u_valuation(), UValuation::Finite(2));
        assert_eq!(c.s_zero().u_valuation(), UValuation::AtLeastTrunc);
        assert_eq!(c.s_one().u_valuation(), UValuation::Finite(0));
    }

    fn arb_series(p: u64, n: usize) -> impl Strategy<Value = Vec<(usize, u64, u64)>> {
        // Sparse description: (degree, coord0, coord1) triples.
        proptest::collection::vec((0..n, 0..p, 0..p), 0..8)
    }

    fn build(c: &ArithCtx, desc: &[(usize, u64, u64)]) -> TruncSeries {
        let mut s = c.s_zero();
        for &(g, a0, a1) in desc {
            let coef = c.f_from_coords(&[a0, a1]).unwrap();
            c.s_add_monomial(&mut s, g, &coef);
        }
        s
    }

    proptest! {
        #[test]
        fn frobenius_is_multiplicative(
            da in arb_series(3, 13),
            db in arb_series(3, 13),
        ) {
            let c = ctx();
            let a = build(&c, &da);
            let b = build(&c, &db);
            prop_assert_eq!(
                c.s_frobenius(&c.s_mul(&a, &b)),
                c.s_mul(&c.s_frobenius(&a), &c.s_frobenius(&b))
            );
        }

        #[test]
        fn valuation_is_additive_below_truncation(
            da in arb_series(3, 13),
            db in arb_series(3, 13),
        ) {
            let c = ctx();
            let a = build(&c, &da);
            let b = build(&c, &db);
            if let (UValuation::Finite(va), UValuation::Finite(vb)) =
                (a.u_valuation(), b.u_valuation())
            {
                if va + vb < c.trunc() {
                    // Lowest coefficients multiply to something nonzero in a field.
                    prop_assert_eq!(
                        c.s_mul(&a, &b).u_valuation(),
                        UValuation::Finite(va + vb)
                    );
                }
            }
        }

        #[test]
        fn mul_is_associative_and_commutative(
            da in arb_series(3, 13),
            db in arb_series(3, 13),
            dc in arb_series(3, 13),
        ) {
            let c = ctx();
            let a = build(&c, &da);
            let b = build(&c, &db);
            let d = build(&c, &dc);
            prop_assert_eq!(c.s_mul(&a, &b), c.s_mul(&b, &a));
            prop_assert_eq!(
                c.s_mul(&c.s_mul(&a, &b), &d),
                c.s_mul(&a, &c.s_mul(&b, &d))
            );
        }
    }
}
