//! 2x2 matrices over truncated series, for morphism checks and for the
//! divisibility sampler's matrix chains.
//!
//! Entries are indexed `e[row][col]`; `mul` is the usual row-by-column
//! product, so chains compose left to right as written on paper.

use crate::ctx::ArithCtx;
use crate::field::FieldElem;
use crate::series::TruncSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub e: [[TruncSeries; 2]; 2],
}

impl ArithCtx {
    pub fn m2_zero(&self) -> Mat2 {
        Mat2 {
            e: [
                [self.s_zero(), self.s_zero()],
                [self.s_zero(), self.s_zero()],
            ],
        }
    }

    pub fn m2_identity(&self) -> Mat2 {
        let mut m = self.m2_zero();
        m.e[0][0] = self.s_one();
        m.e[1][1] = self.s_one();
        m
    }

    pub fn m2_diag(&self, a: TruncSeries, d: TruncSeries) -> Mat2 {
        let mut m = self.m2_zero();
        m.e[0][0] = a;
        m.e[1][1] = d;
        m
    }

    /// Constant matrix from field entries, row major.
    pub fn m2_const(&self, entries: [[FieldElem; 2]; 2]) -> Mat2 {
        let mut m = self.m2_zero();
        for r in 0..2 {
            for c in 0..2 {
                m.e[r][c] = self.s_monomial(0, entries[r][c].clone());
            }
        }
        m
    }

    pub fn m2_mul(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        let mut out = self.m2_zero();
        for r in 0..2 {
            for c in 0..2 {
                let t0 = self.s_mul(&a.e[r][0], &b.e[0][c]);
                let t1 = self.s_mul(&a.e[r][1], &b.e[1][c]);
                out.e[r][c] = self.s_add(&t0, &t1);
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn m2_apply(&self, a: &Mat2, v: &[TruncSeries; 2]) -> [TruncSeries; 2] {
        [
            self.s_add(&self.s_mul(&a.e[0][0], &v[0]), &self.s_mul(&a.e[0][1], &v[1])),
            self.s_add(&self.s_mul(&a.e[1][0], &v[0]), &self.s_mul(&a.e[1][1], &v[1])),
        ]
    }

    /// Entrywise Frobenius substitution `u -> u^p`.
    pub fn m2_frobenius(&self, a: &Mat2) -> Mat2 {
        let mut out = self.m2_zero();
        for r in 0..2 {
            for c in 0..2 {
                out.e[r][c] = self.s_frobenius(&a.e[r][c]);
            }
        }
        out
    }

    pub fn m2_det(&self, a: &Mat2) -> TruncSeries {
        self.s_sub(
            &self.s_mul(&a.e[0][0], &a.e[1][1]),
            &self.s_mul(&a.e[0][1], &a.e[1][0]),
        )
    }

    /// Invertible over the series ring: the determinant is a unit, i.e. has
    /// nonzero constant term.
    pub fn m2_is_unit(&self, a: &Mat2) -> bool {
        !self.m2_det(a).coeff(0).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ArithCtx {
        ArithCtx::new(3, 1, 1, 2).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let c = ctx();
        let mut a = c.m2_identity();
        a.e[0][1] = c.s_monomial(2, c.f_gen());
        a.e[1][0] = c.s_one();
        let i = c.m2_identity();
        assert_eq!(c.m2_mul(&a, &i), a);
        assert_eq!(c.m2_mul(&i, &a), a);
    }

    #[test]
    fn determinant_is_multiplicative() {
        let c = ctx();
        let mut a = c.m2_identity();
        a.e[0][1] = c.s_monomial(1, c.f_one());
        let mut b = c.m2_diag(c.s_one(), c.s_monomial(2, c.f_from_u64(2)));
        b.e[1][0] = c.s_monomial(1, c.f_gen());
        let lhs = c.m2_det(&c.m2_mul(&a, &b));
        let rhs = c.s_mul(&c.m2_det(&a), &c.m2_det(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_check_reads_constant_term_of_det() {
        let c = ctx();
        assert!(c.m2_is_unit(&c.m2_identity()));
        let u_diag = c.m2_diag(c.s_one(), c.s_monomial(1, c.f_one()));
        assert!(!c.m2_is_unit(&u_diag));
    }

    #[test]
    fn frobenius_commutes_with_product() {
        let c = ctx();
        let mut a = c.m2_identity();
        a.e[0][1] = c.s_monomial(1, c.f_gen());
        let mut b = c.m2_identity();
        b.e[1][0] = c.s_monomial(2, c.f_from_u64(2));
        assert_eq!(
            c.m2_frobenius(&c.m2_mul(&a, &b)),
            c.m2_mul(&c.m2_frobenius(&a), &c.m2_frobenius(&b))
        );
    }
}
