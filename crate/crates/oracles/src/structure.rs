use algebra_core::{ArithCtx, FieldElem, TruncSeries};
use kisin_rank1::WeightParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Constant 2x2 matrix over the residue field.
pub type ConstMat = [[FieldElem; 2]; 2];
/// 2x2 matrix over truncated series.
pub type SeriesMat = [[TruncSeries; 2]; 2];

/// One draw of the rank-one divisibility experiment: an invertible series
/// matrix and a chain of invertible constant matrices per index, applied to
/// the Frobenius of a generator column, with the observed exact
/// u-divisibility of the resulting column recorded per index.
#[derive(Debug, Clone)]
pub struct StructureSample {
    x: Vec<SeriesMat>,
    z: Vec<Vec<ConstMat>>,
    v: FieldElem,
    w: FieldElem,
    observed: Vec<usize>,
}

fn det_of(ctx: &ArithCtx, m: &ConstMat) -> FieldElem {
    ctx.f_sub(
        &ctx.f_mul(&m[0][0], &m[1][1]),
        &ctx.f_mul(&m[0][1], &m[1][0]),
    )
}

fn series_const_det(ctx: &ArithCtx, m: &SeriesMat) -> FieldElem {
    let at0 = |s: &TruncSeries| s.coeff(0).clone();
    ctx.f_sub(
        &ctx.f_mul(&at0(&m[0][0]), &at0(&m[1][1])),
        &ctx.f_mul(&at0(&m[0][1]), &at0(&m[1][0])),
    )
}

impl StructureSample {
    /// Runs the chain for explicit matrix data. The matrices must be
    /// invertible (unit determinant at u = 0 for the series matrices) and
    /// the generator pair must contain a unit; the observed divisibility
    /// is asserted into [0, e-1] union [r_i, r_i+e-1] at every index.
    pub fn compute(
        ctx: &ArithCtx,
        x: Vec<SeriesMat>,
        z: Vec<Vec<ConstMat>>,
        v: FieldElem,
        w: FieldElem,
        r: &WeightParams,
    ) -> Self {
        let f = ctx.f();
        let e = ctx.e();
        assert_eq!(x.len(), f, "one series matrix per index");
        assert_eq!(z.len(), f, "one constant chain per index");
        for chain in &z {
            assert_eq!(chain.len(), e - 1, "one constant matrix per level");
            for m in chain {
                assert!(!det_of(ctx, m).is_zero(), "constant matrices are invertible");
            }
        }
        for m in &x {
            assert!(
                !series_const_det(ctx, m).is_zero(),
                "series matrices are invertible at u = 0"
            );
        }
        assert!(
            !(v.is_zero() && w.is_zero()),
            "the generator pair contains a unit"
        );

        let p = ctx.p() as u128;
        let phi_v = ctx.f_pow(&v, p);
        let phi_w = ctx.f_pow(&w, p);
        let observed: Vec<usize> = (0..f)
            .map(|i| {
                let mut a = ctx.s_monomial(0, phi_v.clone());
                let mut b = ctx.s_shift(&ctx.s_monomial(0, phi_w.clone()), r.r()[i]);
                for m in &z[i] {
                    let na = ctx.s_add(&ctx.s_scale(&m[0][0], &a), &ctx.s_scale(&m[0][1], &b));
                    let nb = ctx.s_add(&ctx.s_scale(&m[1][0], &a), &ctx.s_scale(&m[1][1], &b));
                    a = na;
                    b = ctx.s_shift(&nb, 1);
                }
                let xa = ctx.s_add(&ctx.s_mul(&x[i][0][0], &a), &ctx.s_mul(&x[i][0][1], &b));
                let xb = ctx.s_add(&ctx.s_mul(&x[i][1][0], &a), &ctx.s_mul(&x[i][1][1], &b));
                let val = [xa.u_valuation().finite(), xb.u_valuation().finite()]
                    .into_iter()
                    .flatten()
                    .min()
                    .expect("an invertible chain cannot annihilate a unit generator");
                let ri = r.r()[i];
                assert!(
                    val < e || (ri..ri + e).contains(&val),
                    "observed divisibility {val} escapes both degree boxes at index {i}"
                );
                val
            })
            .collect();
        StructureSample { x, z, v, w, observed }
    }

    pub fn observed(&self) -> &[usize] {
        &self.observed
    }

    pub fn x(&self) -> &[SeriesMat] {
        &self.x
    }

    pub fn z(&self) -> &[Vec<ConstMat>] {
        &self.z
    }

    pub fn v(&self) -> &FieldElem {
        &self.v
    }

    pub fn w(&self) -> &FieldElem {
        &self.w
    }
}

fn random_elem(ctx: &ArithCtx, rng: &mut ChaCha20Rng) -> FieldElem {
    let coords: Vec<u64> = (0..ctx.m()).map(|_| rng.gen_range(0..ctx.p())).collect();
    ctx.f_from_coords(&coords).expect("coordinates in range")
}

fn random_const_mat(ctx: &ArithCtx, rng: &mut ChaCha20Rng) -> ConstMat {
    loop {
        let m = [
            [random_elem(ctx, rng), random_elem(ctx, rng)],
            [random_elem(ctx, rng), random_elem(ctx, rng)],
        ];
        if !det_of(ctx, &m).is_zero() {
            return m;
        }
    }
}

fn random_series_mat(ctx: &ArithCtx, rng: &mut ChaCha20Rng) -> SeriesMat {
    let c = random_const_mat(ctx, rng);
    let mut entry = |cst: &FieldElem| {
        let mut s = ctx.s_monomial(0, cst.clone());
        // A few higher-order terms keep the matrix a genuine series while
        // staying invertible: the constant part already has unit det.
        for _ in 0..rng.gen_range(0..3) {
            let deg = rng.gen_range(1..2 * ctx.e() + 2);
            ctx.s_add_monomial(&mut s, deg, &random_elem(ctx, rng));
        }
        s
    };
    [
        [entry(&c[0][0]), entry(&c[0][1])],
        [entry(&c[1][0]), entry(&c[1][1])],
    ]
}

/// Draws one random experiment for the divisibility claim: random
/// invertible matrices, a random generator pair with a unit, and the chain
/// X_i (Lambda_{i,e-1} Z_{i,e-1}) ... (Lambda_{i,1} Z_{i,1}) Lambda_{i,0}
/// applied to the Frobenius of the generator, with Lambda_{i,0} =
/// diag(1, u^{r_i}) and Lambda_{ij} = diag(1, u). The observed exact
/// u-divisibility must land in [0, e-1] union [r_i, r_i+e-1].
pub fn sample_struct(ctx: &ArithCtx, r: &WeightParams, seed: u64) -> StructureSample {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let f = ctx.f();
    let e = ctx.e();
    let x: Vec<SeriesMat> = (0..f).map(|_| random_series_mat(ctx, &mut rng)).collect();
    let z: Vec<Vec<ConstMat>> = (0..f)
        .map(|_| (1..e).map(|_| random_const_mat(ctx, &mut rng)).collect())
        .collect();
    let (v, w) = loop {
        let v = random_elem(ctx, &mut rng);
        let w = random_elem(ctx, &mut rng);
        if !(v.is_zero() && w.is_zero()) {
            break (v, w);
        }
    };
    StructureSample::compute(ctx, x, z, v, w, r)
}
