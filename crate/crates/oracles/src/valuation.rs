use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("level {ell} outside [1, {p}]")]
    BadLevel { ell: usize, p: u64 },
    #[error("expected {expected} level samples, got {got}")]
    BadSampleCount { expected: usize, got: usize },
    #[error("precision exhausted: need valuation capacity beyond {bound}, have {capacity}; raise the working precision")]
    PrecisionExhausted { bound: usize, capacity: usize },
}

/// A truncated element of the coefficient ring generated by u^p and
/// u^{ep}/p over the p-adic integers: a sum of terms
/// coeff * (u^p)^alpha * (u^{ep}/p)^beta.
#[derive(Debug, Clone, Default)]
pub struct SPrimeSample {
    pub terms: Vec<(usize, usize, u64)>,
}

impl SPrimeSample {
    /// The constant 1.
    pub fn one() -> Self {
        SPrimeSample {
            terms: vec![(0, 0, 1)],
        }
    }
}

/// A pi-adic valuation computed in the ramified ring. `Exact` values come
/// from nonzero residues and are precision-independent; `AtLeast` means
/// every residue vanished, so only a lower bound at the precision capacity
/// is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaylorValuation {
    Exact(i64),
    AtLeast(i64),
}

/// Element of Z_p(pi)[u] with pi^e = p, coefficients held mod p^M in the
/// basis 1, pi, ..., pi^{e-1}, with one global p-denominator exponent:
/// the represented value is (polynomial) / p^denom.
#[derive(Debug, Clone)]
pub struct RamifiedElem {
    /// coeffs[d][k] is the residue of the coefficient of u^d pi^k.
    coeffs: Vec<Vec<BigUint>>,
    denom: usize,
}

impl RamifiedElem {
    pub fn u_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn denom(&self) -> usize {
        self.denom
    }
}

fn p_valuation(mut n: BigUint, p: &BigUint) -> usize {
    let zero = BigUint::from(0u32);
    assert_ne!(n, zero);
    let mut v = 0;
    while &n % p == zero {
        n /= p;
        v += 1;
    }
    v
}

/// Multiply an e-coordinate pi-vector by pi: shift up one slot, and wrap
/// the top coordinate around as pi^e = p.
fn pi_mul(coords: &[BigUint], p: &BigUint, modulus: &BigUint) -> Vec<BigUint> {
    let e = coords.len();
    let mut out = vec![BigUint::from(0u32); e];
    out[0] = coords[e - 1].clone() * p % modulus;
    for k in 1..e {
        out[k] = coords[k - 1].clone();
    }
    out
}

/// Valuation of a pi-vector: min over nonzero residues of
/// e * v_p(residue) + basis index, or `AtLeast(e * m_prec)` when every
/// residue vanishes. Residue-based valuations below e * m_prec are exact
/// because any two lifts differ by a multiple of p^M.
fn vector_valuation(coords: &[BigUint], p: &BigUint, e: usize, m_prec: usize) -> TaylorValuation {
    let zero = BigUint::from(0u32);
    let mut best: Option<usize> = None;
    for (k, c) in coords.iter().enumerate() {
        if *c == zero {
            continue;
        }
        let v = e * p_valuation(c.clone(), p) + k;
        best = Some(best.map_or(v, |b| b.min(v)));
    }
    match best {
        Some(v) => TaylorValuation::Exact(v as i64),
        None => TaylorValuation::AtLeast((e * m_prec) as i64),
    }
}

/// The claimed lower bounds on v_pi(a_i) for i = 0, ..., p-1:
/// p + (ell-1)min(p,e) at i = 0 and p + e - i + (ell-1)min(p,e) for
/// i >= 1.
pub fn valuation_bounds(p: u64, e: usize, ell: usize) -> Vec<i64> {
    let base = (ell as i64 - 1) * (p.min(e as u64) as i64);
    (0..p as usize)
        .map(|i| {
            if i == 0 {
                p as i64 + base
            } else {
                p as i64 + e as i64 - i as i64 + base
            }
        })
        .collect()
}

/// Smallest comfortable working precision for the given samples: enough
/// that the valuation capacity e*(M - denom) clears every bound with
/// margin, so vanished residues are still conclusive.
pub fn sufficient_precision(p: u64, e: usize, ell: usize, zs: &[SPrimeSample]) -> usize {
    let denom = zs
        .iter()
        .flat_map(|z| z.terms.iter().map(|&(_, beta, _)| beta))
        .max()
        .unwrap_or(0);
    let max_bound = (p as usize + e).max(1) + (ell.saturating_sub(1)) * (p as usize).min(e);
    denom + max_bound.div_ceil(e) + 2
}

/// Builds y = sum over m of p^(ell-m) u^(pm) z_m as one ramified
/// polynomial with the shared denominator pulled out.
fn assemble(p: u64, e: usize, ell: usize, zs: &[SPrimeSample], m_prec: usize) -> RamifiedElem {
    let denom = zs
        .iter()
        .flat_map(|z| z.terms.iter().map(|&(_, beta, _)| beta))
        .max()
        .unwrap_or(0);
    let pb = BigUint::from(p);
    let modulus = pb.pow(m_prec as u32);
    let mut coeffs: Vec<Vec<BigUint>> = Vec::new();
    for (m, z) in zs.iter().enumerate() {
        let level = m + 1;
        for &(alpha, beta, coeff) in &z.terms {
            let deg = p as usize * (level + alpha + e * beta);
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, vec![BigUint::from(0u32); e]);
            }
            let pexp = (ell - level) + (denom - beta);
            let val = (BigUint::from(coeff) * pb.pow(pexp as u32)) % &modulus;
            coeffs[deg][0] = (coeffs[deg][0].clone() + val) % &modulus;
        }
    }
    if coeffs.is_empty() {
        coeffs.push(vec![BigUint::from(0u32); e]);
    }
    RamifiedElem { coeffs, denom }
}

/// Exact pi-adic valuations of the first p Taylor coefficients of y at
/// u = pi, where y = sum over m of p^(ell-m) u^(pm) z_m. Each coefficient
/// is the remainder of a synthetic division by (u - pi), computed in the
/// ramified ring at working precision `m_prec`; the reported values are
/// net of the sample denominator.
///
/// Coefficients are computed, and their valuations measured, in the full
/// ramified field itself rather than in any unramified subfield; callers
/// comparing against bounds stated for subfield coefficients should note
/// that this is the finer measurement.
pub fn taylor_valuations(
    p: u64,
    e: usize,
    ell: usize,
    zs: &[SPrimeSample],
    m_prec: usize,
) -> Result<Vec<TaylorValuation>, OracleError> {
    if ell == 0 || ell > p as usize {
        return Err(OracleError::BadLevel { ell, p });
    }
    if zs.len() != ell {
        return Err(OracleError::BadSampleCount {
            expected: ell,
            got: zs.len(),
        });
    }
    let elem = assemble(p, e, ell, zs, m_prec);
    let denom_shift = (e * elem.denom) as i64;
    let max_bound = valuation_bounds(p, e, ell)
        .into_iter()
        .max()
        .expect("p >= 3 gives a nonempty bound list");
    let capacity = (e * m_prec) as i64 - denom_shift;
    if capacity <= max_bound {
        return Err(OracleError::PrecisionExhausted {
            bound: max_bound as usize,
            capacity: capacity.max(0) as usize,
        });
    }

    let pb = BigUint::from(p);
    let modulus = pb.pow(m_prec as u32);
    let mut poly = elem.coeffs;
    let mut out = Vec::with_capacity(p as usize);
    for _ in 0..p {
        // Synthetic division by (u - pi): Horner from the top; the final
        // accumulator is the remainder, the intermediate ones the quotient.
        let mut acc = vec![BigUint::from(0u32); e];
        let mut quotient: Vec<Vec<BigUint>> = Vec::with_capacity(poly.len().saturating_sub(1));
        for c in poly.iter().rev() {
            let shifted = pi_mul(&acc, &pb, &modulus);
            acc = (0..e)
                .map(|k| (shifted[k].clone() + c[k].clone()) % &modulus)
                .collect();
            quotient.push(acc.clone());
        }
        let remainder = quotient.pop().unwrap_or_else(|| vec![BigUint::from(0u32); e]);
        quotient.reverse();
        let val = match vector_valuation(&remainder, &pb, e, m_prec) {
            TaylorValuation::Exact(v) => TaylorValuation::Exact(v - denom_shift),
            TaylorValuation::AtLeast(v) => TaylorValuation::AtLeast(v - denom_shift),
        };
        out.push(val);
        if quotient.is_empty() {
            quotient.push(vec![BigUint::from(0u32); e]);
        }
        poly = quotient;
    }
    Ok(out)
}

/// Checks both claimed bounds on the Taylor coefficients. `Ok(false)`
/// reports a genuine violation from an exact valuation; an inconclusive
/// vanished residue is a precision error, never a silent verdict.
pub fn check_taylor_valuations(
    p: u64,
    e: usize,
    ell: usize,
    zs: &[SPrimeSample],
    m_prec: usize,
) -> Result<bool, OracleError> {
    let vals = taylor_valuations(p, e, ell, zs, m_prec)?;
    let bounds = valuation_bounds(p, e, ell);
    for (val, bound) in vals.iter().zip(bounds.iter()) {
        match val {
            TaylorValuation::Exact(v) => {
                if v < bound {
                    return Ok(false);
                }
            }
            TaylorValuation::AtLeast(v) => {
                if v < bound {
                    return Err(OracleError::PrecisionExhausted {
                        bound: *bound as usize,
                        capacity: (*v).max(0) as usize,
                    });
                }
            }
        }
    }
    Ok(true)
}

/// Draws `ell` random coefficient-ring samples with bounded term data,
/// deterministically from the seed.
pub fn random_level_samples(
    seed: u64,
    ell: usize,
    max_alpha: usize,
    max_beta: usize,
    max_terms: usize,
) -> Vec<SPrimeSample> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..ell)
        .map(|_| {
            let count = rng.gen_range(1..=max_terms);
            let terms = (0..count)
                .map(|_| {
                    (
                        rng.gen_range(0..=max_alpha),
                        rng.gen_range(0..=max_beta),
                        rng.gen_range(0..1000u64),
                    )
                })
                .collect();
            SPrimeSample { terms }
        })
        .collect()
}
