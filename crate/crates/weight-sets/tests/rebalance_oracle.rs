use algebra_core::ArithCtx;
use kisin_rank1::WeightParams;
use weight_sets::{rebalance, Rebalanced, WeightError};

fn ctx(p: u64, f: usize, e: usize, m: usize) -> ArithCtx {
    ArithCtx::new(p, f, e, m).unwrap()
}

/// Character code of a diagonal summand computed from first principles:
/// index i carries weight p^((2f - i) mod 2f), exponents are r + x on the
/// included slots and e - 1 - x elsewhere, all mod p^(2f) - 1.
fn summand_code(p: u128, f: usize, e: usize, ind: &[bool], x: &[usize], r: &[usize]) -> u128 {
    let modulus = p.pow(2 * f as u32) - 1;
    let mut code = 0u128;
    for i in 0..2 * f {
        let exp = if ind[i] {
            (r[i % f] + x[i]) as u128
        } else {
            (e - 1 - x[i]) as u128
        };
        let weight = p.pow(((2 * f - i) % (2 * f)) as u32) % modulus;
        code = (code + exp * weight) % modulus;
    }
    code
}

fn conjugate_code(p: u128, f: usize, code: u128) -> u128 {
    let modulus = p.pow(2 * f as u32) - 1;
    code * p.pow(f as u32) % modulus
}

/// Every balanced witness (one slot per conjugate pair, symmetric x)
/// whose summand code equals `target`.
fn brute_witnesses(
    p: u128,
    f: usize,
    e: usize,
    r: &[usize],
    target: u128,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut found = Vec::new();
    for mask in 0u32..1 << f {
        let mut ind = vec![false; 2 * f];
        for (i, slot) in ind.iter_mut().enumerate().take(f) {
            *slot = mask & (1 << i) != 0;
        }
        for i in 0..f {
            ind[i + f] = !ind[i];
        }
        let total = e.pow(f as u32);
        for pick in 0..total {
            let mut x = vec![0usize; 2 * f];
            let mut rest = pick;
            for i in 0..f {
                x[i] = rest % e;
                x[i + f] = x[i];
                rest /= e;
            }
            if summand_code(p, f, e, &ind, &x, r) == target {
                let j: Vec<usize> = (0..2 * f).filter(|&i| ind[i]).collect();
                found.push((j, x));
            }
        }
    }
    found
}

fn check_all_inputs(c: &ArithCtx, r_vec: &[usize]) {
    let p = c.p() as u128;
    let f = c.f();
    let e = c.e();
    let modulus = p.pow(2 * f as u32) - 1;
    let r = WeightParams::new(c, r_vec.to_vec()).unwrap();
    for mask in 0u32..1 << (2 * f) {
        let j: Vec<usize> = (0..2 * f).filter(|&i| mask & (1 << i) != 0).collect();
        let total = e.pow(2 * f as u32);
        for pick in 0..total {
            let mut x = vec![0usize; 2 * f];
            let mut rest = pick;
            for slot in x.iter_mut() {
                *slot = rest % e;
                rest /= e;
            }
            let mut ind = vec![false; 2 * f];
            for &i in &j {
                ind[i] = true;
            }
            let code = summand_code(p, f, e, &ind, &x, r_vec);
            let conj = conjugate_code(p, f, code);
            match rebalance(c, &j, &x, &r) {
                Ok(Rebalanced::Balanced(w)) => {
                    let mut w_ind = vec![false; 2 * f];
                    for &i in w.j() {
                        w_ind[i] = true;
                    }
                    let w_code = summand_code(p, f, e, &w_ind, w.x(), r_vec);
                    assert!(
                        w_code == code || w_code == conj,
                        "witness must present the input pair"
                    );
                    let hits = brute_witnesses(p, f, e, r_vec, w_code);
                    assert!(
                        hits.contains(&(w.j().to_vec(), w.x().to_vec())),
                        "witness must appear in the brute-force list"
                    );
                }
                Ok(Rebalanced::NiveauDegeneracy { code: reported }) => {
                    assert_eq!(reported as u128, code % modulus);
                    assert_eq!(conj, code, "degenerate summands are conjugation-fixed");
                }
                Err(WeightError::DeterminantObstruction { .. }) => {
                    assert!(
                        brute_witnesses(p, f, e, r_vec, code).is_empty(),
                        "determinant failure must rule out every balanced witness"
                    );
                }
                Err(err) => panic!("unexpected error {err:?}"),
            }
        }
    }
}

#[test]
fn rebalance_agrees_with_brute_force_over_all_small_inputs() {
    let c = ctx(3, 2, 2, 4);
    for r_vec in [[2, 2], [1, 2], [3, 1], [3, 3]] {
        check_all_inputs(&c, &r_vec);
    }
}

#[test]
fn rebalance_agrees_with_brute_force_at_a_larger_prime() {
    let c = ctx(5, 1, 2, 2);
    for r_vec in [[1], [2], [4], [5]] {
        check_all_inputs(&c, &r_vec);
    }
}

#[test]
fn balanced_outputs_satisfy_the_determinant_identity() {
    let c = ctx(3, 2, 2, 4);
    let p = 3u128;
    let modulus = p.pow(4) - 1;
    for r_vec in [[2, 2], [1, 3]] {
        let r = WeightParams::new(&c, r_vec.to_vec()).unwrap();
        let det: u128 = {
            // Determinant exponents r_i + e - 1 at every index of one orbit,
            // lifted to the quadratic ring: each index i and i + f carries
            // r_{i mod f} + e - 1.
            let mut code = 0u128;
            for i in 0..4usize {
                let exp = (r_vec[i % 2] + 1) as u128;
                code = (code + exp * p.pow(((4 - i) % 4) as u32)) % modulus;
            }
            code
        };
        for mask in 0u32..16 {
            let j: Vec<usize> = (0..4).filter(|&i| mask & (1 << i) != 0).collect();
            for pick in 0..16usize {
                let x = vec![pick % 2, (pick / 2) % 2, (pick / 4) % 2, pick / 8];
                if let Ok(Rebalanced::Balanced(w)) = rebalance(&c, &j, &x, &r) {
                    let mut ind = vec![false; 4];
                    for &i in w.j() {
                        ind[i] = true;
                    }
                    let a = summand_code(p, 2, 2, &ind, w.x(), &r_vec);
                    let b = conjugate_code(p, 2, a);
                    assert_eq!((a + b) % modulus, det, "witness pair multiplies to det");
                }
            }
        }
    }
}
