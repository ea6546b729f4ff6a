//! Kazhdan–Lusztig polynomials of `S_N` and the decomposition numbers built
//! from them.

pub mod cache;
mod table;

pub use cache::{load_or_build, CacheStatus};
pub use table::{KlTable, UniPoly, MAX_TABLE_N};

use crate::error::{Error, Result};
use crate::tableaux::Tableau;
use crate::weights::{antidominant_conjugate, Weight};

/// `(L(α):M(β))` for integral `α`, `β` with a common anti-dominant conjugate
/// `δ`: the sum of `(L(d(α)):M(d(β) z))` over `z` in the stabilizer of `δ`.
pub fn singular_inv_mult(table: &KlTable, alpha: &Weight, beta: &Weight) -> Result<i64> {
    if !alpha.is_integral() || !beta.is_integral() {
        return Err(Error::Domain("singular_inv_mult needs integral weights".into()));
    }
    if alpha.n() != table.n() || beta.n() != table.n() {
        return Err(Error::Size(format!("weights must have {} coordinates", table.n())));
    }
    let (delta_a, x) = antidominant_conjugate(alpha)?;
    let (delta_b, y) = antidominant_conjugate(beta)?;
    if delta_a != delta_b {
        return Err(Error::Domain(format!(
            "{alpha} and {beta} have different anti-dominant conjugates {delta_a} and {delta_b}"
        )));
    }
    Ok(delta_a.stabilizer().elements().iter().map(|z| table.inv_mult(&x, &(&y * z))).sum())
}

/// `(L(A):M(B))` for integer-valued tableaux on one pyramid; zero unless the
/// contents agree.
pub fn tableau_inv_mult(table: &KlTable, a: &Tableau, b: &Tableau) -> Result<i64> {
    if a.pyramid() != b.pyramid() {
        return Err(Error::Size("tableaux live on different pyramids".into()));
    }
    let (ga, gb) = (a.gamma(), b.gamma());
    if !ga.is_integral() || !gb.is_integral() {
        return Err(Error::Domain("tableau_inv_mult needs integer entries".into()));
    }
    if a.content() != b.content() {
        return Ok(0);
    }
    singular_inv_mult(table, &ga, &gb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::{ParabolicShape, Permutation};
    use crate::tableaux::{enumerate_column_strict, Partition, Pyramid};
    use crate::weights::act;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v).unwrap()
    }

    #[test]
    fn unipoly_rendering() {
        assert_eq!(UniPoly::new(vec![1, 1]).to_string(), "1 + t");
        assert_eq!(UniPoly::new(vec![1, 0, 2, 0]).to_string(), "1 + 2*t^2");
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(UniPoly::new(vec![0, -1]).to_string(), "-t");
    }

    #[test]
    fn small_examples() {
        let t2 = KlTable::build(2).unwrap();
        let (e, s) = (Permutation::identity(2), perm(&[2, 1]));
        assert_eq!(t2.poly(&s, &s), &UniPoly::one());
        assert_eq!(t2.poly(&e, &s), &UniPoly::one());
        assert_eq!(t2.poly(&s, &e), &UniPoly::zero());
        // M(e) is the anti-dominant Verma module, hence simple
        assert_eq!(t2.mult(&e, &s), 0);
        assert_eq!(t2.mult(&s, &e), 1);
        assert_eq!(t2.mult(&s, &s), 1);
        assert_eq!(t2.inv_mult(&s, &e), -1);
        assert_eq!(t2.inv_mult(&e, &s), 0);
        assert_eq!(t2.inv_mult(&s, &s), 1);

        let t3 = KlTable::build(3).unwrap();
        for x in t3.perms() {
            for y in t3.perms() {
                let expected = if x.bruhat_leq(y) { UniPoly::one() } else { UniPoly::zero() };
                assert_eq!(t3.poly(x, y), &expected);
            }
        }
        assert!(matches!(KlTable::build(8), Err(Error::Guard(_))));
    }

    #[test]
    fn s4_singular_polynomials() {
        let t = KlTable::build(4).unwrap();
        let e = Permutation::identity(4);
        assert_eq!(t.poly(&e, &perm(&[3, 4, 1, 2])), &UniPoly::new(vec![1, 1]));
        assert_eq!(t.poly(&e, &perm(&[4, 2, 3, 1])), &UniPoly::new(vec![1, 1]));
        assert_eq!(t.poly(&e, &Permutation::longest(4)), &UniPoly::one());
    }

    #[test]
    fn structural_properties() {
        for n in 1..=5 {
            let t = KlTable::build(n).unwrap();
            for x in t.perms() {
                for y in t.perms() {
                    let p = t.poly(x, y);
                    assert_eq!(p.is_zero(), !x.bruhat_leq(y));
                    assert_eq!(p, t.poly(&x.inverse(), &y.inverse()));
                    if !p.is_zero() {
                        assert_eq!(p.coeff(0), 1);
                        assert!(p.coeffs().iter().all(|&c| c >= 0));
                        if x != y {
                            assert!(2 * p.degree().unwrap() < y.length() - x.length());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parallel_equals_sequential() {
        for n in 1..=5 {
            assert_eq!(KlTable::build(n).unwrap(), KlTable::build_sequential(n).unwrap());
        }
    }

    #[test]
    fn decomposition_matrices_are_inverse() {
        for n in 1..=4 {
            let t = KlTable::build(n).unwrap();
            let w = t.perms();
            for x in w {
                for z in w {
                    let s: i64 = w.iter().map(|y| t.mult(x, y) * t.inv_mult(y, z)).sum();
                    assert_eq!(s, i64::from(x == z));
                }
            }
        }
    }

    /// Invert the matrix `[M(α):L(β)]` over the orbit of a singular `δ` by
    /// exact Gaussian elimination and compare with the stabilizer sum.
    fn check_singular_block(t: &KlTable, delta: &Weight) {
        let n = delta.n();
        let reps = delta.stabilizer().min_coset_reps(n).unwrap();
        let orbit: Vec<Weight> = reps.iter().map(|x| act(x, delta).unwrap()).collect();
        let m = orbit.len();
        let mut a: Vec<Vec<BigRational>> = reps
            .iter()
            .map(|x| reps.iter().map(|y| BigRational::from_integer(t.mult(x, y).into())).collect())
            .collect();
        let mut inv: Vec<Vec<BigRational>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        for col in 0..m {
            let piv = (col..m).find(|&r| !a[r][col].is_zero()).unwrap();
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col].clone();
            for k in 0..m {
                a[col][k] = &a[col][k] / &p;
                inv[col][k] = &inv[col][k] / &p;
            }
            for r in 0..m {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for k in 0..m {
                        let (ak, ik) = (&a[col][k] * &f, &inv[col][k] * &f);
                        a[r][k] -= ak;
                        inv[r][k] -= ik;
                    }
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                let got = singular_inv_mult(t, &orbit[i], &orbit[j]).unwrap();
                assert_eq!(BigRational::from_integer(got.into()), inv[i][j], "{} {}", orbit[i], orbit[j]);
            }
        }
    }

    #[test]
    fn singular_sums_invert_the_singular_block() {
        let t3 = KlTable::build(3).unwrap();
        check_singular_block(&t3, &Weight::from_ints(&[1, 1, 2]));
        check_singular_block(&t3, &Weight::from_ints(&[1, 2, 3]));
        let t4 = KlTable::build(4).unwrap();
        for d in [[1, 1, 2, 3], [1, 2, 2, 3], [1, 1, 2, 2], [1, 1, 1, 2], [0, 0, 0, 0]] {
            check_singular_block(&t4, &Weight::from_ints(&d));
        }
    }

    #[test]
    fn singular_examples() {
        let t = KlTable::build(3).unwrap();
        let delta = Weight::from_ints(&[1, 1, 2]);
        assert_eq!(singular_inv_mult(&t, &delta, &delta).unwrap(), 1);
        let regular = Weight::from_ints(&[3, 1, 2]);
        let (_, d) = antidominant_conjugate(&regular).unwrap();
        assert_eq!(singular_inv_mult(&t, &regular, &regular).unwrap(), t.inv_mult(&d, &d));
        assert!(matches!(
            singular_inv_mult(&t, &delta, &Weight::from_ints(&[1, 2, 2])),
            Err(Error::Domain(_))
        ));
        assert!(ParabolicShape::new(vec![2, 1]).unwrap().contains(&perm(&[2, 1, 3])));
    }

    #[test]
    fn tableau_block_inverts() {
        let t = KlTable::build(3).unwrap();
        let hook = Pyramid::left_justified(&Partition::new(vec![2, 1]).unwrap());
        let content = [1, 2, 3].map(crate::rational::int);
        let tabs = enumerate_column_strict(&hook, &content).unwrap();
        assert_eq!(tabs.len(), 3);
        for a in &tabs {
            assert_eq!(tableau_inv_mult(&t, a, a).unwrap(), 1);
        }
        let other = Tableau::from_int_rows(&[vec![1, 4], vec![2]]).unwrap();
        assert_eq!(tableau_inv_mult(&t, &tabs[0], &other).unwrap(), 0);
        // [M(B):L(C)] for standard modules of the column stabilizer is the
        // alternating sum of Verma multiplicities over that stabilizer; the
        // (L:M) matrix must invert it.
        let stab = ParabolicShape::new(hook.column_heights().to_vec()).unwrap().elements();
        let standard_mult = |b: &Tableau, c: &Tableau| -> i64 {
            let (_, y) = antidominant_conjugate(&c.gamma()).unwrap();
            stab.iter()
                .map(|x| {
                    let sign = if x.length() % 2 == 0 { 1 } else { -1 };
                    let (_, xb) = antidominant_conjugate(&act(x, &b.gamma()).unwrap()).unwrap();
                    sign * t.mult(&xb, &y)
                })
                .sum()
        };
        for a in &tabs {
            for c in &tabs {
                let s: i64 =
                    tabs.iter().map(|b| tableau_inv_mult(&t, a, b).unwrap() * standard_mult(b, c)).sum();
                assert_eq!(s, i64::from(a == c));
            }
        }
    }
}
