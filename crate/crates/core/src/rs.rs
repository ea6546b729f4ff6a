//! Robinson–Schensted insertion under the integral partial order, left cells
//! and their minimal representatives.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::symgroup::Permutation;
use crate::tableaux::{Partition, Tableau};
use crate::weights::{self, Weight};

/// Largest `N` for which [`standard_tableaux`] enumerates.
pub const STANDARD_TABLEAUX_MAX_N: usize = 10;

/// Insert `a` into rows listed bottom up; returns the index of the row that
/// grew. The bumped entry is the leftmost `b > a`; incomparable entries are
/// passed over.
fn insert_rows(rows: &mut Vec<Vec<Rational>>, a: Rational) -> usize {
    let mut carry = a;
    for (r, row) in rows.iter_mut().enumerate() {
        match row.iter().position(|b| rational::int_gt(b, &carry)) {
            Some(k) => carry = std::mem::replace(&mut row[k], carry),
            None => {
                row.push(carry);
                return r;
            }
        }
    }
    rows.push(vec![carry]);
    rows.len() - 1
}

fn left_justified(rows: Vec<Vec<Rational>>) -> Tableau {
    Tableau::left_justified(rows).expect("insertion keeps a partition shape")
}

/// Insert `value` into a (left-justified) insertion tableau; `None` is the
/// empty tableau.
pub fn schensted_insert(state: Option<&Tableau>, value: &Rational) -> Tableau {
    let mut rows = state.map(|t| t.rows_bottom_up()).unwrap_or_default();
    insert_rows(&mut rows, value.clone());
    left_justified(rows)
}

/// The insertion tableau `Q(α)` of the coordinate sequence of `α`.
///
/// ```
/// use goldie::{rs::q_of_weight, tableaux::Tableau, weights::Weight};
/// let q = q_of_weight(&Weight::from_ints(&[3, 1, 2]));
/// assert_eq!(q, Tableau::from_int_rows(&[vec![1, 2], vec![3]]).unwrap());
/// ```
pub fn q_of_weight(alpha: &Weight) -> Tableau {
    let mut rows = Vec::new();
    for c in alpha.coords() {
        insert_rows(&mut rows, c.clone());
    }
    left_justified(rows)
}

/// The insertion and recording tableaux of a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RsPair {
    pub p: Tableau,
    pub q: Tableau,
    pub shape: Partition,
}

/// Insert `w(1), ..., w(N)`; `P` is the insertion tableau and `Q` records
/// where each new box appeared.
pub fn rs_pair(w: &Permutation) -> RsPair {
    let mut p_rows: Vec<Vec<Rational>> = Vec::new();
    let mut q_rows: Vec<Vec<Rational>> = Vec::new();
    for (k, v) in w.images().into_iter().enumerate() {
        let r = insert_rows(&mut p_rows, rational::int(v as i64));
        if r == q_rows.len() {
            q_rows.push(Vec::new());
        }
        q_rows[r].push(rational::int(k as i64 + 1));
    }
    let p = left_justified(p_rows);
    let q = left_justified(q_rows);
    let shape = p.pyramid().partition();
    RsPair { p, q, shape }
}

/// The recording tableau `Q(w)`, equal to `Q(w(-ρ))`.
pub fn recording_tableau(w: &Permutation) -> Tableau {
    rs_pair(w).q
}

pub fn same_left_cell(x: &Permutation, y: &Permutation) -> bool {
    x.n() == y.n() && recording_tableau(x) == recording_tableau(y)
}

/// The standard tableau with `1..N` placed up the columns, leftmost column first.
pub fn column_superstandard(lambda: &Partition) -> Tableau {
    let mut rows: Vec<Vec<Rational>> = lambda.parts().iter().map(|&p| Vec::with_capacity(p)).collect();
    let mut next = 1;
    for &h in lambda.transpose().parts() {
        for row in rows.iter_mut().take(h) {
            row.push(rational::int(next));
            next += 1;
        }
    }
    left_justified(rows)
}

pub fn is_minimal_in_cell(w: &Permutation) -> bool {
    let pair = rs_pair(w);
    pair.p == column_superstandard(&pair.shape)
}

/// The member of the left cell of `w` whose insertion tableau is column-superstandard.
pub fn minimal_cell_rep(w: &Permutation) -> Permutation {
    let q = recording_tableau(w);
    let p = column_superstandard(&q.pyramid().partition());
    inverse_rs(&p, &q).expect("standard tableaux of equal shape")
}

/// Reverse bumping: the permutation with insertion tableau `p` and recording
/// tableau `q`.
pub fn inverse_rs(p: &Tableau, q: &Tableau) -> Result<Permutation> {
    if p.pyramid() != q.pyramid() || !p.is_standard() || !q.is_standard() {
        return Err(Error::Domain("inverse RS needs two standard tableaux of one shape".into()));
    }
    let to_int = |rows: Vec<Vec<Rational>>| -> Vec<Vec<i64>> {
        rows.iter().map(|r| r.iter().map(|v| rational::to_i64(v).unwrap()).collect()).collect()
    };
    let mut p_rows = to_int(p.rows_bottom_up());
    let q_rows = to_int(q.rows_bottom_up());
    let n = p.n();
    let mut images = vec![0usize; n];
    for k in (1..=n as i64).rev() {
        let r = q_rows.iter().position(|row| row.contains(&k)).unwrap();
        let mut carry = p_rows[r].pop().unwrap();
        for row in p_rows[..r].iter_mut().rev() {
            let pos = row.iter().rposition(|&b| b < carry).unwrap();
            carry = std::mem::replace(&mut row[pos], carry);
        }
        images[k as usize - 1] = carry as usize;
    }
    Permutation::new(&images)
}

/// All standard tableaux of shape `λ`, ordered by the sequence of rows in
/// which `1, 2, ..., N` are placed (bottom row first).
pub fn standard_tableaux(lambda: &Partition) -> Result<Vec<Tableau>> {
    let n = lambda.n();
    if n > STANDARD_TABLEAUX_MAX_N {
        return Err(Error::Guard(format!(
            "standard tableaux enumerated only for N <= {STANDARD_TABLEAUX_MAX_N}, got {n}"
        )));
    }
    fn go(lambda: &[usize], rows: &mut Vec<Vec<Rational>>, next: i64, n: i64, out: &mut Vec<Tableau>) {
        if next > n {
            out.push(left_justified(rows.clone()));
            return;
        }
        for r in 0..lambda.len() {
            let len = rows[r].len();
            let fits = len < lambda[r] && (r == 0 || rows[r - 1].len() > len);
            if fits {
                rows[r].push(rational::int(next));
                go(lambda, rows, next + 1, n, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); lambda.parts().len()];
    go(lambda.parts(), &mut rows, 1, n as i64, &mut out);
    Ok(out)
}

/// `w(-ρ)`, whose coordinate `j` is `w^{-1}(j)`.
pub fn minus_rho_image(w: &Permutation) -> Weight {
    let minus_rho = Weight::from_ints(&(1..=w.n() as i64).collect::<Vec<_>>());
    weights::act(w, &minus_rho).expect("sizes match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::weights::{antidominant_conjugate, upper_closure_contains};
    use proptest::prelude::*;
    use std::collections::{HashMap, HashSet};

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v).unwrap()
    }

    fn t(rows: &[Vec<i64>]) -> Tableau {
        Tableau::from_int_rows(rows).unwrap()
    }

    #[test]
    fn insertion_examples() {
        let s = schensted_insert(None, &int(3));
        assert_eq!(s, t(&[vec![3]]));
        let s = schensted_insert(Some(&s), &int(1));
        assert_eq!(s, t(&[vec![1], vec![3]]));
        let s = schensted_insert(Some(&s), &int(2));
        assert_eq!(s, t(&[vec![1, 2], vec![3]]));
    }

    #[test]
    fn q_of_weight_examples() {
        assert_eq!(q_of_weight(&Weight::from_ints(&[1, 2, 3])), t(&[vec![1, 2, 3]]));
        assert_eq!(q_of_weight(&Weight::from_ints(&[3, 2, 1])), t(&[vec![1], vec![2], vec![3]]));
        assert_eq!(q_of_weight(&Weight::from_ints(&[3, 1, 2])), t(&[vec![1, 2], vec![3]]));
        let mixed = Weight::new(vec![frac(3, 2), int(1), frac(1, 2)]);
        let q = q_of_weight(&mixed);
        assert_eq!(q.rows_bottom_up(), vec![vec![frac(1, 2), int(1)], vec![frac(3, 2)]]);
    }

    #[test]
    fn rs_pair_examples() {
        let id = rs_pair(&Permutation::identity(3));
        assert_eq!(id.p, t(&[vec![1, 2, 3]]));
        assert_eq!(id.q, id.p);
        let s = rs_pair(&perm(&[2, 1]));
        assert_eq!(s.p, t(&[vec![1], vec![2]]));
        assert_eq!(s.q, s.p);
    }

    #[test]
    fn cell_examples() {
        let w = perm(&[2, 3, 1]);
        assert!(same_left_cell(&w, &w));
        assert!(!same_left_cell(&Permutation::identity(2), &Permutation::longest(2)));
        let (x, y) = (perm(&[2, 1, 3]), perm(&[2, 3, 1]));
        assert_eq!(recording_tableau(&x), t(&[vec![1, 3], vec![2]]));
        assert_eq!(recording_tableau(&y), t(&[vec![1, 2], vec![3]]));
        assert!(!same_left_cell(&x, &y));
        assert!(same_left_cell(&x, &perm(&[3, 1, 2])));
    }

    #[test]
    fn minimal_examples() {
        assert!(is_minimal_in_cell(&Permutation::identity(4)));
        assert!(is_minimal_in_cell(&perm(&[2, 1])));
        for w in Permutation::all(4) {
            let m = minimal_cell_rep(&w);
            assert!(is_minimal_in_cell(&m));
            assert!(same_left_cell(&w, &m));
            assert_eq!(minimal_cell_rep(&m), m);
        }
    }

    #[test]
    fn standard_tableaux_counts() {
        assert_eq!(standard_tableaux(&Partition::new(vec![4]).unwrap()).unwrap().len(), 1);
        assert_eq!(standard_tableaux(&Partition::new(vec![1, 1]).unwrap()).unwrap().len(), 1);
        assert_eq!(standard_tableaux(&Partition::new(vec![2, 1]).unwrap()).unwrap().len(), 2);
        assert_eq!(standard_tableaux(&Partition::new(vec![3, 2]).unwrap()).unwrap().len(), 5);
        assert!(standard_tableaux(&Partition::new(vec![11]).unwrap()).is_err());
        for tab in standard_tableaux(&Partition::new(vec![3, 2, 1]).unwrap()).unwrap() {
            assert!(tab.is_standard());
        }
    }

    #[test]
    fn bijection_and_symmetry() {
        for n in 1..=6 {
            let mut pairs = HashSet::new();
            for w in Permutation::all(n) {
                let pair = rs_pair(&w);
                assert!(pair.p.is_standard() && pair.q.is_standard());
                assert_eq!(pair.q, rs_pair(&w.inverse()).p);
                assert_eq!(pair.q, q_of_weight(&minus_rho_image(&w)));
                assert_eq!(inverse_rs(&pair.p, &pair.q).unwrap(), w);
                assert!(pairs.insert((format!("{:?}", pair.p), format!("{:?}", pair.q))));
            }
            let total: usize = Partition::all(n)
                .iter()
                .map(|l| standard_tableaux(l).unwrap().len().pow(2))
                .sum();
            assert_eq!(pairs.len(), total);
        }
    }

    #[test]
    fn one_minimal_member_per_cell() {
        for n in 1..=6 {
            let mut minimal_per_cell: HashMap<String, usize> = HashMap::new();
            for w in Permutation::all(n) {
                let key = format!("{:?}", recording_tableau(&w));
                let e = minimal_per_cell.entry(key).or_default();
                if is_minimal_in_cell(&w) {
                    *e += 1;
                }
            }
            assert!(minimal_per_cell.values().all(|&c| c == 1));
        }
    }

    /// For minimal `w` and integral `α` in the upper closure of its chamber,
    /// reading `Q(α)` down columns recovers `α`.
    #[test]
    fn minimal_reps_reproduce_weights() {
        for n in 1..=5usize {
            for code in 0..3usize.pow(n as u32) {
                let coords: Vec<i64> = (0..n).map(|k| ((code / 3usize.pow(k as u32)) % 3) as i64).collect();
                let alpha = Weight::from_ints(&coords);
                let (_, d) = antidominant_conjugate(&alpha).unwrap();
                assert!(upper_closure_contains(&d, &alpha));
                if is_minimal_in_cell(&d) {
                    assert_eq!(q_of_weight(&alpha).gamma(), alpha);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn mixed_coset_insertion_keeps_partition_shape(
            vals in prop::collection::vec((-3i64..4, 1i64..3), 1..9)
        ) {
            let alpha = Weight::new(vals.iter().map(|&(a, b)| frac(a, b)).collect());
            let q = q_of_weight(&alpha);
            prop_assert_eq!(q.n(), alpha.n());
            prop_assert!(find_strict(&q));
        }
    }

    fn find_strict(q: &Tableau) -> bool {
        crate::tableaux::find_row_equivalent(q, crate::tableaux::Predicate::ColumnStrict).is_some()
    }
}
