use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::rs::q_of_weight;
use crate::weights::Weight;

use super::{find_row_equivalent, Predicate, Pyramid, Tableau};

/// `Q(α)` with each row slid into the corresponding row of `π`.
pub fn q_pi(alpha: &Weight, pi: &Pyramid) -> Result<Tableau> {
    let q = q_of_weight(alpha);
    let (shape_q, shape_pi) = (q.pyramid().partition(), pi.partition());
    if shape_q != shape_pi {
        return Err(Error::Domain(format!(
            "Q(α) has shape {:?} but the pyramid has shape {:?}",
            shape_q.parts(),
            shape_pi.parts()
        )));
    }
    Tableau::new(pi.clone(), q.rows().to_vec())
}

/// Column-strict with `Q(γ(A))` of the pyramid's shape.
pub fn is_semi_standard(a: &Tableau) -> bool {
    a.is_column_strict() && q_of_weight(&a.gamma()).pyramid().partition() == a.pyramid().partition()
}

/// Whether `b` arises from `a` by repeatedly swapping two columns of equal
/// height whose entries lie in different cosets.
///
/// Within one height class, think of the columns as tokens; two tokens may
/// trade places when their coset sets are disjoint. Swaps along the edges of
/// a connected token graph generate every permutation of its tokens, so each
/// component can be rearranged freely over the positions it occupies.
pub fn is_parallel(a: &Tableau, b: &Tableau) -> bool {
    if a.pyramid() != b.pyramid() {
        return false;
    }
    let pi = a.pyramid();
    let (cols_a, cols_b) = (a.columns(), b.columns());
    let mut by_height: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (j, &h) in pi.column_heights().iter().enumerate() {
        by_height.entry(h).or_default().push(j);
    }
    for positions in by_height.values() {
        let cosets: Vec<Vec<Rational>> = positions
            .iter()
            .map(|&j| {
                let mut c: Vec<Rational> = cols_a[j].iter().map(rational::coset_rep).collect();
                c.sort();
                c.dedup();
                c
            })
            .collect();
        let m = positions.len();
        let mut comp: Vec<usize> = (0..m).collect();
        fn root(comp: &mut [usize], mut x: usize) -> usize {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        }
        for x in 0..m {
            for y in x + 1..m {
                if cosets[x].iter().all(|c| !cosets[y].contains(c)) {
                    let (rx, ry) = (root(&mut comp, x), root(&mut comp, y));
                    comp[rx] = ry;
                }
            }
        }
        type Rows<'a> = Vec<&'a Vec<Rational>>;
        let mut groups: BTreeMap<usize, (Rows, Rows)> = BTreeMap::new();
        for k in 0..m {
            let r = root(&mut comp, k);
            let g = groups.entry(r).or_default();
            g.0.push(&cols_a[positions[k]]);
            g.1.push(&cols_b[positions[k]]);
        }
        for (mut from_a, mut from_b) in groups.into_values() {
            from_a.sort();
            from_b.sort();
            if from_a != from_b {
                return false;
            }
        }
    }
    true
}

/// The column-strict representative (first in search order) of the row
/// class of `Q_π(γ(A))`.
pub fn rect_map(a: &Tableau) -> Result<Tableau> {
    if !is_semi_standard(a) {
        return Err(Error::Precondition("rect_map needs a semi-standard tableau".into()));
    }
    let q = q_pi(&a.gamma(), a.pyramid())?;
    find_row_equivalent(&q, Predicate::ColumnStrict).ok_or_else(|| {
        Error::InternalConsistency(format!("Q_π(γ(A)) has no column-strict rearrangement for {a:?}"))
    })
}

/// Split a column-strict tableau into one tableau per coset of its entries,
/// keeping the original column order inside each part. Parts are ordered by
/// coset representative.
pub fn dimred_split(a: &Tableau) -> Result<Vec<Tableau>> {
    if !a.is_column_strict() {
        return Err(Error::Precondition("dimred_split needs a column-strict tableau".into()));
    }
    let mut groups: BTreeMap<Rational, Vec<Vec<Rational>>> = BTreeMap::new();
    for column in a.columns() {
        let rep = rational::coset_rep(&column[0]);
        if column.iter().any(|v| rational::coset_rep(v) != rep) {
            return Err(Error::InternalConsistency("a column mixes cosets".into()));
        }
        groups.entry(rep).or_default().push(column);
    }
    groups
        .into_values()
        .map(|columns| {
            let heights: Vec<usize> = columns.iter().map(|c| c.len()).collect();
            let pyramid = Pyramid::from_column_heights(&heights)?;
            let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); pyramid.n_rows()];
            for (j, column) in columns.iter().enumerate() {
                for (r, v) in pyramid.column_rows(j + 1).zip(column) {
                    rows[r - 1].push(v.clone());
                }
            }
            Tableau::new(pyramid, rows)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::tableaux::{enumerate_column_strict, Partition};
    use std::collections::{HashSet, VecDeque};

    fn eg_pyramid() -> Pyramid {
        Pyramid::new(vec![1, 2, 3], vec![vec![0, 0, 1], vec![1, 0, 1], vec![1, 0, 0]]).unwrap()
    }

    #[test]
    fn q_pi_examples() {
        let col = Pyramid::single_column(2);
        assert_eq!(
            q_pi(&Weight::from_ints(&[2, 1]), &col).unwrap(),
            Tableau::from_int_rows(&[vec![1], vec![2]]).unwrap()
        );
        let row = Pyramid::single_row(2);
        assert_eq!(
            q_pi(&Weight::from_ints(&[1, 2]), &row).unwrap(),
            Tableau::from_int_rows(&[vec![1, 2]]).unwrap()
        );
        assert!(matches!(q_pi(&Weight::from_ints(&[1, 2]), &col), Err(Error::Domain(_))));
    }

    /// The six-box pyramid with rows in columns {2}, {1,2}, {1,2,3}: the
    /// semi-standard tableaux with content 1,2,3,3,4,4 are exactly three.
    #[test]
    fn semi_standard_on_staircase() {
        let p = eg_pyramid();
        let content: Vec<Rational> = [1, 2, 3, 3, 4, 4].into_iter().map(int).collect();
        let semi: Vec<Tableau> = enumerate_column_strict(&p, &content)
            .unwrap()
            .into_iter()
            .filter(is_semi_standard)
            .collect();
        let expected = [
            Tableau::on_pyramid(p.clone(), &[vec![2, 1, 4], vec![3, 3], vec![4]]).unwrap(),
            Tableau::on_pyramid(p.clone(), &[vec![2, 1, 3], vec![4, 3], vec![4]]).unwrap(),
            Tableau::on_pyramid(p.clone(), &[vec![1, 2, 4], vec![3, 3], vec![4]]).unwrap(),
        ];
        for e in &expected {
            assert!(semi.contains(e), "{e:?}");
        }
        // A fourth one, bottom [1,2,3] / [4,3] / [4], also satisfies the
        // definition: its insertion tableau has shape (3,2,1).
        let fourth = Tableau::on_pyramid(p.clone(), &[vec![1, 2, 3], vec![4, 3], vec![4]]).unwrap();
        assert!(semi.contains(&fourth));
        assert_eq!(semi.len(), 4);
        // parallel classes are singletons here (one coset), and they biject
        // with row classes of column-strict tableaux
        let mut classes: Vec<Tableau> = enumerate_column_strict(&p, &content)
            .unwrap()
            .iter()
            .map(|a| a.canonical_row_form())
            .collect();
        classes.sort_by_key(|a| format!("{a:?}"));
        classes.dedup();
        assert_eq!(classes.len(), semi.len());
        let mut images: Vec<Tableau> =
            semi.iter().map(|a| rect_map(a).unwrap().canonical_row_form()).collect();
        images.sort_by_key(|a| format!("{a:?}"));
        assert_eq!(images, classes);
        let q_rows = [
            [vec![1, 3, 4], vec![2, 4], vec![3]],
            [vec![3, 1, 3], vec![4, 2], vec![4]],
            [vec![1, 2, 4], vec![3, 3], vec![4]],
        ];
        for (a, rows) in expected.iter().zip(q_rows) {
            let displayed = Tableau::on_pyramid(p.clone(), &rows).unwrap();
            let r = rect_map(a).unwrap();
            assert!(r.is_column_strict());
            assert!(r.row_equivalent(&displayed).unwrap());
            assert!(q_pi(&a.gamma(), &p).unwrap().row_equivalent(&displayed).unwrap());
        }
    }

    #[test]
    fn left_justified_semi_standard_is_strict_and_row_standard() {
        for n in 1..=6 {
            for lambda in Partition::all(n) {
                let p = Pyramid::left_justified(&lambda);
                // all fillings by entries 1..4 with the right multiplicities
                let mut contents = vec![vec![]];
                for _ in 0..n {
                    contents = contents
                        .into_iter()
                        .flat_map(|c: Vec<i64>| {
                            let last = c.last().copied().unwrap_or(1);
                            (last..=4).map(move |v| {
                                let mut c = c.clone();
                                c.push(v);
                                c
                            })
                        })
                        .collect();
                }
                for content in contents {
                    let content: Vec<Rational> = content.into_iter().map(int).collect();
                    for a in enumerate_column_strict(&p, &content).unwrap() {
                        assert_eq!(is_semi_standard(&a), a.is_row_standard(), "{a:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn rect_map_requires_semi_standard() {
        let a = Tableau::from_int_rows(&[vec![3, 1], vec![2]]).unwrap();
        assert!(matches!(rect_map(&a), Err(Error::Precondition(_))));
        let b = Tableau::from_int_rows(&[vec![1, 3], vec![2]]).unwrap();
        assert_eq!(rect_map(&b).unwrap(), b);
    }

    fn parallel_by_bfs(a: &Tableau, b: &Tableau) -> bool {
        let heights = a.pyramid().column_heights().to_vec();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([a.columns()]);
        seen.insert(a.columns());
        let target = b.columns();
        while let Some(cols) = queue.pop_front() {
            if cols == target {
                return true;
            }
            for x in 0..cols.len() {
                for y in x + 1..cols.len() {
                    if heights[x] != heights[y] {
                        continue;
                    }
                    let disjoint = cols[x]
                        .iter()
                        .all(|u| cols[y].iter().all(|v| !rational::same_coset(u, v)));
                    if disjoint {
                        let mut next = cols.clone();
                        next.swap(x, y);
                        if seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn parallel_matches_bfs() {
        let p = Pyramid::single_row(4);
        let pool = [int(1), int(2), frac(1, 2), frac(1, 3)];
        let mut fillings = Vec::new();
        for code in 0..4usize.pow(4) {
            let row: Vec<Rational> = (0..4).map(|k| pool[(code / 4usize.pow(k)) % 4].clone()).collect();
            fillings.push(Tableau::new(p.clone(), vec![row]).unwrap());
        }
        for a in fillings.iter().step_by(3) {
            for b in &fillings {
                assert_eq!(is_parallel(a, b), parallel_by_bfs(a, b), "{a:?} {b:?}");
            }
        }
        let two = Pyramid::from_column_heights(&[2, 2, 1]).unwrap();
        let a = Tableau::new(two.clone(), vec![vec![int(2), frac(3, 2)], vec![int(1), frac(1, 2), int(5)]]).unwrap();
        let b = Tableau::new(two, vec![vec![frac(3, 2), int(2)], vec![frac(1, 2), int(1), int(5)]]).unwrap();
        assert!(is_parallel(&a, &b));
        assert!(parallel_by_bfs(&a, &b));
    }

    #[test]
    fn dimred_examples() {
        let a = Tableau::from_int_rows(&[vec![1, 3], vec![2]]).unwrap();
        assert_eq!(dimred_split(&a).unwrap(), vec![a.clone()]);
        let mixed = Tableau::left_justified(vec![vec![int(1), frac(1, 2)], vec![int(2)]]).unwrap();
        let parts = dimred_split(&mixed).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], Tableau::from_int_rows(&[vec![1], vec![2]]).unwrap());
        let three = Tableau::left_justified(vec![
            vec![int(1), frac(1, 2), int(4)],
            vec![int(2), frac(3, 2), int(5)],
        ])
        .unwrap();
        let parts = dimred_split(&three).unwrap();
        assert_eq!(parts[0], Tableau::from_int_rows(&[vec![1, 4], vec![2, 5]]).unwrap());
        assert_eq!(parts[1].columns(), vec![vec![frac(3, 2), frac(1, 2)]]);
        assert!(dimred_split(&Tableau::from_int_rows(&[vec![2], vec![1]]).unwrap()).is_err());
    }
}
