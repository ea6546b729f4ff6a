use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::weights::Weight;

use super::{Partition, Pyramid};

/// A filling of a pyramid by rational numbers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    pyramid: Pyramid,
    // rows top to bottom, each left to right
    rows: Vec<Vec<Rational>>,
}

impl Tableau {
    /// Rows listed top to bottom, matching the pyramid's row indexing.
    pub fn new(pyramid: Pyramid, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.len() != pyramid.n_rows() {
            return Err(Error::Size(format!(
                "{} rows supplied for a pyramid with {} rows",
                rows.len(),
                pyramid.n_rows()
            )));
        }
        for (i, (row, &p)) in rows.iter().zip(pyramid.row_lengths()).enumerate() {
            if row.len() != p {
                return Err(Error::Size(format!(
                    "row {} has {} entries, the pyramid expects {p}",
                    i + 1,
                    row.len()
                )));
            }
        }
        Ok(Tableau { pyramid, rows })
    }

    pub fn from_rows_bottom_up(pyramid: Pyramid, mut rows: Vec<Vec<Rational>>) -> Result<Self> {
        rows.reverse();
        Tableau::new(pyramid, rows)
    }

    /// A left-justified tableau; rows listed from the bottom row up.
    pub fn left_justified(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let lambda = Partition::new(rows.iter().map(|r| r.len()).collect())?;
        Tableau::from_rows_bottom_up(Pyramid::left_justified(&lambda), rows)
    }

    /// Integer-valued left-justified tableau, rows from the bottom up.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Tableau::left_justified(int_rows(rows))
    }

    /// Integer-valued tableau on a given pyramid, rows from the bottom up.
    pub fn on_pyramid(pyramid: Pyramid, rows: &[Vec<i64>]) -> Result<Self> {
        Tableau::from_rows_bottom_up(pyramid, int_rows(rows))
    }

    /// Inverse of [`Tableau::gamma`]: place coordinate `k` in box `k`.
    pub fn from_gamma(pyramid: Pyramid, alpha: &Weight) -> Result<Self> {
        if alpha.n() != pyramid.n() {
            return Err(Error::Size(format!(
                "weight has {} coordinates, pyramid has {} boxes",
                alpha.n(),
                pyramid.n()
            )));
        }
        let mut rows: Vec<Vec<Rational>> =
            pyramid.row_lengths().iter().map(|&p| Vec::with_capacity(p)).collect();
        // boxes of a row are visited left to right when walking columns in order
        for k in 1..=pyramid.n() {
            rows[pyramid.row(k) - 1].push(alpha.x(k).clone());
        }
        Ok(Tableau { pyramid, rows })
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.pyramid
    }

    pub fn n(&self) -> usize {
        self.pyramid.n()
    }

    /// Rows top to bottom.
    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn rows_bottom_up(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().rev().cloned().collect()
    }

    /// Entry at `(row, col)`, 1-based, rows counted from the top.
    pub fn entry(&self, row: usize, col: usize) -> Option<&Rational> {
        self.pyramid.box_at(row, col)?;
        let (start, _) = self.pyramid.row_span(row);
        Some(&self.rows[row - 1][col - start])
    }

    /// Entries of column `col`, top to bottom.
    pub fn column(&self, col: usize) -> Vec<Rational> {
        self.pyramid.column_rows(col).map(|r| self.entry(r, col).unwrap().clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (1..=self.pyramid.level()).map(|c| self.column(c)).collect()
    }

    /// Column reading: down each column, leftmost column first.
    pub fn gamma(&self) -> Weight {
        Weight::new(self.columns().into_iter().flatten().collect())
    }

    /// All entries, sorted.
    pub fn content(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.rows.iter().flatten().cloned().collect();
        v.sort();
        v
    }

    pub(crate) fn with_rows(&self, rows: Vec<Vec<Rational>>) -> Tableau {
        debug_assert!(rows.iter().map(|r| r.len()).eq(self.pyramid.row_lengths().iter().copied()));
        Tableau { pyramid: self.pyramid.clone(), rows }
    }

    /// Repeatedly exchange in-row pairs `a > b` with `a` left of `b`. The
    /// fixpoint sorts each coset's entries within the positions that coset
    /// occupies.
    pub fn row_standardize(&self) -> Tableau {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = row.clone();
                let mut reps: Vec<Rational> = row.iter().map(rational::coset_rep).collect();
                reps.sort();
                reps.dedup();
                for rep in reps {
                    let positions: Vec<usize> =
                        (0..row.len()).filter(|&k| rational::coset_rep(&row[k]) == rep).collect();
                    let mut vals: Vec<Rational> = positions.iter().map(|&k| row[k].clone()).collect();
                    vals.sort();
                    for (k, v) in positions.into_iter().zip(vals) {
                        out[k] = v;
                    }
                }
                out
            })
            .collect();
        self.with_rows(rows)
    }

    pub fn is_row_standard(&self) -> bool {
        self.rows.iter().all(|row| {
            (0..row.len()).all(|a| (a + 1..row.len()).all(|b| !rational::int_gt(&row[a], &row[b])))
        })
    }

    /// Row-standardize, then read along rows starting with the top row.
    pub fn rho_read(&self) -> Weight {
        Weight::new(self.row_standardize().rows.into_iter().flatten().collect())
    }

    /// Pairs (above, below) of vertically adjacent entries.
    fn vertical_pairs(&self) -> impl Iterator<Item = (&Rational, &Rational)> + '_ {
        (1..self.pyramid.n_rows()).flat_map(move |r| {
            let (a, b) = self.pyramid.row_span(r);
            (a..=b).map(move |c| (self.entry(r, c).unwrap(), self.entry(r + 1, c).unwrap()))
        })
    }

    pub fn is_column_strict(&self) -> bool {
        self.vertical_pairs().all(|(above, below)| rational::int_gt(above, below))
    }

    pub fn is_column_connected(&self) -> bool {
        let one = rational::int(1);
        self.vertical_pairs().all(|(above, below)| above - below == one)
    }

    pub fn is_column_separated(&self) -> bool {
        if !self.is_column_strict() {
            return false;
        }
        let cols = self.columns();
        for a in 0..cols.len() {
            for b in a + 1..cols.len() {
                if columns_linked(&cols[a], &cols[b]) {
                    return false;
                }
            }
        }
        true
    }

    /// Entries are `1..N`, increasing up columns and along rows.
    pub fn is_standard(&self) -> bool {
        let mut content: Vec<Option<i64>> = self.content().iter().map(rational::to_i64).collect();
        content.sort();
        if !content.into_iter().eq((1..=self.n() as i64).map(Some)) {
            return false;
        }
        self.is_column_strict() && self.rows.iter().all(|row| row.windows(2).all(|w| w[0] < w[1]))
    }

    /// Each row sorted by coset representative, then value.
    pub fn canonical_row_form(&self) -> Tableau {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.sort_by(rational::canonical_cmp);
                r
            })
            .collect();
        self.with_rows(rows)
    }

    /// Equal row multisets on the same pyramid.
    pub fn row_equivalent(&self, other: &Tableau) -> Result<bool> {
        if self.pyramid != other.pyramid {
            return Err(Error::Size("row equivalence needs tableaux on the same pyramid".into()));
        }
        Ok(self.canonical_row_form().rows == other.canonical_row_form().rows)
    }

    /// The same rows on the left-justified pyramid.
    pub fn left_justify(&self) -> Tableau {
        Tableau { pyramid: self.pyramid.left_justify(), rows: self.rows.clone() }
    }

    /// Reverse the column order, moving to the transposed pyramid.
    pub fn transpose_pyramid(&self) -> Tableau {
        let rows = self.rows.iter().map(|r| r.iter().rev().cloned().collect()).collect();
        Tableau { pyramid: self.pyramid.transpose(), rows }
    }
}

fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&v| rational::int(v)).collect()).collect()
}

/// The linking condition between two columns with entry sets `I` and `J`.
pub(crate) fn columns_linked(i_set: &[Rational], j_set: &[Rational]) -> bool {
    let (i_set, j_set) =
        if i_set.len() >= j_set.len() { (i_set, j_set) } else { (j_set, i_set) };
    let only_i: Vec<&Rational> = i_set.iter().filter(|x| !j_set.contains(x)).collect();
    let only_j: Vec<&Rational> = j_set.iter().filter(|x| !i_set.contains(x)).collect();
    let gt = |a: &Rational, b: &Rational| rational::int_gt(a, b);
    if i_set.len() > j_set.len() {
        // i > j > i'
        return only_j
            .iter()
            .any(|j| only_i.iter().any(|i| gt(i, j)) && only_i.iter().any(|i2| gt(j, i2)));
    }
    // equal sizes: i > j > i' > j' or j > i > j' > i'
    let chain = |xs: &[&Rational], ys: &[&Rational]| {
        xs.iter().any(|x| {
            ys.iter().any(|y| {
                gt(x, y)
                    && xs.iter().any(|x2| gt(y, x2) && ys.iter().any(|y2| gt(x2, y2)))
            })
        })
    };
    chain(&only_i, &only_j) || chain(&only_j, &only_i)
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows_bottom_up()
            .iter()
            .map(|r| r.iter().map(rational::format).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "Tableau[{}; {:?}]", rows.join(" / "), self.pyramid.shift_matrix())
    }
}

/// Rows drawn top to bottom, each shifted to its starting column.
impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(rational::format).collect()).collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            let (start, _) = self.pyramid.row_span(i + 1);
            let mut line = " ".repeat((start - 1) * (width + 1));
            line.push_str(
                &row.iter().map(|s| format!("{s:>width$}")).collect::<Vec<_>>().join(" "),
            );
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TableauOut<'a> {
    shape: &'a Pyramid,
    #[serde(with = "rational::serde_rows")]
    rows_bottom_up: Vec<Vec<Rational>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TableauIn {
    Shape {
        shape: Pyramid,
        #[serde(with = "rational::serde_rows")]
        rows_bottom_up: Vec<Vec<Rational>>,
    },
    Partition {
        partition: Partition,
        #[serde(with = "rational::serde_rows")]
        rows_bottom_up: Vec<Vec<Rational>>,
    },
}

impl Serialize for Tableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableauOut { shape: &self.pyramid, rows_bottom_up: self.rows_bottom_up() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = match TableauIn::deserialize(d)? {
            TableauIn::Shape { shape, rows_bottom_up } => {
                Tableau::from_rows_bottom_up(shape, rows_bottom_up)
            }
            TableauIn::Partition { partition, rows_bottom_up } => {
                Tableau::from_rows_bottom_up(Pyramid::left_justified(&partition), rows_bottom_up)
            }
        };
        t.map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn t(rows: &[Vec<i64>]) -> Tableau {
        Tableau::from_int_rows(rows).unwrap()
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(t(&[vec![5, 7]]).gamma(), Weight::from_ints(&[5, 7]));
        assert_eq!(t(&[vec![5, 7], vec![6]]).gamma(), Weight::from_ints(&[6, 5, 7]));
        assert_eq!(t(&[vec![1], vec![2], vec![3]]).gamma(), Weight::from_ints(&[3, 2, 1]));
    }

    #[test]
    fn row_standardize_examples() {
        let a = t(&[vec![1, 3], vec![2]]);
        assert_eq!(a.row_standardize(), a);
        assert_eq!(t(&[vec![7, 5]]).row_standardize(), t(&[vec![5, 7]]));
        // 3/2 and 1/2 swap; 1 keeps its position since it is comparable to neither
        let mixed = Tableau::left_justified(vec![vec![frac(3, 2), int(1), frac(1, 2)]]).unwrap();
        let expected = Tableau::left_justified(vec![vec![frac(1, 2), int(1), frac(3, 2)]]).unwrap();
        assert_eq!(mixed.row_standardize(), expected);
    }

    #[test]
    fn rho_read_examples() {
        assert_eq!(t(&[vec![7, 5], vec![6]]).rho_read(), Weight::from_ints(&[6, 5, 7]));
        assert_eq!(t(&[vec![1, 2]]).rho_read(), Weight::from_ints(&[1, 2]));
        assert_eq!(t(&[vec![1, 3], vec![2, 4]]).rho_read(), Weight::from_ints(&[2, 4, 1, 3]));
    }

    #[test]
    fn column_predicates() {
        let c12 = t(&[vec![1], vec![2]]);
        assert!(c12.is_column_strict() && c12.is_column_connected());
        let c13 = t(&[vec![1], vec![3]]);
        assert!(c13.is_column_strict() && !c13.is_column_connected());
        let half = Tableau::left_justified(vec![vec![int(1)], vec![frac(3, 2)]]).unwrap();
        assert!(!half.is_column_strict());
    }

    #[test]
    fn separated_examples() {
        assert!(t(&[vec![1, 3], vec![2]]).is_column_separated());
        assert!(!t(&[vec![1, 2], vec![3]]).is_column_separated());
        assert!(t(&[vec![1], vec![2], vec![5]]).is_column_separated());
    }

    #[test]
    fn linked_equal_sizes() {
        let i = [int(4), int(2)];
        let j = [int(3), int(1)];
        assert!(columns_linked(&i, &j));
        assert!(columns_linked(&j, &i));
        let j2 = [int(6), int(5)];
        assert!(!columns_linked(&i, &j2));
        let half = [frac(7, 2), frac(3, 2)];
        assert!(!columns_linked(&i, &half));
    }

    #[test]
    fn standard_predicate() {
        assert!(t(&[vec![1, 3], vec![2]]).is_standard());
        assert!(!t(&[vec![1, 2], vec![2]]).is_standard());
        assert!(!t(&[vec![3, 1], vec![2]]).is_standard());
        assert!(!t(&[vec![1, 2], vec![4]]).is_standard());
    }

    #[test]
    fn row_equivalence_examples() {
        let a = t(&[vec![1, 3], vec![2]]);
        assert!(a.row_equivalent(&a).unwrap());
        assert!(a.row_equivalent(&t(&[vec![3, 1], vec![2]])).unwrap());
        assert!(!t(&[vec![1, 3]]).row_equivalent(&t(&[vec![1, 2]])).unwrap());
        assert!(a.row_equivalent(&t(&[vec![1, 3, 2]])).is_err());
    }

    #[test]
    fn transpose_and_justify() {
        let a = t(&[vec![1, 3], vec![2]]);
        assert_eq!(a.left_justify(), a);
        assert_eq!(a.transpose_pyramid().transpose_pyramid(), a);
        let p = Pyramid::new(vec![1, 2, 3], vec![vec![0, 0, 1], vec![1, 0, 1], vec![1, 0, 0]])
            .unwrap();
        let b = Tableau::on_pyramid(p, &[vec![2, 1, 4], vec![3, 3], vec![4]]).unwrap();
        let bt = b.transpose_pyramid();
        assert_eq!(
            bt.pyramid().shift_matrix(),
            &[vec![0, 1, 1], vec![0, 0, 0], vec![1, 1, 0]]
        );
        assert!(bt.canonical_row_form().rows == b.canonical_row_form().rows);
        assert_eq!(bt.column(1), vec![int(4)]);
        assert_eq!(b.left_justify().pyramid().row_lengths(), &[1, 2, 3]);
        assert!(b.left_justify().pyramid().is_left_justified());
    }

    #[test]
    fn json_forms() {
        let a = t(&[vec![1, 3], vec![2]]);
        let s = serde_json::to_string(&a).unwrap();
        let back: Tableau = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let short: Tableau =
            serde_json::from_str(r#"{"partition":[2,1],"rows_bottom_up":[[1,"3"],[2]]}"#).unwrap();
        assert_eq!(short, a);
        assert!(serde_json::from_str::<Tableau>(r#"{"partition":[2,1],"rows_bottom_up":[[1],[2]]}"#)
            .is_err());
    }

    /// All fixpoints of the swap rule reached through random swap orders agree.
    #[test]
    fn standardization_independent_of_swap_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pool = [frac(1, 2), frac(3, 2), int(1), int(2), int(0), frac(-1, 2), frac(1, 3)];
        for _ in 0..300 {
            let len = rng.gen_range(1..=5);
            let row: Vec<Rational> = (0..len).map(|_| pool.choose(&mut rng).unwrap().clone()).collect();
            let a = Tableau::left_justified(vec![row.clone()]).unwrap();
            let expected = a.row_standardize();
            let mut r = row;
            loop {
                let swaps: Vec<(usize, usize)> = (0..r.len())
                    .flat_map(|x| (x + 1..r.len()).map(move |y| (x, y)))
                    .filter(|&(x, y)| rational::int_gt(&r[x], &r[y]))
                    .collect();
                match swaps.choose(&mut rng) {
                    Some(&(x, y)) => r.swap(x, y),
                    None => break,
                }
            }
            assert_eq!(Tableau::left_justified(vec![r]).unwrap(), expected);
        }
    }

    proptest! {
        #[test]
        fn gamma_roundtrip(heights in prop::collection::vec(1usize..4, 1..4), seed in 0i64..1000) {
            let mut hs = heights;
            hs.sort_unstable_by(|a, b| b.cmp(a));
            let p = Pyramid::from_column_heights(&hs).unwrap();
            let alpha = Weight::from_ints(&(0..p.n() as i64).map(|k| (k * 7 + seed) % 5).collect::<Vec<_>>());
            let a = Tableau::from_gamma(p, &alpha).unwrap();
            prop_assert_eq!(a.gamma(), alpha);
        }

        #[test]
        fn row_standardize_laws(vals in prop::collection::vec(-3i64..4, 1..7), split in 0usize..7) {
            let cut = split.min(vals.len());
            let (bottom, top) = vals.split_at(vals.len() - cut.min(vals.len() / 2));
            let mut rows = vec![bottom.to_vec()];
            if !top.is_empty() {
                rows.push(top.to_vec());
            }
            let a = Tableau::from_int_rows(&rows).unwrap();
            let s = a.row_standardize();
            prop_assert!(s.is_row_standard());
            prop_assert_eq!(s.row_standardize(), s.clone());
            prop_assert!(s.row_equivalent(&a).unwrap());
        }
    }
}
