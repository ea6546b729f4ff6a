use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::Partition;

/// A pyramid: rows `1..n` indexed top to bottom with nondecreasing lengths
/// `p_1 <= ... <= p_n`, positioned by a shift matrix. Boxes are numbered
/// `1..N` down columns, leftmost column first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PyramidRepr", into = "PyramidRepr")]
pub struct Pyramid {
    row_lengths: Vec<usize>,
    shift: Vec<Vec<usize>>,
    // first column (1-based) of each row
    starts: Vec<usize>,
    heights: Vec<usize>,
    // box k (0-based) -> (row, col), both 1-based
    boxes: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct PyramidRepr {
    row_lengths: Vec<usize>,
    shift_matrix: Vec<Vec<usize>>,
}

impl TryFrom<PyramidRepr> for Pyramid {
    type Error = Error;

    fn try_from(r: PyramidRepr) -> Result<Self> {
        Pyramid::new(r.row_lengths, r.shift_matrix)
    }
}

impl From<Pyramid> for PyramidRepr {
    fn from(p: Pyramid) -> Self {
        PyramidRepr { row_lengths: p.row_lengths, shift_matrix: p.shift }
    }
}

impl Pyramid {
    /// Build from row lengths (top to bottom) and a shift matrix.
    pub fn new(row_lengths: Vec<usize>, shift: Vec<Vec<usize>>) -> Result<Self> {
        let n = row_lengths.len();
        if n == 0 || row_lengths.contains(&0) {
            return Err(Error::Domain(format!("row lengths must be positive: {row_lengths:?}")));
        }
        if row_lengths.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Domain(format!(
                "row lengths must be nondecreasing from top to bottom: {row_lengths:?}"
            )));
        }
        if shift.len() != n || shift.iter().any(|r| r.len() != n) {
            return Err(Error::Size(format!("shift matrix must be {n}x{n}")));
        }
        for i in 0..n {
            if shift[i][i] != 0 {
                return Err(Error::Domain("shift matrix must have zero diagonal".into()));
            }
            if i + 1 < n && shift[i][i + 1] + shift[i + 1][i] != row_lengths[i + 1] - row_lengths[i] {
                return Err(Error::Domain(format!(
                    "s_{{{a},{b}}} + s_{{{b},{a}}} must equal p_{b} - p_{a}",
                    a = i + 1,
                    b = i + 2
                )));
            }
            for j in i + 2..n {
                if shift[i][j] != shift[i][j - 1] + shift[j - 1][j]
                    || shift[j][i] != shift[j][j - 1] + shift[j - 1][i]
                {
                    return Err(Error::Domain(format!(
                        "shift matrix is not additive at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let starts = (0..n).map(|i| 1 + shift[n - 1][i]).collect();
        Ok(Self::build(row_lengths, shift, starts))
    }

    fn build(row_lengths: Vec<usize>, shift: Vec<Vec<usize>>, starts: Vec<usize>) -> Self {
        let n = row_lengths.len();
        let level = row_lengths[n - 1];
        let mut heights = vec![0; level];
        let mut boxes = Vec::new();
        for col in 1..=level {
            for row in 1..=n {
                if starts[row - 1] <= col && col < starts[row - 1] + row_lengths[row - 1] {
                    heights[col - 1] += 1;
                    boxes.push((row, col));
                }
            }
        }
        Pyramid { row_lengths, shift, starts, heights, boxes }
    }

    /// Rows given as column intervals `[start, end]`, top to bottom, nested.
    fn from_intervals(intervals: &[(usize, usize)]) -> Result<Self> {
        let n = intervals.len();
        for w in intervals.windows(2) {
            if w[0].0 < w[1].0 || w[0].1 > w[1].1 {
                return Err(Error::Domain("rows of a pyramid must be nested".into()));
            }
        }
        let row_lengths: Vec<usize> = intervals.iter().map(|&(a, b)| b + 1 - a).collect();
        let mut shift = vec![vec![0usize; n]; n];
        for i in 0..n.saturating_sub(1) {
            shift[i][i + 1] = intervals[i + 1].1 - intervals[i].1;
            shift[i + 1][i] = intervals[i].0 - intervals[i + 1].0;
        }
        for len in 2..n {
            for i in 0..n - len {
                let j = i + len;
                shift[i][j] = shift[i][j - 1] + shift[j - 1][j];
                shift[j][i] = shift[j][j - 1] + shift[j - 1][i];
            }
        }
        let starts = intervals.iter().map(|&(a, _)| a).collect();
        Ok(Self::build(row_lengths, shift, starts))
    }

    /// The left-justified pyramid of a partition (bottom row `λ_1`).
    pub fn left_justified(lambda: &Partition) -> Self {
        let intervals: Vec<(usize, usize)> = lambda.parts().iter().rev().map(|&p| (1, p)).collect();
        Self::from_intervals(&intervals).expect("partition rows are nested")
    }

    /// Every pyramid whose row lengths form `λ`: each row may sit anywhere
    /// within the row below it.
    pub fn all_of_shape(lambda: &Partition) -> Vec<Pyramid> {
        let lengths: Vec<usize> = lambda.parts().iter().rev().copied().collect();
        let n = lengths.len();
        let mut out = Vec::new();
        // intervals chosen from the bottom row upwards
        fn go(lengths: &[usize], row: usize, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Pyramid>) {
            if row == 0 {
                let mut intervals = acc.clone();
                intervals.reverse();
                out.push(Pyramid::from_intervals(&intervals).expect("nested by construction"));
                return;
            }
            let (a, b) = *acc.last().unwrap();
            let len = lengths[row - 1];
            for start in a..=b + 1 - len {
                acc.push((start, start + len - 1));
                go(lengths, row - 1, acc, out);
                acc.pop();
            }
        }
        let mut acc = vec![(1, lengths[n - 1])];
        go(&lengths, n - 1, &mut acc, &mut out);
        out
    }

    pub fn single_row(n: usize) -> Self {
        Self::from_intervals(&[(1, n)]).unwrap()
    }

    pub fn single_column(n: usize) -> Self {
        Self::from_intervals(&vec![(1, 1); n]).unwrap()
    }

    /// The pyramid with the given column heights; they must be unimodal so
    /// that every row is an interval.
    pub fn from_column_heights(heights: &[usize]) -> Result<Self> {
        if heights.is_empty() || heights.contains(&0) {
            return Err(Error::Domain(format!("column heights must be positive: {heights:?}")));
        }
        let n = *heights.iter().max().unwrap();
        let mut intervals = Vec::with_capacity(n);
        // level r counted from the bottom; row index n + 1 - r
        for r in (1..=n).rev() {
            let cols: Vec<usize> = (1..=heights.len()).filter(|&j| heights[j - 1] >= r).collect();
            let (a, b) = (cols[0], *cols.last().unwrap());
            if b + 1 - a != cols.len() {
                return Err(Error::Domain(format!(
                    "column heights {heights:?} are not unimodal"
                )));
            }
            intervals.push((a, b));
        }
        Self::from_intervals(&intervals)
    }

    /// Number of rows `n`.
    pub fn n_rows(&self) -> usize {
        self.row_lengths.len()
    }

    /// Total number of boxes `N`.
    pub fn n(&self) -> usize {
        self.boxes.len()
    }

    /// Row lengths `p_1 <= ... <= p_n`, top to bottom.
    pub fn row_lengths(&self) -> &[usize] {
        &self.row_lengths
    }

    pub fn shift_matrix(&self) -> &[Vec<usize>] {
        &self.shift
    }

    /// The level `l = p_n`, also the number of columns.
    pub fn level(&self) -> usize {
        self.heights.len()
    }

    /// Column heights `q_1, ..., q_l`.
    pub fn column_heights(&self) -> &[usize] {
        &self.heights
    }

    /// First and last column of a row (1-based row, top to bottom).
    pub fn row_span(&self, row: usize) -> (usize, usize) {
        let s = self.starts[row - 1];
        (s, s + self.row_lengths[row - 1] - 1)
    }

    /// Rows occupied by a column, top to bottom.
    pub fn column_rows(&self, col: usize) -> std::ops::RangeInclusive<usize> {
        let n = self.n_rows();
        n + 1 - self.heights[col - 1]..=n
    }

    /// Row of box `k` (1-based).
    pub fn row(&self, k: usize) -> usize {
        self.boxes[k - 1].0
    }

    /// Column of box `k` (1-based).
    pub fn col(&self, k: usize) -> usize {
        self.boxes[k - 1].1
    }

    /// Box number at `(row, col)`, if there is a box there.
    pub fn box_at(&self, row: usize, col: usize) -> Option<usize> {
        if row == 0 || row > self.n_rows() || col == 0 || col > self.level() {
            return None;
        }
        let (a, b) = self.row_span(row);
        if col < a || col > b {
            return None;
        }
        let before: usize = self.heights[..col - 1].iter().sum();
        Some(before + row - (self.n_rows() - self.heights[col - 1]))
    }

    /// Partition obtained by sorting row lengths, bottom row first.
    pub fn partition(&self) -> Partition {
        Partition::new(self.row_lengths.iter().rev().copied().collect()).unwrap()
    }

    pub fn is_left_justified(&self) -> bool {
        self.starts.iter().all(|&s| s == 1)
    }

    /// The pyramid with transposed shift matrix (columns in reverse order).
    pub fn transpose(&self) -> Pyramid {
        let n = self.n_rows();
        let shift: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| self.shift[j][i]).collect()).collect();
        Pyramid::new(self.row_lengths.clone(), shift).expect("transpose of a valid shift matrix")
    }

    /// The left-justified pyramid with the same row lengths.
    pub fn left_justify(&self) -> Pyramid {
        Pyramid::left_justified(&self.partition())
    }
}

impl std::fmt::Debug for Pyramid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Pyramid(rows={:?}, shift={:?})", self.row_lengths, self.shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The three-row pyramid whose rows (top to bottom) sit in columns
    /// `{2}`, `{1,2}`, `{1,2,3}`.
    fn staircase() -> Pyramid {
        Pyramid::new(vec![1, 2, 3], vec![vec![0, 0, 1], vec![1, 0, 1], vec![1, 0, 0]]).unwrap()
    }

    #[test]
    fn box_layout() {
        let p = staircase();
        assert_eq!(p.n(), 6);
        assert_eq!(p.level(), 3);
        assert_eq!(p.column_heights(), &[2, 3, 1]);
        assert_eq!(p.row_span(1), (2, 2));
        assert_eq!(p.row_span(2), (1, 2));
        assert_eq!(p.row_span(3), (1, 3));
        let layout: Vec<(usize, usize)> = (1..=6).map(|k| (p.row(k), p.col(k))).collect();
        assert_eq!(layout, vec![(2, 1), (3, 1), (1, 2), (2, 2), (3, 2), (3, 3)]);
        for k in 1..=6 {
            assert_eq!(p.box_at(p.row(k), p.col(k)), Some(k));
        }
        assert_eq!(p.box_at(1, 1), None);
    }

    #[test]
    fn transpose_reverses_columns() {
        let p = staircase();
        let t = p.transpose();
        assert_eq!(t.shift_matrix(), &[vec![0, 1, 1], vec![0, 0, 0], vec![1, 1, 0]]);
        assert_eq!(t.column_heights(), &[1, 3, 2]);
        assert_eq!(t.transpose(), p);
    }

    #[test]
    fn constructors_agree() {
        let lj = Pyramid::left_justified(&Partition::new(vec![3, 1]).unwrap());
        assert_eq!(lj.row_lengths(), &[1, 3]);
        assert_eq!(lj.shift_matrix(), &[vec![0, 2], vec![0, 0]]);
        assert!(lj.is_left_justified());
        assert_eq!(Pyramid::from_column_heights(&[2, 1, 1]).unwrap(), lj);
        assert_eq!(Pyramid::from_column_heights(&[2, 3, 1]).unwrap(), staircase());
        assert!(Pyramid::from_column_heights(&[2, 1, 2]).is_err());
        assert_eq!(Pyramid::single_column(3).column_heights(), &[3]);
        assert_eq!(Pyramid::single_row(3).column_heights(), &[1, 1, 1]);
    }

    #[test]
    fn invalid_shift_matrices() {
        assert!(Pyramid::new(vec![1, 2], vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(Pyramid::new(vec![2, 1], vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(Pyramid::new(vec![1, 2], vec![vec![0, 1]]).is_err());
        assert!(
            Pyramid::new(vec![1, 2, 3], vec![vec![0, 0, 0], vec![1, 0, 1], vec![1, 0, 0]]).is_err()
        );
    }

    #[test]
    fn json_roundtrip() {
        let p = staircase();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"row_lengths":[1,2,3],"shift_matrix":[[0,0,1],[1,0,1],[1,0,0]]}"#);
        let back: Pyramid = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn all_of_shape_counts() {
        // row above a longer row can start at p_{i+1} - p_i + 1 places
        let lambda = Partition::new(vec![3, 2, 1]).unwrap();
        let all = Pyramid::all_of_shape(&lambda);
        assert_eq!(all.len(), 4);
        assert!(all.contains(&Pyramid::left_justified(&lambda)));
        assert!(all.contains(&staircase()));
        assert!(all.iter().all(|p| p.partition() == lambda));
        let rect = Partition::new(vec![2, 2]).unwrap();
        assert_eq!(Pyramid::all_of_shape(&rect), vec![Pyramid::left_justified(&rect)]);
        assert_eq!(Pyramid::all_of_shape(&Partition::new(vec![4, 1]).unwrap()).len(), 4);
    }
}
