use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::symgroup::combinations;

use super::{Pyramid, Tableau};

/// Column conditions that a row rearrangement can be asked to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    ColumnStrict,
    ColumnConnected,
    ColumnSeparated,
}

impl Predicate {
    pub fn holds(self, a: &Tableau) -> bool {
        match self {
            Predicate::ColumnStrict => a.is_column_strict(),
            Predicate::ColumnConnected => a.is_column_connected(),
            Predicate::ColumnSeparated => a.is_column_separated(),
        }
    }

    fn vertical_ok(self, above: &Rational, below: &Rational) -> bool {
        match self {
            Predicate::ColumnConnected => above - below == rational::int(1),
            _ => rational::int_gt(above, below),
        }
    }
}

/// A row-equivalent tableau satisfying `pred`, if one exists.
///
/// Rows are filled from the bottom up, each left to right, trying distinct
/// values in canonical order, so the answer is the first solution in that
/// order. Vertical conditions are checked as soon as a box is placed; the
/// linking condition of column-separated tableaux is checked on complete
/// fillings.
pub fn find_row_equivalent(a: &Tableau, pred: Predicate) -> Option<Tableau> {
    let pyramid = a.pyramid();
    let pools: Vec<Vec<(Rational, usize)>> = a
        .rows()
        .iter()
        .map(|row| {
            let mut sorted = row.clone();
            sorted.sort_by(rational::canonical_cmp);
            let mut pool: Vec<(Rational, usize)> = Vec::new();
            for v in sorted {
                match pool.last_mut() {
                    Some((last, c)) if *last == v => *c += 1,
                    _ => pool.push((v, 1)),
                }
            }
            pool
        })
        .collect();
    let mut search = RowSearch {
        pyramid,
        pred,
        pools,
        filled: pyramid.row_lengths().iter().map(|&p| Vec::with_capacity(p)).collect(),
        template: a,
        found: None,
    };
    let bottom = pyramid.n_rows();
    search.fill(bottom);
    search.found
}

struct RowSearch<'a> {
    pyramid: &'a Pyramid,
    pred: Predicate,
    pools: Vec<Vec<(Rational, usize)>>,
    // rows top to bottom
    filled: Vec<Vec<Rational>>,
    template: &'a Tableau,
    found: Option<Tableau>,
}

impl RowSearch<'_> {
    /// Fill the next box of `row` (1-based, top to bottom); returns true once a
    /// solution has been recorded.
    fn fill(&mut self, row: usize) -> bool {
        if row == 0 {
            let candidate = self.template.with_rows(self.filled.clone());
            if self.pred.holds(&candidate) {
                self.found = Some(candidate);
                return true;
            }
            return false;
        }
        let pos = self.filled[row - 1].len();
        if pos == self.pyramid.row_lengths()[row - 1] {
            return self.fill(row - 1);
        }
        let (start, _) = self.pyramid.row_span(row);
        let below = if row < self.pyramid.n_rows() {
            let col = start + pos;
            let (below_start, _) = self.pyramid.row_span(row + 1);
            Some(self.filled[row][col - below_start].clone())
        } else {
            None
        };
        for k in 0..self.pools[row - 1].len() {
            let (value, count) = self.pools[row - 1][k].clone();
            if count == 0 {
                continue;
            }
            if let Some(b) = &below {
                if !self.pred.vertical_ok(&value, b) {
                    continue;
                }
            }
            self.pools[row - 1][k].1 -= 1;
            self.filled[row - 1].push(value);
            if self.fill(row) {
                return true;
            }
            self.filled[row - 1].pop();
            self.pools[row - 1][k].1 += 1;
        }
        false
    }
}

/// All column-strict tableaux on `pyramid` with the given content.
///
/// Columns are filled left to right; each column takes a strictly increasing
/// chain from the remaining entries, chains tried in lexicographic order of
/// their canonically sorted values.
pub fn enumerate_column_strict(pyramid: &Pyramid, content: &[Rational]) -> Result<Vec<Tableau>> {
    if content.len() != pyramid.n() {
        return Err(Error::Size(format!(
            "content has {} entries, pyramid has {} boxes",
            content.len(),
            pyramid.n()
        )));
    }
    let mut pool: Vec<(Rational, usize)> = Vec::new();
    let mut sorted = content.to_vec();
    sorted.sort_by(rational::canonical_cmp);
    for v in sorted {
        match pool.last_mut() {
            Some((last, c)) if *last == v => *c += 1,
            _ => pool.push((v, 1)),
        }
    }
    let mut out = Vec::new();
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    enumerate_columns(pyramid, &mut pool, &mut columns, &mut out);
    Ok(out)
}

fn enumerate_columns(
    pyramid: &Pyramid,
    pool: &mut Vec<(Rational, usize)>,
    columns: &mut Vec<Vec<Rational>>,
    out: &mut Vec<Tableau>,
) {
    let col = columns.len() + 1;
    if col > pyramid.level() {
        out.push(tableau_from_columns(pyramid, columns));
        return;
    }
    let height = pyramid.column_heights()[col - 1];
    let available: Vec<usize> = (0..pool.len()).filter(|&k| pool[k].1 > 0).collect();
    for pick in combinations(&available, height) {
        let first = &pool[pick[0]].0;
        if !pick.iter().all(|&k| rational::same_coset(&pool[k].0, first)) {
            continue;
        }
        for &k in &pick {
            pool[k].1 -= 1;
        }
        // top to bottom: largest first
        let mut column: Vec<Rational> = pick.iter().map(|&k| pool[k].0.clone()).collect();
        column.sort_by(|a, b| b.cmp(a));
        columns.push(column);
        enumerate_columns(pyramid, pool, columns, out);
        columns.pop();
        for &k in &pick {
            pool[k].1 += 1;
        }
    }
}

fn tableau_from_columns(pyramid: &Pyramid, columns: &[Vec<Rational>]) -> Tableau {
    let n = pyramid.n_rows();
    let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); n];
    for (j, column) in columns.iter().enumerate() {
        let rows_of_col = pyramid.column_rows(j + 1);
        for (r, v) in rows_of_col.zip(column) {
            rows[r - 1].push(v.clone());
        }
    }
    Tableau::new(pyramid.clone(), rows).expect("columns fill the pyramid")
}
