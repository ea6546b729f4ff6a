//! One-dimensional representations: from the scalars `a_i^{(r)}` to complex
//! numbers `a_{i,j}` whose rows are linked column by column, and from those to
//! a column-connected tableau.
//!
//! This is the only floating-point part of the crate.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::tableaux::{Pyramid, Tableau};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Largest denominator tried when reading a solution back as rationals.
pub const MAX_DENOMINATOR: i64 = 10_000;

/// Row lengths `p_1 <= ... <= p_n` and, for each row `i`, the values
/// `a_i^{(1)}, ..., a_i^{(p_i - p_{i-1})}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StupInputRepr", into = "StupInputRepr")]
pub struct StupInput {
    row_lengths: Vec<usize>,
    values: Vec<Vec<Complex64>>,
}

#[derive(Serialize, Deserialize)]
struct StupInputRepr {
    row_lengths: Vec<usize>,
    values: Vec<Vec<Complex64>>,
}

impl TryFrom<StupInputRepr> for StupInput {
    type Error = Error;

    fn try_from(r: StupInputRepr) -> Result<Self> {
        StupInput::new(r.row_lengths, r.values)
    }
}

impl From<StupInput> for StupInputRepr {
    fn from(s: StupInput) -> Self {
        StupInputRepr { row_lengths: s.row_lengths, values: s.values }
    }
}

fn check_row_lengths(row_lengths: &[usize]) -> Result<()> {
    if row_lengths.is_empty() || row_lengths[0] == 0 {
        return Err(Error::Domain(format!("row lengths must be positive: {row_lengths:?}")));
    }
    if row_lengths.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain(format!("row lengths must be nondecreasing: {row_lengths:?}")));
    }
    Ok(())
}

impl StupInput {
    pub fn new(row_lengths: Vec<usize>, values: Vec<Vec<Complex64>>) -> Result<Self> {
        check_row_lengths(&row_lengths)?;
        if values.len() != row_lengths.len() {
            return Err(Error::Size(format!("{} rows of values for {} rows", values.len(), row_lengths.len())));
        }
        let mut prev = 0;
        for (i, (&p, v)) in row_lengths.iter().zip(&values).enumerate() {
            if v.len() != p - prev {
                return Err(Error::Size(format!(
                    "row {} needs p_{} - p_{} = {} values, got {}",
                    i + 1,
                    i + 1,
                    i,
                    p - prev,
                    v.len()
                )));
            }
            prev = p;
        }
        Ok(StupInput { row_lengths, values })
    }

    /// Split `l = p_n` values, listed row by row, into rows.
    pub fn from_flat(row_lengths: Vec<usize>, flat: &[Complex64]) -> Result<Self> {
        check_row_lengths(&row_lengths)?;
        let l = *row_lengths.last().unwrap();
        if flat.len() != l {
            return Err(Error::Size(format!("expected exactly {l} values, got {}", flat.len())));
        }
        let mut values = Vec::new();
        let (mut prev, mut at) = (0, 0);
        for &p in &row_lengths {
            values.push(flat[at..at + p - prev].to_vec());
            at += p - prev;
            prev = p;
        }
        Self::new(row_lengths, values)
    }

    /// The values that a column-connected tableau's rows produce:
    /// `a_i^{(r)} = e_r(A_{i,1} + i, ..., A_{i,p_i} + i)`, rows counted from the top.
    pub fn of_tableau(a: &Tableau) -> Result<Self> {
        let p = a.pyramid().row_lengths().to_vec();
        let mut values = Vec::new();
        let mut prev = 0;
        for (i, row) in a.rows().iter().enumerate() {
            let shifted: Vec<Complex64> =
                row.iter().map(|v| Complex64::new(rational::to_f64(v) + (i + 1) as f64, 0.0)).collect();
            let e = elementary(&shifted);
            values.push(e[1..=p[i] - prev].to_vec());
            prev = p[i];
        }
        Self::new(p, values)
    }

    pub fn row_lengths(&self) -> &[usize] {
        &self.row_lengths
    }

    pub fn values(&self) -> &[Vec<Complex64>] {
        &self.values
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StupSolution {
    pub row_lengths: Vec<usize>,
    /// `a_{i,j}`, row `i` of length `p_i`.
    pub entries: Vec<Vec<Complex64>>,
    /// `|e_r(a_{i,1..p_i}) - a_i^{(r)}|` for `r <= p_i - p_{i-1}`.
    pub residuals: Vec<Vec<f64>>,
    pub max_residual: f64,
}

/// `e_0, ..., e_k` of the given numbers.
pub fn elementary(xs: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); xs.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (k, &x) in xs.iter().enumerate() {
        for r in (1..=k + 1).rev() {
            let prev = e[r - 1];
            e[r] += prev * x;
        }
    }
    e
}

/// The `d`-th derivative of `u^k + c_1 u^{k-1} + ... + c_k` at `u`.
fn eval_derivative(coeffs: &[Complex64], d: usize, u: Complex64) -> Complex64 {
    let k = coeffs.len();
    // full coefficient list, highest degree first
    let full: Vec<Complex64> = std::iter::once(Complex64::new(1.0, 0.0)).chain(coeffs.iter().copied()).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for (idx, &c) in full.iter().enumerate() {
        let deg = k - idx;
        if deg < d {
            continue;
        }
        let falling: f64 = (deg - d + 1..=deg).map(|m| m as f64).product();
        acc = acc * u + c * falling;
    }
    acc
}

fn newton_step(coeffs: &[Complex64], d: usize, u: Complex64) -> Complex64 {
    let f = eval_derivative(coeffs, d, u);
    let df = eval_derivative(coeffs, d + 1, u);
    if df.norm() == 0.0 {
        return u;
    }
    let next = u - f / df;
    if eval_derivative(coeffs, d, next).norm() <= f.norm() {
        next
    } else {
        u
    }
}

fn coefficient_error(roots: &[Complex64], coeffs: &[Complex64]) -> f64 {
    // (u + a_1)...(u + a_k) has coefficients e_r(a)
    let negated: Vec<Complex64> = roots.iter().map(|r| -r).collect();
    let e = elementary(&negated);
    coeffs.iter().zip(&e[1..]).map(|(c, x)| (c - x).norm()).fold(0.0, f64::max)
}

/// Simultaneous Aberth iteration for all roots of `u^k + c_1 u^{k-1} + ... + c_k`.
fn aberth(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let k = coeffs.len();
    let radius = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c.norm().powf(1.0 / (i + 1) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..k)
        .map(|j| Complex64::from_polar(radius, std::f64::consts::TAU * j as f64 / k as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for j in 0..k {
            let f = eval_derivative(coeffs, 0, z[j]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / eval_derivative(coeffs, 1, z[j]);
            let repulsion: Complex64 = (0..k).filter(|&i| i != j).map(|i| (z[j] - z[i]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[j] -= step;
                moved = moved.max(step.norm());
            }
        }
        if moved <= 1e-15 * radius {
            break;
        }
    }
    z.iter().all(|u| u.is_finite()).then_some(z)
}

/// All roots of `u^k + c_1 u^{k-1} + ... + c_k`, where the `c_r` are known
/// up to an absolute error of about `noise`.
fn roots(coeffs: &[Complex64], noise: f64) -> Vec<Complex64> {
    let k = coeffs.len();
    match k {
        0 => return Vec::new(),
        1 => return vec![-coeffs[0]],
        _ => {}
    }
    let mut m = DMatrix::<Complex64>::zeros(k, k);
    for j in 0..k {
        m[(0, j)] = -coeffs[j];
    }
    for i in 1..k {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    // QR iteration can stall (a nilpotent companion matrix, for instance).
    let raw: Vec<Complex64> = match Schur::try_new(m, f64::EPSILON, 10_000).and_then(|s| s.eigenvalues()) {
        Some(v) => v.iter().copied().collect(),
        None => match aberth(coeffs) {
            Some(v) => v,
            None => return Vec::new(),
        },
    };
    let polished: Vec<Complex64> = raw.iter().map(|&u| newton_step(coeffs, 0, u)).collect();

    // Repeated roots come back as a spread-out cluster centred on the true
    // root. Each candidate cluster is collapsed to its mean, sharpened by
    // Newton on the (m-1)-th derivative, and kept only if the coefficients
    // still fit to within their noise.
    let scale = 1.0 + raw.iter().map(|u| u.norm()).fold(0.0, f64::max);
    let cscale = coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let floor = 100.0 * noise.max(f64::EPSILON * cscale).max(coefficient_error(&polished, coeffs));
    let mut result = polished;
    for members in linked_clusters(&raw, 1e-2 * scale) {
        if members.len() < 2 {
            continue;
        }
        let mut c = members.iter().map(|&b| raw[b]).sum::<Complex64>() / members.len() as f64;
        for _ in 0..3 {
            c = newton_step(coeffs, members.len() - 1, c);
        }
        let mut trial = result.clone();
        for &b in &members {
            trial[b] = c;
        }
        let err = coefficient_error(&trial, coeffs);
        if err <= floor.max(coefficient_error(&result, coeffs)) {
            result = trial;
        }
    }
    result
}

/// Index sets of the connected components of the graph joining points closer than `radius`.
fn linked_clusters(points: &[Complex64], radius: f64) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..points.len()).collect();
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            if (points[a] - points[b]).norm() < radius {
                let (from, to) = (label[b], label[a]);
                for l in label.iter_mut() {
                    if *l == from {
                        *l = to;
                    }
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &l) in label.iter().enumerate() {
        match groups.iter_mut().find(|g| label[g[0]] == l) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    groups
}

fn canonical_order(v: &mut [Complex64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Solve for `a_{i,j}` row by row: the last `p_{i-1}` entries of row `i`
/// copy row `i-1`, and the first `p_i - p_{i-1}` are the negated roots of
/// `u^k + b^{(1)} u^{k-1} + ... + b^{(k)}`, where
/// `b^{(r)} = a_i^{(r)} - Σ_{s<r} b^{(s)} e_{r-s}(row i-1)`.
///
/// ```
/// use goldie::onedim::{stup_solve, StupInput, DEFAULT_TOL};
/// use num_complex::Complex64;
/// let c = |x: f64| Complex64::new(x, 0.0);
/// let input = StupInput::new(vec![2], vec![vec![c(3.0), c(2.0)]]).unwrap();
/// let sol = stup_solve(&input, DEFAULT_TOL).unwrap();
/// assert!((sol.entries[0][0] - c(1.0)).norm() < 1e-12);
/// assert!((sol.entries[0][1] - c(2.0)).norm() < 1e-12);
/// ```
pub fn stup_solve(input: &StupInput, tol: f64) -> Result<StupSolution> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let p = &input.row_lengths;
    let mut entries: Vec<Vec<Complex64>> = Vec::with_capacity(p.len());
    let mut residuals = Vec::with_capacity(p.len());
    for (i, targets) in input.values.iter().enumerate() {
        let prev: &[Complex64] = if i == 0 { &[] } else { &entries[i - 1] };
        let e_prev = elementary(prev);
        let k = targets.len();
        let mut b = vec![Complex64::new(1.0, 0.0)];
        let mut magnitude = 0.0f64;
        for r in 1..=k {
            let mut v = targets[r - 1];
            let mut size = v.norm();
            for s in 0..r {
                if r - s < e_prev.len() {
                    v -= b[s] * e_prev[r - s];
                    size += b[s].norm() * e_prev[r - s].norm();
                }
            }
            magnitude = magnitude.max(size);
            b.push(v);
        }
        let noise = f64::EPSILON * magnitude;
        let mut head: Vec<Complex64> = roots(&b[1..], noise).into_iter().map(|u| -u).collect();
        if head.len() != k {
            return Err(Error::Numeric {
                message: format!("eigenvalue computation failed in row {}", i + 1),
                residual: f64::INFINITY,
            });
        }
        canonical_order(&mut head);
        let mut row = head;
        row.extend_from_slice(prev);
        let e = elementary(&row);
        residuals.push((1..=k).map(|r| (e[r] - targets[r - 1]).norm()).collect::<Vec<f64>>());
        entries.push(row);
    }
    let max_residual = residuals.iter().flatten().copied().fold(0.0, f64::max);
    if max_residual.is_nan() || max_residual > tol {
        return Err(Error::Numeric { message: "residual exceeds the tolerance".into(), residual: max_residual });
    }
    Ok(StupSolution { row_lengths: p.clone(), entries, residuals, max_residual })
}

/// Place `a_{i,j} - i` in row `i` of the pyramid with shift matrix `shift`,
/// each copied entry directly below the entry it was copied from, so the
/// result is column-connected.
///
/// Declines with a numeric error if some `a_{i,j}` is not a real rational
/// with denominator at most [`MAX_DENOMINATOR`] within `tol`.
pub fn connected_tableau_of(solution: &StupSolution, shift: Vec<Vec<usize>>, tol: f64) -> Result<Tableau> {
    let pyramid = Pyramid::new(solution.row_lengths.clone(), shift)?;
    let n = pyramid.n_rows();
    // column of each a_{i,j}
    let mut cols: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut values: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = &solution.entries[i];
        let p = row.len();
        let fresh = p - if i == 0 { 0 } else { solution.entries[i - 1].len() };
        let (start, end) = pyramid.row_span(i + 1);
        let above: Vec<usize> = if i == 0 { Vec::new() } else { cols[i - 1].clone() };
        let mut free = (start..=end).filter(|c| !above.contains(c));
        let mut row_cols = Vec::with_capacity(p);
        let mut row_vals = Vec::with_capacity(p);
        for (j, a) in row.iter().enumerate() {
            let value = if j < fresh {
                row_cols.push(free.next().expect("row span has room for new entries"));
                rationalize(a, tol).ok_or_else(|| Error::Numeric {
                    message: format!(
                        "a_{{{},{}}} = {} is not a real rational within tolerance; no tableau emitted",
                        i + 1,
                        j + 1,
                        format_complex(a)
                    ),
                    residual: a.im.abs(),
                })?
            } else {
                row_cols.push(above[j - fresh]);
                values[i - 1][j - fresh].clone()
            };
            row_vals.push(value);
        }
        cols.push(row_cols);
        values.push(row_vals);
    }
    // entries a_{i,j} - i laid out by column
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let (start, end) = pyramid.row_span(i + 1);
            (start..=end)
                .map(|c| {
                    let j = cols[i].iter().position(|&x| x == c).expect("every box is filled");
                    &values[i][j] - rational::int(i as i64 + 1)
                })
                .collect()
        })
        .collect();
    let t = Tableau::new(pyramid, rows)?;
    debug_assert!(t.is_column_connected());
    Ok(t)
}

fn rationalize(a: &Complex64, tol: f64) -> Option<Rational> {
    if a.im.abs() > tol {
        return None;
    }
    rational::from_f64_approx(a.re, MAX_DENOMINATOR, tol)
}

pub fn format_complex(a: &Complex64) -> String {
    if a.im == 0.0 {
        format!("{}", a.re)
    } else {
        format!("{}{:+}i", a.re, a.im)
    }
}
