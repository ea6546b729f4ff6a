//! Verification suites. Each check computes one quantity along two
//! independent routes and records every disagreement as a counterexample.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::goldie::{completely_prime, goldie_poly_product, induced_data, Goldie};
use crate::onedim::{connected_tableau_of, stup_solve, StupInput};
use crate::polynomials::{block_vandermonde_at, MultiPoly};
use crate::rational::{self, Rational};
use crate::rs::{is_minimal_in_cell, q_of_weight, recording_tableau, rs_pair, standard_tableaux};
use crate::symgroup::{factorial, Permutation};
use crate::tableaux::{enumerate_column_strict, find_row_equivalent, q_pi, Partition, Predicate, Pyramid, Tableau};
use crate::weights::{act, antidominant_conjugate, coset_split, upper_closure_contains, Weight};

/// At most this many counterexamples are kept per suite.
pub const MAX_FAILURES: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Moeglin,
    One,
    Myg,
    Maing,
    Inverse,
    Rs,
    Red,
    Stup,
}

impl Suite {
    pub const ALL: [Suite; 8] =
        [Suite::Moeglin, Suite::One, Suite::Myg, Suite::Maing, Suite::Inverse, Suite::Rs, Suite::Red, Suite::Stup];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Moeglin => "moeglin",
            Suite::One => "one",
            Suite::Myg => "myg",
            Suite::Maing => "maing",
            Suite::Inverse => "inverse",
            Suite::Rs => "rs",
            Suite::Red => "red",
            Suite::Stup => "stup",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub check: String,
    pub counterexample: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub n: usize,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    fn new(suite: Suite, n: usize) -> Self {
        SuiteReport { suite, n, checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, name: &str, counterexample: impl FnOnce() -> Value) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_FAILURES {
            self.failures.push(Failure { check: name.into(), counterexample: counterexample() });
        }
    }

    /// Record a computation that should have succeeded but raised an error.
    fn error(&mut self, name: &str, input: Value, e: &Error) {
        self.check(false, name, || json!({ "input": input, "error": e.to_string() }));
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Residual bound for the floating-point suite.
    pub tol: f64,
    pub seed: u64,
    /// Random instances per sampled check.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { tol: 1e-8, seed: 0x5eed, samples: 100 }
    }
}

pub fn run(g: &Goldie, suite: Suite, n: usize, opts: &VerifyOptions) -> Result<SuiteReport> {
    if n == 0 {
        return Err(Error::Domain("verification needs N >= 1".into()));
    }
    match suite {
        Suite::Moeglin => moeglin(g, n),
        Suite::One => one(g, n),
        Suite::Myg => myg(g, n),
        Suite::Maing => maing(g, n),
        Suite::Inverse => inverse(g, n),
        Suite::Rs => rs(n),
        Suite::Red => red(g, n),
        Suite::Stup => stup(n, opts),
    }
}

/// Sorted multisets of size `k` with entries in `lo..=hi`.
pub fn multisets(k: usize, lo: i64, hi: i64) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(k: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<Rational>>) {
        if cur.len() == k {
            out.push(cur.iter().map(|&v| rational::int(v)).collect());
            return;
        }
        let start = cur.last().copied().unwrap_or(lo);
        for v in start..=hi {
            cur.push(v);
            go(k, lo, hi, cur, out);
            cur.pop();
        }
    }
    go(k, lo, hi, &mut cur, &mut out);
    out
}

/// All weights with coordinates drawn from `values`.
pub fn weights_over(n: usize, values: &[Rational]) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Rational>| {
                values.iter().map(move |v| {
                    let mut next = w.clone();
                    next.push(v.clone());
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(Weight::new).collect()
}

fn minimal_elements(n: usize) -> Vec<Permutation> {
    Permutation::all(n).into_iter().filter(is_minimal_in_cell).collect()
}

/// `∏_{i<j} (x_j - x_i)/(j - i)`.
fn reversed_vandermonde(n: usize) -> MultiPoly {
    let mut p = MultiPoly::one(n);
    for i in 1..=n {
        for j in i + 1..=n {
            p = &p * &MultiPoly::difference(n, j, i, &rational::int((j - i) as i64));
        }
    }
    p
}

fn one(g: &Goldie, n: usize) -> Result<SuiteReport> {
    g.table(n)?;
    let mut report = SuiteReport::new(Suite::One, n);
    for w in minimal_elements(n) {
        match g.theorem_one_witness(&w) {
            Ok((alpha, value)) => report.check(value.is_one(), "value at the witness is 1", || {
                json!({ "w": w, "alpha": alpha, "value": rational::format(&value) })
            }),
            Err(e) => report.error("value at the witness is 1", json!({ "w": w }), &e),
        }
    }
    Ok(report)
}

fn myg(g: &Goldie, n: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Myg, n);
    let id = g.goldie_poly_bform(&Permutation::identity(n))?;
    report.check(id == MultiPoly::one(n), "p_id = 1", || json!({ "p_id": id }));
    let top = g.goldie_poly_bform(&Permutation::longest(n))?;
    let expected = reversed_vandermonde(n);
    report.check(top == expected, "p_w0 is the Vandermonde quotient", || json!({ "p_w0": top, "expected": expected }));
    for w in minimal_elements(n) {
        let q = recording_tableau(&w);
        let Some(a) = find_row_equivalent(&q, Predicate::ColumnSeparated) else {
            continue;
        };
        let lhs = g.goldie_poly_bform(&w)?;
        match goldie_poly_product(&a) {
            Ok(rhs) => report.check(lhs == rhs, "coset sum equals product formula", || {
                json!({ "w": w, "q": q, "a": a, "coset_sum": lhs, "product": rhs })
            }),
            Err(e) => report.error("coset sum equals product formula", json!({ "w": w, "a": a }), &e),
        }
    }
    Ok(report)
}

fn maing(g: &Goldie, n: usize) -> Result<SuiteReport> {
    g.table(n)?;
    let mut report = SuiteReport::new(Suite::Maing, n);
    for lambda in Partition::all(n) {
        let pi = Pyramid::left_justified(&lambda);
        let mut polys: HashMap<Permutation, MultiPoly> = HashMap::new();
        for content in multisets(n, 1, n as i64) {
            for a in enumerate_column_strict(&pi, &content)? {
                let (delta, d) = antidominant_conjugate(&a.gamma())?;
                if !polys.contains_key(&d) {
                    polys.insert(d.clone(), g.goldie_poly_pi(&d, &pi)?);
                }
                let lhs = polys[&d].evaluate(&delta);
                match g.dimension_sum(&a) {
                    Ok(rhs) => {
                        let rhs = Rational::from_integer(rhs);
                        report.check(lhs == rhs, "dimension polynomial equals dimension sum", || {
                            json!({
                                "a": a, "d": d, "delta": delta,
                                "polynomial_value": rational::format(&lhs),
                                "dimension_sum": rational::format(&rhs),
                            })
                        })
                    }
                    Err(e) => report.error("dimension polynomial equals dimension sum", json!({ "a": a }), &e),
                }
            }
        }
    }
    Ok(report)
}

fn inverse(g: &Goldie, n: usize) -> Result<SuiteReport> {
    let t = g.table(n)?;
    let mut report = SuiteReport::new(Suite::Inverse, n);
    let w = t.perms();
    let mult: Vec<Vec<i64>> = w.iter().map(|x| w.iter().map(|y| t.mult(x, y)).collect()).collect();
    let inv: Vec<Vec<i64>> = w.iter().map(|x| w.iter().map(|y| t.inv_mult(x, y)).collect()).collect();
    let size = w.len();
    for i in 0..size {
        for k in 0..size {
            let ml: i64 = (0..size).map(|j| mult[i][j] * inv[j][k]).sum();
            let lm: i64 = (0..size).map(|j| inv[i][j] * mult[j][k]).sum();
            let want = i64::from(i == k);
            report.check(ml == want && lm == want, "[M:L] and (L:M) are inverse", || {
                json!({ "x": w[i], "z": w[k], "ML": ml, "LM": lm })
            });
        }
    }
    Ok(report)
}

fn moeglin(g: &Goldie, n: usize) -> Result<SuiteReport> {
    g.table(n)?;
    let mut report = SuiteReport::new(Suite::Moeglin, n);
    let values: Vec<Rational> = (1..=3).map(rational::int).collect();
    for alpha in weights_over(n, &values) {
        let rank = match g.factor_reports(&alpha) {
            Ok(fs) => fs.iter().fold(BigInt::one(), |acc, f| acc * &f.rank),
            Err(e) => {
                report.error("completely prime iff rank 1", json!({ "alpha": alpha }), &e);
                continue;
            }
        };
        let prime = completely_prime(&alpha);
        report.check(prime == rank.is_one(), "completely prime iff rank 1", || {
            json!({ "alpha": alpha, "q": q_of_weight(&alpha), "completely_prime": prime, "rank": rank.to_string() })
        });
        if prime {
            let induced = induced_data(&alpha);
            let ok = induced.as_ref().is_some_and(|d| d.dim_f.is_one());
            report.check(ok, "completely prime ideals are induced from one-dimensional modules", || {
                json!({ "alpha": alpha, "induced": induced })
            });
        }
    }
    Ok(report)
}

fn red(g: &Goldie, n: usize) -> Result<SuiteReport> {
    g.table(n)?;
    let mut report = SuiteReport::new(Suite::Red, n);
    let values = [rational::int(0), rational::int(1), rational::int(2), rational::frac(1, 2), rational::frac(3, 2)];
    for alpha in weights_over(n, &values) {
        let split = coset_split(&alpha);
        if split.parts.len() < 2 {
            continue;
        }
        let mut sep_product = Rational::one();
        let mut all_separated = true;
        for part in &split.parts {
            match find_row_equivalent(&q_of_weight(&part.sub_weight), Predicate::ColumnSeparated) {
                Some(a) => sep_product *= block_vandermonde_at(a.pyramid().column_heights(), &a.gamma()),
                None => all_separated = false,
            }
        }
        let rank = match g.factor_reports(&alpha) {
            Ok(fs) => Rational::from_integer(fs.iter().fold(BigInt::one(), |acc, f| acc * &f.rank)),
            Err(e) => {
                report.error("rank is multiplicative over cosets", json!({ "alpha": alpha }), &e);
                continue;
            }
        };
        if all_separated {
            report.check(rank == sep_product, "rank is multiplicative over cosets", || {
                json!({
                    "alpha": alpha,
                    "kl_product": rational::format(&rank),
                    "induced_product": rational::format(&sep_product),
                })
            });
        }
        if let Some(d) = induced_data(&alpha) {
            let dim = Rational::from_integer(d.dim_f.clone());
            report.check(dim == rank, "dim F equals the rank", || {
                json!({ "alpha": alpha, "rank": rational::format(&rank), "induced": d })
            });
        }
    }
    Ok(report)
}

fn rs(n: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Rs, n);
    let all = Permutation::all(n);

    let mut squares = 0usize;
    for lambda in Partition::all(n) {
        let f = standard_tableaux(&lambda)?.len();
        squares += f * f;
    }
    report.check(squares == factorial(n), "sum of squared standard tableau counts is N!", || {
        json!({ "sum": squares, "factorial": factorial(n) })
    });
    let mut seen: HashSet<(Tableau, Tableau)> = HashSet::new();
    for w in &all {
        let pair = rs_pair(w);
        let ok = pair.p.is_standard() && pair.q.is_standard() && pair.p.pyramid() == pair.q.pyramid();
        report.check(ok, "rs_pair gives standard tableaux of one shape", || json!({ "w": w, "pair": pair }));
        let fresh = seen.insert((pair.p, pair.q));
        report.check(fresh, "rs_pair is injective", || json!({ "w": w }));
        let q = recording_tableau(w);
        let p_inv = rs_pair(&w.inverse()).p;
        report.check(q == p_inv, "Q(w) = P(w^-1)", || json!({ "w": w, "q": q, "p_inverse": p_inv }));
    }

    let deltas = multisets(n, 0, n as i64);
    for w in all.iter().filter(|w| is_minimal_in_cell(w)) {
        for delta in &deltas {
            let delta = Weight::new(delta.clone());
            let alpha = act(w, &delta)?;
            let (_, d) = antidominant_conjugate(&alpha)?;
            let inside = d == *w;
            report.check(inside == upper_closure_contains(w, &alpha), "upper closure membership", || {
                json!({ "w": w, "alpha": alpha, "d": d })
            });
            if inside {
                let back = q_of_weight(&alpha).gamma();
                report.check(back == alpha, "gamma(Q(alpha)) = alpha for minimal w", || {
                    json!({ "w": w, "alpha": alpha, "gamma_q": back })
                });
            }
        }
    }

    for lambda in Partition::all(n) {
        for pi in Pyramid::all_of_shape(&lambda) {
            for content in multisets(n, 1, 4) {
                for a in enumerate_column_strict(&pi, &content)? {
                    let r = a.rho_read();
                    let shape = q_of_weight(&r).pyramid().partition();
                    let ok = shape == lambda
                        && q_pi(&r, &pi).and_then(|q| a.row_equivalent(&q)).unwrap_or(false);
                    report.check(ok, "A ~ Q_pi(rho(A))", || json!({ "a": a, "rho": r, "shape": shape }));
                }
            }
        }
    }
    Ok(report)
}

fn random_row_lengths(rng: &mut ChaCha8Rng, max_total: usize) -> Vec<usize> {
    let rows = rng.gen_range(1..=4.min(max_total));
    let mut p = Vec::with_capacity(rows);
    let mut total = 0;
    for i in 0..rows {
        let room = max_total - total - (rows - i - 1).min(max_total - total);
        // nondecreasing lengths: later rows may add nothing
        let min_step = usize::from(i == 0);
        let step = if room < min_step { min_step } else { rng.gen_range(min_step..=room.max(min_step)) };
        total += step;
        p.push(total);
    }
    p
}

fn unit_disk(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if z.norm() <= 1.0 {
            return z;
        }
    }
}

/// A random shift matrix for the given row lengths.
fn random_shift(rng: &mut ChaCha8Rng, p: &[usize]) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut s = vec![vec![0usize; n]; n];
    for i in 0..n.saturating_sub(1) {
        let diff = p[i + 1] - p[i];
        let right = rng.gen_range(0..=diff);
        s[i][i + 1] = right;
        s[i + 1][i] = diff - right;
    }
    for len in 2..n {
        for i in 0..n - len {
            let j = i + len;
            s[i][j] = s[i][j - 1] + s[j - 1][j];
            s[j][i] = s[j][j - 1] + s[j - 1][i];
        }
    }
    s
}

/// A random column-connected tableau with rational entries.
fn random_connected(rng: &mut ChaCha8Rng, max_total: usize) -> Result<Tableau> {
    let p = random_row_lengths(rng, max_total);
    let pyramid = Pyramid::new(p.clone(), random_shift(rng, &p))?;
    let heights = pyramid.column_heights().to_vec();
    let tops: Vec<Rational> = heights
        .iter()
        .map(|_| rational::frac(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
        .collect();
    let rows: Vec<Vec<Rational>> = (1..=pyramid.n_rows())
        .map(|row| {
            let (a, b) = pyramid.row_span(row);
            (a..=b)
                .map(|c| {
                    let top_row = *pyramid.column_rows(c).start();
                    &tops[c - 1] - rational::int((row - top_row) as i64)
                })
                .collect()
        })
        .collect();
    Tableau::new(pyramid, rows)
}

fn stup(n: usize, opts: &VerifyOptions) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Stup, n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples {
        let p = random_row_lengths(&mut rng, n);
        let l = *p.last().unwrap();
        let flat: Vec<Complex64> = (0..l).map(|_| unit_disk(&mut rng)).collect();
        let input = StupInput::from_flat(p.clone(), &flat)?;
        match stup_solve(&input, opts.tol) {
            Ok(sol) => {
                let copies = (1..p.len()).all(|i| sol.entries[i][p[i] - p[i - 1]..] == sol.entries[i - 1][..]);
                report.check(copies, "tail entries copy the previous row", || json!({ "input": input, "solution": sol }));
                report.check(sol.max_residual <= opts.tol, "elementary symmetric residuals", || {
                    json!({ "input": input, "max_residual": sol.max_residual })
                });
            }
            Err(e) => report.error("elementary symmetric residuals", json!({ "input": input }), &e),
        }
    }
    for _ in 0..opts.samples {
        let a = random_connected(&mut rng, n)?;
        let input = StupInput::of_tableau(&a)?;
        let sol = match stup_solve(&input, opts.tol) {
            Ok(sol) => sol,
            Err(e) => {
                report.error("rows are recovered", json!({ "a": a }), &e);
                continue;
            }
        };
        let mut worst = 0.0f64;
        for (i, row) in a.rows().iter().enumerate() {
            let mut want: Vec<f64> = row.iter().map(|v| rational::to_f64(v) + (i + 1) as f64).collect();
            let mut got: Vec<Complex64> = sol.entries[i].clone();
            want.sort_by(f64::total_cmp);
            got.sort_by(|x, y| x.re.total_cmp(&y.re));
            for (w, g) in want.iter().zip(&got) {
                worst = worst.max((g - Complex64::new(*w, 0.0)).norm());
            }
        }
        report.check(worst <= opts.tol, "rows are recovered", || json!({ "a": a, "error": worst }));
        let emitted = connected_tableau_of(&sol, a.pyramid().shift_matrix().to_vec(), 1e-6);
        let ok = matches!(&emitted, Ok(b) if b.is_column_connected() && b.row_equivalent(&a).unwrap_or(false));
        report.check(ok, "emitted tableau is row-equivalent", || {
            json!({ "a": a, "emitted": emitted.as_ref().ok(), "error": emitted.as_ref().err().map(|e| e.to_string()) })
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::Parse(_))));
    }

    #[test]
    fn helpers() {
        assert_eq!(multisets(2, 1, 3).len(), 6);
        assert_eq!(weights_over(2, &[rational::int(0), rational::int(1)]).len(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let p = random_row_lengths(&mut rng, 5);
            assert!(p.len() <= 4 && p[0] >= 1 && *p.last().unwrap() <= 5);
            assert!(p.windows(2).all(|w| w[0] <= w[1]));
            assert!(random_connected(&mut rng, 5).unwrap().is_column_connected());
        }
    }

    #[test]
    fn small_suites_pass() {
        let g = Goldie::new();
        let opts = VerifyOptions { samples: 20, ..Default::default() };
        for n in 1..=3 {
            for s in Suite::ALL {
                let r = run(&g, s, n, &opts).unwrap();
                assert!(r.passed(), "{s} at N={n}: {:?}", r.failures);
                assert!(r.checked > 0 || s == Suite::Red && n == 1, "{s} at N={n} checked nothing");
            }
        }
    }
}
