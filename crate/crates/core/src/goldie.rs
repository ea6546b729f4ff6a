//! Goldie rank polynomials, Goldie ranks of primitive quotients and the
//! dimension sums over column-strict tableaux.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kl::{load_or_build, tableau_inv_mult, CacheStatus, KlTable, MAX_TABLE_N};
use crate::polynomials::{block_vandermonde, block_vandermonde_at, MultiPoly};
use crate::rational::{self, Rational};
use crate::rs::{is_minimal_in_cell, minimal_cell_rep, q_of_weight, recording_tableau};
use crate::symgroup::{ParabolicShape, Permutation};
use crate::tableaux::{find_row_equivalent, Partition, Predicate, Tableau};
use crate::weights::{act, antidominant_conjugate, coset_split, Weight};

pub use crate::tableaux::enumerate_column_strict;

/// One integral factor of a weight, one per coset of Q modulo Z.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    #[serde(with = "rational::serde_str")]
    pub coset_rep: Rational,
    pub positions: Vec<usize>,
    pub sub_weight: Weight,
    pub q_tableau: Tableau,
    pub shape: Partition,
    /// `d(α_z)`.
    pub d: Permutation,
    /// The minimal element of the left cell of `d`.
    pub cell_rep: Permutation,
    pub polynomial: MultiPoly,
    pub delta: Weight,
    #[serde(with = "rational::serde_int")]
    pub rank: BigInt,
}

/// Parabolic induction data read off a column-separated rearrangement `A` of `Q(α)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedData {
    pub tableau: Tableau,
    /// Block sizes of the Levi factor.
    pub levi_blocks: Vec<usize>,
    pub gamma: Weight,
    #[serde(with = "rational::serde_int")]
    pub dim_f: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldieReport {
    pub weight: Weight,
    pub factors: Vec<FactorReport>,
    #[serde(with = "rational::serde_int")]
    pub rank: BigInt,
    pub completely_prime: bool,
    pub induced: Option<InducedData>,
}

/// Engine holding one shared KL table per `N`.
pub struct Goldie {
    cache_dir: Option<PathBuf>,
    strict: bool,
    n_guard: usize,
    tables: Mutex<HashMap<usize, Arc<KlTable>>>,
    events: Mutex<Vec<CacheStatus>>,
    bform_memo: Mutex<HashMap<Permutation, Arc<MultiPoly>>>,
}

impl Default for Goldie {
    fn default() -> Self {
        Self::new()
    }
}

impl Goldie {
    pub fn new() -> Self {
        Goldie {
            cache_dir: None,
            strict: false,
            n_guard: MAX_TABLE_N,
            tables: Mutex::new(HashMap::new()),
            events: Mutex::new(Vec::new()),
            bform_memo: Mutex::new(HashMap::new()),
        }
    }

    /// Persist KL tables under `dir`.
    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache_dir = Some(dir.into());
        self
    }

    /// Reject non-minimal cell representatives instead of substituting.
    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    /// Largest `N` for which a KL table may be built.
    pub fn n_guard(mut self, n: usize) -> Self {
        self.n_guard = n;
        self
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// What happened to the on-disk cache for each table loaded so far.
    pub fn cache_events(&self) -> Vec<CacheStatus> {
        self.events.lock().unwrap().clone()
    }

    pub fn table(&self, n: usize) -> Result<Arc<KlTable>> {
        if n > self.n_guard {
            return Err(Error::Guard(format!(
                "N = {n} exceeds the configured guard of {} (KL table of {n}! elements)",
                self.n_guard
            )));
        }
        let mut tables = self.tables.lock().unwrap();
        if let Some(t) = tables.get(&n) {
            return Ok(Arc::clone(t));
        }
        let (table, status) = load_or_build(n, self.cache_dir.as_deref())?;
        self.events.lock().unwrap().push(status);
        let table = Arc::new(table);
        tables.insert(n, Arc::clone(&table));
        Ok(table)
    }

    fn cell_minimal(&self, w: &Permutation) -> Result<Permutation> {
        if is_minimal_in_cell(w) {
            return Ok(w.clone());
        }
        let m = minimal_cell_rep(w);
        if self.strict {
            return Err(Error::Precondition(format!(
                "{w} is not minimal in its left cell; the minimal representative is {m}"
            )));
        }
        Ok(m)
    }

    /// `p_w = Σ_{z ∈ D^λ} (L(w):M(z)) z⁻¹(h_λ)`, with `λ` the shape of `Q(w)`
    /// and `D^λ` the longest representatives of `W^λ \ W`.
    ///
    /// ```
    /// use goldie::{goldie::Goldie, symgroup::Permutation};
    /// let g = Goldie::new();
    /// let p = g.goldie_poly_bform(&Permutation::new(&[2, 1]).unwrap()).unwrap();
    /// assert_eq!(p.to_string(), "x2 - x1");
    /// ```
    pub fn goldie_poly_bform(&self, w: &Permutation) -> Result<MultiPoly> {
        let w = self.cell_minimal(w)?;
        if let Some(p) = self.bform_memo.lock().unwrap().get(&w) {
            return Ok((**p).clone());
        }
        let lambda = recording_tableau(&w).pyramid().partition();
        let p = self.coset_sum(&w, lambda.transpose().parts())?;
        self.bform_memo.lock().unwrap().insert(w, Arc::new(p.clone()));
        Ok(p)
    }

    /// `p^π_w = Σ_{z ∈ D^π} (L(w):M(z)) z⁻¹(h_π)`, for any `w`.
    pub fn goldie_poly_pi(&self, w: &Permutation, pi: &crate::tableaux::Pyramid) -> Result<MultiPoly> {
        if pi.n() != w.n() {
            return Err(Error::Size(format!("pyramid has {} boxes, permutation acts on {}", pi.n(), w.n())));
        }
        self.coset_sum(w, pi.column_heights())
    }

    fn coset_sum(&self, w: &Permutation, blocks: &[usize]) -> Result<MultiPoly> {
        let n = w.n();
        let table = self.table(n)?;
        let h = block_vandermonde(blocks);
        let mut p = MultiPoly::zero(n);
        for z in ParabolicShape::new(blocks.to_vec())?.max_coset_reps(n)? {
            let c = table.inv_mult(w, &z);
            if c != 0 {
                p.add_scaled(&h.act(&z.inverse()), &rational::int(c));
            }
        }
        Ok(p)
    }

    /// The rank data of each integral factor of `α`.
    pub fn factor_reports(&self, alpha: &Weight) -> Result<Vec<FactorReport>> {
        coset_split(alpha)
            .parts
            .into_iter()
            .map(|part| {
                let beta = part.sub_weight;
                let (delta, d) = antidominant_conjugate(&beta)?;
                let cell_rep = minimal_cell_rep(&d);
                let polynomial = self.goldie_poly_bform(&cell_rep)?;
                let value = polynomial.evaluate(&delta);
                if !value.is_integer() || !value.is_positive() {
                    return Err(Error::InternalConsistency(format!(
                        "p_{cell_rep} at {delta} is {}, not a positive integer",
                        rational::format(&value)
                    )));
                }
                let q_tableau = q_of_weight(&beta);
                Ok(FactorReport {
                    coset_rep: part.rep,
                    positions: part.positions,
                    shape: q_tableau.pyramid().partition(),
                    q_tableau,
                    sub_weight: beta,
                    d,
                    cell_rep,
                    polynomial,
                    delta,
                    rank: value.to_integer(),
                })
            })
            .collect()
    }

    /// The Goldie rank of `U(gl_N)/I(α)` with its derivation.
    ///
    /// Fails with an internal-consistency error if the rank and the
    /// complete-primality test disagree.
    pub fn goldie_rank(&self, alpha: &Weight) -> Result<GoldieReport> {
        let factors = self.factor_reports(alpha)?;
        let rank = factors.iter().fold(BigInt::one(), |acc, f| acc * &f.rank);
        let prime = completely_prime(alpha);
        if prime != rank.is_one() {
            return Err(Error::InternalConsistency(format!(
                "rank of {alpha} is {rank} but the complete-primality test says {prime}"
            )));
        }
        Ok(GoldieReport { weight: alpha.clone(), factors, rank, completely_prime: prime, induced: induced_data(alpha) })
    }

    /// `(α, p_w(α))` with `α = w⁻¹ γ(C)`, where `C` has the shape of `Q(w)`
    /// and holds `r` throughout its `r`-th row from the bottom.
    pub fn theorem_one_witness(&self, w: &Permutation) -> Result<(Weight, Rational)> {
        if !is_minimal_in_cell(w) {
            return Err(Error::Precondition(format!(
                "{w} is not minimal in its left cell; the minimal representative is {}",
                minimal_cell_rep(w)
            )));
        }
        let lambda = recording_tableau(w).pyramid().partition();
        let rows: Vec<Vec<Rational>> =
            lambda.parts().iter().enumerate().map(|(r, &len)| vec![rational::int(r as i64 + 1); len]).collect();
        let c = Tableau::left_justified(rows)?;
        let alpha = act(&w.inverse(), &c.gamma())?;
        let value = self.goldie_poly_bform(w)?.evaluate(&alpha);
        Ok((alpha, value))
    }

    /// `Σ_B (L(A):M(B)) h_π(γ(B))` over column-strict `B` on the pyramid of
    /// `A` with the content of `A`.
    pub fn dimension_sum(&self, a: &Tableau) -> Result<BigInt> {
        if !a.gamma().is_integral() {
            return Err(Error::Domain("dimension sums need integer entries".into()));
        }
        if !a.is_column_strict() {
            return Err(Error::Precondition(format!("{a:?} is not column-strict")));
        }
        let table = self.table(a.n())?;
        let heights = a.pyramid().column_heights();
        let mut total = Rational::zero();
        for b in enumerate_column_strict(a.pyramid(), &a.content())? {
            let c = tableau_inv_mult(&table, a, &b)?;
            if c != 0 {
                total += rational::int(c) * block_vandermonde_at(heights, &b.gamma());
            }
        }
        if !total.is_integer() || total.is_negative() {
            return Err(Error::InternalConsistency(format!(
                "dimension sum for {a:?} is {}",
                rational::format(&total)
            )));
        }
        Ok(total.to_integer())
    }
}

/// `∏ (x_i - x_j)/d(i,j)` over entries `i` strictly above `j` in one column
/// of `A`, where `d(i,j)` is the number of rows between them.
///
/// ```
/// use goldie::{goldie::goldie_poly_product, tableaux::Tableau};
/// let a = Tableau::from_int_rows(&[vec![1, 3], vec![2]]).unwrap();
/// assert_eq!(goldie_poly_product(&a).unwrap().to_string(), "x2 - x1");
/// ```
pub fn goldie_poly_product(a: &Tableau) -> Result<MultiPoly> {
    let n = a.n();
    let mut entries: Vec<usize> = Vec::with_capacity(n);
    for v in a.gamma().coords() {
        match rational::to_i64(v) {
            Some(k) if k >= 1 && k as usize <= n => entries.push(k as usize),
            _ => return Err(Error::Domain(format!("{a:?} does not have entries 1..{n}"))),
        }
    }
    let mut seen = entries.clone();
    seen.sort_unstable();
    if seen != (1..=n).collect::<Vec<_>>() {
        return Err(Error::Domain(format!("{a:?} does not have entries 1..{n}")));
    }
    if !a.is_column_separated() {
        return Err(Error::Precondition(format!("{a:?} is not column-separated")));
    }
    let pi = a.pyramid();
    let mut p = MultiPoly::one(n);
    for k in 1..=n {
        for l in k + 1..=n {
            if pi.col(k) == pi.col(l) {
                let d = rational::int((pi.row(l) - pi.row(k)) as i64);
                p = &p * &MultiPoly::difference(n, entries[k - 1], entries[l - 1], &d);
            }
        }
    }
    Ok(p)
}

/// Whether `I(α)` is completely prime: `Q(α)` is row-equivalent to a
/// column-connected tableau.
pub fn completely_prime(alpha: &Weight) -> bool {
    find_row_equivalent(&q_of_weight(alpha), Predicate::ColumnConnected).is_some()
}

/// Induction data from a column-separated rearrangement of `Q(α)`, if any.
pub fn induced_data(alpha: &Weight) -> Option<InducedData> {
    let a = find_row_equivalent(&q_of_weight(alpha), Predicate::ColumnSeparated)?;
    let levi_blocks = a.pyramid().column_heights().to_vec();
    let gamma = a.gamma();
    let dim = block_vandermonde_at(&levi_blocks, &gamma);
    Some(InducedData { levi_blocks, gamma, dim_f: dim.to_integer(), tableau: a })
}
