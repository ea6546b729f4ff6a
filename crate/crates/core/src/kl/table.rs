use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symgroup::{factorial, Permutation};

/// Largest `N` for which a full table is held in memory.
pub const MAX_TABLE_N: usize = 7;

/// A polynomial in one variable with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UniPoly(Vec<i64>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly(vec![1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn eval_one(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Renders as `1 + t + 2*t^3`; the zero polynomial as `0`.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            match (mag, var.is_empty()) {
                (_, true) => out.push_str(&mag.to_string()),
                (1, false) => out.push_str(&var),
                (_, false) => out.push_str(&format!("{mag}*{var}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Kazhdan–Lusztig polynomials `P_{x,y}` for all pairs in `S_N`.
///
/// Permutations are indexed by lexicographic rank. Distinct polynomials are
/// interned; the table stores one id per ordered pair.
#[derive(Clone, PartialEq, Eq)]
pub struct KlTable {
    n: usize,
    perms: Vec<Permutation>,
    lengths: Vec<u8>,
    polys: Vec<UniPoly>,
    values_at_one: Vec<i64>,
    // ids[y * size + x]
    ids: Vec<u32>,
}

/// Polynomials under construction: an interner shared by the build and the cache loader.
pub(crate) struct Interner {
    pub(crate) polys: Vec<UniPoly>,
    index: HashMap<UniPoly, u32>,
}

impl Interner {
    pub(crate) fn new() -> Self {
        let mut it = Interner { polys: Vec::new(), index: HashMap::new() };
        it.intern(UniPoly::zero());
        it.intern(UniPoly::one());
        it
    }

    pub(crate) fn intern(&mut self, p: UniPoly) -> u32 {
        if let Some(&id) = self.index.get(&p) {
            return id;
        }
        let id = self.polys.len() as u32;
        self.polys.push(p.clone());
        self.index.insert(p, id);
        id
    }
}

impl KlTable {
    /// Build with the same-length strata processed in parallel.
    pub fn build(n: usize) -> Result<Self> {
        Self::build_with(n, true)
    }

    pub fn build_sequential(n: usize) -> Result<Self> {
        Self::build_with(n, false)
    }

    pub fn build_with(n: usize, parallel: bool) -> Result<Self> {
        check_n(n)?;
        let mut table = Self::empty(n);
        let size = table.size();
        let mut interner = Interner::new();

        // left multiplication by simple reflections, by index
        let lmul: Vec<Vec<u32>> = (1..n)
            .map(|i| {
                let s = Permutation::simple(n, i);
                table.perms.iter().map(|x| (&s * x).rank() as u32).collect()
            })
            .collect();
        let first_descent: Vec<usize> = table
            .perms
            .iter()
            .map(|y| y.left_descents().first().copied().unwrap_or(0))
            .collect();

        let max_len = n * (n - 1) / 2;
        let mut strata: Vec<Vec<usize>> = vec![Vec::new(); max_len + 1];
        for (k, &l) in table.lengths.iter().enumerate() {
            strata[l as usize].push(k);
        }
        // (z, mu(z, y)) with z < y and nonzero mu, filled as columns complete
        let mut mu: Vec<Vec<(u32, i64)>> = vec![Vec::new(); size];

        for stratum in &strata {
            let compute = |&y: &usize| -> Vec<UniPoly> {
                if table.lengths[y] == 0 {
                    return (0..size).map(|x| if x == y { UniPoly::one() } else { UniPoly::zero() }).collect();
                }
                table.column(y, first_descent[y], &lmul, &interner, &mu)
            };
            let columns: Vec<Vec<UniPoly>> = if parallel {
                stratum.par_iter().map(compute).collect()
            } else {
                stratum.iter().map(compute).collect()
            };
            for (&y, column) in stratum.iter().zip(columns) {
                let ly = table.lengths[y] as usize;
                for (x, p) in column.into_iter().enumerate() {
                    let lx = table.lengths[x] as usize;
                    if x != y && !p.is_zero() && (ly - lx) % 2 == 1 {
                        let m = p.coeff((ly - lx - 1) / 2);
                        if m != 0 {
                            mu[y].push((x as u32, m));
                        }
                    }
                    table.ids[y * size + x] = interner.intern(p);
                }
            }
        }
        table.finish(interner.polys);
        Ok(table)
    }

    pub(crate) fn empty(n: usize) -> Self {
        let perms = Permutation::all(n);
        let lengths = perms.iter().map(|p| p.length() as u8).collect();
        let size = perms.len();
        KlTable { n, perms, lengths, polys: Vec::new(), values_at_one: Vec::new(), ids: vec![0; size * size] }
    }

    pub(crate) fn set_id(&mut self, x: usize, y: usize, id: u32) {
        let size = self.size();
        self.ids[y * size + x] = id;
    }

    pub(crate) fn finish(&mut self, polys: Vec<UniPoly>) {
        self.values_at_one = polys.iter().map(|p| p.eval_one()).collect();
        self.polys = polys;
    }

    /// `P_{x,y}` for every `x`, using the recursion along the left descent
    /// `s = s_i` of `y`, with `v = s y`:
    ///
    /// `P_{x,y} = t^{1-c} P_{sx,v} + t^c P_{x,v} - Σ μ(z,v) t^{(ℓ(y)-ℓ(z))/2} P_{x,z}`
    ///
    /// where `c = 1` if `sx < x` and the sum runs over `z < v` with `sz < z`.
    fn column(
        &self,
        y: usize,
        i: usize,
        lmul: &[Vec<u32>],
        interner: &Interner,
        mu: &[Vec<(u32, i64)>],
    ) -> Vec<UniPoly> {
        let size = self.size();
        let s = &lmul[i - 1];
        let v = s[y] as usize;
        let ly = self.lengths[y] as usize;
        let terms: Vec<(usize, i64, usize)> = mu[v]
            .iter()
            .filter(|&&(z, _)| self.lengths[s[z as usize] as usize] < self.lengths[z as usize])
            .map(|&(z, m)| (z as usize, m, (ly - self.lengths[z as usize] as usize) / 2))
            .collect();
        let get = |x: usize, w: usize| -> &UniPoly { &interner.polys[self.ids[w * size + x] as usize] };
        (0..size)
            .map(|x| {
                let sx = s[x] as usize;
                let (a, b) = (get(sx, v), get(x, v));
                if a.is_zero() && b.is_zero() {
                    return UniPoly::zero();
                }
                let c = usize::from(self.lengths[sx] < self.lengths[x]);
                let mut acc = vec![0i64; ly / 2 + 2];
                add_shifted(&mut acc, a, 1 - c, 1);
                add_shifted(&mut acc, b, c, 1);
                for &(z, m, shift) in &terms {
                    add_shifted(&mut acc, get(x, z), shift, -m);
                }
                UniPoly::new(acc)
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N!`.
    pub fn size(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn index(&self, w: &Permutation) -> usize {
        debug_assert_eq!(w.n(), self.n);
        w.rank()
    }

    /// Number of distinct polynomials (including 0 and 1).
    pub fn distinct_polys(&self) -> &[UniPoly] {
        &self.polys
    }

    pub(crate) fn id(&self, x: usize, y: usize) -> u32 {
        self.ids[y * self.size() + x]
    }

    pub fn poly_by_index(&self, x: usize, y: usize) -> &UniPoly {
        &self.polys[self.id(x, y) as usize]
    }

    /// `P_{x,y}`.
    pub fn poly(&self, x: &Permutation, y: &Permutation) -> &UniPoly {
        self.poly_by_index(self.index(x), self.index(y))
    }

    fn value_by_index(&self, x: usize, y: usize) -> i64 {
        self.values_at_one[self.id(x, y) as usize]
    }

    /// `[M(x):L(y)] = P_{x w0, y w0}(1)`.
    pub fn mult(&self, x: &Permutation, y: &Permutation) -> i64 {
        let w0 = Permutation::longest(self.n);
        self.value_by_index(self.index(&(x * &w0)), self.index(&(y * &w0)))
    }

    /// `(L(x):M(y)) = (-1)^{ℓ(x)+ℓ(y)} P_{y,x}(1)`.
    pub fn inv_mult(&self, x: &Permutation, y: &Permutation) -> i64 {
        let (xi, yi) = (self.index(x), self.index(y));
        let sign = if (self.lengths[xi] + self.lengths[yi]).is_multiple_of(2) { 1 } else { -1 };
        sign * self.value_by_index(yi, xi)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("KL tables need N >= 1".into()));
    }
    if n > MAX_TABLE_N {
        return Err(Error::Guard(format!(
            "in-memory KL tables are capped at N = {MAX_TABLE_N} ({}! = {} elements requested)",
            n,
            factorial(n)
        )));
    }
    Ok(())
}

fn add_shifted(acc: &mut Vec<i64>, p: &UniPoly, shift: usize, scale: i64) {
    if p.is_zero() {
        return;
    }
    if acc.len() < p.0.len() + shift {
        acc.resize(p.0.len() + shift, 0);
    }
    for (k, &c) in p.0.iter().enumerate() {
        acc[k + shift] += scale * c;
    }
}

impl fmt::Debug for KlTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KlTable(N={}, {} distinct polynomials)", self.n, self.polys.len())
    }
}
