//! Sparse polynomials in `x_1, ..., x_N` with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::rational::{self, Rational};
use crate::symgroup::Permutation;
use crate::tableaux::{Partition, Pyramid};
use crate::weights::Weight;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n: usize,
    // exponent vector -> nonzero coefficient
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// The variable `x_i`, 1-based.
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "x_{i} is not a variable in {n} unknowns");
        let mut e = vec![0; n];
        e[i - 1] = 1;
        let mut p = Self::zero(n);
        p.terms.insert(e, Rational::one());
        p
    }

    /// Build from `(exponents, coefficient)` pairs; zero coefficients are dropped.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u8>, Rational)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u8>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&d| d as usize).sum()).max()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        MultiPoly { n: self.n, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Add `c * other` in place.
    pub fn add_scaled(&mut self, other: &MultiPoly, c: &Rational) {
        assert_eq!(self.n, other.n, "polynomials in different numbers of variables");
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    /// Exact substitution `x_i -> α_i`.
    pub fn evaluate(&self, alpha: &Weight) -> Rational {
        assert_eq!(alpha.n(), self.n, "evaluating at a weight of the wrong size");
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(self.n);
        let max_deg = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0);
        for c in alpha.coords() {
            let mut row = vec![Rational::one()];
            for d in 1..=max_deg as usize {
                let next = &row[d - 1] * c;
                row.push(next);
            }
            powers.push(row);
        }
        let mut total = Rational::zero();
        for (e, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, &d) in e.iter().enumerate() {
                if d > 0 {
                    term *= &powers[i][d as usize];
                }
            }
            total += term;
        }
        total
    }

    /// The substitution `x_i -> x_{w(i)}`, so that
    /// `act(w, p)` evaluated at `wα` equals `p` evaluated at `α`.
    pub fn act(&self, w: &Permutation) -> MultiPoly {
        assert_eq!(w.n(), self.n, "permutation and polynomial sizes differ");
        let images = w.images();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0u8; self.n];
                for (i, &d) in e.iter().enumerate() {
                    f[images[i] - 1] = d;
                }
                (f, c.clone())
            })
            .collect();
        MultiPoly { n: self.n, terms }
    }

    /// `(x_i - x_j) / d`.
    pub fn difference(n: usize, i: usize, j: usize, d: &Rational) -> MultiPoly {
        let inv = d.recip();
        let mut p = Self::var(n, i).scale(&inv);
        p.add_scaled(&Self::var(n, j), &-inv);
        p
    }

    /// Compare exponent vectors in display order: higher total degree first,
    /// then the larger exponent of the highest-index variable first.
    fn display_cmp(a: &[u8], b: &[u8]) -> Ordering {
        let da: usize = a.iter().map(|&d| d as usize).sum();
        let db: usize = b.iter().map(|&d| d as usize).sum();
        db.cmp(&da).then_with(|| b.iter().rev().cmp(a.iter().rev()))
    }

    /// Terms in display order.
    pub fn sorted_terms(&self) -> Vec<(&[u8], &Rational)> {
        let mut v: Vec<(&[u8], &Rational)> = self.terms().collect();
        v.sort_by(|a, b| Self::display_cmp(a.0, b.0));
        v
    }
}

/// `∏ (x_i - x_j)/(j - i)` over pairs `i < j` inside the same block of
/// consecutive indices.
pub fn block_vandermonde(block_sizes: &[usize]) -> MultiPoly {
    let n: usize = block_sizes.iter().sum();
    let mut p = MultiPoly::one(n);
    let mut start = 1;
    for &b in block_sizes {
        for i in start..start + b {
            for j in i + 1..start + b {
                p = &p * &MultiPoly::difference(n, i, j, &rational::int((j - i) as i64));
            }
        }
        start += b;
    }
    p
}

/// Direct evaluation of [`block_vandermonde`] at `α`.
pub fn block_vandermonde_at(block_sizes: &[usize], alpha: &Weight) -> Rational {
    let mut value = Rational::one();
    let mut start = 1;
    for &b in block_sizes {
        for i in start..start + b {
            for j in i + 1..start + b {
                value *= (alpha.x(i) - alpha.x(j)) / rational::int((j - i) as i64);
            }
        }
        start += b;
    }
    value
}

/// `h_λ`: the product over transpositions of `S_{λ'_1} x S_{λ'_2} x ...`.
///
/// ```
/// use goldie::polynomials::h_lambda;
/// use goldie::tableaux::Partition;
/// let h = h_lambda(&Partition::new(vec![2, 1]).unwrap());
/// assert_eq!(h.to_string(), "-x2 + x1");
/// ```
pub fn h_lambda(lambda: &Partition) -> MultiPoly {
    block_vandermonde(lambda.transpose().parts())
}

/// `h_π`: the product over pairs of boxes `i < j` in the same column.
/// Boxes of a column are numbered consecutively, so the blocks are the
/// column heights.
pub fn h_pi(pi: &Pyramid) -> MultiPoly {
    block_vandermonde(pi.column_heights())
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, rhs.n, "polynomials in different numbers of variables");
        let mut out = MultiPoly::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(i, &d)| if d == 1 { format!("x{}", i + 1) } else { format!("x{}^{d}", i + 1) })
                .collect();
            let mut factors = Vec::new();
            if vars.is_empty() || !mag.is_one() {
                factors.push(rational::format(&mag));
            }
            factors.extend(vars);
            out.push_str(&factors.join("*"));
        }
        f.write_str(&out)
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
