//! Weights of `gl_N`: vectors of exact rational coordinates `x_1(α), ..., x_N(α)`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::symgroup::{ParabolicShape, Permutation};
use crate::tableaux::Pyramid;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    #[serde(with = "rational::serde_vec")]
    coords: Vec<Rational>,
}

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Self {
        Weight { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight { coords: coords.iter().map(|&c| rational::int(c)).collect() }
    }

    pub fn zero(n: usize) -> Self {
        Weight { coords: vec![Rational::zero(); n] }
    }

    /// Parse a comma-separated list such as `1/2,2,3/2,1`.
    pub fn parse_csv(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .filter(|part| !part.trim().is_empty())
            .map(rational::parse)
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        Ok(Weight { coords })
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Coordinate `x_i`, 1-based.
    pub fn x(&self, i: usize) -> &Rational {
        &self.coords[i - 1]
    }

    /// All coordinates are integers.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// All coordinates lie in one coset of Q modulo Z.
    pub fn is_single_coset(&self) -> bool {
        self.coords.windows(2).all(|p| rational::same_coset(&p[0], &p[1]))
    }

    /// The stabilizer blocks of an anti-dominant weight (runs of equal coordinates).
    pub fn stabilizer(&self) -> ParabolicShape {
        ParabolicShape::from_runs(&self.coords)
    }

    pub fn to_csv(&self) -> String {
        self.coords.iter().map(rational::format).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

/// `(-1, -2, ..., -N)`.
pub fn rho(n: usize) -> Weight {
    Weight { coords: (1..=n as i64).map(|i| rational::int(-i)).collect() }
}

/// The permutation action on coordinates: `β = wα` has `β_{w(i)} = α_i`.
pub fn act(w: &Permutation, alpha: &Weight) -> Result<Weight> {
    if w.n() != alpha.n() {
        return Err(Error::Size(format!(
            "permutation of S_{} cannot act on a weight with {} coordinates",
            w.n(),
            alpha.n()
        )));
    }
    let mut coords = vec![Rational::zero(); alpha.n()];
    for (i, c) in alpha.coords.iter().enumerate() {
        coords[w.apply(i + 1) - 1] = c.clone();
    }
    Ok(Weight { coords })
}

/// The anti-dominant conjugate `δ` (coordinates nondecreasing) and the
/// minimal-length `d` with `act(d, δ) = α`.
///
/// ```
/// use goldie::weights::{antidominant_conjugate, Weight};
/// let (delta, d) = antidominant_conjugate(&Weight::from_ints(&[2, 1])).unwrap();
/// assert_eq!(delta, Weight::from_ints(&[1, 2]));
/// assert_eq!(d.images(), vec![2, 1]);
/// ```
pub fn antidominant_conjugate(alpha: &Weight) -> Result<(Weight, Permutation)> {
    if !alpha.is_single_coset() {
        return Err(Error::Domain(format!(
            "weight {alpha} mixes cosets of Q mod Z; split it with coset_split first"
        )));
    }
    let mut order: Vec<usize> = (0..alpha.n()).collect();
    // stable, so ties keep their relative order and d has minimal length
    order.sort_by(|&a, &b| alpha.coords[a].cmp(&alpha.coords[b]));
    let delta = Weight { coords: order.iter().map(|&i| alpha.coords[i].clone()).collect() };
    let d = Permutation::from_zero_based(order.iter().map(|&i| i as u8).collect());
    Ok((delta, d))
}

/// Whether `α` lies in the upper closure of the chamber attached to `w`.
pub fn upper_closure_contains(w: &Permutation, alpha: &Weight) -> bool {
    if w.n() != alpha.n() {
        return false;
    }
    let winv = w.inverse();
    let n = alpha.n();
    for i in 1..=n {
        for j in i + 1..=n {
            let (xi, xj) = (alpha.x(i), alpha.x(j));
            if winv.apply(i) < winv.apply(j) {
                if xi > xj {
                    return false;
                }
            } else if xi <= xj {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetPart {
    /// Coset representative in `[0, 1)`.
    #[serde(with = "rational::serde_str")]
    pub rep: Rational,
    /// 1-based positions, ascending.
    pub positions: Vec<usize>,
    /// Integral weight `(a_{i_1} - z, a_{i_2} - z, ...)`.
    pub sub_weight: Weight,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetSplit {
    pub parts: Vec<CosetPart>,
}

impl CosetSplit {
    /// Add the representatives back at their positions.
    pub fn reassemble(&self) -> Weight {
        let n = self.parts.iter().map(|p| p.positions.len()).sum();
        let mut coords = vec![Rational::zero(); n];
        for part in &self.parts {
            for (k, &pos) in part.positions.iter().enumerate() {
                coords[pos - 1] = &part.sub_weight.coords[k] + &part.rep;
            }
        }
        Weight { coords }
    }
}

/// Group the coordinates by their class modulo Z, ordered by representative.
pub fn coset_split(alpha: &Weight) -> CosetSplit {
    let mut parts: Vec<CosetPart> = Vec::new();
    for (i, c) in alpha.coords.iter().enumerate() {
        let rep = rational::coset_rep(c);
        let shifted = c - &rep;
        match parts.iter_mut().find(|p| p.rep == rep) {
            Some(part) => {
                part.positions.push(i + 1);
                part.sub_weight.coords.push(shifted);
            }
            None => parts.push(CosetPart {
                rep,
                positions: vec![i + 1],
                sub_weight: Weight { coords: vec![shifted] },
            }),
        }
    }
    parts.sort_by(|a, b| a.rep.cmp(&b.rep));
    CosetSplit { parts }
}

/// The weight `β` of a pyramid: coordinate `i` is
/// `(q_1 + ... + q_{col(i)-1}) - (q_{col(i)+1} + ... + q_l)`.
pub fn beta(pi: &Pyramid) -> Weight {
    let q = pi.column_heights();
    let coords = (1..=pi.n())
        .map(|k| {
            let c = pi.col(k);
            let left: usize = q[..c - 1].iter().sum();
            let right: usize = q[c..].iter().sum();
            rational::int(left as i64 - right as i64)
        })
        .collect();
    Weight { coords }
}
