//! Permutations of `{1..N}`, Bruhat order and parabolic coset representatives.
//!
//! Permutations are stored in one-line notation: `w(i)` is the `i`-th image.
//! Composition follows function composition, `(u * v)(i) = u(v(i))`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `N` accepted for permutations; everything here enumerates `S_N`.
pub const MAX_N: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // zero-based images
    images: Vec<u8>,
}

impl Permutation {
    /// Build from one-line notation with 1-based images.
    pub fn new(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::Domain("a permutation needs N >= 1".into()));
        }
        if n > MAX_N {
            return Err(Error::Guard(format!("N = {n} exceeds the permutation guard {MAX_N}")));
        }
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Domain(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images: images.iter().map(|&v| (v - 1) as u8).collect() })
    }

    pub(crate) fn from_zero_based(images: Vec<u8>) -> Self {
        debug_assert!(images.len() <= MAX_N);
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u8).collect() }
    }

    /// The longest element `w0(i) = N + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Permutation { images: (0..n as u8).rev().collect() }
    }

    /// The simple transposition `s_i = (i i+1)`, 1-based `i`.
    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "simple reflection s_{i} outside S_{n}");
        let mut images: Vec<u8> = (0..n as u8).collect();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// The transposition `(i j)`, 1-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<u8> = (0..n as u8).collect();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// One-line notation, 1-based.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `u.compose(v)(i) = u(v(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::Size(format!(
                "cannot compose permutations of S_{} and S_{}",
                self.n(),
                other.n()
            )));
        }
        Ok(self.then_unchecked(other))
    }

    fn then_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&v| self.images[v as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Bruhat order via the rank-matrix criterion: `x <= y` iff for every
    /// `i, k` the count `#{a <= i : x(a) >= k}` is at most the same count for `y`.
    pub fn bruhat_leq(&self, other: &Permutation) -> bool {
        assert_eq!(self.n(), other.n(), "Bruhat comparison across different N");
        let n = self.n();
        let mut cx = vec![0i32; n + 1];
        let mut cy = vec![0i32; n + 1];
        for i in 0..n {
            // cx[k] counts a <= i with x(a) >= k (zero-based k)
            cx[..=self.images[i] as usize].iter_mut().for_each(|c| *c += 1);
            cy[..=other.images[i] as usize].iter_mut().for_each(|c| *c += 1);
            if (0..n).any(|k| cx[k] > cy[k]) {
                return false;
            }
        }
        true
    }

    /// Left descents `i` (1-based) with `s_i w < w`, i.e. `i+1` before `i` in one-line notation.
    pub fn left_descents(&self) -> Vec<usize> {
        let inv = self.inverse();
        (1..self.n()).filter(|&i| inv.images[i - 1] > inv.images[i]).collect()
    }

    /// Right descents `i` (1-based) with `w s_i < w`.
    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.images[i - 1] > self.images[i]).collect()
    }

    /// Lexicographic rank in `0..N!`.
    pub fn rank(&self) -> usize {
        let n = self.n();
        let mut r = 0usize;
        for i in 0..n {
            let smaller_after =
                self.images[i + 1..].iter().filter(|&&v| v < self.images[i]).count();
            r = r * (n - i) + smaller_after;
        }
        r
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut r: usize) -> Permutation {
        let mut digits = vec![0usize; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = r % base;
            r /= base;
        }
        let mut pool: Vec<u8> = (0..n as u8).collect();
        let images = digits.into_iter().map(|d| pool.remove(d)).collect();
        Permutation { images }
    }

    /// All of `S_N` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(factorial(n));
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Advance to the next permutation in lexicographic order.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.n(), rhs.n(), "composing permutations of different N");
        self.then_unchecked(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::new(&images).map_err(serde::de::Error::custom)
    }
}

/// A composition of `N` into consecutive index blocks, describing the
/// parabolic subgroup `S_{b1} x S_{b2} x ...` of `S_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolicShape {
    block_sizes: Vec<usize>,
}

impl ParabolicShape {
    pub fn new(block_sizes: Vec<usize>) -> Result<Self> {
        if block_sizes.contains(&0) {
            return Err(Error::Domain(format!("block sizes must be positive: {block_sizes:?}")));
        }
        Ok(ParabolicShape { block_sizes })
    }

    /// The blocks of equal values in a sorted sequence, e.g. the stabilizer of
    /// an anti-dominant weight.
    pub fn from_runs<T: PartialEq>(sorted: &[T]) -> Self {
        let mut sizes = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i + 1;
            while j < sorted.len() && sorted[j] == sorted[i] {
                j += 1;
            }
            sizes.push(j - i);
            i = j;
        }
        ParabolicShape { block_sizes: sizes }
    }

    pub fn trivial(n: usize) -> Self {
        ParabolicShape { block_sizes: vec![1; n] }
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn n(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    /// Block index (0-based) of every position.
    fn block_of(&self) -> Vec<usize> {
        self.block_sizes.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat_n(b, s)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.block_sizes.iter().all(|&b| b == 1)
    }

    /// Whether `w` lies in the parabolic subgroup (preserves every block).
    pub fn contains(&self, w: &Permutation) -> bool {
        let block = self.block_of();
        (1..=w.n()).all(|i| block[i - 1] == block[w.apply(i) - 1])
    }

    /// Longest element of the parabolic subgroup: reverses each block.
    pub fn longest(&self) -> Permutation {
        let mut images = Vec::with_capacity(self.n());
        let mut start = 0u8;
        for &b in &self.block_sizes {
            let b = b as u8;
            images.extend((start..start + b).rev());
            start += b;
        }
        Permutation { images }
    }

    /// All elements of the parabolic subgroup.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Vec::<u8>::new()];
        let mut start = 0u8;
        for &b in &self.block_sizes {
            let block: Vec<Permutation> = Permutation::all(b);
            let mut next = Vec::with_capacity(out.len() * block.len());
            for prefix in &out {
                for p in &block {
                    let mut v = prefix.clone();
                    v.extend(p.images.iter().map(|&x| x + start));
                    next.push(v);
                }
            }
            out = next;
            start += b as u8;
        }
        out.into_iter().map(|images| Permutation { images }).collect()
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::Size(format!(
                "blocks {:?} do not partition 1..{n}",
                self.block_sizes
            )));
        }
        if n > MAX_N {
            return Err(Error::Guard(format!("N = {n} exceeds the permutation guard {MAX_N}")));
        }
        Ok(())
    }

    /// Minimal-length representatives of the left cosets `w W_J`: the
    /// permutations increasing on every block of positions.
    pub fn min_coset_reps(&self, n: usize) -> Result<Vec<Permutation>> {
        self.check_n(n)?;
        let mut out: Vec<Permutation> = Vec::new();
        let mut images = vec![0u8; n];
        let mut used = vec![false; n];
        self.fill_blocks(0, 0, &mut images, &mut used, &mut out);
        out.sort();
        Ok(out)
    }

    fn fill_blocks(
        &self,
        block: usize,
        pos: usize,
        images: &mut [u8],
        used: &mut [bool],
        out: &mut Vec<Permutation>,
    ) {
        if block == self.block_sizes.len() {
            out.push(Permutation { images: images.to_vec() });
            return;
        }
        let size = self.block_sizes[block];
        let free: Vec<u8> = (0..images.len() as u8).filter(|&v| !used[v as usize]).collect();
        for subset in combinations(&free, size) {
            for (k, &v) in subset.iter().enumerate() {
                images[pos + k] = v;
                used[v as usize] = true;
            }
            self.fill_blocks(block + 1, pos + size, images, used, out);
            for &v in &subset {
                used[v as usize] = false;
            }
        }
    }

    /// Maximal-length representatives of the right cosets `W_J z`: each is
    /// `w_J * u^{-1}` for a minimal left-coset representative `u`.
    pub fn max_coset_reps(&self, n: usize) -> Result<Vec<Permutation>> {
        let w_j = self.longest();
        let mut out: Vec<Permutation> =
            self.min_coset_reps(n)?.iter().map(|u| &w_j * &u.inverse()).collect();
        out.sort();
        Ok(out)
    }
}

/// Increasing `k`-subsets of a sorted slice, in lexicographic order.
pub(crate) fn combinations<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + items.len() - k {
                break;
            }
            if i == 0 && idx[0] == items.len() - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(Permutation::identity(2).compose(&p(&[2, 1])).unwrap(), p(&[2, 1]));
        assert_eq!(p(&[2, 1]).compose(&p(&[2, 1])).unwrap(), Permutation::identity(2));
        assert_eq!(p(&[2, 3, 1]).compose(&p(&[2, 3, 1])).unwrap(), p(&[3, 1, 2]));
        assert!(matches!(p(&[1, 2]).compose(&p(&[1, 2, 3])), Err(Error::Size(_))));
    }

    #[test]
    fn length_examples() {
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(p(&[2, 1]).length(), 1);
        assert_eq!(Permutation::longest(4).length(), 6);
    }

    #[test]
    fn longest_examples() {
        assert_eq!(Permutation::longest(2), p(&[2, 1]));
        assert_eq!(Permutation::longest(3), p(&[3, 2, 1]));
        assert_eq!(Permutation::longest(1), p(&[1]));
    }

    #[test]
    fn construction_errors() {
        assert!(Permutation::new(&[1, 1]).is_err());
        assert!(Permutation::new(&[0, 1]).is_err());
        assert!(Permutation::new(&[]).is_err());
        let big: Vec<usize> = (1..=13).collect();
        assert!(matches!(Permutation::new(&big), Err(Error::Guard(_))));
    }

    #[test]
    fn bruhat_examples() {
        let w = p(&[3, 1, 2]);
        assert!(Permutation::identity(3).bruhat_leq(&w));
        assert!(p(&[2, 1]).bruhat_leq(&p(&[2, 1])));
        assert!(!p(&[2, 3, 1]).bruhat_leq(&p(&[2, 1, 3])));
    }

    #[test]
    fn group_laws() {
        for n in 1..=5 {
            let w0 = Permutation::longest(n);
            let l0 = w0.length();
            for w in Permutation::all(n) {
                assert_eq!(&w * &w.inverse(), Permutation::identity(n));
                assert_eq!(w.length() + (&w0 * &w).length(), l0);
                assert_eq!(w.inverse().length(), w.length());
            }
        }
    }

    #[test]
    fn rank_roundtrip() {
        for (r, w) in Permutation::all(5).into_iter().enumerate() {
            assert_eq!(w.rank(), r);
            assert_eq!(Permutation::unrank(5, r), w);
        }
    }

    /// Bruhat order as the transitive closure of `w < w t` with `t` a
    /// transposition and the length going up.
    fn bruhat_closure(n: usize) -> HashSet<(Permutation, Permutation)> {
        let all = Permutation::all(n);
        let mut rel = HashSet::new();
        for x in &all {
            let mut seen = HashSet::new();
            let mut queue = VecDeque::from([x.clone()]);
            seen.insert(x.clone());
            while let Some(u) = queue.pop_front() {
                for i in 1..=n {
                    for j in i + 1..=n {
                        let v = &u * &Permutation::transposition(n, i, j);
                        if v.length() > u.length() && seen.insert(v.clone()) {
                            queue.push_back(v);
                        }
                    }
                }
            }
            for y in seen {
                rel.insert((x.clone(), y));
            }
        }
        rel
    }

    #[test]
    fn bruhat_matches_closure_oracle() {
        for n in 1..=4 {
            let rel = bruhat_closure(n);
            let all = Permutation::all(n);
            for x in &all {
                for y in &all {
                    let leq = x.bruhat_leq(y);
                    assert_eq!(leq, rel.contains(&(x.clone(), y.clone())), "{x} <= {y}");
                    if leq {
                        assert!(x.length() <= y.length());
                        if y.bruhat_leq(x) {
                            assert_eq!(x, y);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coset_rep_examples() {
        let whole = ParabolicShape::new(vec![2]).unwrap();
        assert_eq!(whole.max_coset_reps(2).unwrap(), vec![p(&[2, 1])]);
        assert_eq!(whole.min_coset_reps(2).unwrap(), vec![Permutation::identity(2)]);
        let triv = ParabolicShape::trivial(2);
        assert_eq!(triv.max_coset_reps(2).unwrap(), Permutation::all(2));
        assert_eq!(ParabolicShape::trivial(3).min_coset_reps(3).unwrap(), Permutation::all(3));

        let shape = ParabolicShape::new(vec![2, 1]).unwrap();
        let mins = shape.min_coset_reps(3).unwrap();
        let mut lengths: Vec<usize> = mins.iter().map(|w| w.length()).collect();
        lengths.sort();
        assert_eq!(lengths, vec![0, 1, 2]);
        assert_eq!(shape.max_coset_reps(3).unwrap().len(), 3);
        assert!(shape.min_coset_reps(4).is_err());
    }

    /// Enumerate S_N, group into cosets by brute force and pick extreme lengths.
    #[test]
    fn coset_reps_match_enumeration() {
        for blocks in [vec![2, 1], vec![1, 2], vec![2, 2], vec![1, 3], vec![3, 1, 1], vec![2, 1, 2]] {
            let shape = ParabolicShape::new(blocks.clone()).unwrap();
            let n = shape.n();
            let sub = shape.elements();
            let mut right_max = Vec::new();
            let mut left_min = Vec::new();
            let mut seen_r = HashSet::new();
            let mut seen_l = HashSet::new();
            for w in Permutation::all(n) {
                let right: Vec<Permutation> = sub.iter().map(|u| u * &w).collect();
                let left: Vec<Permutation> = sub.iter().map(|u| &w * u).collect();
                let rmax = right.iter().max_by_key(|v| v.length()).unwrap().clone();
                let lmin = left.iter().min_by_key(|v| v.length()).unwrap().clone();
                if seen_r.insert(rmax.clone()) {
                    right_max.push(rmax);
                }
                if seen_l.insert(lmin.clone()) {
                    left_min.push(lmin);
                }
            }
            right_max.sort();
            left_min.sort();
            let expected = factorial(n) / blocks.iter().map(|&b| factorial(b)).product::<usize>();
            assert_eq!(right_max.len(), expected);
            assert_eq!(shape.max_coset_reps(n).unwrap(), right_max, "{blocks:?}");
            assert_eq!(shape.min_coset_reps(n).unwrap(), left_min, "{blocks:?}");
            // the max rep of u W_J is u * w_J
            let w_j = shape.longest();
            for u in &left_min {
                let left: Vec<Permutation> = sub.iter().map(|v| u * v).collect();
                let lmax = left.iter().max_by_key(|v| v.length()).unwrap();
                assert_eq!(*lmax, u * &w_j);
            }
        }
    }

    #[test]
    fn combinations_lex() {
        assert_eq!(combinations(&[1, 2, 3], 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(&[1, 2], 0), vec![Vec::<i32>::new()]);
        assert_eq!(combinations(&[1, 2], 3), Vec::<Vec<i32>>::new());
        assert_eq!(combinations(&[4], 1), vec![vec![4]]);
    }

    #[test]
    fn json_one_based() {
        let w = p(&[2, 3, 1]);
        assert_eq!(serde_json::to_string(&w).unwrap(), "[2,3,1]");
        let back: Permutation = serde_json::from_str("[2,3,1]").unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<Permutation>("[2,2]").is_err());
    }
}
