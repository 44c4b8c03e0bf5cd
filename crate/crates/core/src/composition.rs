//! Compositions of `n`, the face poset of the canonical Weyl chamber
//! `x_1 <= ... <= x_n`, and adjacent-transposition words.
//!
//! A composition `(λ_1, ..., λ_ℓ)` indexes the face on which coordinates are
//! constant on consecutive blocks of sizes `λ_k`. Internally faces are compared
//! through their *break sets*: the cumulative sums `λ_1, λ_1+λ_2, ...` strictly
//! below `n`. A coarser face (fewer breaks) is larger in the order `≺`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use crate::error::{domain, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(domain("a composition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(domain(format!("composition parts must be positive: {parts:?}")));
        }
        Ok(Composition { parts })
    }

    /// The one-part composition `(n)`: the diagonal of the chamber.
    pub fn whole(n: usize) -> Self {
        Composition { parts: vec![n] }
    }

    /// `(1, ..., 1)`: the full chamber.
    pub fn ones(n: usize) -> Self {
        Composition { parts: vec![1; n] }
    }

    /// The facet `x_i = x_{i+1}` (1-based `i`), a length `n-1` composition.
    pub fn wall(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(domain(format!("wall index {i} outside 1..{}", n.saturating_sub(1))));
        }
        let mut parts = vec![1; n - 1];
        parts[i - 1] = 2;
        Ok(Composition { parts })
    }

    pub fn from_breaks(n: usize, breaks: &BTreeSet<usize>) -> Self {
        let mut parts = Vec::with_capacity(breaks.len() + 1);
        let mut prev = 0;
        for &b in breaks.iter().chain(std::iter::once(&n)) {
            parts.push(b - prev);
            prev = b;
        }
        Composition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, the dimension of the face.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn breaks(&self) -> BTreeSet<usize> {
        let mut acc = 0;
        self.parts[..self.parts.len() - 1]
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect()
    }

    /// 0-based coordinate ranges of the blocks.
    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.parts
            .iter()
            .map(|p| {
                let r = start..start + p;
                start += p;
                r
            })
            .collect()
    }

    /// 0-based block containing 0-based coordinate `pos`.
    pub fn block_of(&self, pos: usize) -> usize {
        let mut acc = 0;
        for (k, p) in self.parts.iter().enumerate() {
            acc += p;
            if pos < acc {
                return k;
            }
        }
        panic!("position {pos} outside composition of {}", self.n());
    }

    fn same_n(&self, other: &Composition) -> Result<()> {
        if self.n() != other.n() {
            return Err(domain(format!(
                "compositions of different integers: {self} and {other}"
            )));
        }
        Ok(())
    }

    /// Smallest composition above both; its face is the intersection of the two faces.
    pub fn join(&self, other: &Composition) -> Result<Composition> {
        self.same_n(other)?;
        let common: BTreeSet<usize> = self.breaks().intersection(&other.breaks()).copied().collect();
        Ok(Composition::from_breaks(self.n(), &common))
    }

    /// `self ≺ other` (reflexive): the face of `other` lies inside the face of `self`.
    pub fn precedes(&self, other: &Composition) -> Result<bool> {
        self.same_n(other)?;
        Ok(other.breaks().is_subset(&self.breaks()))
    }

    /// Adds the constraint `x_i = x_{i+1}` (1-based `i`) by merging the blocks
    /// holding positions `i` and `i+1`.
    pub fn res(&self, i: usize) -> Result<Composition> {
        let n = self.n();
        if i == 0 || i >= n {
            return Err(domain(format!("wall index {i} outside 1..{}", n.saturating_sub(1))));
        }
        let k = self.block_of(i - 1);
        let k2 = self.block_of(i);
        if k == k2 {
            return Ok(self.clone());
        }
        let mut parts = self.parts.clone();
        parts[k] += parts[k2];
        parts.remove(k2);
        Ok(Composition { parts })
    }

    /// Block expansion: `z_k` repeated `λ_k` times.
    pub fn embed<T: Clone>(&self, z: &[T]) -> Result<Vec<T>> {
        if z.len() != self.len() {
            return Err(domain(format!(
                "embedding into {self} needs {} coordinates, got {}",
                self.len(),
                z.len()
            )));
        }
        Ok(self
            .parts
            .iter()
            .zip(z)
            .flat_map(|(&p, v)| std::iter::repeat_n(v.clone(), p))
            .collect())
    }

    /// First coordinate of each block; inverse of [`embed`](Self::embed) on the face.
    pub fn collapse<T: Clone>(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.n());
        self.blocks().into_iter().map(|r| x[r.start].clone()).collect()
    }

    /// Whether `x` is constant on every block.
    pub fn is_constant_on_blocks<T: PartialEq>(&self, x: &[T]) -> bool {
        self.blocks()
            .into_iter()
            .all(|r| x[r.clone()].iter().all(|v| *v == x[r.start]))
    }
}

/// Which alternating positions of a `d`-part composition are pinned to 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pattern {
    /// Positions d-1, d-3, ... counted from the left. Only these can be
    /// singletons forced by the second-order condition at a minimizer of
    /// `p_{d+1}`; agrees with `Definition` for even `d`.
    #[default]
    Minimizer,
    /// Positions 1, 3, 5, ... counted from the left.
    Definition,
    /// Positions d, d-2, d-4, ... counted from the right.
    Mirrored,
}

impl std::str::FromStr for Pattern {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "minimizer" => Ok(Pattern::Minimizer),
            "definition" => Ok(Pattern::Definition),
            "mirrored" => Ok(Pattern::Mirrored),
            other => Err(format!("unknown pattern {other:?} (expected minimizer|definition|mirrored)")),
        }
    }
}

/// All compositions of `n` with exactly `len` parts, in lexicographic order.
pub fn enumerate_compositions(n: usize, len: usize) -> Result<Vec<Composition>> {
    if len == 0 || len > n {
        return Err(domain(format!("no compositions of {n} into {len} parts")));
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fill(n, len, &mut cur, &mut out);
    Ok(out)
}

fn fill(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
    if slots == 1 {
        cur.push(rest);
        out.push(Composition { parts: cur.clone() });
        cur.pop();
        return;
    }
    for first in 1..=rest - (slots - 1) {
        cur.push(first);
        fill(rest - first, slots - 1, cur, out);
        cur.pop();
    }
}

/// Every composition of `n`, grouped by length.
pub fn enumerate_all_compositions(n: usize) -> Vec<Composition> {
    (1..=n).flat_map(|l| enumerate_compositions(n, l).unwrap()).collect()
}

/// Alternate odd compositions: the `d`-part compositions whose pinned
/// positions (see [`Pattern`]) equal 1. For `d = 1` this is `[(n)]`.
pub fn enumerate_compmax(n: usize, d: usize, pattern: Pattern) -> Result<Vec<Composition>> {
    if d == 0 || d > n {
        return Err(domain(format!("CompMax({n},{d}) needs 1 <= d <= n")));
    }
    if d == 1 {
        return Ok(vec![Composition::whole(n)]);
    }
    let pinned = |k: usize| -> bool {
        // k is 0-based
        match pattern {
            Pattern::Minimizer => k + 1 < d && (d - 2 - k).is_multiple_of(2),
            Pattern::Definition => k.is_multiple_of(2),
            Pattern::Mirrored => (d - 1 - k).is_multiple_of(2),
        }
    };
    Ok(enumerate_compositions(n, d)?
        .into_iter()
        .filter(|c| c.parts.iter().enumerate().all(|(k, &p)| !pinned(k) || p == 1))
        .collect())
}

/// A word in the adjacent transpositions `s_i = (i, i+1)`, 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PermutationWord {
    pub transpositions: Vec<usize>,
}

impl PermutationWord {
    pub fn len(&self) -> usize {
        self.transpositions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transpositions.is_empty()
    }

    /// Apply the transpositions in order.
    pub fn apply<T>(&self, x: &mut [T]) {
        for &i in &self.transpositions {
            x.swap(i - 1, i);
        }
    }

    /// Distinct wall indices, ascending.
    pub fn walls(&self) -> Vec<usize> {
        self.transpositions.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }
}

/// Bubble sort recording every swap. Equal neighbours are never exchanged, so
/// the word length is the inversion number of `x`.
pub fn minimal_adjacent_transpositions<T: PartialOrd + Clone>(x: &[T]) -> (PermutationWord, Vec<T>) {
    let mut v = x.to_vec();
    let n = v.len();
    let mut word = Vec::new();
    for i in 1..n {
        for j in 0..n - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                word.push(j + 1);
            }
        }
    }
    (PermutationWord { transpositions: word }, v)
}

/// The largest composition whose blocks carry equal consecutive coordinates.
pub fn multiplicity_composition<T: PartialEq>(x: &[T]) -> Result<Composition> {
    if x.is_empty() {
        return Err(domain("multiplicity composition of an empty vector"));
    }
    let mut parts = vec![1];
    for w in x.windows(2) {
        if w[0] == w[1] {
            *parts.last_mut().unwrap() += 1;
        } else {
            parts.push(1);
        }
    }
    Ok(Composition { parts })
}
