//! Permutations in one-line notation and the statistics read off them.
//!
//! All public indices and values are 1-based, matching how permutations are
//! written on paper; the images are stored 0-based internally.

mod diagram;
mod subset;

pub use diagram::{ray_choices, Choice, ChoiceRecord, DiagonalEntry, DiagonalSequence, DiagonalType, RayBuilder};
pub use subset::SubsetId;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Longest classical pattern accepted by [`Permutation::avoids`].
pub const MAX_PATTERN_LEN: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct StatVector {
    pub fp: usize,
    pub exc: usize,
    pub dexc: usize,
    pub cyc: usize,
    pub inv: usize,
}

impl Permutation {
    /// Builds a permutation from 1-based one-line notation.
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        let mut images = Vec::with_capacity(n);
        for &v in values {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!("value {v} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            images.push(v - 1);
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let one_line: Vec<usize> = images.iter().map(|&v| v + 1).collect();
        Self::from_one_line(&one_line)?;
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// π(i) for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// 0-based images.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Self { images: inv }
    }

    /// `self ∘ other`, i.e. i ↦ self(other(i)).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "composition of unequal lengths");
        Self {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    /// Cycles written with their smallest element first, sorted by that
    /// element. Entries are 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cycle_count() == 1
    }

    pub fn is_involution(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| self.images[v] == i)
    }

    pub fn inversions(&self) -> usize {
        let p = &self.images;
        (0..p.len())
            .map(|i| p[i + 1..].iter().filter(|&&b| b < p[i]).count())
            .sum()
    }

    pub fn stats(&self) -> StatVector {
        let p = &self.images;
        let fp = p.iter().enumerate().filter(|&(i, &v)| v == i).count();
        let exc = p.iter().enumerate().filter(|&(i, &v)| v > i).count();
        let dexc = p.iter().enumerate().filter(|&(i, &v)| i < v && v < p[v]).count();
        StatVector {
            fp,
            exc,
            dexc,
            cyc: self.cycle_count(),
            inv: self.inversions(),
        }
    }

    pub fn double_deficiencies(&self) -> usize {
        let p = &self.images;
        p.iter().enumerate().filter(|&(i, &v)| i > v && v > p[v]).count()
    }

    /// Excedance values π(i) > i, left to right.
    pub fn excedance_values(&self) -> Vec<usize> {
        self.values_where(|i, v| v > i)
    }

    /// Values with π(i) ≥ i, left to right.
    pub fn weak_excedance_values(&self) -> Vec<usize> {
        self.values_where(|i, v| v >= i)
    }

    /// Values with π(i) ≤ i, left to right.
    pub fn non_excedance_values(&self) -> Vec<usize> {
        self.values_where(|i, v| v <= i)
    }

    /// Values with π(i) < i, left to right.
    pub fn deficiency_values(&self) -> Vec<usize> {
        self.values_where(|i, v| v < i)
    }

    fn values_where(&self, keep: impl Fn(usize, usize) -> bool) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &v)| keep(i, v))
            .map(|(_, &v)| v + 1)
            .collect()
    }

    /// Writes each cycle smallest-first, orders cycles by decreasing smallest
    /// element, and reads the concatenation as one-line notation.
    pub fn foata_hat(&self) -> Self {
        let mut cycles = self.cycles();
        cycles.reverse();
        let images = cycles.into_iter().flatten().map(|v| v - 1).collect();
        Self::from_images_unchecked(images)
    }

    /// Number of i with π(i) < π(i+1) < π(i+2).
    pub fn count_consecutive_123(&self) -> usize {
        self.images.windows(3).filter(|w| w[0] < w[1] && w[1] < w[2]).count()
    }

    pub fn ascents(&self) -> usize {
        self.images.windows(2).filter(|w| w[0] < w[1]).count()
    }

    pub fn left_to_right_minima(&self) -> usize {
        let mut min = usize::MAX;
        let mut count = 0;
        for &v in &self.images {
            if v < min {
                min = v;
                count += 1;
            }
        }
        count
    }

    /// True iff no subsequence of `self` is order-isomorphic to `pattern`.
    pub fn avoids(&self, pattern: &Permutation) -> Result<bool> {
        let m = pattern.len();
        if m > MAX_PATTERN_LEN {
            return Err(Error::PatternTooLong {
                len: m,
                max: MAX_PATTERN_LEN,
            });
        }
        if m == 0 {
            return Ok(false);
        }
        let n = self.len();
        if m > n {
            return Ok(true);
        }
        let mut idx: Vec<usize> = (0..m).collect();
        loop {
            if self.matches_at(pattern, &idx) {
                return Ok(false);
            }
            // next m-combination of 0..n
            let mut k = m;
            loop {
                if k == 0 {
                    return Ok(true);
                }
                k -= 1;
                if idx[k] < n - m + k {
                    break;
                }
            }
            idx[k] += 1;
            for t in k + 1..m {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }

    fn matches_at(&self, pattern: &Permutation, positions: &[usize]) -> bool {
        let pat = &pattern.images;
        for a in 0..positions.len() {
            for b in a + 1..positions.len() {
                let here = self.images[positions[a]] < self.images[positions[b]];
                if here != (pat[a] < pat[b]) {
                    return false;
                }
            }
        }
        true
    }

    /// 321-avoidance through the two-increasing-subsequences characterisation.
    pub fn avoids_321_via_merge(&self) -> bool {
        is_increasing(&self.excedance_values()) && is_increasing(&self.non_excedance_values())
    }

    /// All permutations of length `n` in lexicographic order.
    pub fn all(n: usize) -> Permutations {
        Permutations {
            current: Some((0..n).collect()),
            first: None,
        }
    }

    /// The lexicographic block of permutations of length `n` with π(1) = `first`.
    pub fn with_first(n: usize, first: usize) -> Permutations {
        assert!((1..=n).contains(&first), "first value outside 1..={n}");
        let mut start = vec![first - 1];
        start.extend((0..n).filter(|&v| v != first - 1));
        Permutations {
            current: Some(start),
            first: Some(first - 1),
        }
    }

    /// Uniform random permutation by Fisher–Yates.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            images.swap(i, j);
        }
        Self { images }
    }
}

pub(crate) fn is_increasing(values: &[usize]) -> bool {
    values.windows(2).all(|w| w[0] < w[1])
}

pub struct Permutations {
    current: Option<Vec<usize>>,
    first: Option<usize>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        if next_lexicographic(&mut next) && self.first.is_none_or(|f| next[0] == f) {
            self.current = Some(next);
        }
        Some(Permutation { images: cur })
    }
}

fn next_lexicographic(v: &mut [usize]) -> bool {
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

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Space- or comma-separated one-line notation.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>().map_err(|e| Error::Parse {
                    what: "permutation",
                    detail: format!("`{t}`: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_line(&values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert!("5,7 2 4".parse::<Permutation>().is_err());
        assert!("1 1".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
        assert!("2 x".parse::<Permutation>().is_err());
        assert_eq!(p("3, 1,2").to_string(), "3 1 2");
        assert!(p("").is_empty());
    }

    #[test]
    fn stats_small() {
        let s = p("2 1").stats();
        assert_eq!(
            s,
            StatVector {
                fp: 0,
                exc: 1,
                dexc: 0,
                cyc: 1,
                inv: 1
            }
        );
        let s = p("5 7 2 4 3 8 1 6 9 12 10 11").stats();
        assert_eq!((s.fp, s.exc, s.cyc), (2, 4, 5));
    }

    #[test]
    fn enumeration_counts_and_blocks() {
        for n in 0..=6 {
            let all: Vec<_> = Permutation::all(n).collect();
            let expected: usize = (1..=n).product();
            assert_eq!(all.len(), expected);
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            if n > 0 {
                let blocks: usize = (1..=n).map(|f| Permutation::with_first(n, f).count()).sum();
                assert_eq!(blocks, expected);
            }
        }
    }

    #[test]
    fn foata_examples() {
        assert_eq!(Permutation::identity(3).foata_hat(), p("3 2 1"));
        // (1 2 3) -> 1 2 3, single cycle
        assert_eq!(p("2 3 1").foata_hat(), p("1 2 3"));
    }

    #[test]
    fn consecutive_pattern() {
        assert_eq!(p("1 2 3 4").count_consecutive_123(), 2);
        assert_eq!(p("3 2 1").count_consecutive_123(), 0);
    }

    #[test]
    fn classical_patterns() {
        let pat = p("1 2 3");
        assert!(p("2 1").avoids(&pat).unwrap());
        assert!(!p("3 2 1").avoids(&p("3 2 1")).unwrap());
        let fig3 = p("3 6 7 8 1 9 2 10 4 5 11");
        assert!(fig3.avoids(&p("3 2 1")).unwrap());
        assert!(fig3.avoids_321_via_merge());
        assert!(!p("3 2 1").avoids_321_via_merge());
        assert!(p("1 2").avoids(&p("1 2 3 4 5")).is_err());
    }

    #[test]
    fn merge_characterisation_matches_pattern_test() {
        let pat = p("3 2 1");
        for n in 0..=7 {
            for perm in Permutation::all(n) {
                assert_eq!(perm.avoids_321_via_merge(), perm.avoids(&pat).unwrap(), "{perm}");
            }
        }
    }

    #[test]
    fn foata_transport() {
        for n in 0..=6 {
            let mut images = std::collections::HashSet::new();
            for perm in Permutation::all(n) {
                let hat = perm.foata_hat();
                let s = perm.stats();
                assert_eq!(s.dexc, hat.count_consecutive_123(), "{perm}");
                assert_eq!(s.exc, hat.ascents(), "{perm}");
                assert_eq!(s.cyc, hat.left_to_right_minima(), "{perm}");
                images.insert(hat);
            }
            assert_eq!(images.len(), (1..=n).product::<usize>());
        }
    }

    #[test]
    fn foata_injective_on_s7() {
        let set: std::collections::HashSet<_> = Permutation::all(7).map(|q| q.foata_hat()).collect();
        assert_eq!(set.len(), 5040);
    }
}
