//! Splits of the taxon set `[n]` and circular orderings.

use std::fmt;

use crate::error::{Error, Result};
use crate::MAX_TAXA;

pub(crate) fn check_n(n: usize) -> Result<()> {
    if (3..=MAX_TAXA).contains(&n) {
        Ok(())
    } else {
        Err(Error::BadTaxonCount(n))
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// An unordered bipartition `A|B` of `[n]`.
///
/// Stored by its canonical side: the part that does not contain taxon 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    n: u8,
    part: u32,
}

impl Split {
    /// Builds the split with `side` as one of its parts (either part may be given).
    pub fn new(n: usize, side: &[usize]) -> Result<Split> {
        check_n(n)?;
        let mut mask = 0u32;
        for &t in side {
            if t == 0 || t > n {
                return Err(Error::InvalidSplit(format!("taxon {t} outside 1..={n}")));
            }
            if mask & (1 << (t - 1)) != 0 {
                return Err(Error::InvalidSplit(format!("taxon {t} repeated")));
            }
            mask |= 1 << (t - 1);
        }
        Split::from_mask(n, mask)
    }

    /// Builds a split from a bitmask of one side (bit `t - 1` for taxon `t`).
    pub fn from_mask(n: usize, mask: u32) -> Result<Split> {
        check_n(n)?;
        let full = full_mask(n);
        if mask & !full != 0 {
            return Err(Error::InvalidSplit(format!("mask {mask:#x} exceeds {n} taxa")));
        }
        let part = if mask & 1 != 0 { full & !mask } else { mask };
        if part == 0 || part == full {
            return Err(Error::InvalidSplit("one side is empty".into()));
        }
        Ok(Split { n: n as u8, part })
    }

    /// The trivial split `{t}|[n] - {t}`.
    pub fn trivial(n: usize, t: usize) -> Result<Split> {
        Split::new(n, &[t])
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// Bitmask of the canonical side (never contains taxon 1).
    pub fn mask(&self) -> u32 {
        self.part
    }

    /// Bitmask of the side containing taxon 1.
    pub fn other_mask(&self) -> u32 {
        full_mask(self.n()) & !self.part
    }

    /// Taxa of the canonical side, ascending.
    pub fn part(&self) -> Vec<usize> {
        taxa_of(self.part)
    }

    /// Taxa of the side containing taxon 1, ascending.
    pub fn complement(&self) -> Vec<usize> {
        taxa_of(self.other_mask())
    }

    /// Size of the canonical side.
    pub fn len(&self) -> usize {
        self.part.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sizes of both parts, smaller first.
    pub fn sizes(&self) -> (usize, usize) {
        let a = self.len();
        let b = self.n() - a;
        (a.min(b), a.max(b))
    }

    pub fn is_trivial(&self) -> bool {
        self.sizes().0 == 1
    }

    /// Mask of the smaller side; the canonical side on ties.
    pub fn smaller_mask(&self) -> u32 {
        if self.len() * 2 <= self.n() {
            self.part
        } else {
            self.other_mask()
        }
    }

    pub fn separates(&self, i: usize, j: usize) -> bool {
        ((self.part >> (i - 1)) & 1) != ((self.part >> (j - 1)) & 1)
    }

    pub fn contains(&self, t: usize) -> bool {
        (self.part >> (t - 1)) & 1 == 1
    }

    /// At least one of the four pairwise intersections of parts is empty.
    pub fn compatible(&self, other: &Split) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n(), other.n()));
        }
        Ok(self.compatible_unchecked(other))
    }

    pub(crate) fn compatible_unchecked(&self, other: &Split) -> bool {
        // Both canonical sides avoid taxon 1, so B ∩ B' is never empty.
        let (a, b) = (self.part, other.part);
        a & b == 0 || a & !b == 0 || b & !a == 0
    }

    /// All splits of `[n]`, trivial ones included, in mask order.
    pub fn all(n: usize) -> impl Iterator<Item = Split> {
        let n8 = n as u8;
        // Canonical sides are exactly the nonempty subsets of {2..n}.
        (1..(1u32 << (n - 1))).map(move |m| Split { n: n8, part: m << 1 })
    }
}

impl fmt::Debug for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<usize>| v.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{{{}}}|{{{}}}", join(self.part()), join(self.complement()))
    }
}

pub(crate) fn taxa_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// A cyclic arrangement of `[n]` up to rotation and reflection.
///
/// Canonical form: starts with taxon 1 and continues toward the smaller of
/// its two neighbours.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircularOrdering {
    seq: Vec<usize>,
}

impl CircularOrdering {
    pub fn new(seq: &[usize]) -> Result<CircularOrdering> {
        let n = seq.len();
        let not_perm = || Error::NotAPermutation { n, seq: seq.to_vec() };
        if !(3..=MAX_TAXA).contains(&n) {
            return Err(if n < 3 { not_perm() } else { Error::BadTaxonCount(n) });
        }
        let mut seen = 0u32;
        for &t in seq {
            if t == 0 || t > n || seen & (1 << (t - 1)) != 0 {
                return Err(not_perm());
            }
            seen |= 1 << (t - 1);
        }
        Ok(CircularOrdering { seq: canonical_seq(seq) })
    }

    /// The ordering `1, 2, ..., n`.
    pub fn identity(n: usize) -> Result<CircularOrdering> {
        check_n(n)?;
        Ok(CircularOrdering { seq: (1..=n).collect() })
    }

    pub(crate) fn from_canonical(seq: Vec<usize>) -> CircularOrdering {
        debug_assert_eq!(seq, canonical_seq(&seq));
        CircularOrdering { seq }
    }

    pub fn n(&self) -> usize {
        self.seq.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.seq
    }

    /// `pos[t]` is the position of taxon `t`; index 0 unused.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n() + 1];
        for (p, &t) in self.seq.iter().enumerate() {
            pos[t] = p;
        }
        pos
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.n();
        let pos = self.positions();
        let d = pos[i].abs_diff(pos[j]);
        d == 1 || d == n - 1
    }

    /// Unordered adjacent pairs `(min, max)` around the circle.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).map(move |p| {
            let (a, b) = (self.seq[p], self.seq[(p + 1) % n]);
            (a.min(b), a.max(b))
        })
    }

    /// True iff `split`'s parts are contiguous around this circle.
    pub fn is_arc(&self, split: &Split) -> Result<bool> {
        if split.n() != self.n() {
            return Err(Error::AmbientMismatch(split.n(), self.n()));
        }
        Ok(is_arc_seq(&self.seq, split.mask()))
    }

    /// All canonical orderings of `[n]` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = CircularOrdering> {
        OrderingIter::new(n)
    }
}

impl fmt::Debug for CircularOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CircularOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.seq.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Exactly one boundary crossing out of `mask` means one contiguous run.
pub(crate) fn is_arc_seq(seq: &[usize], mask: u32) -> bool {
    let n = seq.len();
    let inside = |p: usize| mask >> (seq[p % n] - 1) & 1 == 1;
    (0..n).filter(|&p| inside(p) && !inside(p + 1)).count() == 1
}

pub(crate) fn canonical_seq(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    let start = seq.iter().position(|&t| t == 1).expect("permutation contains 1");
    let next = seq[(start + 1) % n];
    let prev = seq[(start + n - 1) % n];
    if next < prev {
        (0..n).map(|o| seq[(start + o) % n]).collect()
    } else {
        (0..n).map(|o| seq[(start + n - o) % n]).collect()
    }
}

/// Lexicographic walk over permutations of `2..=n` keeping only those with
/// `seq[1] < seq[n - 1]`.
struct OrderingIter {
    tail: Vec<usize>,
    done: bool,
}

impl OrderingIter {
    fn new(n: usize) -> Self {
        OrderingIter { tail: (2..=n).collect(), done: n < 3 }
    }
}

impl Iterator for OrderingIter {
    type Item = CircularOrdering;

    fn next(&mut self) -> Option<CircularOrdering> {
        while !self.done {
            let candidate = (self.tail[0] < self.tail[self.tail.len() - 1]).then(|| {
                let mut seq = Vec::with_capacity(self.tail.len() + 1);
                seq.push(1);
                seq.extend_from_slice(&self.tail);
                CircularOrdering { seq }
            });
            self.done = !next_permutation(&mut self.tail);
            if candidate.is_some() {
                return candidate;
            }
        }
        None
    }
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
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

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn c(seq: &[usize]) -> CircularOrdering {
        CircularOrdering::new(seq).unwrap()
    }

    fn sp(n: usize, side: &[usize]) -> Split {
        Split::new(n, side).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(c(&[3, 1, 2]).as_slice(), &[1, 2, 3]);
        assert_eq!(c(&[1, 2, 3, 4, 5]).as_slice(), &[1, 2, 3, 4, 5]);
        assert_eq!(c(&[5, 4, 3, 2, 1]).as_slice(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn canonical_matches_symmetry_orbit() {
        // Brute force: the minimum over all 2n rotations and reflections.
        let seq = [5, 4, 3, 2, 1];
        let n = seq.len();
        let mut orbit = BTreeSet::new();
        for r in 0..n {
            let rot: Vec<usize> = (0..n).map(|o| seq[(r + o) % n]).collect();
            let mut rev = rot.clone();
            rev.reverse();
            orbit.insert(rot);
            orbit.insert(rev);
        }
        assert_eq!(orbit.len(), 10);
        for member in &orbit {
            assert_eq!(c(member).as_slice(), orbit.iter().next().unwrap().as_slice());
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(matches!(CircularOrdering::new(&[1, 1, 2]), Err(Error::NotAPermutation { .. })));
        assert!(matches!(CircularOrdering::new(&[1, 2, 4]), Err(Error::NotAPermutation { .. })));
        assert!(CircularOrdering::new(&[1, 2]).is_err());
    }

    #[test]
    fn ordering_counts() {
        assert_eq!(CircularOrdering::all(3).count(), 1);
        assert_eq!(CircularOrdering::all(5).count(), 12);
        assert_eq!(CircularOrdering::all(7).count(), 360);
        let all: Vec<_> = CircularOrdering::all(6).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|o| o == &c(o.as_slice())));
    }

    #[test]
    fn compatibility_examples() {
        assert!(sp(5, &[1, 2]).compatible(&sp(5, &[4, 5])).unwrap());
        assert!(!sp(5, &[1, 2]).compatible(&sp(5, &[2, 3])).unwrap());
        assert!(sp(5, &[2, 3]).compatible(&sp(5, &[2, 3])).unwrap());
        assert!(matches!(sp(5, &[1, 2]).compatible(&sp(6, &[1, 2])), Err(Error::AmbientMismatch(5, 6))));
    }

    #[test]
    fn compatibility_matches_four_intersections() {
        let n = 6;
        let full = full_mask(n);
        for a in Split::all(n) {
            for b in Split::all(n) {
                let (a1, a2) = (a.mask(), full & !a.mask());
                let (b1, b2) = (b.mask(), full & !b.mask());
                let oracle = [a1 & b1, a1 & b2, a2 & b1, a2 & b2].contains(&0);
                assert_eq!(a.compatible(&b).unwrap(), oracle, "{a} {b}");
            }
        }
    }

    #[test]
    fn arc_examples() {
        assert!(c(&[1, 2, 3, 4, 5]).is_arc(&sp(5, &[4, 5])).unwrap());
        assert!(!c(&[2, 1, 3, 4, 5]).is_arc(&sp(5, &[2, 3])).unwrap());
        assert!(!c(&[1, 2, 3, 4, 5]).is_arc(&sp(5, &[3, 5])).unwrap());
        assert!(c(&[1, 2, 3, 4, 5]).is_arc(&sp(5, &[5, 1])).unwrap());
    }

    #[test]
    fn split_canonical_side_and_triviality() {
        let s = sp(5, &[1, 2]);
        assert_eq!(s.part(), vec![3, 4, 5]);
        assert_eq!(s, sp(5, &[3, 4, 5]));
        assert!(!s.is_trivial());
        assert!(sp(5, &[1, 2, 3, 4]).is_trivial());
        assert!(Split::new(5, &[1, 2, 3, 4, 5]).is_err());
        assert!(Split::new(5, &[]).is_err());
        assert!(Split::new(5, &[6]).is_err());
        assert_eq!(Split::all(5).count(), 15);
        assert_eq!(Split::all(5).filter(|s| !s.is_trivial()).count(), 10);
        assert_eq!(s.to_string(), "{3,4,5}|{1,2}");
    }
}
