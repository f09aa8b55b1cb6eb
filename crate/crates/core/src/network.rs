//! Binary level-1 networks as circular orderings plus noncrossing bridges.
//!
//! A network is drawn as a polygon whose sides carry the taxa in circular
//! order; each nontrivial bridge is a diagonal, i.e. a split whose parts are
//! arcs of the ordering. Twisting a bridge reverses one of its arcs, and the
//! `2^k` drawings reachable by twists all describe the same network. The
//! stored representative is the one whose ordering is lexicographically
//! least.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::split::{canonical_seq, check_n, is_arc_seq, CircularOrdering, Split};

/// A raw drawing: an ordering (not necessarily canonical) with its bridges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    pub seq: Vec<usize>,
    pub bridges: Vec<Split>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Network {
    ordering: CircularOrdering,
    bridges: Vec<Split>,
}

impl Network {
    /// Validates `(ordering, bridges)` and returns the canonical member of its
    /// twist class.
    pub fn new(ordering: &CircularOrdering, bridges: &[Split]) -> Result<Network> {
        let n = ordering.n();
        let mut uniq: Vec<Split> = bridges.to_vec();
        uniq.sort();
        uniq.dedup();
        for b in &uniq {
            if b.n() != n {
                return Err(Error::AmbientMismatch(b.n(), n));
            }
            if b.is_trivial() {
                return Err(Error::TrivialBridge(b.to_string()));
            }
        }
        if uniq.len() > n - 3 {
            return Err(Error::TooManyBridges { n, k: uniq.len(), max: n - 3 });
        }
        for (i, a) in uniq.iter().enumerate() {
            for b in &uniq[i + 1..] {
                if !a.compatible_unchecked(b) {
                    return Err(Error::CrossingBridges(a.to_string(), b.to_string()));
                }
            }
        }
        for b in &uniq {
            if !is_arc_seq(ordering.as_slice(), b.mask()) {
                return Err(Error::NotAnArc(b.to_string()));
            }
        }
        let least = orbit(ordering.as_slice(), &uniq).into_iter().next().expect("orbit contains the drawing itself");
        Ok(Network { ordering: CircularOrdering::from_canonical(least), bridges: uniq })
    }

    /// The cycle network `ordering` with no bridges.
    pub fn tour(ordering: &CircularOrdering) -> Network {
        Network { ordering: ordering.clone(), bridges: Vec::new() }
    }

    /// Trusted constructor for pairs already known to be canonical.
    pub(crate) fn from_canonical(ordering: CircularOrdering, mut bridges: Vec<Split>) -> Network {
        bridges.sort();
        Network { ordering, bridges }
    }

    pub fn n(&self) -> usize {
        self.ordering.n()
    }

    pub fn k(&self) -> usize {
        self.bridges.len()
    }

    /// Reference drawing: the lexicographically least consistent ordering.
    pub fn ordering(&self) -> &CircularOrdering {
        &self.ordering
    }

    pub fn bridges(&self) -> &[Split] {
        &self.bridges
    }

    /// Redraws the network with one side of `bridge` reflected.
    ///
    /// The smaller side of the bridge is reversed in place (the side without
    /// taxon 1 on ties); the result is a raw drawing, not canonicalized.
    pub fn twist(&self, bridge: &Split) -> Result<Drawing> {
        self.twist_drawing(self.ordering.as_slice(), bridge)
    }

    pub(crate) fn twist_drawing(&self, seq: &[usize], bridge: &Split) -> Result<Drawing> {
        if !self.bridges.contains(bridge) {
            return Err(Error::NotABridge(bridge.to_string()));
        }
        Ok(Drawing { seq: reverse_arc(seq, bridge.smaller_mask()), bridges: self.bridges.clone() })
    }

    /// The `2^k` circular orderings consistent with the network, sorted.
    pub fn consistent_orderings(&self) -> Vec<CircularOrdering> {
        orbit(self.ordering.as_slice(), &self.bridges).into_iter().map(CircularOrdering::from_canonical).collect()
    }

    /// Number of bridges separating taxa `i` and `j`.
    pub fn bridge_count_between(&self, i: usize, j: usize) -> Result<usize> {
        let n = self.n();
        if i == j {
            return Err(Error::SameTaxon(i));
        }
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidSplit(format!("taxa ({i}, {j}) outside 1..={n}")));
        }
        Ok(self.bridges.iter().filter(|b| b.separates(i, j)).count())
    }

    /// True iff the network has a minimal cut realising `split`.
    pub fn displays_split(&self, split: &Split) -> Result<bool> {
        if split.n() != self.n() {
            return Err(Error::AmbientMismatch(split.n(), self.n()));
        }
        if split.is_trivial() {
            return Ok(true);
        }
        if !self.bridges.iter().all(|b| b.compatible_unchecked(split)) {
            return Ok(false);
        }
        Ok(orbit(self.ordering.as_slice(), &self.bridges).iter().any(|seq| is_arc_seq(seq, split.mask())))
    }

    /// `Σ(N)`: every split displayed by the network.
    pub fn sigma_splits(&self) -> SplitSystem {
        let orbit = orbit(self.ordering.as_slice(), &self.bridges);
        let splits = Split::all(self.n())
            .filter(|s| {
                s.is_trivial()
                    || (self.bridges.iter().all(|b| b.compatible_unchecked(s))
                        && orbit.iter().any(|seq| is_arc_seq(seq, s.mask())))
            })
            .collect();
        SplitSystem { n: self.n(), splits, ordering: Some(self.ordering.clone()) }
    }

    /// True iff every split of `system` is displayed by the network.
    pub fn refines(&self, system: &SplitSystem) -> Result<bool> {
        if system.n != self.n() {
            return Err(Error::AmbientMismatch(system.n, self.n()));
        }
        for s in &system.splits {
            if !self.displays_split(s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn regions(&self) -> Regions {
        Regions::new(self.ordering.as_slice(), &self.bridges)
    }
}

impl fmt::Debug for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ordering)?;
        for b in &self.bridges {
            write!(f, " {b}")?;
        }
        Ok(())
    }
}

/// Reverses the contiguous run of taxa in `mask` (cyclically).
pub(crate) fn reverse_arc(seq: &[usize], mask: u32) -> Vec<usize> {
    let n = seq.len();
    let inside = |p: usize| mask >> (seq[p % n] - 1) & 1 == 1;
    let len = mask.count_ones() as usize;
    let start = (0..n).find(|&p| inside(p) && !inside(p + n - 1)).expect("mask is a proper arc");
    let mut out = seq.to_vec();
    for o in 0..len {
        out[(start + o) % n] = seq[(start + len - 1 - o) % n];
    }
    out
}

/// All canonical orderings reachable from `seq` by twisting `bridges`.
pub(crate) fn orbit(seq: &[usize], bridges: &[Split]) -> BTreeSet<Vec<usize>> {
    // Set-based twists commute, so every subset of bridges gives one member.
    let k = bridges.len();
    let mut out = BTreeSet::new();
    for subset in 0u32..(1 << k) {
        let mut cur = seq.to_vec();
        for (b, bridge) in bridges.iter().enumerate() {
            if subset >> b & 1 == 1 {
                cur = reverse_arc(&cur, bridge.mask());
            }
        }
        out.insert(canonical_seq(&cur));
    }
    debug_assert_eq!(out.len(), 1 << k);
    out
}

/// True iff no twist of the canonical drawing `seq` yields a smaller ordering.
pub(crate) fn is_orbit_minimum(seq: &[usize], bridges: &[Split]) -> bool {
    let k = bridges.len();
    let mut cur = seq.to_vec();
    // Gray code: flip one bridge per step.
    for step in 1u32..(1 << k) {
        let b = step.trailing_zeros() as usize;
        cur = reverse_arc(&cur, bridges[b].mask());
        if canonical_seq(&cur).as_slice() < seq {
            return false;
        }
    }
    true
}

/// A set of splits of `[n]` that always includes the trivial ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitSystem {
    n: usize,
    splits: BTreeSet<Split>,
    ordering: Option<CircularOrdering>,
}

impl SplitSystem {
    /// Adds the trivial splits automatically. If `ordering` is given every
    /// split must be an arc of it.
    pub fn new(
        n: usize,
        splits: impl IntoIterator<Item = Split>,
        ordering: Option<CircularOrdering>,
    ) -> Result<SplitSystem> {
        check_n(n)?;
        let mut set: BTreeSet<Split> = (1..=n).map(|t| Split::trivial(n, t)).collect::<Result<_>>()?;
        for s in splits {
            if s.n() != n {
                return Err(Error::AmbientMismatch(s.n(), n));
            }
            set.insert(s);
        }
        if let Some(c) = &ordering {
            if c.n() != n {
                return Err(Error::AmbientMismatch(c.n(), n));
            }
            if let Some(bad) = set.iter().find(|s| !is_arc_seq(c.as_slice(), s.mask())) {
                return Err(Error::NotAnArc(bad.to_string()));
            }
        }
        Ok(SplitSystem { n, splits: set, ordering })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn splits(&self) -> &BTreeSet<Split> {
        &self.splits
    }

    pub fn ordering(&self) -> Option<&CircularOrdering> {
        self.ordering.as_ref()
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    pub fn contains(&self, s: &Split) -> bool {
        self.splits.contains(s)
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &Split> {
        self.splits.iter().filter(|s| !s.is_trivial())
    }

    /// Nontrivial splits compatible with every other split of the system.
    pub fn bridges(&self) -> Vec<Split> {
        self.nontrivial().filter(|a| self.splits.iter().all(|b| a.compatible_unchecked(b))).copied().collect()
    }
}

/// A boundary element of a polygon region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Port {
    /// A polygon side carrying a taxon.
    Leaf(usize),
    /// A diagonal leading down into a child region.
    Down(usize),
    /// The diagonal leading back up to the parent region.
    Up,
}

#[derive(Clone, Debug)]
pub(crate) struct Region {
    pub parent: Option<usize>,
    /// Index of this region's `Down` port inside the parent.
    pub index_in_parent: usize,
    /// Bridge separating this region from its parent.
    pub bridge: Option<Split>,
    /// Boundary elements in circular order; `Up` first for non-root regions.
    pub ports: Vec<Port>,
}

/// The subdivision of the side-labelled polygon by the bridge diagonals.
#[derive(Clone, Debug)]
pub(crate) struct Regions {
    pub n: usize,
    pub regions: Vec<Region>,
    /// `leaf[t] = (region, port index)`; index 0 unused.
    pub leaf: Vec<(usize, usize)>,
}

impl Regions {
    /// `seq` must start with taxon 1, so every canonical bridge side is an
    /// interval of positions `1..n`.
    pub fn new(seq: &[usize], bridges: &[Split]) -> Regions {
        let n = seq.len();
        debug_assert_eq!(seq[0], 1);
        let mut pos = vec![0; n + 1];
        for (p, &t) in seq.iter().enumerate() {
            pos[t] = p;
        }
        let mut intervals: Vec<(usize, usize, Split)> = bridges
            .iter()
            .map(|b| {
                let ps: Vec<usize> = b.part().iter().map(|&t| pos[t]).collect();
                let lo = *ps.iter().min().unwrap();
                let hi = *ps.iter().max().unwrap();
                debug_assert_eq!(hi - lo + 1, ps.len(), "bridge is an interval");
                (lo, hi, *b)
            })
            .collect();
        // Parents before children: ascending start, longer first.
        intervals.sort_by_key(|&(lo, hi, _)| (lo, std::cmp::Reverse(hi)));

        let mut regions = vec![Region { parent: None, index_in_parent: 0, bridge: None, ports: Vec::new() }];
        let mut leaf = vec![(0, 0); n + 1];
        let mut next = 0;
        fill(seq, &intervals, &mut next, 0, 0, n - 1, &mut regions, &mut leaf);
        Regions { n, regions, leaf }
    }

    /// Taxa below each port of `region`, as a mask.
    pub fn port_mask(&self, region: usize, port: usize) -> u32 {
        match self.regions[region].ports[port] {
            Port::Leaf(t) => 1 << (t - 1),
            Port::Down(child) => self.regions[child].bridge.unwrap().mask(),
            Port::Up => self.regions[region].bridge.unwrap().other_mask(),
        }
    }

    /// Regions visited walking from leaf `t` to the root, paired with the
    /// entry port in each.
    fn climb(&self, t: usize) -> Vec<(usize, usize)> {
        let mut path = vec![self.leaf[t]];
        let mut r = self.leaf[t].0;
        while let Some(p) = self.regions[r].parent {
            path.push((p, self.regions[r].index_in_parent));
            r = p;
        }
        path
    }

    /// Whether `i` and `j` can be made adjacent by twisting, and the number
    /// of bridges on the path between them.
    pub fn adjacency(&self, i: usize, j: usize) -> (bool, usize) {
        let pi = self.climb(i);
        let pj = self.climb(j);
        let (mut a, mut b) = (pi.len(), pj.len());
        // Strip the shared ancestry above the lowest common region.
        while a > 1 && b > 1 && pi[a - 2].0 == pj[b - 2].0 {
            a -= 1;
            b -= 1;
        }
        let adjacent = |r: usize, x: usize, y: usize| {
            let m = self.regions[r].ports.len();
            let d = x.abs_diff(y);
            d == 1 || d == m - 1
        };
        // Below the meeting region each walk must leave through a port
        // adjacent to the one it entered by (the `Up` port is index 0).
        let ok = pi[..a - 1].iter().chain(&pj[..b - 1]).all(|&(r, e)| adjacent(r, e, 0))
            && adjacent(pi[a - 1].0, pi[a - 1].1, pj[b - 1].1);
        (ok, (a - 1) + (b - 1))
    }
}

#[allow(clippy::too_many_arguments)]
fn fill(
    seq: &[usize],
    intervals: &[(usize, usize, Split)],
    next: &mut usize,
    region: usize,
    lo: usize,
    hi: usize,
    regions: &mut Vec<Region>,
    leaf: &mut [(usize, usize)],
) {
    let mut p = lo;
    while p <= hi {
        if *next < intervals.len() && intervals[*next].0 == p && intervals[*next].1 <= hi {
            let (clo, chi, split) = intervals[*next];
            *next += 1;
            let child = regions.len();
            let index_in_parent = regions[region].ports.len();
            regions[region].ports.push(Port::Down(child));
            regions.push(Region { parent: Some(region), index_in_parent, bridge: Some(split), ports: vec![Port::Up] });
            fill(seq, intervals, next, child, clo, chi, regions, leaf);
            p = chi + 1;
        } else {
            leaf[seq[p]] = (region, regions[region].ports.len());
            regions[region].ports.push(Port::Leaf(seq[p]));
            p += 1;
        }
    }
}
