//! Counting and exhaustive generation of binary level-1 networks.
//!
//! A network is a side-labelled polygon (a canonical circular ordering) plus
//! a set of noncrossing diagonals, up to twisting. Generation walks canonical
//! orderings in lexicographic order and, for each, every noncrossing diagonal
//! set; a pair is emitted only when its ordering is the least in its twist
//! orbit, so nothing has to be remembered between items.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::network::{is_orbit_minimum, Network};
use crate::split::{check_n, CircularOrdering, Split};

fn check_nk(n: usize, k: usize) -> Result<()> {
    check_n(n).map_err(|_| Error::OutOfRange { n, k })?;
    if k > n - 3 {
        return Err(Error::OutOfRange { n, k });
    }
    Ok(())
}

fn factorial(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, v| acc * BigUint::from(v))
}

fn double_factorial(m: usize) -> BigUint {
    (1..=m).rev().step_by(2).fold(BigUint::one(), |acc, v| acc * BigUint::from(v))
}

fn binomial(a: usize, b: usize) -> BigUint {
    if b > a {
        return BigUint::from(0u32);
    }
    factorial(a) / (factorial(b) * factorial(a - b))
}

/// `T(n, k)`: number of `k`-sets of noncrossing diagonals of a fixed `n`-gon.
pub fn associahedron_face_count(n: usize, k: usize) -> Result<BigUint> {
    check_nk(n, k)?;
    Ok(binomial(n - 3, k) * binomial(n + k - 1, k) / BigUint::from(k + 1))
}

/// `v(n, k)`: number of binary level-1 networks with `n` leaves and `k` bridges.
pub fn network_count(n: usize, k: usize) -> Result<BigUint> {
    check_nk(n, k)?;
    Ok(binomial(n - 3, k) * factorial(n + k - 1) / double_factorial(2 * k + 2))
}

/// Row sums `Σ_k v(n, k)`.
pub fn total_network_count(n: usize) -> Result<BigUint> {
    check_n(n)?;
    (0..=n - 3).map(|k| network_count(n, k)).sum()
}

/// Position intervals `[lo, hi]` inside `1..n` of length `2..=n-2`: the
/// diagonals of the polygon, each named by the side set avoiding side 0.
fn diagonal_intervals(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for len in 2..=n - 2 {
        for lo in 1..=n - len {
            out.push((lo, lo + len - 1));
        }
    }
    out.sort();
    out
}

fn laminar(a: (usize, usize), b: (usize, usize)) -> bool {
    a.1 < b.0 || b.1 < a.0 || (a.0 <= b.0 && b.1 <= a.1) || (b.0 <= a.0 && a.1 <= b.1)
}

/// Every `k`-set of pairwise noncrossing diagonals, as position intervals.
pub(crate) fn diagonal_sets(n: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        all: &[(usize, usize)],
        start: usize,
        k: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for idx in start..all.len() {
            if cur.iter().all(|&c| laminar(c, all[idx])) {
                cur.push(all[idx]);
                rec(all, idx + 1, k, cur, out);
                cur.pop();
            }
        }
    }
    let all = diagonal_intervals(n);
    let mut out = Vec::new();
    rec(&all, 0, k, &mut Vec::new(), &mut out);
    out
}

/// The `T(n, k)` noncrossing diagonal sets of the polygon with sides labelled
/// `1, 2, ..., n`, each expressed as arc splits.
pub fn enumerate_diagonal_sets(n: usize, k: usize) -> Result<Vec<Vec<Split>>> {
    check_nk(n, k)?;
    let seq: Vec<usize> = (1..=n).collect();
    diagonal_sets(n, k).into_iter().map(|set| set.iter().map(|&iv| interval_split(&seq, iv)).collect()).collect()
}

fn interval_split(seq: &[usize], (lo, hi): (usize, usize)) -> Result<Split> {
    Split::new(seq.len(), &seq[lo..=hi])
}

/// Streams every canonical network with `n` leaves and `k` bridges exactly
/// once, sorted by canonical key.
pub fn enumerate_networks(n: usize, k: usize) -> Result<NetworkIter> {
    NetworkIter::new(n, k, 0, 1)
}

/// Lazy network stream; optionally one of `parts` disjoint partitions.
pub struct NetworkIter {
    k: usize,
    sets: Vec<Vec<(usize, usize)>>,
    orderings: Box<dyn Iterator<Item = CircularOrdering> + Send>,
    pending: std::vec::IntoIter<Network>,
}

impl NetworkIter {
    /// Partition `part` of `parts`: orderings are dealt round-robin in
    /// lexicographic order. Each partition is sorted by key; the union over
    /// all partitions is the full stream.
    pub fn new(n: usize, k: usize, part: usize, parts: usize) -> Result<NetworkIter> {
        check_nk(n, k)?;
        if parts == 0 || part >= parts {
            return Err(Error::Malformed(format!("partition {part} of {parts}")));
        }
        let orderings = CircularOrdering::all(n).enumerate().filter(move |(i, _)| i % parts == part).map(|(_, c)| c);
        Ok(NetworkIter {
            k,
            sets: diagonal_sets(n, k),
            orderings: Box::new(orderings),
            pending: Vec::new().into_iter(),
        })
    }

    fn networks_for(&self, c: &CircularOrdering) -> Vec<Network> {
        let seq = c.as_slice();
        let mut out: Vec<Network> = self
            .sets
            .iter()
            .filter_map(|set| {
                let bridges: Vec<Split> =
                    set.iter().map(|&iv| interval_split(seq, iv).expect("valid interval")).collect();
                is_orbit_minimum(seq, &bridges).then(|| Network::from_canonical(c.clone(), bridges))
            })
            .collect();
        debug_assert!(out.iter().all(|net| net.k() == self.k));
        out.sort();
        out
    }
}

impl Iterator for NetworkIter {
    type Item = Network;

    fn next(&mut self) -> Option<Network> {
        loop {
            if let Some(net) = self.pending.next() {
                return Some(net);
            }
            let c = self.orderings.next()?;
            self.pending = self.networks_for(&c).into_iter();
        }
    }
}

/// `v(n, k)` as a `u128`, for budgets and progress reporting.
pub fn network_count_u128(n: usize, k: usize) -> Result<u128> {
    network_count(n, k).map(|v| v.to_u128().unwrap_or(u128::MAX))
}
