//! Random instances for property checks: networks, positive rational
//! weights, circular split systems and metrics.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::enumerate::diagonal_sets;
use crate::error::Result;
use crate::metric::{DistanceMatrix, WeightedSplitSystem};
use crate::network::{Network, SplitSystem};
use crate::rational::{ratio, Rational};
use crate::split::{CircularOrdering, Split};
use crate::vector::pair_count;

pub fn random_ordering<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CircularOrdering {
    let mut seq: Vec<usize> = (1..=n).collect();
    seq.shuffle(rng);
    CircularOrdering::new(&seq).expect("permutation")
}

/// A network with `k` bridges: uniform ordering, uniform diagonal set.
pub fn random_network<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Result<Network> {
    crate::enumerate::associahedron_face_count(n, k)?;
    let c = random_ordering(rng, n);
    let sets = diagonal_sets(n, k);
    let set = &sets[rng.gen_range(0..sets.len())];
    let seq = c.as_slice();
    let bridges = set.iter().map(|&(lo, hi)| Split::new(n, &seq[lo..=hi])).collect::<Result<Vec<_>>>()?;
    Network::new(&c, &bridges)
}

/// A positive rational `p/q` with `1 <= p <= 30`, `1 <= q <= 12`.
pub fn random_weight<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(1..=30), rng.gen_range(1..=12))
}

/// Random positive weights on every split of `system`.
pub fn random_weights<R: Rng + ?Sized>(rng: &mut R, system: &SplitSystem) -> Result<WeightedSplitSystem> {
    let weights: Vec<(Split, Rational)> = system.splits().iter().map(|s| (*s, random_weight(rng))).collect();
    WeightedSplitSystem::new(system.n(), weights, system.ordering().cloned())
}

/// A circular split system on a random ordering: each nontrivial arc is kept
/// with probability `density`.
pub fn random_circular_system<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Result<SplitSystem> {
    let c = random_ordering(rng, n);
    let seq = c.as_slice();
    let mut splits = Vec::new();
    for lo in 1..n {
        for hi in lo + 1..n {
            // Arcs of length 2..=n-2 avoiding position 0; length n-1 is trivial.
            if hi - lo < n - 2 && rng.gen_bool(density) {
                splits.push(Split::new(n, &seq[lo..=hi])?);
            }
        }
    }
    SplitSystem::new(n, splits, Some(c))
}

/// Entries drawn from `[10, 20]` with denominators up to 8, so the triangle
/// inequality holds automatically.
pub fn random_metric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<DistanceMatrix> {
    let entries = (0..pair_count(n))
        .map(|_| {
            let q = rng.gen_range(1..=8);
            ratio(rng.gen_range(10 * q..=20 * q), q)
        })
        .collect();
    DistanceMatrix::new(n, entries)
}
