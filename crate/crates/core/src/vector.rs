//! Vertex vectors `x(N)` in `C(n, 2)` pair coordinates.

use std::fmt::Write as _;
use std::ops::{Add, Index};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::network::{orbit, Network};
use crate::rational::{self, Rational};
use crate::split::{CircularOrdering, Split};

/// Position of pair `(i, j)`, `i < j`, in lexicographic pair order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    (i - 1) * (2 * n - i) / 2 + (j - i - 1)
}

/// Pairs `(1,2), (1,3), ..., (n-1,n)`.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// An exact vector indexed by unordered taxon pairs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalVector {
    n: usize,
    entries: Vec<Rational>,
}

impl RationalVector {
    pub fn zeros(n: usize) -> RationalVector {
        RationalVector { n, entries: vec![Rational::zero(); pair_count(n)] }
    }

    pub fn from_entries(n: usize, entries: Vec<Rational>) -> Result<RationalVector> {
        if entries.len() != pair_count(n) {
            return Err(Error::Malformed(format!(
                "expected {} pair entries for n = {n}, got {}",
                pair_count(n),
                entries.len()
            )));
        }
        Ok(RationalVector { n, entries })
    }

    pub fn from_ints(n: usize, entries: &[i64]) -> Result<RationalVector> {
        RationalVector::from_entries(n, entries.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        let (a, b) = (i.min(j), i.max(j));
        &self.entries[pair_index(self.n, a, b)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        let (a, b) = (i.min(j), i.max(j));
        let idx = pair_index(self.n, a, b);
        self.entries[idx] = v;
    }

    pub fn dot(&self, other: &RationalVector) -> Result<Rational> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        Ok(self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).sum())
    }

    pub fn sum(&self) -> Rational {
        self.entries.iter().sum()
    }

    /// Sum of the entries touching taxon `j`.
    pub fn degree(&self, j: usize) -> Rational {
        (1..=self.n).filter(|&i| i != j).map(|i| self.get(i, j)).sum()
    }

    pub fn scale(&self, factor: &Rational) -> RationalVector {
        RationalVector { n: self.n, entries: self.entries.iter().map(|e| e * factor).collect() }
    }

    /// `i,j,x_ij` rows under a header, entries printed exactly.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,x_ij\n");
        for ((i, j), v) in pairs(self.n).zip(&self.entries) {
            let _ = writeln!(out, "{i},{j},{}", rational::format(v));
        }
        out
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;

    fn index(&self, idx: usize) -> &Rational {
        &self.entries[idx]
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;

    fn add(self, rhs: &RationalVector) -> RationalVector {
        assert_eq!(self.n, rhs.n, "ambient mismatch");
        RationalVector { n: self.n, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

/// The 0/1 adjacency vector of a tour.
pub fn incidence_vector(c: &CircularOrdering) -> RationalVector {
    RationalVector::from_ints(c.n(), &incidence_ints(c.as_slice())).expect("length matches")
}

pub fn incidence_ints(seq: &[usize]) -> Vec<i64> {
    let n = seq.len();
    let mut out = vec![0; pair_count(n)];
    for p in 0..n {
        let (a, b) = (seq[p], seq[(p + 1) % n]);
        out[pair_index(n, a.min(b), a.max(b))] = 1;
    }
    out
}

/// `x_ij = 2^(k - b_ij)` when `i` and `j` are adjacent in some consistent
/// ordering, else 0.
pub fn network_vector(net: &Network) -> RationalVector {
    RationalVector::from_ints(net.n(), &network_ints(net)).expect("length matches")
}

/// Integer form of [`network_vector`].
pub fn network_ints(net: &Network) -> Vec<i64> {
    let n = net.n();
    let k = net.k();
    let regions = net.regions();
    pairs(n)
        .map(|(i, j)| {
            let (adjacent, crossed) = regions.adjacency(i, j);
            if adjacent {
                1i64 << (k - crossed)
            } else {
                0
            }
        })
        .collect()
}

/// Sum of the incidence vectors of all consistent orderings.
pub fn network_vector_by_orbit(net: &Network) -> RationalVector {
    let n = net.n();
    let mut acc = vec![0i64; pair_count(n)];
    for seq in orbit(net.ordering().as_slice(), net.bridges()) {
        for (a, v) in acc.iter_mut().zip(incidence_ints(&seq)) {
            *a += v;
        }
    }
    RationalVector::from_ints(n, &acc).expect("length matches")
}

/// Splits `net` at `bridge` into two networks with one bridge fewer whose
/// vectors sum to `x(net)`: the reference drawing and its twist at `bridge`,
/// both with `bridge` dropped. Returned in canonical order.
pub fn twist_decompose(net: &Network, bridge: &Split) -> Result<(Network, Network)> {
    let twisted = net.twist(bridge)?;
    let rest: Vec<Split> = net.bridges().iter().filter(|b| *b != bridge).copied().collect();
    let first = Network::new(net.ordering(), &rest)?;
    let second = Network::new(&CircularOrdering::new(&twisted.seq)?, &rest)?;
    Ok(if first <= second { (first, second) } else { (second, first) })
}
