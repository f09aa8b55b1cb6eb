//! Weighted split systems, split metrics, and circular decomposition of
//! Kalmanson metrics.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::PhyloGraph;
use crate::network::{Network, SplitSystem};
use crate::rational::{self, Rational};
use crate::split::{check_n, is_arc_seq, CircularOrdering, Split};
use crate::vector::{pair_count, pair_index, pairs, RationalVector};

/// Splits with nonnegative weights. Nontrivial splits of weight zero are
/// dropped; every trivial split is always present, possibly at zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSplitSystem {
    n: usize,
    ordering: Option<CircularOrdering>,
    weights: BTreeMap<Split, Rational>,
}

impl WeightedSplitSystem {
    /// Weights of repeated splits are added.
    pub fn new(
        n: usize,
        weights: impl IntoIterator<Item = (Split, Rational)>,
        ordering: Option<CircularOrdering>,
    ) -> Result<WeightedSplitSystem> {
        check_n(n)?;
        let mut map: BTreeMap<Split, Rational> = BTreeMap::new();
        for t in 1..=n {
            map.insert(Split::trivial(n, t)?, Rational::zero());
        }
        for (s, w) in weights {
            if s.n() != n {
                return Err(Error::AmbientMismatch(s.n(), n));
            }
            if w.is_negative() {
                return Err(Error::NegativeValue(format!("weight {} on {s}", rational::format(&w))));
            }
            *map.entry(s).or_insert_with(Rational::zero) += w;
        }
        map.retain(|s, w| s.is_trivial() || !w.is_zero());
        if let Some(c) = &ordering {
            if c.n() != n {
                return Err(Error::AmbientMismatch(c.n(), n));
            }
            if let Some(bad) = map.keys().find(|s| !is_arc_seq(c.as_slice(), s.mask())) {
                return Err(Error::NotAnArc(bad.to_string()));
            }
        }
        Ok(WeightedSplitSystem { n, ordering, weights: map })
    }

    /// Weight 1 on every split of `system`.
    pub fn unit(system: &SplitSystem) -> WeightedSplitSystem {
        let weights = system.splits().iter().map(|s| (*s, rational::int(1))).collect();
        WeightedSplitSystem { n: system.n(), ordering: system.ordering().cloned(), weights }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ordering(&self) -> Option<&CircularOrdering> {
        self.ordering.as_ref()
    }

    pub fn weights(&self) -> &BTreeMap<Split, Rational> {
        &self.weights
    }

    pub fn weight(&self, s: &Split) -> Option<&Rational> {
        self.weights.get(s)
    }

    /// The underlying split system (zero-weight trivial splits included).
    pub fn system(&self) -> SplitSystem {
        SplitSystem::new(self.n, self.weights.keys().copied(), self.ordering.clone())
            .expect("validated on construction")
    }

    /// `W(s)`: the sum of all weights.
    pub fn total_weight(&self) -> Rational {
        self.weights.values().sum()
    }
}

/// `W(s)`.
pub fn total_weight(ws: &WeightedSplitSystem) -> Rational {
    ws.total_weight()
}

/// A symmetric dissimilarity with zero diagonal, stored for pairs `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl DistanceMatrix {
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<DistanceMatrix> {
        check_n(n)?;
        if entries.len() != pair_count(n) {
            return Err(Error::Malformed(format!("{} entries for n = {n}", entries.len())));
        }
        for ((i, j), e) in pairs(n).zip(&entries) {
            if e.is_negative() {
                return Err(Error::NegativeDistance(i, j));
            }
        }
        Ok(DistanceMatrix { n, entries })
    }

    pub fn from_ints(n: usize, entries: &[i64]) -> Result<DistanceMatrix> {
        DistanceMatrix::new(n, entries.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn zeros(n: usize) -> Result<DistanceMatrix> {
        DistanceMatrix::new(n, vec![Rational::zero(); pair_count(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// `d(i, j)`; zero on the diagonal.
    pub fn get(&self, i: usize, j: usize) -> Rational {
        if i == j {
            Rational::zero()
        } else {
            self.entries[pair_index(self.n, i.min(j), i.max(j))].clone()
        }
    }

    pub fn as_vector(&self) -> RationalVector {
        RationalVector::from_entries(self.n, self.entries.clone()).expect("length matches")
    }

    pub fn scale(&self, factor: &Rational) -> Result<DistanceMatrix> {
        DistanceMatrix::new(self.n, self.entries.iter().map(|e| e * factor).collect())
    }
}

/// `d_s(i, j)`: total weight of the splits separating `i` and `j`.
pub fn metric_from_splits(ws: &WeightedSplitSystem) -> DistanceMatrix {
    let n = ws.n();
    let entries =
        pairs(n).map(|(i, j)| ws.weights().iter().filter(|(s, _)| s.separates(i, j)).map(|(_, w)| w).sum()).collect();
    DistanceMatrix { n, entries }
}

/// The length `x(net) · d`.
pub fn network_length(net: &Network, d: &DistanceMatrix) -> Result<Rational> {
    if net.n() != d.n() {
        return Err(Error::AmbientMismatch(net.n(), d.n()));
    }
    let x = crate::vector::network_ints(net);
    Ok(x.iter().zip(d.entries()).filter(|(v, _)| **v != 0).map(|(&v, e)| e * rational::int(v)).sum())
}

/// Kalmanson condition on `c`: for positions `p < q < r < s`,
/// `max(d_pq + d_rs, d_qr + d_ps) <= d_pr + d_qs`.
pub fn kalmanson_check(d: &DistanceMatrix, c: &CircularOrdering) -> Result<bool> {
    if d.n() != c.n() {
        return Err(Error::AmbientMismatch(d.n(), c.n()));
    }
    Ok(kalmanson_violation(d, c.as_slice()).is_none())
}

fn kalmanson_violation(d: &DistanceMatrix, seq: &[usize]) -> Option<[usize; 4]> {
    let n = seq.len();
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                for s in r + 1..n {
                    let [a, b, c, e] = [seq[p], seq[q], seq[r], seq[s]];
                    let cross = d.get(a, c) + d.get(b, e);
                    if d.get(a, b) + d.get(c, e) > cross || d.get(b, c) + d.get(a, e) > cross {
                        return Some([a, b, c, e]);
                    }
                }
            }
        }
    }
    None
}

/// Isolation weight of the arc occupying positions `p..=q` of `seq`.
fn arc_weight(d: &DistanceMatrix, seq: &[usize], p: usize, q: usize) -> Rational {
    let n = seq.len();
    let at = |pos: usize| seq[pos % n];
    let before = at(p + n - 1);
    let after = at(q + 1);
    let (first, last) = (at(p), at(q));
    (d.get(before, last) + d.get(first, after) - d.get(before, after) - d.get(first, last)) / rational::int(2)
}

/// The unique weighted circular split system on `c` whose metric is `d`.
pub fn kalmanson_decompose(d: &DistanceMatrix, c: &CircularOrdering) -> Result<WeightedSplitSystem> {
    let n = d.n();
    if n != c.n() {
        return Err(Error::AmbientMismatch(n, c.n()));
    }
    let seq = c.as_slice();
    let mut weights = Vec::new();
    // Canonical sides avoid taxon 1, which sits at position 0, so each arc
    // is a plain interval of positions.
    for lo in 1..n {
        for hi in lo..n {
            let split = Split::new(n, &seq[lo..=hi])?;
            let w = arc_weight(d, seq, lo, hi);
            if w.is_negative() {
                return Err(Error::NotKalmanson(format!("{split} has weight {}", rational::format(&w))));
            }
            weights.push((split, w));
        }
    }
    let ws = WeightedSplitSystem::new(n, weights, Some(c.clone()))?;
    if &metric_from_splits(&ws) != d {
        return Err(Error::NotKalmanson("reconstructed metric differs".into()));
    }
    Ok(ws)
}

/// Isolation weight of `split` read on the other arc, for symmetry checks.
pub fn complement_arc_weight(d: &DistanceMatrix, c: &CircularOrdering, split: &Split) -> Result<Rational> {
    if !c.is_arc(split)? {
        return Err(Error::NotAnArc(split.to_string()));
    }
    let seq = c.as_slice();
    let n = seq.len();
    let inside = |p: usize| split.other_mask() >> (seq[p % n] - 1) & 1 == 1;
    let p = (0..n).find(|&p| inside(p) && !inside(p + n - 1)).expect("arc");
    let len = split.other_mask().count_ones() as usize;
    Ok(arc_weight(d, seq, p, p + len - 1))
}

/// Least path weight between every pair of leaves.
pub fn shortest_path_metric(g: &PhyloGraph) -> Result<DistanceMatrix> {
    let m = g.nodes.len();
    let mut dist: Vec<Vec<Option<Rational>>> = vec![vec![None; m]; m];
    for (v, row) in dist.iter_mut().enumerate() {
        row[v] = Some(Rational::zero());
    }
    for e in &g.edges {
        let w = e.weight.clone().ok_or(Error::UnweightedGraph)?;
        for (a, b) in [(e.a, e.b), (e.b, e.a)] {
            if dist[a][b].as_ref().is_none_or(|cur| &w < cur) {
                dist[a][b] = Some(w.clone());
            }
        }
    }
    for via in 0..m {
        for a in 0..m {
            let Some(left) = dist[a][via].clone() else { continue };
            for b in 0..m {
                if let Some(right) = &dist[via][b] {
                    let cand = &left + right;
                    if dist[a][b].as_ref().is_none_or(|cur| &cand < cur) {
                        dist[a][b] = Some(cand);
                    }
                }
            }
        }
    }
    let n = g.leaf_count();
    let leaf: Vec<usize> = (1..=n).map(|t| g.leaf_node(t)).collect();
    let entries = pairs(n)
        .map(|(i, j)| {
            dist[leaf[i - 1]][leaf[j - 1]].clone().ok_or_else(|| Error::Malformed("graph is disconnected".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    DistanceMatrix::new(n, entries)
}

/// Lexicographically least canonical ordering on which `d` is Kalmanson.
pub fn find_consistent_ordering(d: &DistanceMatrix) -> Result<Option<CircularOrdering>> {
    if d.n() > 9 {
        return Err(Error::TooLarge(d.n()));
    }
    Ok(CircularOrdering::all(d.n()).find(|c| kalmanson_violation(d, c.as_slice()).is_none()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::rational::{int, ratio};

    fn c(seq: &[usize]) -> CircularOrdering {
        CircularOrdering::new(seq).unwrap()
    }

    fn sp(n: usize, side: &[usize]) -> Split {
        Split::new(n, side).unwrap()
    }

    fn n1() -> Network {
        Network::new(&c(&[1, 2, 3, 4, 5]), &[sp(5, &[1, 2])]).unwrap()
    }

    fn unit_n1() -> WeightedSplitSystem {
        WeightedSplitSystem::unit(&n1().sigma_splits())
    }

    fn ints(d: &DistanceMatrix) -> Vec<i64> {
        d.entries().iter().map(|e| i64::try_from(e.to_integer()).unwrap()).collect()
    }

    #[test]
    fn metric_examples() {
        assert_eq!(ints(&metric_from_splits(&unit_n1())), vec![2, 4, 5, 4, 4, 5, 4, 3, 4, 3]);
        let trivial_only = WeightedSplitSystem::new(5, (1..=5).map(|t| (sp(5, &[t]), int(1))), None).unwrap();
        assert!(metric_from_splits(&trivial_only).entries().iter().all(|e| e == &int(2)));
        let single = WeightedSplitSystem::new(5, [(sp(5, &[1, 2]), int(3))], None).unwrap();
        let d = metric_from_splits(&single);
        assert_eq!(d.get(1, 3), int(3));
        assert_eq!(d.get(1, 2), int(0));
    }

    #[test]
    fn weight_normalization() {
        let ws = WeightedSplitSystem::new(5, [(sp(5, &[1, 2]), int(0)), (sp(5, &[3]), int(0))], None).unwrap();
        assert_eq!(ws.weights().len(), 5);
        assert!(ws.weight(&sp(5, &[1, 2])).is_none());
        assert!(matches!(WeightedSplitSystem::new(5, [(sp(5, &[1, 2]), int(-1))], None), Err(Error::NegativeValue(_))));
    }

    #[test]
    fn total_weight_examples() {
        assert_eq!(total_weight(&unit_n1()), int(8));
        let trivial_only = WeightedSplitSystem::new(5, (1..=5).map(|t| (sp(5, &[t]), int(1))), None).unwrap();
        assert_eq!(total_weight(&trivial_only), int(5));
        let half =
            WeightedSplitSystem::new(5, unit_n1().weights().iter().map(|(s, w)| (*s, w * ratio(1, 2))), None).unwrap();
        assert_eq!(total_weight(&half), int(4));
    }

    #[test]
    fn length_examples() {
        let d = metric_from_splits(&unit_n1());
        assert_eq!(network_length(&n1(), &d).unwrap(), int(32));
        let tour = Network::tour(&c(&[1, 2, 3, 4, 5]));
        assert_eq!(network_length(&tour, &d).unwrap(), int(16));
        assert_eq!(network_length(&n1(), &DistanceMatrix::zeros(5).unwrap()).unwrap(), int(0));
        assert!(network_length(&n1(), &DistanceMatrix::zeros(6).unwrap()).is_err());
    }

    #[test]
    fn kalmanson_examples() {
        let d = metric_from_splits(&unit_n1());
        assert!(kalmanson_check(&d, &c(&[1, 2, 3, 4, 5])).unwrap());
        // d13 = d24 = 0, everything else 1.
        let bad = DistanceMatrix::from_ints(4, &[1, 0, 1, 1, 0, 1]).unwrap();
        assert!(!kalmanson_check(&bad, &c(&[1, 2, 3, 4])).unwrap());
        let flat = DistanceMatrix::from_ints(5, &[7; 10]).unwrap();
        assert!(CircularOrdering::all(5).all(|o| kalmanson_check(&flat, &o).unwrap()));
    }

    #[test]
    fn decompose_examples() {
        let d = metric_from_splits(&unit_n1());
        let id = c(&[1, 2, 3, 4, 5]);
        let ws = kalmanson_decompose(&d, &id).unwrap();
        assert_eq!(ws.weights().len(), 8);
        assert!(ws.weights().values().all(|w| w == &int(1)));
        assert_eq!(ws.system().splits(), n1().sigma_splits().splits());
        assert!(ws.weight(&sp(5, &[2, 3])).is_none());
        // Arc {4,5} on positions 3..=4 and its complement arc.
        assert_eq!(arc_weight(&d, id.as_slice(), 3, 4), int(1));
        assert_eq!(arc_weight(&d, id.as_slice(), 1, 2), int(0));
        assert_eq!(complement_arc_weight(&d, &id, &sp(5, &[1, 2])).unwrap(), int(1));
        assert_eq!(arc_weight(&d, id.as_slice(), 2, 4), int(1));
    }

    #[test]
    fn decompose_rejects_non_kalmanson() {
        let bad = DistanceMatrix::from_ints(4, &[1, 0, 1, 1, 0, 1]).unwrap();
        assert!(matches!(kalmanson_decompose(&bad, &c(&[1, 2, 3, 4])), Err(Error::NotKalmanson(_))));
    }

    #[test]
    fn shortest_paths() {
        let ws = unit_n1();
        let g = build_graph(&n1(), Some(&ws)).unwrap();
        assert_eq!(shortest_path_metric(&g).unwrap(), metric_from_splits(&ws));
        let unweighted = build_graph(&n1(), None).unwrap();
        assert!(matches!(shortest_path_metric(&unweighted), Err(Error::UnweightedGraph)));
        let zero = WeightedSplitSystem::new(5, [], None).unwrap();
        let g = build_graph(&n1(), Some(&zero)).unwrap();
        assert_eq!(shortest_path_metric(&g).unwrap(), DistanceMatrix::zeros(5).unwrap());
    }

    #[test]
    fn tree_paths_are_unique_path_sums() {
        let tree = Network::new(&c(&[1, 2, 3, 4, 5]), &[sp(5, &[1, 2]), sp(5, &[4, 5])]).unwrap();
        let ws = WeightedSplitSystem::new(
            5,
            tree.sigma_splits().splits().iter().enumerate().map(|(i, s)| (*s, int(i as i64 + 1))),
            None,
        )
        .unwrap();
        let g = build_graph(&tree, Some(&ws)).unwrap();
        assert_eq!(shortest_path_metric(&g).unwrap(), metric_from_splits(&ws));
    }

    #[test]
    fn six_cycles_cannot_carry_every_split_metric() {
        // A pentagon with pendant edges has 10 edge weights for 10 split
        // weights, and the paths reproduce the split metric.
        let five = Network::tour(&c(&[1, 2, 3, 4, 5]));
        let ws = WeightedSplitSystem::new(
            5,
            five.sigma_splits().splits().iter().enumerate().map(|(i, s)| (*s, int(i as i64 + 1))),
            None,
        )
        .unwrap();
        let g = build_graph(&five, Some(&ws)).unwrap();
        assert_eq!(shortest_path_metric(&g).unwrap(), metric_from_splits(&ws));

        // A hexagon has 12 edge weights for 15 split weights. With unit
        // weights, opposite taxa are 9 apart in the split metric but every
        // path between them crosses two edges of the same 2|4 split.
        let six = Network::tour(&c(&[1, 2, 3, 4, 5, 6]));
        let unit = WeightedSplitSystem::unit(&six.sigma_splits());
        let g = build_graph(&six, Some(&unit)).unwrap();
        let paths = shortest_path_metric(&g).unwrap();
        assert_eq!(metric_from_splits(&unit).get(1, 4), int(9));
        assert_eq!(paths.get(1, 4), int(11));
    }

    #[test]
    fn consistent_ordering_search() {
        let d = metric_from_splits(&unit_n1());
        assert_eq!(find_consistent_ordering(&d).unwrap(), Some(c(&[1, 2, 3, 4, 5])));
        let flat = DistanceMatrix::from_ints(6, &[3; 15]).unwrap();
        assert_eq!(find_consistent_ordering(&flat).unwrap(), Some(c(&[1, 2, 3, 4, 5, 6])));
        // Every 4-point metric is Kalmanson on some ordering; this one is
        // Kalmanson on exactly one.
        let four = DistanceMatrix::from_ints(4, &[1, 0, 1, 1, 0, 1]).unwrap();
        assert_eq!(find_consistent_ordering(&four).unwrap(), Some(c(&[1, 2, 4, 3])));
        // 1 cannot sit next to 2, 3 and 4 at once.
        let cross =
            WeightedSplitSystem::new(5, [12, 13, 14].map(|p| (sp(5, &[p / 10, p % 10]), int(1))), None).unwrap();
        assert_eq!(find_consistent_ordering(&metric_from_splits(&cross)).unwrap(), None);
        assert!(matches!(find_consistent_ordering(&DistanceMatrix::zeros(10).unwrap()), Err(Error::TooLarge(10))));
    }
}
