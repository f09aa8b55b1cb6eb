//! Exhaustive structural checks over every network with few leaves.

use std::collections::BTreeSet;

use bmenet::enumerate::enumerate_networks;
use bmenet::graph::{build_graph, region_splits, NodeKind};
use bmenet::network::Network;
use bmenet::split::{CircularOrdering, Split};
use bmenet::vector::{network_ints, network_vector};

fn all_networks(max_n: usize) -> impl Iterator<Item = Network> {
    (3..=max_n).flat_map(|n| (0..=n - 3).flat_map(move |k| enumerate_networks(n, k).unwrap()))
}

#[test]
fn every_orbit_member_canonicalizes_to_the_same_network() {
    for net in all_networks(6) {
        let orbit = net.consistent_orderings();
        assert_eq!(orbit.len(), 1 << net.k());
        assert_eq!(orbit.iter().collect::<BTreeSet<_>>().len(), orbit.len());
        assert_eq!(orbit.iter().min(), Some(net.ordering()));
        for c in &orbit {
            assert_eq!(Network::new(c, net.bridges()).unwrap(), net);
        }
        for b in net.bridges() {
            let d = net.twist(b).unwrap();
            let drawn = CircularOrdering::new(&d.seq).unwrap();
            assert!(orbit.contains(&drawn));
            assert_eq!(Network::new(&drawn, net.bridges()).unwrap(), net);
        }
    }
}

#[test]
fn arcs_of_one_consistent_ordering_are_arcs_of_all() {
    for net in all_networks(6) {
        let orbit = net.consistent_orderings();
        for s in Split::all(net.n()).filter(|s| !s.is_trivial()) {
            if !net.bridges().iter().all(|b| b.compatible(&s).unwrap()) {
                continue;
            }
            let arcs = orbit.iter().filter(|c| c.is_arc(&s).unwrap()).count();
            assert!(arcs == 0 || arcs == orbit.len(), "{net}: {s} is an arc of {arcs} orderings");
            assert_eq!(net.displays_split(&s).unwrap(), arcs > 0);
        }
    }
}

#[test]
fn displayed_splits_match_minimal_cuts_of_the_graph() {
    for net in all_networks(7) {
        let sigma: Vec<Split> = net.sigma_splits().splits().iter().copied().collect();
        assert_eq!(region_splits(&net), sigma, "{net}");
    }
}

#[test]
fn sigma_sizes() {
    // A tour displays its n(n-1)/2 arcs; a tree displays n + k splits.
    for n in 3..=7 {
        for net in enumerate_networks(n, 0).unwrap() {
            assert_eq!(net.sigma_splits().len(), n * (n - 1) / 2);
        }
        for net in enumerate_networks(n, n - 3).unwrap() {
            assert_eq!(net.sigma_splits().len(), 2 * n - 3);
        }
    }
}

#[test]
fn vectors_are_injective() {
    for n in 3..=7 {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for k in 0..=n - 3 {
            for net in enumerate_networks(n, k).unwrap() {
                seen.insert(network_ints(&net));
                count += 1;
            }
        }
        assert_eq!(seen.len(), count, "n = {n}");
    }
}

#[test]
fn vector_entries_follow_bridge_counts() {
    for net in all_networks(6) {
        let x = network_vector(&net);
        let orbit = net.consistent_orderings();
        let k = net.k();
        for i in 1..=net.n() {
            for j in i + 1..=net.n() {
                let adjacent = orbit.iter().any(|c| c.adjacent(i, j));
                let b = net.bridge_count_between(i, j).unwrap();
                let want = if adjacent { 1i64 << (k - b) } else { 0 };
                assert_eq!(x.get(i, j), &bmenet::rational::int(want), "{net} ({i},{j})");
            }
        }
    }
}

#[test]
fn graphs_are_trivalent_with_the_right_size() {
    for net in all_networks(7) {
        let g = build_graph(&net, None).unwrap();
        let n = net.n();
        for (id, kind) in g.nodes.iter().enumerate() {
            let want = if matches!(kind, NodeKind::Leaf(_)) { 1 } else { 3 };
            assert_eq!(g.degree(id), want, "{net}");
        }
        // Trivalent and connected with k + 1 independent cycles minus the
        // triangles contracted to single nodes.
        let cycles = g.edges.len() + 1 - g.nodes.len();
        assert!(cycles <= net.k() + 1);
        assert_eq!(g.leaf_count(), n);
    }
}
