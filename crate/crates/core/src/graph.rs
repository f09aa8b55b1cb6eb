//! Graph realization of a network: a cycle per polygon region with at least
//! four boundary elements, a single degree-3 node per triangle.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::metric::WeightedSplitSystem;
use crate::network::{Network, Port, Regions};
use crate::rational::{self, Rational};
use crate::split::Split;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf(usize),
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: Option<Rational>,
}

/// An unrooted leaf-labelled graph. Nodes `0..n` are the leaves `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhyloGraph {
    pub nodes: Vec<NodeKind>,
    pub edges: Vec<Edge>,
}

impl PhyloGraph {
    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|k| matches!(k, NodeKind::Leaf(_))).count()
    }

    pub fn internal_count(&self) -> usize {
        self.nodes.len() - self.leaf_count()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.a == node || e.b == node).count()
    }

    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        adj
    }

    /// Node id for taxon `t`.
    pub fn leaf_node(&self, t: usize) -> usize {
        self.nodes.iter().position(|k| *k == NodeKind::Leaf(t)).expect("taxon present")
    }

    /// Graphviz form: leaves named by taxon, internal nodes `v0, v1, ...`.
    pub fn to_dot(&self) -> String {
        let mut internal = 0;
        let names: Vec<String> = self
            .nodes
            .iter()
            .map(|k| match k {
                NodeKind::Leaf(t) => t.to_string(),
                NodeKind::Internal => {
                    internal += 1;
                    format!("v{}", internal - 1)
                }
            })
            .collect();
        let mut out = String::from("graph network {\n");
        for (id, k) in self.nodes.iter().enumerate() {
            let shape = if matches!(k, NodeKind::Leaf(_)) { "box" } else { "point" };
            let _ = writeln!(out, "  \"{}\" [shape={shape}];", names[id]);
        }
        for e in &self.edges {
            match &e.weight {
                Some(w) => {
                    let _ = writeln!(
                        out,
                        "  \"{}\" -- \"{}\" [weight=\"{}\"];",
                        names[e.a],
                        names[e.b],
                        rational::format_decimal(w)
                    );
                }
                None => {
                    let _ = writeln!(out, "  \"{}\" -- \"{}\";", names[e.a], names[e.b]);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Split realised by the edge pair `(a, b)` of a cycle region: the ports
/// strictly after edge `a` up to and including the start of edge `b`.
fn cycle_split(regions: &Regions, r: usize, a: usize, b: usize) -> Split {
    let mask = (a + 1..=b).fold(0, |m, p| m | regions.port_mask(r, p));
    Split::from_mask(regions.n, mask).expect("proper cut")
}

/// Builds the graph of `net`; with `weights`, every edge carries the total
/// weight of the splits whose minimal cut contains it.
pub fn build_graph(net: &Network, weights: Option<&WeightedSplitSystem>) -> Result<PhyloGraph> {
    let n = net.n();
    let regions = net.regions();
    if let Some(ws) = weights {
        if ws.n() != n {
            return Err(Error::AmbientMismatch(ws.n(), n));
        }
        let sigma = net.sigma_splits();
        if ws.weights().keys().any(|s| !sigma.contains(s)) {
            return Err(Error::WeightSystemMismatch);
        }
    }
    let weight_of =
        |s: &Split| -> Option<Rational> { weights.map(|ws| ws.weight(s).cloned().unwrap_or_else(|| rational::int(0))) };

    let mut nodes: Vec<NodeKind> = (1..=n).map(NodeKind::Leaf).collect();
    let mut edges = Vec::new();
    // port_node[r][p]: the internal node carrying port p of region r.
    let mut port_node: Vec<Vec<usize>> = Vec::with_capacity(regions.regions.len());
    for region in &regions.regions {
        let m = region.ports.len();
        if m == 3 {
            nodes.push(NodeKind::Internal);
            port_node.push(vec![nodes.len() - 1; 3]);
        } else {
            let first = nodes.len();
            nodes.extend(std::iter::repeat_n(NodeKind::Internal, m));
            port_node.push((first..first + m).collect());
        }
    }

    for (r, region) in regions.regions.iter().enumerate() {
        let m = region.ports.len();
        for (p, port) in region.ports.iter().enumerate() {
            match *port {
                Port::Leaf(t) => {
                    let w = weight_of(&Split::trivial(n, t)?);
                    edges.push(Edge { a: t - 1, b: port_node[r][p], weight: w });
                }
                Port::Down(child) => {
                    let w = weight_of(&regions.regions[child].bridge.unwrap());
                    edges.push(Edge { a: port_node[r][p], b: port_node[child][0], weight: w });
                }
                Port::Up => {}
            }
        }
        if m >= 4 {
            // Edge p joins ports p and p + 1.
            let mut cycle_weights: Vec<Option<Rational>> = vec![weights.map(|_| rational::int(0)); m];
            if weights.is_some() {
                for a in 0..m {
                    for b in a + 2..m {
                        // Skip pairs isolating a single port: those splits
                        // are cut by one leaf or bridge edge instead.
                        if a == 0 && b == m - 1 {
                            continue;
                        }
                        let w = weight_of(&cycle_split(&regions, r, a, b)).unwrap();
                        for e in [a, b] {
                            if let Some(acc) = cycle_weights[e].as_mut() {
                                *acc += &w;
                            }
                        }
                    }
                }
            }
            for (p, w) in cycle_weights.into_iter().enumerate() {
                edges.push(Edge { a: port_node[r][p], b: port_node[r][(p + 1) % m], weight: w });
            }
        }
    }
    Ok(PhyloGraph { nodes, edges })
}

/// All splits realised by the region structure: trivial, bridge and cycle
/// edge-pair splits. Independent of the orbit-based `Σ(N)` computation.
pub fn region_splits(net: &Network) -> Vec<Split> {
    let regions = net.regions();
    let n = net.n();
    let mut out: BTreeMap<Split, ()> = BTreeMap::new();
    for t in 1..=n {
        out.insert(Split::trivial(n, t).expect("valid taxon"), ());
    }
    for b in net.bridges() {
        out.insert(*b, ());
    }
    for (r, region) in regions.regions.iter().enumerate() {
        let m = region.ports.len();
        for a in 0..m {
            for b in a + 2..m {
                if a == 0 && b == m - 1 {
                    continue;
                }
                out.insert(cycle_split(&regions, r, a, b), ());
            }
        }
    }
    out.into_keys().collect()
}
