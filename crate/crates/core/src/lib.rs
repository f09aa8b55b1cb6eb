//! Exact combinatorics and linear algebra for the level-1 network polytopes
//! `BME(n, k)`.
//!
//! A binary level-1 phylogenetic network with `n` leaves and `k` nontrivial
//! bridges is stored as a circular ordering together with `k` pairwise
//! compatible arc splits, modulo twisting around bridges. Each such network
//! has a vertex vector in `C(n, 2)` coordinates; the convex hull of all of
//! them is `BME(n, k)`, which interpolates between the symmetric travelling
//! salesman polytope (`k = 0`) and the balanced minimum evolution polytope
//! (`k = n - 3`).
//!
//! Everything here is exact: vectors and metrics use arbitrary precision
//! rationals, and ranks are computed by fraction-free elimination.

pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod metric;
pub mod network;
pub mod optimize;
pub mod polytope;
pub mod random;
pub mod rational;
pub mod split;
pub mod vector;

pub use enumerate::{
    associahedron_face_count, enumerate_diagonal_sets, enumerate_networks, network_count, NetworkIter,
};
pub use error::{Error, Result};
pub use graph::{build_graph, PhyloGraph};
pub use metric::{DistanceMatrix, WeightedSplitSystem};
pub use network::{Drawing, Network, SplitSystem};
pub use optimize::{minimize, OptimizationResult};
pub use polytope::{FaceReport, LinearFunctional};
pub use rational::Rational;
pub use split::{CircularOrdering, Split};
pub use vector::RationalVector;

/// Largest taxon count supported by the bitmask split representation.
pub const MAX_TAXA: usize = 31;
