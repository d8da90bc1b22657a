//! Shared inputs for the benchmarks.

use surfalg_core::brauer::{random_ribbon_graph, BrauerGraph};
use surfalg_core::weighted::random_weighted;
use surfalg_core::WeightedBiserialQuiver;

/// Seeded quivers with `n` vertices and weights at most 3.
pub fn quivers(n: usize, count: u64) -> Vec<WeightedBiserialQuiver> {
    (0..count).map(|seed| random_weighted(n, seed, 3).expect("generator succeeds")).collect()
}

/// Seeded ribbon graphs with `edges` edges and multiplicities at most 3.
pub fn ribbon_graphs(edges: usize, count: u64) -> Vec<BrauerGraph> {
    (0..count).map(|seed| random_ribbon_graph(edges, seed, 3).expect("generator succeeds")).collect()
}
