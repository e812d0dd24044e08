//! Seeded random instance generation.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Cost range used by the CLI's random instances.
pub const DEFAULT_COSTS: RangeInclusive<i64> = 1..=100;

/// A connected multigraph with `nodes` nodes and `edges` edges.
///
/// A random spanning tree guarantees connectivity; the remaining edges join
/// uniformly chosen distinct endpoints and may duplicate existing edges. Edge
/// order is shuffled so tree edges are not always listed first.
pub fn random_connected_graph<R: Rng + ?Sized>(
    rng: &mut R,
    nodes: usize,
    edges: usize,
    costs: RangeInclusive<i64>,
) -> Result<Graph> {
    if nodes == 0 {
        return Err(Error::Generator("at least one node is required".into()));
    }
    if edges + 1 < nodes {
        return Err(Error::Generator(format!(
            "{edges} edges cannot connect {nodes} nodes"
        )));
    }
    if nodes == 1 && edges > 0 {
        return Err(Error::Generator("a single node admits no edges".into()));
    }
    if costs.is_empty() {
        return Err(Error::Generator("empty cost range".into()));
    }

    let mut order: Vec<usize> = (0..nodes).collect();
    order.shuffle(rng);
    let mut list = Vec::with_capacity(edges);
    for i in 1..nodes {
        let j = rng.gen_range(0..i);
        list.push((order[i], order[j], rng.gen_range(costs.clone())));
    }
    while list.len() < edges {
        let u = rng.gen_range(0..nodes);
        let v = rng.gen_range(0..nodes);
        if u != v {
            list.push((u, v, rng.gen_range(costs.clone())));
        }
    }
    list.shuffle(rng);
    Graph::new(nodes, list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mst::minimum_spanning_tree;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn connected_and_sized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..8 {
            for m in (n - 1)..(n + 6) {
                if n == 1 && m > 0 {
                    continue;
                }
                let g = random_connected_graph(&mut rng, n, m, DEFAULT_COSTS).unwrap();
                assert_eq!((g.node_count(), g.edge_count()), (n, m));
                assert!(minimum_spanning_tree(&g).is_ok());
                assert!(g.edges().iter().all(|e| (1..=100).contains(&e.cost)));
            }
        }
    }

    #[test]
    fn same_seed_same_graph() {
        let a = random_connected_graph(&mut ChaCha8Rng::seed_from_u64(3), 6, 10, DEFAULT_COSTS);
        let b = random_connected_graph(&mut ChaCha8Rng::seed_from_u64(3), 6, 10, DEFAULT_COSTS);
        assert_eq!(a.unwrap(), b.unwrap());
    }

    #[test]
    fn rejects_bad_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(random_connected_graph(&mut rng, 0, 0, DEFAULT_COSTS).is_err());
        assert!(random_connected_graph(&mut rng, 5, 3, DEFAULT_COSTS).is_err());
        assert!(random_connected_graph(&mut rng, 1, 2, DEFAULT_COSTS).is_err());
    }
}
