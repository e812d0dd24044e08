//! Replacement edges and costs of nontree edges, and the two optimality
//! conditions characterizing a minimum spanning tree.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::mst::{ImposedSet, SpanningTree};

/// An integer cost or infinity. `Infinite` compares greater than every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtCost {
    Finite(i64),
    Infinite,
}

impl ExtCost {
    pub fn is_infinite(self) -> bool {
        matches!(self, ExtCost::Infinite)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtCost::Finite(c) => Some(c),
            ExtCost::Infinite => None,
        }
    }
}

impl std::ops::Add for ExtCost {
    type Output = ExtCost;

    /// Panics on `i64` overflow, which graph construction rules out for sums of
    /// tree costs and replacement costs.
    fn add(self, rhs: ExtCost) -> ExtCost {
        match (self, rhs) {
            (ExtCost::Finite(a), ExtCost::Finite(b)) => {
                ExtCost::Finite(a.checked_add(b).expect("cost overflow"))
            }
            _ => ExtCost::Infinite,
        }
    }
}

impl fmt::Display for ExtCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtCost::Finite(c) => write!(f, "{c}"),
            ExtCost::Infinite => f.write_str("inf"),
        }
    }
}

/// Replacement edge and cost of one nontree edge.
///
/// `r_edge` is `None` exactly when `r_cost` is infinite, i.e. every edge on the
/// tree path is imposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Replacement {
    for_edge: EdgeId,
    r_edge: Option<EdgeId>,
    r_cost: ExtCost,
}

impl Replacement {
    pub fn for_edge(&self) -> EdgeId {
        self.for_edge
    }

    pub fn r_edge(&self) -> Option<EdgeId> {
        self.r_edge
    }

    pub fn r_cost(&self) -> ExtCost {
        self.r_cost
    }
}

/// Maximum-cost non-imposed edge on the tree path between `e`'s endpoints.
/// Ties go to the lowest edge id.
pub fn replacement(
    g: &Graph,
    t: &SpanningTree,
    imposed: &ImposedSet,
    e: EdgeId,
) -> Result<Replacement> {
    let edge = *g.try_edge(e)?;
    if t.contains(e) {
        return Err(Error::TreeEdge(e));
    }
    let best = t
        .path(edge.u, edge.v)?
        .into_iter()
        .filter(|&p| !imposed.contains(p))
        .max_by_key(|&p| (g.cost(p), std::cmp::Reverse(p)));
    Ok(match best {
        Some(r) => Replacement {
            for_edge: e,
            r_edge: Some(r),
            r_cost: ExtCost::Finite(edge.cost - g.cost(r)),
        },
        None => Replacement {
            for_edge: e,
            r_edge: None,
            r_cost: ExtCost::Infinite,
        },
    })
}

/// Replacement of every nontree edge of `g`.
pub fn replacement_table(
    g: &Graph,
    t: &SpanningTree,
    imposed: &ImposedSet,
) -> Result<BTreeMap<EdgeId, Replacement>> {
    g.edges()
        .iter()
        .filter(|e| !t.contains(e.id))
        .map(|e| replacement(g, t, imposed, e.id).map(|r| (e.id, r)))
        .collect()
}

/// Every nontree edge costs at least as much as each edge on its tree path.
pub fn check_path_optimality(g: &Graph, t: &SpanningTree) -> bool {
    g.edges().iter().filter(|e| !t.contains(e.id)).all(|e| {
        t.path(e.u, e.v)
            .expect("endpoints are valid nodes")
            .iter()
            .all(|&p| e.cost >= g.cost(p))
    })
}

/// Every tree edge costs at most as much as each graph edge crossing the cut
/// obtained by deleting it from the tree.
pub fn check_cut_optimality(g: &Graph, t: &SpanningTree) -> bool {
    t.edges().iter().all(|&f| {
        let side = cut_side(g, t, f);
        let cost = g.cost(f);
        g.edges()
            .iter()
            .filter(|e| side[e.u] != side[e.v])
            .all(|e| cost <= e.cost)
    })
}

/// Nodes reachable from `f.u` in the tree without `f`.
fn cut_side(g: &Graph, t: &SpanningTree, f: EdgeId) -> Vec<bool> {
    let mut side = vec![false; g.node_count()];
    let start = g.edge(f).u;
    side[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &e in g.incident(x) {
            if e == f || !t.contains(e) {
                continue;
            }
            let y = g.edge(e).other(x);
            if !side[y] {
                side[y] = true;
                queue.push_back(y);
            }
        }
    }
    side
}
