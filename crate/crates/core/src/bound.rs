//! Lower bound on the cost of a spanning tree containing an imposed edge set:
//! the MST cost plus the replacement costs of the imposed edges, all measured
//! against the unconstrained MST.

use crate::error::Result;
use crate::graph::{EdgeId, Graph};
use crate::mst::{constrained_mst, minimum_spanning_tree, ImposedSet};
use crate::tree_analysis::{replacement, ExtCost};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Contribution {
    pub edge: EdgeId,
    /// `None` for tree edges of the base MST and for infinite contributions.
    pub r_edge: Option<EdgeId>,
    pub r_cost: ExtCost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub base_cost: i64,
    pub contributions: Vec<Contribution>,
    pub lower_bound: ExtCost,
    pub exact_cost: Option<i64>,
    pub gap: Option<i64>,
}

/// Computes the bound for `imposed`. Tree edges of the base MST contribute 0.
///
/// With `compute_exact`, the constrained optimum and the gap are filled in too.
pub fn lower_bound(g: &Graph, imposed: &ImposedSet, compute_exact: bool) -> Result<BoundReport> {
    let tree = minimum_spanning_tree(g)?;
    let none = ImposedSet::empty();
    let contributions = imposed
        .iter()
        .map(|e| {
            if tree.contains(e) {
                g.try_edge(e)?;
                return Ok(Contribution {
                    edge: e,
                    r_edge: None,
                    r_cost: ExtCost::Finite(0),
                });
            }
            let r = replacement(g, &tree, &none, e)?;
            Ok(Contribution {
                edge: e,
                r_edge: r.r_edge(),
                r_cost: r.r_cost(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let lower_bound = contributions
        .iter()
        .fold(ExtCost::Finite(tree.total_cost()), |acc, c| acc + c.r_cost);

    let exact_cost = if compute_exact {
        Some(constrained_mst(g, imposed)?.total_cost())
    } else {
        None
    };
    let gap = match (exact_cost, lower_bound) {
        (Some(exact), ExtCost::Finite(lb)) => Some(exact - lb),
        _ => None,
    };
    Ok(BoundReport {
        base_cost: tree.total_cost(),
        contributions,
        lower_bound,
        exact_cost,
        gap,
    })
}
