//! Sequential imposition of edges by swapping out replacement edges.
//!
//! Imposing a nontree edge removes its replacement edge from the current tree
//! and adds the edge, raising the tree cost by exactly the replacement cost.
//! States are persistent values: every step returns a new state.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};
use crate::mst::{minimum_spanning_tree, ImposedSet, SpanningTree};
use crate::tree_analysis::{replacement, ExtCost};

/// One imposition: the imposed edge and the tree edge it displaced, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub imposed: EdgeId,
    pub removed: Option<EdgeId>,
    /// Tree cost after this step.
    pub cost_after: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpositionState {
    tree: SpanningTree,
    imposed: ImposedSet,
    history: Vec<Step>,
}

impl ImpositionState {
    /// Starting state: `tree` with nothing imposed.
    pub fn new(tree: SpanningTree) -> Self {
        Self {
            tree,
            imposed: ImposedSet::empty(),
            history: Vec::new(),
        }
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn imposed(&self) -> &ImposedSet {
        &self.imposed
    }

    pub fn history(&self) -> &[Step] {
        &self.history
    }

    pub fn total_cost(&self) -> i64 {
        self.tree.total_cost()
    }

    /// Imposes `e` on the current tree.
    ///
    /// An edge already in the tree is simply marked imposed. Otherwise its
    /// replacement edge is swapped out; if every edge on its tree path is
    /// already imposed the imposed edges would close a cycle and the step fails.
    pub fn impose_edge(&self, g: &Graph, e: EdgeId) -> Result<Self> {
        g.try_edge(e)?;
        if self.tree.contains(e) {
            let mut history = self.history.clone();
            history.push(Step {
                imposed: e,
                removed: None,
                cost_after: self.tree.total_cost(),
            });
            return Ok(Self {
                tree: self.tree.clone(),
                imposed: self.imposed.with(e),
                history,
            });
        }

        let r = replacement(g, &self.tree, &self.imposed, e)?;
        let (Some(removed), ExtCost::Finite(r_cost)) = (r.r_edge(), r.r_cost()) else {
            let edge = g.edge(e);
            let mut cycle = self.tree.path(edge.u, edge.v)?;
            cycle.push(e);
            return Err(Error::ImposedCycle { edges: cycle });
        };
        let tree = self.tree.swap(g, removed, e);
        debug_assert_eq!(tree.total_cost(), self.tree.total_cost() + r_cost);
        let mut history = self.history.clone();
        history.push(Step {
            imposed: e,
            removed: Some(removed),
            cost_after: tree.total_cost(),
        });
        Ok(Self {
            tree,
            imposed: self.imposed.with(e),
            history,
        })
    }

    /// Rebuilds the tree by applying the recorded swaps to `base`.
    pub fn replay(&self, g: &Graph, base: &SpanningTree) -> SpanningTree {
        self.history
            .iter()
            .fold(base.clone(), |t, step| match step.removed {
                Some(r) => t.swap(g, r, step.imposed),
                None => t,
            })
    }
}

/// Imposes `edges` left to right, starting from the minimum spanning tree of `g`.
///
/// Failures are wrapped in [`Error::Step`] carrying the 0-based step index.
pub fn impose_all(g: &Graph, edges: &[EdgeId]) -> Result<ImpositionState> {
    let base = ImpositionState::new(minimum_spanning_tree(g)?);
    edges
        .iter()
        .enumerate()
        .try_fold(base, |state, (step, &e)| {
            state.impose_edge(g, e).map_err(|source| Error::Step {
                step,
                edge: e,
                source: Box::new(source),
            })
        })
}
