//! Minimum spanning trees, optionally forced to contain an imposed edge set.
//!
//! Kruskal's greedy over edges sorted by `(cost, id)`. Imposing edges is done
//! by uniting their endpoints before the greedy pass, which is the same as
//! contracting them and computing an MST of the contracted graph.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, NodeId};
use crate::union_find::UnionFind;

/// A spanning tree of a particular graph, rooted at node 0 for path walks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    edges: Vec<EdgeId>,
    in_tree: Vec<bool>,
    parent: Vec<Option<(NodeId, EdgeId)>>,
    depth: Vec<usize>,
    total_cost: i64,
}

impl SpanningTree {
    /// Validates that `ids` form a spanning tree of `g`.
    pub fn from_edges(g: &Graph, ids: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut edges: Vec<EdgeId> = ids.into_iter().collect();
        edges.sort_unstable();
        for &e in &edges {
            g.try_edge(e)?;
        }
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotSpanningTree("duplicate edge id".into()));
        }
        if edges.len() + 1 != g.node_count() {
            return Err(Error::NotSpanningTree(format!(
                "{} edges for {} nodes",
                edges.len(),
                g.node_count()
            )));
        }
        let mut uf = UnionFind::new(g.node_count());
        for &e in &edges {
            let edge = g.edge(e);
            if !uf.union(edge.u, edge.v) {
                return Err(Error::NotSpanningTree(format!("edge {e} closes a cycle")));
            }
        }
        Ok(Self::build(g, edges))
    }

    /// Builds parent links from a known-valid edge set.
    fn build(g: &Graph, mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        let n = g.node_count();
        let mut in_tree = vec![false; g.edge_count()];
        for &e in &edges {
            in_tree[e.0] = true;
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = queue.pop_front() {
            for &e in g.incident(x) {
                if !in_tree[e.0] {
                    continue;
                }
                let y = g.edge(e).other(x);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, e));
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        debug_assert!(seen.iter().all(|&s| s), "tree does not span");
        let total_cost = edges.iter().map(|&e| g.cost(e)).sum();
        Self {
            edges,
            in_tree,
            parent,
            depth,
            total_cost,
        }
    }

    /// Tree edge ids in ascending order.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn total_cost(&self) -> i64 {
        self.total_cost
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.in_tree.get(e.0).copied().unwrap_or(false)
    }

    /// Parent node and connecting edge; `None` for the root (node 0).
    pub fn parent(&self, n: NodeId) -> Option<(NodeId, EdgeId)> {
        self.parent[n]
    }

    /// Edges of the unique simple path from `i` to `j`, ordered from `i`'s side.
    pub fn path(&self, i: NodeId, j: NodeId) -> Result<Vec<EdgeId>> {
        let n = self.node_count();
        for node in [i, j] {
            if node >= n {
                return Err(Error::NodeOutOfRange {
                    node,
                    node_count: n,
                });
            }
        }
        let (mut a, mut b) = (i, j);
        let mut from_i = Vec::new();
        let mut from_j = Vec::new();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let (p, e) = self.parent[a].expect("non-root has a parent");
                from_i.push(e);
                a = p;
            } else {
                let (p, e) = self.parent[b].expect("non-root has a parent");
                from_j.push(e);
                b = p;
            }
        }
        from_i.extend(from_j.into_iter().rev());
        Ok(from_i)
    }

    /// The tree with `remove` replaced by `add`. Caller guarantees the result is a tree.
    pub(crate) fn swap(&self, g: &Graph, remove: EdgeId, add: EdgeId) -> Self {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&e| e != remove)
            .chain(std::iter::once(add))
            .collect();
        Self::build(g, edges)
    }
}

/// Edges that must appear in every admissible tree. Always acyclic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ImposedSet {
    edges: BTreeSet<EdgeId>,
}

impl ImposedSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates ids against `g` and rejects sets containing a cycle.
    pub fn new(g: &Graph, ids: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let edges: BTreeSet<EdgeId> = ids.into_iter().collect();
        for &e in &edges {
            g.try_edge(e)?;
        }
        if let Some(cycle) = find_cycle(g, edges.iter().copied()) {
            return Err(Error::ImposedCycle { edges: cycle });
        }
        Ok(Self { edges })
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Adds an edge already known not to close an imposed cycle.
    pub(crate) fn with(&self, e: EdgeId) -> Self {
        let mut edges = self.edges.clone();
        edges.insert(e);
        Self { edges }
    }
}

/// First cycle closed when adding `ids` in order, as the closing edge's forest
/// path followed by the closing edge.
pub(crate) fn find_cycle(g: &Graph, ids: impl IntoIterator<Item = EdgeId>) -> Option<Vec<EdgeId>> {
    let mut uf = UnionFind::new(g.node_count());
    let mut accepted = Vec::new();
    for e in ids {
        let edge = g.edge(e);
        if uf.union(edge.u, edge.v) {
            accepted.push(e);
            continue;
        }
        let mut cycle = forest_path(g, &accepted, edge.u, edge.v);
        cycle.push(e);
        return Some(cycle);
    }
    None
}

fn forest_path(g: &Graph, forest: &[EdgeId], from: NodeId, to: NodeId) -> Vec<EdgeId> {
    let mut adj: Vec<Vec<EdgeId>> = vec![Vec::new(); g.node_count()];
    for &e in forest {
        let edge = g.edge(e);
        adj[edge.u].push(e);
        adj[edge.v].push(e);
    }
    let mut via: Vec<Option<(NodeId, EdgeId)>> = vec![None; g.node_count()];
    let mut seen = vec![false; g.node_count()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &e in &adj[x] {
            let y = g.edge(e).other(x);
            if !seen[y] {
                seen[y] = true;
                via[y] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while let Some((p, e)) = via[cur] {
        path.push(e);
        cur = p;
    }
    path.reverse();
    path
}

pub fn minimum_spanning_tree(g: &Graph) -> Result<SpanningTree> {
    constrained_mst(g, &ImposedSet::empty())
}

/// Minimum-cost spanning tree containing every edge of `imposed`.
pub fn constrained_mst(g: &Graph, imposed: &ImposedSet) -> Result<SpanningTree> {
    for e in imposed.iter() {
        g.try_edge(e)?;
    }
    let n = g.node_count();
    let mut uf = UnionFind::new(n);
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    for e in imposed.iter() {
        let edge = g.edge(e);
        if !uf.union(edge.u, edge.v) {
            let cycle = find_cycle(g, imposed.iter()).expect("union failure implies a cycle");
            return Err(Error::ImposedCycle { edges: cycle });
        }
        chosen.push(e);
    }

    let mut order: Vec<EdgeId> = g
        .edges()
        .iter()
        .map(|e| e.id)
        .filter(|&e| !imposed.contains(e))
        .collect();
    order.sort_by_key(|&e| (g.cost(e), e));
    for e in order {
        if uf.sets() == 1 {
            break;
        }
        let edge = g.edge(e);
        if uf.union(edge.u, edge.v) {
            chosen.push(e);
        }
    }

    if uf.sets() > 1 {
        let b = (1..n).find(|&x| !uf.same(0, x)).expect("more than one set");
        return Err(Error::Disconnected { a: 0, b });
    }
    Ok(SpanningTree::build(g, chosen))
}
