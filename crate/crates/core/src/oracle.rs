//! Brute-force ground truth for small graphs.
//!
//! Spanning trees are enumerated by a depth-first include/exclude recursion
//! over the edge list. Inclusion requires the edge to join two components;
//! exclusion requires the remaining edges to still be able to span. Every
//! spanning tree is produced exactly once, in lexicographic order of its
//! sorted edge ids.
//!
//! Nothing here depends on the solver modules: only the graph types are shared.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    max_nodes: usize,
    max_trees: usize,
}

impl EnumerationBudget {
    pub const DEFAULT_MAX_NODES: usize = 8;
    pub const DEFAULT_MAX_TREES: usize = 1_000_000;

    pub fn new(max_nodes: usize, max_trees: usize) -> Result<Self> {
        if max_nodes == 0 || max_trees == 0 {
            return Err(Error::Budget("budget limits must be positive".into()));
        }
        Ok(Self {
            max_nodes,
            max_trees,
        })
    }

    pub fn max_nodes(&self) -> usize {
        self.max_nodes
    }

    pub fn max_trees(&self) -> usize {
        self.max_trees
    }
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self {
            max_nodes: Self::DEFAULT_MAX_NODES,
            max_trees: Self::DEFAULT_MAX_TREES,
        }
    }
}

/// Component labels with naive relabel-on-merge.
#[derive(Clone)]
struct Labels(Vec<usize>);

impl Labels {
    fn singletons(n: usize) -> Self {
        Labels((0..n).collect())
    }

    fn joined(&self, a: usize, b: usize) -> bool {
        self.0[a] == self.0[b]
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (from, to) = (self.0[b], self.0[a]);
        for l in self.0.iter_mut() {
            if *l == from {
                *l = to;
            }
        }
    }

    fn all_joined(&self) -> bool {
        self.0.iter().all(|&l| l == self.0[0])
    }
}

struct Frame {
    next: usize,
    chosen: Vec<EdgeId>,
    labels: Labels,
}

/// Lazy stream of spanning trees; see [`enumerate_spanning_trees`].
pub struct SpanningTrees<'g> {
    g: &'g Graph,
    required: Vec<bool>,
    stack: Vec<Frame>,
    yielded: usize,
    max_trees: usize,
    done: bool,
}

impl<'g> SpanningTrees<'g> {
    fn new(g: &'g Graph, required: &[EdgeId], b: EnumerationBudget) -> Result<Self> {
        if g.node_count() > b.max_nodes {
            return Err(Error::Budget(format!(
                "graph has {} nodes, cap is {}",
                g.node_count(),
                b.max_nodes
            )));
        }
        let mut req = vec![false; g.edge_count()];
        for &e in required {
            g.try_edge(e)?;
            req[e.0] = true;
        }
        let mut it = Self {
            g,
            required: req,
            stack: Vec::new(),
            yielded: 0,
            max_trees: b.max_trees,
            done: false,
        };
        let root = Frame {
            next: 0,
            chosen: Vec::new(),
            labels: Labels::singletons(g.node_count()),
        };
        if it.can_span(&root.labels, 0) {
            it.stack.push(root);
        }
        Ok(it)
    }

    /// Whether `labels` plus edges `from..` connect every node.
    fn can_span(&self, labels: &Labels, from: usize) -> bool {
        let mut l = labels.clone();
        for e in &self.g.edges()[from..] {
            if !l.joined(e.u, e.v) {
                l.merge(e.u, e.v);
            }
        }
        l.all_joined()
    }
}

impl Iterator for SpanningTrees<'_> {
    type Item = Result<Vec<EdgeId>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let target = self.g.node_count() - 1;
        while let Some(frame) = self.stack.pop() {
            if frame.chosen.len() == target {
                // required edges below `next` were never excluded
                if self.required[frame.next..].iter().any(|&r| r) {
                    continue;
                }
                if self.yielded == self.max_trees {
                    self.done = true;
                    return Some(Err(Error::Budget(format!(
                        "more than {} spanning trees",
                        self.max_trees
                    ))));
                }
                self.yielded += 1;
                return Some(Ok(frame.chosen));
            }
            let i = frame.next;
            if i == self.g.edge_count() {
                continue;
            }
            let edge = &self.g.edges()[i];
            if !self.required[i] && self.can_span(&frame.labels, i + 1) {
                self.stack.push(Frame {
                    next: i + 1,
                    chosen: frame.chosen.clone(),
                    labels: frame.labels.clone(),
                });
            }
            if !frame.labels.joined(edge.u, edge.v) {
                let mut labels = frame.labels;
                labels.merge(edge.u, edge.v);
                let mut chosen = frame.chosen;
                chosen.push(edge.id);
                self.stack.push(Frame {
                    next: i + 1,
                    chosen,
                    labels,
                });
            }
        }
        self.done = true;
        None
    }
}

/// Every spanning tree of `g` as a sorted edge-id set.
pub fn enumerate_spanning_trees(g: &Graph, b: EnumerationBudget) -> Result<SpanningTrees<'_>> {
    SpanningTrees::new(g, &[], b)
}

/// A minimum tree found by exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinTree {
    pub cost: i64,
    pub edges: Vec<EdgeId>,
}

fn tree_cost(g: &Graph, edges: &[EdgeId]) -> i64 {
    edges.iter().map(|&e| g.edge(e).cost).sum()
}

/// Minimum-cost spanning tree containing `imposed`, or `None` if no spanning
/// tree contains it. Ties go to the lexicographically smallest edge set.
pub fn brute_min_tree(
    g: &Graph,
    imposed: &[EdgeId],
    b: EnumerationBudget,
) -> Result<Option<MinTree>> {
    let mut best: Option<MinTree> = None;
    for tree in SpanningTrees::new(g, imposed, b)? {
        let edges = tree?;
        let cost = tree_cost(g, &edges);
        let better = match &best {
            None => true,
            Some(m) => (cost, &edges) < (m.cost, &m.edges),
        };
        if better {
            best = Some(MinTree { cost, edges });
        }
    }
    Ok(best)
}

/// All spanning trees of a graph, materialized once for repeated
/// constrained-minimum queries.
#[derive(Debug, Clone)]
pub struct TreeCatalog {
    words: usize,
    trees: Vec<CatalogTree>,
}

#[derive(Debug, Clone)]
struct CatalogTree {
    cost: i64,
    edges: Vec<EdgeId>,
    mask: Vec<u64>,
}

impl TreeCatalog {
    pub fn build(g: &Graph, b: EnumerationBudget) -> Result<Self> {
        let words = g.edge_count().div_ceil(64).max(1);
        let mut trees = Vec::new();
        for tree in enumerate_spanning_trees(g, b)? {
            let edges = tree?;
            let mut mask = vec![0u64; words];
            for e in &edges {
                mask[e.0 / 64] |= 1 << (e.0 % 64);
            }
            trees.push(CatalogTree {
                cost: tree_cost(g, &edges),
                edges,
                mask,
            });
        }
        Ok(Self { words, trees })
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Every tree as `(cost, sorted edge ids)`, in lexicographic order.
    pub fn trees(&self) -> impl Iterator<Item = (i64, &[EdgeId])> {
        self.trees.iter().map(|t| (t.cost, t.edges.as_slice()))
    }

    /// Same answer as [`brute_min_tree`] without re-enumerating.
    pub fn min_containing(&self, imposed: &[EdgeId]) -> Option<MinTree> {
        let mut want = vec![0u64; self.words];
        for e in imposed {
            let w = e.0 / 64;
            if w >= self.words {
                return None;
            }
            want[w] |= 1 << (e.0 % 64);
        }
        self.trees
            .iter()
            .filter(|t| {
                t.mask
                    .iter()
                    .zip(&want)
                    .all(|(have, need)| have & need == *need)
            })
            .min_by(|a, b| (a.cost, &a.edges).cmp(&(b.cost, &b.edges)))
            .map(|t| MinTree {
                cost: t.cost,
                edges: t.edges.clone(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{g1, ids};

    fn count(g: &Graph) -> usize {
        enumerate_spanning_trees(g, EnumerationBudget::default())
            .unwrap()
            .collect::<Result<Vec<_>>>()
            .unwrap()
            .len()
    }

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(count(&triangle()), 3);
        assert_eq!(count(&g1()), 8);
        let path = Graph::new(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        assert_eq!(count(&path), 1);
        assert_eq!(count(&Graph::new(1, []).unwrap()), 1);
        assert_eq!(count(&Graph::new(2, []).unwrap()), 0);
        let parallel = Graph::new(2, [(0, 1, 1), (0, 1, 1), (1, 0, 2)]).unwrap();
        assert_eq!(count(&parallel), 3);
    }

    #[test]
    fn cayley_counts() {
        for n in 1..=6usize {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v, edges.len() as i64 + 1));
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let expected = if n == 1 { 1 } else { n.pow(n as u32 - 2) };
            assert_eq!(count(&g), expected, "K{n}");
        }
    }

    #[test]
    fn trees_are_distinct_and_sorted() {
        let g = g1();
        let trees: Vec<_> = enumerate_spanning_trees(&g, EnumerationBudget::default())
            .unwrap()
            .map(|t| t.unwrap())
            .collect();
        assert!(trees.windows(2).all(|w| w[0] < w[1]));
        assert!(trees.iter().all(|t| t.windows(2).all(|w| w[0] < w[1])));
    }

    #[test]
    fn g1_minima() {
        let g = g1();
        let b = EnumerationBudget::default();
        assert_eq!(
            brute_min_tree(&g, &[], b).unwrap(),
            Some(MinTree {
                cost: 6,
                edges: ids(&[0, 1, 2])
            })
        );
        assert_eq!(
            brute_min_tree(&g, &ids(&[3, 4]), b).unwrap(),
            Some(MinTree {
                cost: 10,
                edges: ids(&[0, 3, 4])
            })
        );
        let catalog = TreeCatalog::build(&g, b).unwrap();
        assert_eq!(catalog.len(), 8);
        assert_eq!(
            catalog.min_containing(&ids(&[3, 4])),
            brute_min_tree(&g, &ids(&[3, 4]), b).unwrap()
        );
    }

    #[test]
    fn imposed_cycle_is_infeasible() {
        let g = triangle();
        let b = EnumerationBudget::default();
        assert_eq!(brute_min_tree(&g, &ids(&[0, 1, 2]), b).unwrap(), None);
        let catalog = TreeCatalog::build(&g, b).unwrap();
        assert_eq!(catalog.min_containing(&ids(&[0, 1, 2])), None);
    }

    #[test]
    fn budget_limits() {
        let g = g1();
        let tight = EnumerationBudget::new(8, 5).unwrap();
        let results: Vec<_> = enumerate_spanning_trees(&g, tight).unwrap().collect();
        assert_eq!(results.len(), 6);
        assert!(matches!(results.last(), Some(Err(Error::Budget(_)))));
        assert!(brute_min_tree(&g, &[], tight).is_err());

        let small = EnumerationBudget::new(3, 10).unwrap();
        assert!(matches!(
            enumerate_spanning_trees(&g, small),
            Err(Error::Budget(_))
        ));
        assert!(EnumerationBudget::new(0, 1).is_err());
    }
}
