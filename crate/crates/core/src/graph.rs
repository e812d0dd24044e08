//! Immutable weighted undirected multigraph and its edge-list text format.
//!
//! ```text
//! # comment
//! p <node_count> <edge_count>
//! e <u> <v> <cost>
//! ```
//!
//! Edge ids are assigned in order of appearance, starting at 0. Parallel edges
//! are kept as distinct edges; self-loops are rejected.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Dense edge index into [`Graph::edges`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Node ids are dense, 0-based.
pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: NodeId,
    pub v: NodeId,
    pub cost: i64,
}

impl Edge {
    /// The endpoint opposite to `n`. `n` must be one of the endpoints.
    #[inline]
    pub fn other(&self, n: NodeId) -> NodeId {
        if self.u == n {
            self.v
        } else {
            self.u
        }
    }
}

/// Weighted undirected multigraph with integer costs.
///
/// The sum of absolute edge costs is guaranteed to fit in `i64`, so every
/// tree cost, replacement cost and bound computed over the graph is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn new<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, i64)>,
    {
        let mut builder = Builder::new(node_count)?;
        for (u, v, cost) in edges {
            builder.push(u, v, cost)?;
        }
        Ok(builder.finish())
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Panics if `id` is out of range; use [`Graph::try_edge`] for checked access.
    #[inline]
    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn try_edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edges.get(id.0).ok_or(Error::EdgeOutOfRange {
            edge: id,
            edge_count: self.edges.len(),
        })
    }

    #[inline]
    pub fn cost(&self, id: EdgeId) -> i64 {
        self.edges[id.0].cost
    }

    pub fn check_node(&self, n: NodeId) -> Result<()> {
        if n < self.node_count {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: n,
                node_count: self.node_count,
            })
        }
    }

    /// Incident edges of `n` with the opposite endpoint, in ascending edge-id order.
    pub fn neighbors(&self, n: NodeId) -> Result<Vec<(EdgeId, NodeId)>> {
        self.check_node(n)?;
        Ok(self.incidence[n]
            .iter()
            .map(|&e| (e, self.edges[e.0].other(n)))
            .collect())
    }

    /// Incident edge ids of `n`, unchecked.
    #[inline]
    pub(crate) fn incident(&self, n: NodeId) -> &[EdgeId] {
        &self.incidence[n]
    }

    /// Edges whose endpoints are exactly `{a, b}`.
    pub fn edges_between(&self, a: NodeId, b: NodeId) -> Vec<EdgeId> {
        if a >= self.node_count || b >= self.node_count {
            return Vec::new();
        }
        self.incidence[a]
            .iter()
            .copied()
            .filter(|&e| self.edges[e.0].other(a) == b)
            .collect()
    }

    /// Serializes to the edge-list text format.
    pub fn render(&self) -> String {
        let mut out = format!("p {} {}\n", self.node_count, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!("e {} {} {}\n", e.u, e.v, e.cost));
        }
        out
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

struct Builder {
    node_count: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<EdgeId>>,
    abs_total: i64,
}

impl Builder {
    fn new(node_count: usize) -> Result<Self> {
        if node_count < 1 {
            return Err(Error::Empty);
        }
        Ok(Self {
            node_count,
            edges: Vec::new(),
            incidence: vec![Vec::new(); node_count],
            abs_total: 0,
        })
    }

    fn push(&mut self, u: NodeId, v: NodeId, cost: i64) -> Result<()> {
        for n in [u, v] {
            if n >= self.node_count {
                return Err(Error::NodeOutOfRange {
                    node: n,
                    node_count: self.node_count,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { node: u });
        }
        self.abs_total = cost
            .checked_abs()
            .and_then(|c| self.abs_total.checked_add(c))
            .ok_or(Error::CostOverflow)?;
        let id = EdgeId(self.edges.len());
        self.edges.push(Edge { id, u, v, cost });
        self.incidence[u].push(id);
        self.incidence[v].push(id);
        Ok(())
    }

    fn finish(self) -> Graph {
        Graph {
            node_count: self.node_count,
            edges: self.edges,
            incidence: self.incidence,
        }
    }
}

/// Parses the edge-list text format. Errors carry the 1-based line number.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let err = |line: usize, message: String| Error::Parse { line, message };

    let mut builder: Option<(Builder, usize)> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let tag = fields.next().unwrap_or_default();
        let rest: Vec<&str> = fields.collect();
        match tag {
            "p" => {
                if builder.is_some() {
                    return Err(err(line_no, "duplicate header".into()));
                }
                if rest.len() != 2 {
                    return Err(err(
                        line_no,
                        "expected `p <node_count> <edge_count>`".into(),
                    ));
                }
                let n: usize = rest[0]
                    .parse()
                    .map_err(|_| err(line_no, format!("invalid node count `{}`", rest[0])))?;
                let m: usize = rest[1]
                    .parse()
                    .map_err(|_| err(line_no, format!("invalid edge count `{}`", rest[1])))?;
                let b = Builder::new(n).map_err(|e| err(line_no, e.to_string()))?;
                builder = Some((b, m));
            }
            "e" => {
                let Some((b, expected)) = builder.as_mut() else {
                    return Err(err(line_no, "edge line before header".into()));
                };
                if rest.len() != 3 {
                    return Err(err(line_no, "expected `e <u> <v> <cost>`".into()));
                }
                if b.edges.len() == *expected {
                    return Err(err(
                        line_no,
                        format!("more edge lines than the declared {expected}"),
                    ));
                }
                let u: usize = rest[0]
                    .parse()
                    .map_err(|_| err(line_no, format!("invalid node `{}`", rest[0])))?;
                let v: usize = rest[1]
                    .parse()
                    .map_err(|_| err(line_no, format!("invalid node `{}`", rest[1])))?;
                let cost: i64 = rest[2].parse().map_err(|_| {
                    err(
                        line_no,
                        format!("invalid or out-of-range cost `{}`", rest[2]),
                    )
                })?;
                b.push(u, v, cost)
                    .map_err(|e| err(line_no, e.to_string()))?;
            }
            other => return Err(err(line_no, format!("unknown line type `{other}`"))),
        }
    }
    let Some((b, expected)) = builder else {
        return Err(err(last_line.max(1), "missing `p` header".into()));
    };
    if b.edges.len() != expected {
        return Err(err(
            last_line.max(1),
            format!("expected {expected} edge lines, found {}", b.edges.len()),
        ));
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> Graph {
        parse_graph("p 3 3\ne 0 1 1\ne 1 2 2\ne 0 2 3").unwrap()
    }

    #[test]
    fn parses_triangle() {
        let g = triangle();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(
            *g.edge(EdgeId(0)),
            Edge {
                id: EdgeId(0),
                u: 0,
                v: 1,
                cost: 1
            }
        );
    }

    #[test]
    fn parses_single_node() {
        let g = parse_graph("p 1 0").unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# a graph\n\np 2 1 # header\ne 0 1 -4 # negative\n").unwrap();
        assert_eq!(g.cost(EdgeId(0)), -4);
    }

    #[test]
    fn rejects_self_loop() {
        let e = parse_graph("p 2 1\ne 0 0 5").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            ("p 0 0", 1),
            ("e 0 1 1", 1),
            ("p 2 1\ne 0 2 1", 2),
            ("p 2 1\ne 0 1 x", 2),
            ("p 2 1\ne 0 1 9223372036854775808", 2),
            ("p 2 2\ne 0 1 1", 2),
            ("p 2 1\ne 0 1 1\ne 0 1 1", 3),
            ("p 2 1\np 2 1", 2),
            ("q 1 2", 1),
            ("", 1),
            ("p 3 2\ne 0 1 9223372036854775807\ne 1 2 1", 3),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} -> {other:?}"),
            }
        }
    }

    #[test]
    fn neighbors_in_edge_order() {
        let g = triangle();
        assert_eq!(
            g.neighbors(0).unwrap(),
            vec![(EdgeId(0), 1), (EdgeId(2), 2)]
        );

        let path = Graph::new(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(
            path.neighbors(1).unwrap(),
            vec![(EdgeId(0), 0), (EdgeId(1), 2)]
        );

        let isolated = Graph::new(2, []).unwrap();
        assert!(isolated.neighbors(1).unwrap().is_empty());
        assert!(matches!(
            isolated.neighbors(2),
            Err(Error::NodeOutOfRange { node: 2, .. })
        ));
    }

    #[test]
    fn parallel_edges_are_distinct() {
        let g = Graph::new(2, [(0, 1, 5), (1, 0, 3)]).unwrap();
        assert_eq!(g.edges_between(0, 1), vec![EdgeId(0), EdgeId(1)]);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..8).prop_flat_map(|n| {
            let edge = (0..n, 0..n, -1000i64..1000);
            proptest::collection::vec(edge, 0..20).prop_map(move |raw| {
                let edges = raw.into_iter().filter(|(u, v, _)| u != v);
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn render_round_trip(g in arb_graph()) {
            prop_assert_eq!(parse_graph(&g.render()).unwrap(), g);
        }

        #[test]
        fn incidence_sum_is_twice_edge_count(g in arb_graph()) {
            let total: usize = (0..g.node_count()).map(|n| g.neighbors(n).unwrap().len()).sum();
            prop_assert_eq!(total, 2 * g.edge_count());
        }
    }
}
