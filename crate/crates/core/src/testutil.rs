use crate::graph::{EdgeId, Graph};

/// Edges (0,1,1), (1,2,2), (2,3,3), (0,3,4), (0,2,5). MST is {e0,e1,e2}, cost 6.
pub fn g1() -> Graph {
    Graph::new(4, [(0, 1, 1), (1, 2, 2), (2, 3, 3), (0, 3, 4), (0, 2, 5)]).unwrap()
}

pub fn ids(raw: &[usize]) -> Vec<EdgeId> {
    raw.iter().copied().map(EdgeId).collect()
}
