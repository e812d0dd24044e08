use crate::graph::EdgeId;
use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("node {node} out of range (graph has {node_count} nodes)")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("edge {edge} out of range (graph has {edge_count} edges)")]
    EdgeOutOfRange { edge: EdgeId, edge_count: usize },

    #[error("self-loop on node {node}")]
    SelfLoop { node: usize },

    #[error("graph has no nodes")]
    Empty,

    #[error("sum of absolute edge costs exceeds the 64-bit signed range")]
    CostOverflow,

    #[error("graph is disconnected: nodes {a} and {b} are in different components")]
    Disconnected { a: usize, b: usize },

    #[error("imposed edges form a cycle: {}", fmt_edges(.edges))]
    ImposedCycle { edges: Vec<EdgeId> },

    #[error("imposition step {step} (edge {edge}) failed: {source}")]
    Step {
        step: usize,
        edge: EdgeId,
        #[source]
        source: Box<Error>,
    },

    #[error("edge {0} is a tree edge; replacement is defined for nontree edges only")]
    TreeEdge(EdgeId),

    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),

    #[error("enumeration budget exceeded: {0}")]
    Budget(String),

    #[error("invalid generator parameters: {0}")]
    Generator(String),
}

impl Error {
    /// True when the error means no spanning tree satisfies the request.
    pub fn is_infeasible(&self) -> bool {
        match self {
            Error::Disconnected { .. } | Error::ImposedCycle { .. } => true,
            Error::Step { source, .. } => source.is_infeasible(),
            _ => false,
        }
    }

    /// Short machine-readable kind, used as the `error:<kind>:` prefix by the CLI.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } | Error::SelfLoop { .. } | Error::Empty | Error::CostOverflow => {
                "parse"
            }
            Error::NodeOutOfRange { .. } | Error::EdgeOutOfRange { .. } => "range",
            Error::Disconnected { .. } | Error::ImposedCycle { .. } => "infeasible",
            Error::Step { source, .. } => source.kind(),
            Error::TreeEdge(_) => "domain",
            Error::NotSpanningTree(_) => "tree",
            Error::Budget(_) => "budget",
            Error::Generator(_) => "usage",
        }
    }
}

fn fmt_edges(edges: &[EdgeId]) -> String {
    edges
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub type Result<T> = std::result::Result<T, Error>;
