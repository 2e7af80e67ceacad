//! Block-cutvertex trees, Tutte 3-block trees and their orbit quotients.

pub mod blockcut;
pub mod io;
pub mod multigraph;
pub mod quotient;
pub mod tutte;

pub use blockcut::{biconnected_blocks, block_cut_tree, Block, BlockCutTree};
pub use multigraph::{MEdge, MultiGraph};
pub use quotient::{
    quotient_from_ball, quotient_from_cayley, quotient_from_finite, Block3, Block3Edge,
    FiniteBlock, PairOrbit, QuotientDecomposition, QuotientOptions, YBlock, YEdge,
};
pub use tutte::{tutte_decomposition, NodeKind, ThreeBlockTree, TreeEdge, TreeNode};

use crate::graph::GraphError;

#[derive(Debug, thiserror::Error)]
pub enum DecompError {
    #[error("graph is disconnected: {0}")]
    Disconnected(String),
    #[error("multigraph is not 2-connected")]
    NotTwoConnected,
    #[error("multigraph has only {0} edges; at least 3 are needed")]
    TooFewEdges(usize),
    #[error("{what} does not close within radius {radius}; increase the radius")]
    IncreaseRadius { what: String, radius: usize },
    #[error("{what} has {vertices} vertices, above the size bound {bound}; an end of size at least 3 is likely")]
    EndSizeLikelyThree {
        what: String,
        vertices: usize,
        bound: usize,
    },
    #[error("invalid quotient at {path}: {message}")]
    Invalid { path: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
