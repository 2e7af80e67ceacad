//! Self-avoiding walk languages on deterministically labelled graphs.
//!
//! The crate builds unambiguous grammars for the self-avoiding walks of a
//! labelled graph from its block and Tutte 3-block decompositions, turns
//! them into algebraic generating functions and extracts the connective
//! constant. An exhaustive enumerator serves as an independent oracle.

pub mod decomposition;
pub mod grammar;
pub mod graph;
pub mod input;
pub mod oracle;
pub mod series;

pub use graph::{
    expand_ball, validate, Alphabet, BallView, CayleyGraphSpec, GraphError, Label, LabelledGraph,
    RewritingSystem, Word,
};
pub use oracle::{count_saws, saw_words, walk_of_word, OracleError, SawCounts};
