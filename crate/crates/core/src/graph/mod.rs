//! Labelled graphs, rewriting systems and Cayley balls.

pub mod cayley;
pub mod label;
pub mod labelled;
pub mod rewriting;

pub use cayley::{expand_ball, render_vertex, BallView, CayleyGraphSpec};
pub use label::{shortlex_cmp, Alphabet, Label, LabelDecl, Word};
pub use labelled::{
    validate, Dart, DartId, GraphBuilder, LabelledGraph, ValidationReport, VertexId, Violation,
};
pub use rewriting::{check_confluence, ConfluenceReport, CriticalPair, RewritingSystem, Rule};

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("invalid token {0:?}: tokens must be nonempty and contain no whitespace")]
    BadToken(String),
    #[error("token {0:?} declared twice")]
    DuplicateToken(String),
    #[error("unknown token {0:?}")]
    UnknownToken(String),
    #[error("inverse pairing is not an involution at {0:?}")]
    InverseNotInvolution(String),
    #[error("malformed graph: {0}")]
    Malformed(String),
    #[error("rule {0} does not decrease in shortlex order")]
    NotDecreasing(String),
    #[error("normal form did not terminate within {0} rewrites")]
    StepBudget(usize),
    #[error("rewriting system is not confluent: {unresolved} unresolved critical pairs, e.g. {example}")]
    NotConfluent { unresolved: usize, example: String },
    #[error("invalid Cayley graph description: {0}")]
    InvalidSpec(String),
    #[error("graph violates the labelling invariants:\n{0}")]
    Invalid(ValidationReport),
}
