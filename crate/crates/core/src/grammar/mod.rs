//! Grammars for self-avoiding walk languages.

pub mod build;
pub mod cfg;
pub mod walks;

pub use build::{
    block_languages, build_grammar_2connected, build_grammar_blocklevel, build_saw_grammar,
    walk_grammar, EndFilter,
};
pub use cfg::{CensusRow, ContextFreeGrammar, DerivedWord, Dfa, Production, Symbol};
pub use walks::{block_walks, walk_sets, BlockStep, BlockWalk, WalkSets};

use crate::decomposition::DecompError;

#[derive(Debug, thiserror::Error)]
pub enum GrammarError {
    #[error("invalid grammar symbol {0:?}")]
    BadSymbol(String),
    #[error("grammar text line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("grammar is not proper: {0}")]
    Improper(String),
    #[error("invalid automaton: {0}")]
    Automaton(String),
    #[error("no language given for terminal {0:?}")]
    MissingLanguage(String),
    #[error("unsupported quotient: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Decomp(#[from] DecompError),
}
