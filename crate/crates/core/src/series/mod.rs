//! Generating functions of context-free grammars: the polynomial system,
//! its power series solution, elimination to a single algebraic equation
//! and the dominant singularity.

pub mod eliminate;
pub mod poly;
pub mod roots;
pub mod system;

use thiserror::Error;

use crate::grammar::GrammarError;

pub use eliminate::{
    eliminate, eliminate_raw, evidence_needed, minimal_polynomial, resultant, select_factor,
    AlgebraicEquation,
};
pub use poly::{MPoly, UPoly};
pub use roots::{connective_constant, positive_roots_below_two, ConnectiveConstant, RootInterval};
pub use system::{grammar_to_system, solve_series, Monomial, PolynomialSystem, PowerSeriesQ};

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("coefficients of degree {degree} do not stabilize")]
    NotStabilizing { degree: usize },
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error("degenerate elimination: {0}")]
    Degenerate(String),
    #[error("{have} series terms known, {need} needed")]
    EvidenceTooShort { have: usize, need: usize },
    #[error("no factor of the eliminant annihilates the series")]
    NoAnnihilatingFactor,
    #[error("no positive singularity below 2")]
    NoSingularity,
    #[error("ratio estimate {estimate} is far from the nearest candidate {nearest}")]
    Inconsistent { estimate: f64, nearest: f64 },
    #[error("verification failed: {0}")]
    Verification(String),
}
