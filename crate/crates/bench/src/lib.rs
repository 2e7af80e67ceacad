//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use sawlang::decomposition::{quotient_from_cayley, QuotientDecomposition, QuotientOptions};
use sawlang::{Alphabet, CayleyGraphSpec, RewritingSystem};

/// Three involutions a, b, c with (ab)^3 = (bc)^2 = 1.
pub fn amalgam() -> CayleyGraphSpec {
    let al = Arc::new(Alphabet::from_pairs(&[("a", "a"), ("b", "b"), ("c", "c")]).unwrap());
    let rules = [
        ("a a", ""),
        ("b b", ""),
        ("c c", ""),
        ("c b", "b c"),
        ("b a b", "a b a"),
        ("c a b a", "b c a b"),
    ];
    CayleyGraphSpec::new(RewritingSystem::from_strs(al, &rules).unwrap()).unwrap()
}

/// The quotient at the smallest radius where it closes.
pub fn closed_quotient(spec: &CayleyGraphSpec) -> QuotientDecomposition {
    (1..24)
        .find_map(|r| quotient_from_cayley(spec, r, &QuotientOptions::default()).ok())
        .expect("quotient closes below radius 24")
}
