//! Small random proper grammars for the elimination properties.

use num_bigint::BigInt;
use proptest::prelude::*;
use sawlang::grammar::{ContextFreeGrammar, Symbol};
use sawlang::series::{grammar_to_system, minimal_polynomial, AlgebraicEquation, PowerSeriesQ};

const NAMES: [&str; 3] = ["S", "A", "B"];

/// A proper grammar: every production carries a terminal, every variable
/// has a terminal-only production, and `S -> ε` is optional.
pub fn grammar(nv: usize, prods: &[Vec<Vec<u8>>], eps: bool, order: &[usize]) -> ContextFreeGrammar {
    let mut g = ContextFreeGrammar::new("S").unwrap();
    let mut ids = [0usize; 3];
    for &v in order.iter().filter(|&&v| v < nv) {
        ids[v] = g.variable(NAMES[v]).unwrap();
    }
    let a = g.terminal("a").unwrap();
    let b = g.terminal("b").unwrap();
    let sym = |x: u8| match x % (2 + nv as u8) {
        0 => Symbol::T(a),
        1 => Symbol::T(b),
        k => Symbol::V(ids[(k - 2) as usize]),
    };
    for (v, list) in prods.iter().take(nv).enumerate() {
        g.add(ids[v], vec![Symbol::T(if v % 2 == 0 { a } else { b })]);
        for rhs in list {
            let mut rhs: Vec<Symbol> = rhs.iter().map(|&x| sym(x)).collect();
            if !rhs.iter().any(|s| matches!(s, Symbol::T(_))) {
                rhs.insert(0, Symbol::T(a));
            }
            g.add(ids[v], rhs);
        }
    }
    if eps {
        g.add(ids[0], vec![]);
    }
    g
}

pub fn grammars() -> impl Strategy<Value = (usize, Vec<Vec<Vec<u8>>>, bool)> {
    (
        1usize..=3,
        prop::collection::vec(
            prop::collection::vec(prop::collection::vec(any::<u8>(), 2..=3), 1..=2),
            3,
        ),
        any::<bool>(),
    )
}

fn census_series(g: &ContextFreeGrammar, n: usize) -> PowerSeriesQ {
    let c: Vec<BigInt> = g.count_by_length(n).unwrap().into_iter().map(BigInt::from).collect();
    PowerSeriesQ::from_integers(&c)
}

fn same_up_to_sign(p: &AlgebraicEquation, q: &AlgebraicEquation) -> bool {
    p.coeffs() == q.coeffs()
        || p.coeffs()
            .iter()
            .zip(q.coeffs())
            .all(|(a, b)| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| *x == -y))
}

/// The minimal polynomial of `S` annihilates an independent census well past
/// the evidence used to find it, and the elimination order does not matter.
pub fn elimination_property(nv: usize, prods: &[Vec<Vec<u8>>], eps: bool) -> Result<(), TestCaseError> {
    let g = grammar(nv, prods, eps, &[0, 1, 2]);
    let sys = grammar_to_system(&g).unwrap();
    let (eq, f) = minimal_polynomial(&sys, sys.start).unwrap();
    prop_assert!(eq.degree_y() >= 1);
    prop_assert!(eq.annihilates(&f));
    // evidence from an independent count, well past what was used
    let long = census_series(&g, 80);
    prop_assert!(eq.annihilates(&long), "{}", eq);

    let c = f.integers().unwrap();
    prop_assert!(c.iter().all(|x| *x >= BigInt::from(0)));
    prop_assert_eq!(c[0].clone(), BigInt::from(eps as u8));
    let known = long.coeffs().len().min(f.coeffs().len());
    prop_assert_eq!(&f.coeffs()[..known], &long.coeffs()[..known]);

    // declaring the variables in another order changes the elimination order
    let h = grammar(nv, prods, eps, &[2, 1, 0]);
    let sys_h = grammar_to_system(&h).unwrap();
    let (eq_h, _) = minimal_polynomial(&sys_h, sys_h.start).unwrap();
    prop_assert!(same_up_to_sign(&eq, &eq_h), "{} vs {}", eq, eq_h);
    Ok(())
}
