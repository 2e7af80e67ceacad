#![allow(dead_code)]

pub mod random_grammar;
pub mod tutte_oracle;

use std::sync::Arc;

use sawlang::decomposition::{quotient_from_cayley, QuotientDecomposition, QuotientOptions};
use sawlang::grammar::ContextFreeGrammar;
use proptest::prelude::*;
use sawlang::{expand_ball, saw_words, Alphabet, CayleyGraphSpec, Label, RewritingSystem, Word};

pub fn spec(pairs: &[(&str, &str)], rules: &[(&str, &str)]) -> CayleyGraphSpec {
    let al = Arc::new(Alphabet::from_pairs(pairs).unwrap());
    CayleyGraphSpec::new(RewritingSystem::from_strs(al, rules).unwrap()).unwrap()
}

/// Three involutions a, b, c with (ab)^3 = (bc)^2 = 1.
pub fn amalgam() -> CayleyGraphSpec {
    spec(
        &[("a", "a"), ("b", "b"), ("c", "c")],
        &[
            ("a a", ""),
            ("b b", ""),
            ("c c", ""),
            ("c b", "b c"),
            ("b a b", "a b a"),
            ("c a b a", "b c a b"),
        ],
    )
}

/// Z x Z2, the two-sided infinite ladder.
pub fn ladder() -> CayleyGraphSpec {
    spec(
        &[("a", "A"), ("A", "a"), ("c", "c")],
        &[("a A", ""), ("A a", ""), ("c c", ""), ("c a", "a c"), ("c A", "A c")],
    )
}

/// The ladder with a pendant involution: (Z x Z2) * Z2.
pub fn ladder_with_leaf() -> CayleyGraphSpec {
    spec(
        &[("a", "A"), ("A", "a"), ("c", "c"), ("d", "d")],
        &[
            ("a A", ""),
            ("A a", ""),
            ("c c", ""),
            ("d d", ""),
            ("c a", "a c"),
            ("c A", "A c"),
        ],
    )
}

/// Z3 * Z2.
pub fn z3_z2() -> CayleyGraphSpec {
    spec(
        &[("x", "X"), ("X", "x"), ("y", "y")],
        &[("x x", "X"), ("x X", ""), ("X x", ""), ("X X", "x"), ("y y", "")],
    )
}

/// Z2 * Z2 * Z2, the 3-regular tree.
pub fn tree3() -> CayleyGraphSpec {
    spec(
        &[("a", "a"), ("b", "b"), ("c", "c")],
        &[("a a", ""), ("b b", ""), ("c c", "")],
    )
}

/// Smallest radius in `lo..hi` at which the quotient closes.
pub fn quotient(spec: &CayleyGraphSpec, lo: usize, hi: usize) -> QuotientDecomposition {
    (lo..hi)
        .find_map(|r| quotient_from_cayley(spec, r, &QuotientOptions::default()).ok())
        .expect("quotient closes")
}

/// Words of the grammar up to length `n` as label words, with multiplicities.
pub fn grammar_words(
    spec: &CayleyGraphSpec,
    g: &ContextFreeGrammar,
    n: usize,
) -> Vec<(Word, u64)> {
    let al = spec.alphabet();
    g.words_up_to(n)
        .unwrap()
        .into_iter()
        .map(|w| {
            let tokens: Vec<&str> = w.terminals.iter().map(|&t| g.terminals()[t].as_str()).collect();
            (al.parse_word(&tokens).unwrap(), u64::try_from(&w.derivations).unwrap())
        })
        .collect()
}

pub fn oracle_words(spec: &CayleyGraphSpec, n: usize) -> Vec<Word> {
    let ball = expand_ball(spec, n).unwrap();
    saw_words(&ball, n).unwrap()
}

pub fn oracle_counts(spec: &CayleyGraphSpec, n: usize) -> Vec<u64> {
    let ball = expand_ball(spec, n).unwrap();
    sawlang::count_saws(&ball, n).unwrap().to_u64()
}

/// Free product of `k` copies of Z2, the k-regular tree.
pub fn free_involutions(k: usize) -> CayleyGraphSpec {
    let names: Vec<String> = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let pairs: Vec<(&str, &str)> = names.iter().map(|n| (n.as_str(), n.as_str())).collect();
    let rules: Vec<String> = names.iter().map(|n| format!("{n} {n}")).collect();
    let rules: Vec<(&str, &str)> = rules.iter().map(|r| (r.as_str(), "")).collect();
    spec(&pairs, &rules)
}

/// Property-test configuration with a fixed seed, so runs are reproducible.
pub fn fixed_seed(cases: u32, seed: u64) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(seed),
        failure_persistence: None,
        ..proptest::test_runner::Config::default()
    }
}

pub fn all_specs() -> Vec<(&'static str, CayleyGraphSpec)> {
    vec![
        ("amalgam", amalgam()),
        ("ladder", ladder()),
        ("ladder_with_leaf", ladder_with_leaf()),
        ("z3_z2", z3_z2()),
        ("tree3", tree3()),
    ]
}

fn word(raw: &[u16], letters: usize) -> Word {
    raw.iter().map(|&i| Label(i % letters as u16)).collect()
}

/// Normal forms are irreducible fixed points and compatible with products,
/// in every test system.
pub fn product_property(u: &[u16], v: &[u16]) -> Result<(), TestCaseError> {
    for (name, spec) in all_specs() {
        let rs = &spec.system;
        let n = spec.alphabet().len();
        let (u, v) = (word(u, n), word(v, n));
        let nu = rs.normal_form(&u).unwrap();
        prop_assert!(rs.is_irreducible(&nu), "{}", name);
        prop_assert_eq!(rs.normal_form(&nu).unwrap(), nu.clone());
        prop_assert_eq!(rs.multiply(&u, &v).unwrap(), rs.multiply(&nu, &v).unwrap(), "{}", name);
        let nv = rs.normal_form(&v).unwrap();
        prop_assert_eq!(rs.multiply(&u, &v).unwrap(), rs.multiply(&nu, &nv).unwrap(), "{}", name);
    }
    Ok(())
}

pub fn inverse_property(w: &[u16]) -> Result<(), TestCaseError> {
    for (name, spec) in all_specs() {
        let rs = &spec.system;
        let w = word(w, spec.alphabet().len());
        let inv = spec.alphabet().inverse_word(&w);
        prop_assert!(rs.multiply(&w, &inv).unwrap().is_empty(), "{}", name);
        prop_assert!(rs.multiply(&inv, &w).unwrap().is_empty(), "{}", name);
        prop_assert_eq!(rs.invert(&rs.invert(&w).unwrap()).unwrap(), rs.normal_form(&w).unwrap());
    }
    Ok(())
}

fn renaming() -> std::collections::BTreeMap<String, String> {
    include_str!("../data/amalgam_renaming.tsv")
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            (a.to_string(), b.to_string())
        })
        .collect()
}

/// The amalgam grammar with pair orbits renamed to the published block names.
pub fn renamed_to_published(g: &ContextFreeGrammar) -> ContextFreeGrammar {
    let table = renaming();
    g.rename_variables(&|v| match v.split_once('_') {
        Some((head, pair)) => {
            let (x, y) = pair.split_once('.').unwrap();
            format!("{head}_{}{}", table[x], table[y])
        }
        None => v.to_string(),
    })
    .unwrap()
}

pub fn published_grammar() -> ContextFreeGrammar {
    ContextFreeGrammar::from_text(include_str!("../data/amalgam_published_grammar.txt")).unwrap()
}
