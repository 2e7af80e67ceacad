//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestRunner;
use sawlang::grammar::{build_grammar_2connected, build_grammar_blocklevel, build_saw_grammar};
use sawlang::oracle::{probe_family, SlotRanges, WordTemplate};
use sawlang::series::poly;
use sawlang::series::{connective_constant, grammar_to_system, minimal_polynomial};
use sawlang::{expand_ball, CayleyGraphSpec};

use common::random_grammar::{elimination_property, grammars};
use common::tutte_oracle::{decomposition_property, graphs};
use common::*;

const AMALGAM_N: usize = 12;
const MAX_RUNTIME: Duration = Duration::from_secs(300);
const AMALGAM_MU: f64 = 1.8306977;
const AMALGAM_MU_WIDTH: f64 = 1e-6;
const DISCRIMINANT_FACTOR: [i64; 9] = [1, 0, 0, 0, 0, 0, -4, 0, -4];
const LEADING_FACTOR: [i64; 11] = [-1, -2, 1, 4, 5, 4, 7, 12, 13, 8, 2];
const LADDER_N: usize = 16;
const Z3_Z2_N: usize = 14;
const TREE_N: usize = 20;
const TREE_MU_WIDTH: f64 = 1e-9;
const PROBE_MAX: u32 = 6;
const TUTTE_CASES: u32 = 200;
const WORD_CASES: u32 = 1000;
const ELIMINATION_CASES: u32 = 48;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn census_matches(spec: &CayleyGraphSpec, g: &sawlang::grammar::ContextFreeGrammar, n: usize) -> Outcome {
    let census = g.census(n).map_err(|e| e.to_string())?;
    let want = oracle_counts(spec, n);
    for row in &census {
        ensure!(row.words == want[row.length], "n={}: grammar {} oracle {}", row.length, row.words, want[row.length]);
        ensure!(row.max_multiplicity == 1u32.into(), "n={}: multiplicity {}", row.length, row.max_multiplicity);
    }
    ensure!(census.len() == n + 1, "census stops at {}", census.len());
    Ok(format!("c_{n} = {}", want[n]))
}

fn amalgam_end_to_end() -> Outcome {
    let start = Instant::now();
    let spec = amalgam();
    let g = build_saw_grammar(&quotient(&spec, 1, 20)).map_err(|e| e.to_string())?;
    let detail = census_matches(&spec, &g, AMALGAM_N)?;
    let sys = grammar_to_system(&g).map_err(|e| e.to_string())?;
    let (_, f) = minimal_polynomial(&sys, sys.start).map_err(|e| e.to_string())?;
    let series = f.integers().ok_or("non-integer series")?;
    let want = oracle_counts(&spec, AMALGAM_N);
    for (n, &c) in want.iter().enumerate() {
        ensure!(series[n] == BigInt::from(c), "series c_{n} = {} vs {c}", series[n]);
    }
    let took = start.elapsed();
    ensure!(took <= MAX_RUNTIME, "took {took:?}");
    Ok(format!("{detail}, series agrees, {:.1}s", took.as_secs_f64()))
}

fn amalgam_grammar_shape() -> Outcome {
    let g = build_saw_grammar(&quotient(&amalgam(), 1, 20)).map_err(|e| e.to_string())?;
    let ours = renamed_to_published(&g);
    let theirs = published_grammar();
    ensure!(ours.production_set() == theirs.production_set(), "production multisets differ");
    let a: BTreeSet<_> = ours.variables().iter().collect();
    let b: BTreeSet<_> = theirs.variables().iter().collect();
    ensure!(a == b, "variable sets differ");
    Ok(format!("{} productions, {} variables", ours.productions().len(), a.len()))
}

fn amalgam_algebra() -> Outcome {
    let g = build_saw_grammar(&quotient(&amalgam(), 1, 20)).map_err(|e| e.to_string())?;
    let sys = grammar_to_system(&g).map_err(|e| e.to_string())?;
    let (eq, f) = minimal_polynomial(&sys, sys.start).map_err(|e| e.to_string())?;
    ensure!(
        poly::div_exact(&eq.discriminant(), &poly::from_i64(&DISCRIMINANT_FACTOR)).is_some(),
        "discriminant factor missing"
    );
    ensure!(
        poly::div_exact(eq.leading_coefficient(), &poly::from_i64(&LEADING_FACTOR)).is_some(),
        "leading coefficient factor missing"
    );
    let cc = connective_constant(&eq, &f.integers().unwrap(), AMALGAM_MU_WIDTH)
        .map_err(|e| e.to_string())?;
    ensure!(cc.mu.width() <= AMALGAM_MU_WIDTH, "width {}", cc.mu.width());
    ensure!(cc.mu.contains(AMALGAM_MU), "{:?}", cc.mu.to_decimal(cc.digits));
    let (lo, hi) = cc.mu.to_decimal(cc.digits);
    Ok(format!("deg_y {}, deg_t {}, mu in [{lo}, {hi}]", eq.degree_y(), eq.degree_t()))
}

fn ladder_two_connected() -> Outcome {
    let spec = ladder();
    let q = quotient(&spec, 1, 20);
    ensure!(q.is_two_connected(), "ladder quotient is not a single block");
    let g = build_grammar_2connected(&q).map_err(|e| e.to_string())?;
    census_matches(&spec, &g, LADDER_N)
}

fn z3_z2_block_level() -> Outcome {
    let spec = z3_z2();
    let q = quotient(&spec, 1, 20);
    let outer = build_grammar_blocklevel(&q).map_err(|e| e.to_string())?;
    ensure!(outer.is_right_linear(), "block-level grammar is not right-linear");
    let g = build_saw_grammar(&q).map_err(|e| e.to_string())?;
    ensure!(g.is_right_linear(), "substituted grammar is not right-linear");
    let detail = census_matches(&spec, &g, Z3_Z2_N)?;
    let sys = grammar_to_system(&g).map_err(|e| e.to_string())?;
    let (eq, _) = minimal_polynomial(&sys, sys.start).map_err(|e| e.to_string())?;
    ensure!(eq.degree_y() == 1, "y-degree {}", eq.degree_y());
    Ok(format!("{detail}, y-degree 1"))
}

fn tree_mu() -> Outcome {
    let g = build_saw_grammar(&quotient(&tree3(), 1, 20)).map_err(|e| e.to_string())?;
    let sys = grammar_to_system(&g).map_err(|e| e.to_string())?;
    let (eq, f) = minimal_polynomial(&sys, sys.start).map_err(|e| e.to_string())?;
    let c = f.integers().unwrap();
    let want: Vec<BigInt> = std::iter::once(BigInt::from(1))
        .chain((1..=TREE_N).map(|n| BigInt::from(3) << (n - 1)))
        .collect();
    ensure!(c[..=TREE_N] == want[..=TREE_N], "series {:?}", &c[..=TREE_N]);
    let cc = connective_constant(&eq, &c, TREE_MU_WIDTH).map_err(|e| e.to_string())?;
    ensure!(cc.mu.contains(2.0) && cc.mu.width() <= TREE_MU_WIDTH, "{:?}", cc.mu);
    Ok(format!("c_n = 3*2^(n-1) for n <= {TREE_N}, mu interval width {:e}", cc.mu.width()))
}

fn ladder_family() -> Outcome {
    let spec = ladder();
    let len = 2 + 2 * PROBE_MAX as usize;
    let ball = expand_ball(&spec, len).map_err(|e| e.to_string())?;
    let t = WordTemplate::parse(spec.alphabet(), "a c a^k c A^l").map_err(|e| e.to_string())?;
    let ranges = SlotRanges { k: 1..=PROBE_MAX, l: 1..=PROBE_MAX, m: 0..=0 };
    let table = probe_family(&ball, &t, &ranges).map_err(|e| e.to_string())?;
    let g = build_saw_grammar(&quotient(&spec, 1, 20)).map_err(|e| e.to_string())?;
    let language: BTreeSet<_> = grammar_words(&spec, &g, len).into_iter().map(|(w, _)| w).collect();
    let mut agree = 0;
    for (&(k, l, _), &member) in &table {
        ensure!(member == (k > l), "k={k} l={l}: oracle says {member}");
        let w = t.instantiate(k, l, 0);
        ensure!(language.contains(&w) == member, "k={k} l={l}: grammar disagrees");
        agree += 1;
    }
    ensure!(agree == (PROBE_MAX * PROBE_MAX) as usize, "{agree} cases");
    Ok(format!("{agree}/{agree} agree with k > l and with the grammar"))
}

fn properties() -> Outcome {
    let mut runner = TestRunner::new(fixed_seed(TUTTE_CASES, 0x5a3_0002));
    runner
        .run(&graphs(), |(pairs, perm)| decomposition_property(&pairs, &perm))
        .map_err(|e| format!("tutte: {e}"))?;

    let words = prop::collection::vec(any::<u16>(), 0..12);
    let mut runner = TestRunner::new(fixed_seed(WORD_CASES, 0x5a3_0001));
    runner
        .run(&(words.clone(), words), |(u, v)| product_property(&u, &v))
        .map_err(|e| format!("normal forms: {e}"))?;
    let mut runner = TestRunner::new(fixed_seed(WORD_CASES, 0x5a3_0001));
    runner
        .run(&prop::collection::vec(any::<u16>(), 0..16), |w| inverse_property(&w))
        .map_err(|e| format!("inverses: {e}"))?;

    let mut runner = TestRunner::new(fixed_seed(ELIMINATION_CASES, 0x5a3_0003));
    runner
        .run(&grammars(), |(nv, prods, eps)| elimination_property(nv, &prods, eps))
        .map_err(|e| format!("elimination: {e}"))?;
    Ok(format!(
        "{TUTTE_CASES} graphs, {WORD_CASES} word pairs and words per system, {ELIMINATION_CASES} eliminations"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("amalgam census equals oracle c_0..c_12", amalgam_end_to_end),
        ("amalgam grammar equals the published productions", amalgam_grammar_shape),
        ("amalgam discriminant, leading coefficient and mu", amalgam_algebra),
        ("ladder 2-connected grammar, n <= 16, unambiguous", ladder_two_connected),
        ("Z3 * Z2 right-linear, n <= 14, rational", z3_z2_block_level),
        ("3-regular tree series and mu = 2", tree_mu),
        ("ladder word family a c a^k c A^l", ladder_family),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS {} {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {title}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
