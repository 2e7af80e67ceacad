mod common;

use num_bigint::BigInt;
use sawlang::grammar::build_saw_grammar;
use sawlang::series::poly::{self, UPoly};
use sawlang::series::{
    connective_constant, grammar_to_system, minimal_polynomial, AlgebraicEquation,
    ConnectiveConstant, PowerSeriesQ,
};
use sawlang::CayleyGraphSpec;

use common::*;

fn u(c: &[i64]) -> UPoly {
    poly::from_i64(c)
}

fn pipeline(
    spec: &CayleyGraphSpec,
    lo: usize,
    hi: usize,
) -> (AlgebraicEquation, PowerSeriesQ, ConnectiveConstant) {
    let q = quotient(spec, lo, hi);
    let g = build_saw_grammar(&q).unwrap();
    let sys = grammar_to_system(&g).unwrap();
    let (eq, f) = minimal_polynomial(&sys, sys.start).unwrap();
    let counts = f.integers().unwrap();
    let mu = connective_constant(&eq, &counts, 1e-6).unwrap();
    (eq, f, mu)
}

fn counts(f: &PowerSeriesQ, n: usize) -> Vec<u64> {
    f.integers().unwrap()[..=n]
        .iter()
        .map(|c| u64::try_from(c).unwrap())
        .collect()
}

#[test]
fn amalgam_minimal_polynomial() {
    let spec = amalgam();
    let (eq, f, mu) = pipeline(&spec, 4, 12);
    assert_eq!(counts(&f, 12), oracle_counts(&spec, 12));
    assert_eq!(eq.degree_y(), 2);
    assert!(poly::div_exact(&eq.discriminant(), &u(&[1, 0, 0, 0, 0, 0, -4, 0, -4])).is_some());
    let lcf = u(&[-1, -2, 1, 4, 5, 4, 7, 12, 13, 8, 2]);
    assert!(poly::div_exact(eq.leading_coefficient(), &lcf).is_some());
    assert!(mu.mu.contains(1.8306977));
    assert!(mu.mu.width() <= 1e-6);
    assert_eq!(mu.mu.to_decimal(mu.digits).0, "1.8306977");
}

#[test]
fn regular_trees_have_mu_one_less_than_degree() {
    for q in 1..=3usize {
        let (eq, f, mu) = pipeline(&free_involutions(q + 1), 1, 6);
        assert_eq!(eq.degree_y(), 1);
        let c = counts(&f, 10);
        assert_eq!(c[0], 1);
        for n in 1..=10 {
            assert_eq!(c[n], ((q + 1) * q.pow(n as u32 - 1)) as u64);
        }
        assert!(mu.mu.contains(q as f64), "q = {q}: {:?}", mu.mu);
        assert!(mu.rho.width() <= 1e-9);
    }
}

#[test]
fn ladder_mu_is_the_golden_ratio() {
    let spec = ladder();
    let (_, f, mu) = pipeline(&spec, 4, 12);
    assert_eq!(counts(&f, 16), oracle_counts(&spec, 16));
    assert!(mu.mu.contains((1.0 + 5f64.sqrt()) / 2.0));
}

#[test]
fn z3_z2_generating_function_is_rational() {
    let spec = z3_z2();
    let (eq, f, _) = pipeline(&spec, 2, 8);
    assert_eq!(eq.degree_y(), 1);
    assert_eq!(counts(&f, 14), oracle_counts(&spec, 14));
    assert!(eq.annihilates(&f));
}

#[test]
fn equation_survives_independent_evidence() {
    // the equation was verified on the solver's series; check it again on
    // oracle counts that never went through the grammar
    let spec = ladder_with_leaf();
    let (eq, _, _) = pipeline(&spec, 4, 12);
    let n = 11;
    let oracle: Vec<BigInt> = oracle_counts(&spec, n).into_iter().map(BigInt::from).collect();
    assert!(eq.annihilates(&PowerSeriesQ::from_integers(&oracle)));
}
