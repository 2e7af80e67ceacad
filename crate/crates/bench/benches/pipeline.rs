use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use sawlang::grammar::build_saw_grammar;
use sawlang::series::{connective_constant, grammar_to_system, minimal_polynomial};
use sawlang::oracle::count_saws_parallel;
use sawlang::{count_saws, expand_ball};
use sawlang_bench::{amalgam, closed_quotient};

fn oracle(c: &mut Criterion) {
    let spec = amalgam();
    let ball = expand_ball(&spec, 14).unwrap();
    c.bench_function("expand_ball r=14", |b| b.iter(|| expand_ball(black_box(&spec), 14).unwrap()));
    c.bench_function("count_saws n=14", |b| b.iter(|| count_saws(black_box(&ball), 14).unwrap()));
    c.bench_function("count_saws_parallel n=14", |b| {
        b.iter(|| count_saws_parallel(black_box(&ball), 14).unwrap())
    });
}

fn grammar(c: &mut Criterion) {
    let spec = amalgam();
    let q = closed_quotient(&spec);
    c.bench_function("quotient", |b| b.iter(|| closed_quotient(black_box(&spec))));
    c.bench_function("build_saw_grammar", |b| b.iter(|| build_saw_grammar(black_box(&q)).unwrap()));
}

fn series(c: &mut Criterion) {
    let g = build_saw_grammar(&closed_quotient(&amalgam())).unwrap();
    let sys = grammar_to_system(&g).unwrap();
    let (eq, f) = minimal_polynomial(&sys, sys.start).unwrap();
    let counts = f.integers().unwrap();
    let mut group = c.benchmark_group("series");
    group.sample_size(10);
    group.bench_function("minimal_polynomial", |b| {
        b.iter(|| minimal_polynomial(black_box(&sys), sys.start).unwrap())
    });
    group.bench_function("connective_constant 1e-9", |b| {
        b.iter(|| connective_constant(black_box(&eq), &counts, 1e-9).unwrap())
    });
    group.finish();
}

criterion_group!(benches, oracle, grammar, series);
criterion_main!(benches);
