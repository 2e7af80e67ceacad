use std::path::PathBuf;
use std::process::Command;

use sawlang_cli::{run, CliError};

fn input(name: &str) -> String {
    format!("{}/../../inputs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn sawlang(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sawlang").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn tsv(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sawlang-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_amalgam_matches() {
    let (code, out, err) = sawlang(&["--input", &input("amalgam.json"), "verify", "--radius", "14", "--maxlen", "12"]);
    assert_eq!(code, 0, "{err}");
    let rows = tsv(&out);
    assert_eq!(rows.len(), 13);
    assert!(rows.iter().all(|r| r[3] == "true"));
    assert_eq!(rows[12][1], "3014");
}

#[test]
fn mu_interval_contains_the_published_value() {
    let (code, out, err) = sawlang(&["--input", &input("amalgam.json"), "mu"]);
    assert_eq!(code, 0, "{err}");
    let rows = tsv(&out);
    let mu = rows.iter().find(|r| r[0] == "mu").unwrap();
    let (lo, hi): (f64, f64) = (mu[1].parse().unwrap(), mu[2].parse().unwrap());
    assert!(lo <= 1.8306977 && 1.8306977 <= hi);
    assert!(hi - lo <= 1e-6 + 1e-12);
}

#[test]
fn tree_mu_is_exactly_two() {
    let (code, out, _) = sawlang(&["--input", &input("tree3.json"), "mu", "--tol", "1e-9"]);
    assert_eq!(code, 0);
    let rows = tsv(&out);
    let mu = rows.iter().find(|r| r[0] == "mu").unwrap();
    assert_eq!(mu[1].parse::<f64>().unwrap(), 2.0);
    assert_eq!(mu[2].parse::<f64>().unwrap(), 2.0);
}

#[test]
fn guard_errors_exit_with_two() {
    let (code, out, err) = sawlang(&["--input", &input("ladder.json"), "count", "--maxlen", "5", "--radius", "3"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("enlarge the ball"), "{err}");
    let (code, _, err) = sawlang(&["--input", &input("amalgam.json"), "quotient", "--radius", "3"]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("increase the radius"), "{err}");
}

#[test]
fn io_and_validation_errors() {
    let (code, _, _) = sawlang(&["--input", "/nonexistent/file.json", "count", "--maxlen", "2"]);
    assert_eq!(code, 4);
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"mode": "cayley", "generators": [{"token": "a", "inverse": "a"}], "rules": [{"lhs": ["a", "a", "a"], "rhs": []}]}"#).unwrap();
    let (code, _, err) = sawlang(&["--input", bad.to_str().unwrap(), "validate"]);
    assert_eq!(code, 1, "{err}");
    let (code, _, _) = sawlang(&["count", "--maxlen", "2"]);
    assert_eq!(code, 1);
    let (code, _, _) = sawlang(&["--input", &input("ladder.json"), "count", "--maxlen", "2", "--out", "/nonexistent/dir/x.tsv"]);
    assert_eq!(code, 4);
    assert_eq!(CliError::Mismatch(String::new()).exit_code(), 3);
}

#[test]
fn validate_reports_each_mode() {
    for (file, mode) in [
        ("amalgam.json", "cayley"),
        ("square_with_tail.json", "finite"),
        ("amalgam.quotient.json", "quotient"),
    ] {
        let (code, out, err) = sawlang(&["--input", &input(file), "validate"]);
        assert_eq!(code, 0, "{file}: {err}");
        assert!(out.starts_with(&format!("mode\t{mode}\n")));
        assert!(out.ends_with("valid\ttrue\n"));
    }
}

#[test]
fn counts_words_and_parallel_agree() {
    let (_, serial, _) = sawlang(&["--input", &input("ladder.json"), "count", "--maxlen", "10"]);
    let (_, parallel, _) = sawlang(&["--input", &input("ladder.json"), "count", "--maxlen", "10", "--parallel", "4"]);
    assert_eq!(serial, parallel);
    let rows = tsv(&serial);
    assert_eq!(rows[3], ["3", "12"]);
    let (_, words, _) = sawlang(&["--input", &input("ladder.json"), "words", "--maxlen", "2"]);
    assert_eq!(words.lines().count(), 10);
    assert_eq!(words.lines().next(), Some(""));
}

#[test]
fn grammar_census_and_series_agree_with_count() {
    let (_, count, _) = sawlang(&["--input", &input("ladder.json"), "count", "--maxlen", "16"]);
    let (_, series, _) = sawlang(&["--input", &input("ladder.json"), "series", "--maxlen", "16"]);
    assert_eq!(count, series);
    let (_, census, _) = sawlang(&["--input", &input("ladder.json"), "census", "--maxlen", "16"]);
    for (c, s) in tsv(&census).iter().zip(tsv(&count)) {
        assert_eq!(c[1], s[1]);
        assert_eq!(c[2], "1");
    }
}

#[test]
fn probe_reproduces_the_ladder_family() {
    let (code, out, err) = sawlang(&[
        "--input", &input("ladder.json"), "probe", "--template", "a c a^k c A^l", "--k", "1..6", "--l", "1..6",
    ]);
    assert_eq!(code, 0, "{err}");
    let rows = tsv(&out);
    assert_eq!(rows.len(), 36);
    for r in rows {
        let (k, l): (u32, u32) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        assert_eq!(r[3] == "true", k > l, "k={k} l={l}");
    }
}

#[test]
fn quotient_output_is_a_valid_input() {
    let path = scratch("amalgam.quotient.json");
    let (code, _, _) = sawlang(&["--input", &input("amalgam.json"), "quotient", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        std::fs::read_to_string(input("amalgam.quotient.json")).unwrap()
    );
    let (_, a, _) = sawlang(&["--input", path.to_str().unwrap(), "grammar"]);
    let (_, b, _) = sawlang(&["--input", &input("amalgam.json"), "grammar"]);
    assert_eq!(a, b);
    assert!(a.starts_with("start S\n"));
}

#[test]
fn minpoly_rows_describe_the_printed_polynomial() {
    let (code, out, _) = sawlang(&["--input", &input("z3_z2.json"), "minpoly"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# P(t, y) = "));
    let rows = tsv(&out);
    assert!(rows.iter().all(|r| r.len() == 3 && r[2].parse::<i64>().is_ok()));
    // rational generating function
    assert!(rows.iter().all(|r| r[1] == "0" || r[1] == "1"));
}

#[test]
fn decomposition_documents_are_json() {
    for cmd in ["blocks", "tutte"] {
        let (code, out, err) = sawlang(&["--input", &input("square_with_tail.json"), cmd]);
        assert_eq!(code, 0, "{err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["root"], "o");
    }
    let (_, out, _) = sawlang(&["--input", &input("square_with_tail.json"), "tutte"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["blocks"].as_array().unwrap().len(), 1);
    assert_eq!(v["blocks"][0]["nodes"][0]["kind"], "cycle");
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for cmd in ["grammar", "quotient", "minpoly", "mu", "blocks"] {
        let args = ["--input", &input("amalgam.json"), cmd];
        assert_eq!(sawlang(&args).1, sawlang(&args).1, "{cmd}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_sawlang");
    let status = Command::new(bin)
        .args(["--input", &input("ladder.json"), "count", "--maxlen", "4", "--radius", "2"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let ok = Command::new(bin)
        .args(["--input", &input("ladder.json"), "count", "--maxlen", "3"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "n\tc_n\n0\t1\n1\t3\n2\t6\n3\t12\n");
}
