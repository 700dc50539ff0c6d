use std::process::Command;

use fibprod::output::{parse_plain_rows, parse_structured};
use fibprod_core::identities::{check_addition, check_johnson};
use fibprod_core::{FibTable, Rational, SequenceParams};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["fibprod"];
    full.extend_from_slice(args);
    let code = fibprod::run(full, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn values(out: &str) -> Vec<String> {
    out.lines().filter(|l| !l.starts_with('#')).map(|l| l.split_whitespace().nth(1).unwrap().to_string()).collect()
}

#[test]
fn seq_examples() {
    let r = run(&["seq", "fib", "--a", "1", "--b", "1", "--from", "0", "--to", "6"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(values(&r.out), ["0", "1", "1", "2", "3", "5", "8"]);
    let r = run(&["seq", "lucas", "--a", "2", "--b", "1", "--to", "3"]);
    assert_eq!(values(&r.out), ["2", "2", "6", "14"]);
    let r = run(&["seq", "harmonic", "--to", "3"]);
    assert_eq!(values(&r.out), ["0", "1", "3/2", "11/6"]);
}

#[test]
fn seq_negative_b_and_indices() {
    let r = run(&["seq", "fib", "--a", "1", "--b", "-2", "--from", "-3", "--to", "2"]);
    assert_eq!(r.code, 0, "{}", r.err);
    // F(-1) = 1/b, F(-2) = -a/b^2, F(-3) = (a^2 + b)/b^3
    assert_eq!(values(&r.out), ["1/8", "-1/4", "-1/2", "0", "1", "1"]);
}

#[test]
fn invalid_params_name_the_invariant() {
    let r = run(&["seq", "fib", "--a", "2", "--b", "-1"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("a^2 + 4b"), "{}", r.err);
    let r = run(&["seq", "fib", "--b", "0"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("b"), "{}", r.err);
}

#[test]
fn coeffs_examples() {
    let r = run(&["coeffs", "V3", "--order", "5", "--oracle"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(values(&r.out), ["0", "1", "2", "10", "42", "210"]);
    assert!(r.out.contains("oracle: match"));
    // the stride-2 Pell bisection: F(2n) = 0, 2, 12, 70
    let r = run(&["coeffs", "QF", "--a", "2", "--b", "1", "--m", "2", "--j", "0", "--order", "3"]);
    assert_eq!(values(&r.out), ["0", "2", "12", "70"]);
    let r = run(&["coeffs", "U2", "--order", "3"]);
    assert_eq!(values(&r.out), ["0", "1", "1/2", "2/3"]);
}

#[test]
fn coeffs_errors_carry_the_formula_name() {
    let r = run(&["coeffs", "U4", "--a", "1", "--b", "-1", "--order", "4"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("U4("), "{}", r.err);
    let r = run(&["coeffs", "W9"]);
    assert_eq!(r.code, 2);
}

#[test]
fn verify_examples() {
    let r = run(&["verify", "johnson", "--max", "20"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("0 failed"), "{}", r.out);
    let r = run(&["verify", "master", "--weight", "catalan", "--k-max", "1", "--m-max", "1", "--n-max", "24"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let r = run(&["verify", "shift", "--mode", "symbolic", "--max", "6"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let r = run(&["verify", "functional-equation", "--profile", "jacobsthal", "--order", "12"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let r = run(&["verify", "triangle", "--triangle", "eulerian", "--n-max", "8"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let r = run(&["verify", "HL", "--m", "3", "--j", "1", "--order", "12"]);
    assert_eq!(r.code, 0, "{}", r.err);
}

#[test]
fn perturbed_identity_exits_one_with_report() {
    for args in [
        &["verify", "addition", "--max", "3", "--perturb"][..],
        &["verify", "master", "--n-max", "3", "--perturb"],
        &["verify", "johnson", "--mode", "symbolic", "--max", "3", "--perturb"],
        &["verify", "functional-equation", "--order", "6", "--perturb"],
        &["verify", "V1", "--order", "6", "--perturb"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 1, "{args:?}: {}", r.out);
        assert!(r.out.contains("1 failed"), "{}", r.out);
    }
    let r = run(&["verify", "addition", "--max", "2", "--perturb"]);
    assert!(r.out.contains("lhs = 1, rhs = 2 => FAIL"), "{}", r.out);
}

#[test]
fn verify_unknown_name_is_usage_error() {
    let r = run(&["verify", "pythagoras"]);
    assert_eq!(r.code, 2);
    let r = run(&["verify", "master", "--mode", "symbolic"]);
    assert_eq!(r.code, 2);
}

#[test]
fn sum_examples() {
    let r = run(&["sum", "HF", "--a", "1", "--b", "1", "--x", "1/2", "--digits", "8"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("agree"), "{}", r.out);
    let r = run(&["sum", "CF", "--x", "1/8", "--digits", "8", "--format", "structured"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["published_constant"]["agrees"], true);
    let tail = parse_structured(&v["tail_bound"]).unwrap();
    assert!(tail < Rational::new(1.into(), 100_000_000.into()));
}

#[test]
fn sum_divergence_is_distinct() {
    let r = run(&["sum", "CF", "--x", "1/2"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("diverges"), "{}", r.err);
    let r = run(&["sum", "HF", "--a", "1", "--b", "-1", "--x", "1/10"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("domain"), "{}", r.err);
}

#[test]
fn oeis_table_examples() {
    let r = run(&["oeis", "A000045", "--prefix", "20"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("match (20 terms)"));
    let r = run(&["oeis", "A000129"]);
    assert_eq!(r.code, 0, "{}", r.err);
    // the (8, 1) Lucas column repeats the (7, 1) entry
    let r = run(&["oeis", "A086902"]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("L(a=7, b=1) [bundled]: match"), "{}", r.out);
    assert!(r.out.contains("L(a=8, b=1) [bundled]: MISMATCH at index 1"), "{}", r.out);
}

#[test]
fn oeis_missing_file_without_fetch_is_environment_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, format!("cache_dir = {:?}\n", dir.path().join("cache"))).unwrap();
    let r = run(&["oeis", "A372199", "--fetch", "off", "--config", cfg.to_str().unwrap()]);
    assert_eq!(r.code, 3);
    assert!(r.err.contains("--fetch on"), "{}", r.err);
}

#[test]
fn oeis_reads_cache_and_local_files() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    std::fs::create_dir(&cache).unwrap();
    // numerators of H(n)F(n): 0, 1, 3/2, 11/3, 25/4 ...
    std::fs::write(cache.join("b372199.txt"), "# test copy\n0 0\n1 1\n2 3\n3 11\n4 25\n").unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, format!("cache_dir = {:?}\n", cache)).unwrap();
    let c = cfg.to_str().unwrap();
    let r = run(&["oeis", "A372199", "--prefix", "5", "--config", c]);
    assert_eq!(r.code, 0, "{} {}", r.out, r.err);
    assert!(r.out.contains("[cache:"), "{}", r.out);

    let local = dir.path().join("local.txt");
    std::fs::write(&local, "0 0\r\n1 1\r\n2 1\r\n3 2\r\n4 3\r\n").unwrap();
    let l = local.to_str().unwrap();
    let r = run(&["oeis", "A999999", "--bfile", l, "--kind", "fib", "--prefix", "5", "--config", c]);
    assert_eq!(r.code, 0, "{}", r.err);
    let r = run(&["oeis", "A999999", "--bfile", l, "--kind", "lucas", "--prefix", "5", "--config", c]);
    assert_eq!(r.code, 1);
    let r = run(&["oeis", "A999999", "--bfile", l, "--kind", "fib", "--prefix", "6", "--config", c]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("TOO SHORT"), "{}", r.out);
}

#[test]
fn malformed_bfile_reports_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let local = dir.path().join("bad.txt");
    std::fs::write(&local, "# c\n0 0\n1 1\n2 x\n").unwrap();
    let r = run(&["oeis", "A000045", "--bfile", local.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("line 4"), "{}", r.err);
    let r = run(&["oeis", "B12", "--bfile", local.to_str().unwrap()]);
    assert_eq!(r.code, 2);
}

#[test]
fn config_profiles_and_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "order = 4\ndefault_profile = \"half\"\n[profiles.half]\na = \"1/2\"\nb = 3\n").unwrap();
    let r = run(&["seq", "fib", "--to", "3", "--config", cfg.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(values(&r.out), ["0", "1", "1/2", "13/4"]);
    let r = run(&["coeffs", "F", "--config", cfg.to_str().unwrap()]);
    assert_eq!(values(&r.out).len(), 5);

    std::fs::write(&cfg, "order = 4\ncolour = \"red\"\n").unwrap();
    let r = run(&["seq", "fib", "--config", cfg.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("colour"), "{}", r.err);

    std::fs::write(&cfg, "[profiles.bad]\na = 2\nb = -1\n").unwrap();
    let r = run(&["seq", "fib", "--config", cfg.to_str().unwrap()]);
    assert_eq!(r.code, 2);

    let r = run(&["seq", "fib", "--profile", "nope"]);
    assert_eq!(r.code, 2);
    let r = run(&["seq", "fib", "--config", dir.path().join("missing.toml").to_str().unwrap()]);
    assert_eq!(r.code, 3);
}

#[test]
fn structured_seq_is_lossless() {
    let r = run(&["seq", "hf:1", "--profile", "pell", "--to", "8", "--format", "structured"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    let p = SequenceParams::from_ints(2, 1).unwrap();
    let t = FibTable::new(p);
    for row in v["rows"].as_array().unwrap() {
        let n = row["n"].as_i64().unwrap();
        let got = parse_structured(&row["value"]).unwrap();
        assert_eq!(got, fibprod_core::sequences::harmonic(n as u64) * t.fib(n + 1));
    }
}

/// Values printed by `seq` and read back give the same identity verdicts
/// as values computed directly.
#[test]
fn seq_output_round_trips_through_identity_checks() {
    let r = run(&["seq", "fib", "--a", "3/2", "--b", "-5/7", "--from", "0", "--to", "30"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let rows = parse_plain_rows(&r.out).unwrap();
    let table = FibTable::new(
        SequenceParams::new(Rational::new(3.into(), 2.into()), Rational::new((-5).into(), 7.into())).unwrap(),
    );
    let f = |n: i64| rows[n as usize].1.clone();
    for n in 1..=14 {
        for m in 1..=14 {
            let parsed = f(n + m) == Rational::new((-5).into(), 7.into()) * f(n - 1) * f(m) + f(n) * f(m + 1);
            assert_eq!(parsed, check_addition(&table, n, m).unwrap().passed());
            assert!(parsed);
        }
    }
    let johnson_parsed =
        f(9) * f(6) - f(7) * f(8) == (Rational::new(5.into(), 7.into())).pow(2) * (f(7) * f(4) - f(5) * f(6));
    assert_eq!(johnson_parsed, check_johnson(&table, 9, 6, 7, 8, 2).unwrap().passed());
}

#[test]
fn help_and_bad_flags() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("seq"));
    let r = run(&["seq"]);
    assert_eq!(r.code, 2);
    let r = run(&["seq", "fib", "--format", "xml"]);
    assert_eq!(r.code, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fibprod");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["seq", "catalan", "--to", "4"]), 0);
    assert_eq!(status(&["verify", "doubling", "--perturb"]), 1);
    assert_eq!(status(&["seq", "nothing"]), 2);
    let out = Command::new(bin).args(["seq", "fib", "--to", "3"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0 0\n1 1\n2 1\n3 2\n");
}
