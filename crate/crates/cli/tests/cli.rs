use std::process::Command;

use lconf_cli::{parse_algebra, parse_unchecked, print_algebra, AlgFileError, BUNDLED};
use lconf_core::ConformalAlgebra;
use serde_json::Value;

fn lconf(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lconf"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn lconf_json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out, err) = lconf(&all);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).expect("valid json")
}

fn bundled(name: &str) -> &'static str {
    BUNDLED.iter().find(|(n, _)| *n == name).unwrap().1
}

#[test]
fn bundled_files_define_the_builtin_algebras() {
    assert_eq!(parse_algebra(bundled("w22")).unwrap(), ConformalAlgebra::w22());
    assert_eq!(parse_algebra(bundled("vir")).unwrap(), ConformalAlgebra::virasoro());
    assert_eq!(
        parse_algebra(bundled("abelian1")).unwrap(),
        ConformalAlgebra::abelian(1)
    );
}

#[test]
fn print_parse_round_trip() {
    for alg in [
        ConformalAlgebra::w22(),
        ConformalAlgebra::virasoro(),
        ConformalAlgebra::abelian(1),
        ConformalAlgebra::abelian(3),
    ] {
        assert_eq!(parse_algebra(&print_algebra(&alg)).unwrap(), alg);
    }
}

#[test]
fn skew_symmetry_failure_is_reported() {
    let text = "generators: L\nbracket L L = (D + 3*x) L\n";
    match parse_algebra(text) {
        Err(AlgFileError::Axioms(msg)) => assert!(msg.contains("SkewSymmetry on (L,L): residual (-D) L"), "{msg}"),
        other => panic!("expected an axiom failure, got {other:?}"),
    }
    assert!(parse_unchecked(text).is_ok());
}

#[test]
fn comments_blank_lines_and_zero_brackets() {
    let text = "# test\n\ngenerators: A B   # two\nbracket A B = 0\nbracket A A = (D + 2 x) A  # Virasoro\n";
    let alg = parse_algebra(text).unwrap();
    assert_eq!(alg.rank(), 2);
    assert_eq!(alg.stored().len(), 1);
}

#[test]
fn out_of_order_pair_is_rejected() {
    let err = parse_unchecked("generators: L M\nbracket M L = (D + 2*x) M\n").unwrap_err();
    assert!(err
        .to_string()
        .starts_with("2:1: declare brackets with generators in declared order"));
}

#[test]
fn cohomology_json_schema() {
    let v = lconf_json(&["cohomology", "--algebra", "w22", "--coeffs", "trivial", "--max-q", "4"]);
    for key in ["command", "algebra", "basic", "reduced", "representatives"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "cohomology");
    assert_eq!(v["basic"]["3"]["3"], 2);
    assert_eq!(v["reduced"]["2"]["3"], 2);
    assert!(v["representatives"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["cochain"].is_string()));
}

#[test]
fn eval_zero_is_trivial() {
    let v = lconf_json(&["cohomology", "--coeffs", "eval:0", "--max-q", "3"]);
    assert_eq!(v["basic_totals"], serde_json::json!([1, 0, 0, 2]));
}

#[test]
fn nontrivial_coefficients_certify_vanishing() {
    let v = lconf_json(&["cohomology", "--coeffs", "eval:-2", "--max-q", "3"]);
    assert_eq!(v["homotopy_ok"], true);
    assert_eq!(v["requires"], "a != 0");
    let v = lconf_json(&["cohomology", "--coeffs", "rank1:1/2,3", "--max-q", "3"]);
    assert_eq!(v["homotopy_ok"], true);
    let v = lconf_json(&["cohomology", "--coeffs", "rank1:1,0", "--max-q", "2"]);
    assert!(v["conclusion"].as_str().unwrap().contains("no conclusion"));
}

#[test]
fn central_ext_and_derivations() {
    let v = lconf_json(&["central-ext", "--algebra", "w22", "--max-deg", "5"]);
    assert_eq!(v["h2_dim"], 2);
    let v = lconf_json(&["derivations", "--algebra", "abelian1", "--max-deg", "2"]);
    assert!(v["outer_dim"].as_u64().unwrap() > 0);
}

#[test]
fn rank1_modules_at_a_point() {
    let v = lconf_json(&["rank1-modules", "--max-deg", "4", "--delta", "0", "--alpha", "-1"]);
    assert_eq!(v["dim"], 0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "generators: L\nbracket L L = (D + 3*x) L\n").unwrap();
    let bad = bad.to_str().unwrap();
    assert_eq!(lconf(&["check", "--algebra", "abelian1"]).0, 0);
    assert_eq!(lconf(&["check", "--algebra", bad]).0, 2);
    assert_eq!(lconf(&["derivations", "--algebra", bad]).0, 1);
    assert_eq!(lconf(&["cohomology", "--coeffs", "nope"]).0, 1);
    assert_eq!(lconf(&["frobnicate"]).0, 1);
    assert_eq!(lconf(&["verify", "--algebra", "vir"]).0, 1);
    assert_eq!(lconf(&["--help"]).0, 0);

    let syntax = dir.path().join("syntax.alg");
    std::fs::write(&syntax, "generators: L\nbracket L L = (D + 2*x\n").unwrap();
    let (code, _, err) = lconf(&["check", "--algebra", syntax.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("2:23: expected `)`"), "{err}");
}

#[test]
fn out_flag_writes_file_and_timing_goes_to_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, err) = lconf(&["verify", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(err.contains("elapsed"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["ok"], true);
}

#[test]
fn reports_are_deterministic() {
    let a = lconf(&["cohomology", "--max-q", "5", "--format", "json"]).1;
    let b = lconf(&["cohomology", "--max-q", "5", "--format", "json"]).1;
    assert_eq!(a, b);
}
