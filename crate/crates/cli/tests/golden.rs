mod common;

use num_complex::Complex64;
use rankrange::canonical::{build_direct_sum, kprime_formula, parse_summands};
use rankrange::constructors::{solve_eq_a, SearchOptions};
use rankrange::numrange::{is_member_default, isotropic_dimension, support};
use rankrange_cli::{format_matrix, parse_matrix, parse_matrix_text, run};

fn fixture(name: &str) -> String {
    common::fixtures().join(name).to_str().unwrap().to_string()
}

fn cli(args: &[&str]) -> rankrange_cli::CommandResult {
    run(std::iter::once("rankrange").chain(args.iter().copied()))
}

#[test]
fn golden_transcripts() {
    if let Err(e) = common::cli_conformance() {
        panic!("{e}");
    }
}

#[test]
fn printed_support_matches_library_bits() {
    let path = fixture("nonnormal3.json");
    let a = parse_matrix(path.as_ref()).unwrap();
    for xi in ["0", "0.3", "-2.5", "6.1"] {
        let out = cli(&["support", "--matrix", &path, "--k", "2", "--xi", xi]);
        assert_eq!(out.exit_code, 0);
        let printed: f64 = out.stdout.trim().parse().unwrap();
        let direct = support(&a, 2, xi.parse().unwrap()).unwrap();
        assert_eq!(printed.to_bits(), direct.to_bits(), "xi = {xi}");
    }
}

#[test]
fn printed_margin_matches_library_bits() {
    let path = fixture("nonnormal3.json");
    let a = parse_matrix(path.as_ref()).unwrap();
    let out = cli(&["member", "--matrix", &path, "--k", "1", "--mu", "0.2-0.1i"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let direct = is_member_default(&a, 1, Complex64::new(0.2, -0.1)).unwrap();
    assert_eq!(v["member"].as_bool().unwrap(), direct.member);
    assert_eq!(v["margin"].as_f64().unwrap().to_bits(), direct.margin.to_bits());
    assert_eq!(v["witness_xi"].as_f64().unwrap().to_bits(), direct.witness_xi.to_bits());
}

#[test]
fn isodim_and_kprime_match_library() {
    let out = cli(&["isodim", "--matrix", &fixture("j3.json")]);
    let a = parse_matrix(fixture("j3.json").as_ref()).unwrap();
    assert_eq!(out.stdout.trim(), isotropic_dimension(&a, 1e-9).unwrap().to_string());

    let text = std::fs::read_to_string(fixture("summands.txt")).unwrap();
    let list = parse_summands(&text).unwrap();
    let out = cli(&["canonical", "kprime", "--summands", &fixture("summands.txt")]);
    assert_eq!(out.stdout.trim(), kprime_formula(&list).to_string());
    // the spectral count agrees with the block formula on the fixture too
    let m = build_direct_sum(&list).unwrap();
    assert_eq!(isotropic_dimension(&m, 1e-9).unwrap(), kprime_formula(&list));
}

#[test]
fn solution_file_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("z.json");
    let out = cli(&[
        "solve",
        "--eq",
        "a",
        "--args",
        &fixture("r2.json"),
        &fixture("s2.json"),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    let r = parse_matrix(fixture("r2.json").as_ref()).unwrap();
    let s = parse_matrix(fixture("s2.json").as_ref()).unwrap();
    let direct = solve_eq_a(&r, &s, &SearchOptions::default()).unwrap();
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(written, format_matrix(&direct.solution));
    assert_eq!(parse_matrix_text(&written).unwrap(), direct.solution);
}

#[test]
fn help_exits_zero() {
    let out = cli(&["--help"]);
    assert_eq!(out.exit_code, 0);
    assert!(out.stdout.contains("isodim"));
}

#[test]
fn missing_required_flag_is_input_error() {
    let out = cli(&["support", "--matrix", &fixture("j2.json")]);
    assert_eq!(out.exit_code, 1);
    assert!(out.stderr.starts_with("ERROR 1: "));
}

#[test]
fn bad_seed_is_rejected() {
    // a subprocess, so the variable never leaks into tests running alongside
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("u.json");
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_rankrange"))
        .args(["compress", "--matrix", &fixture("j2.json"), "--k", "1", "--mu", "0", "--out"])
        .arg(&out_path)
        .env("RANKRANGE_SEED", "seven")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.starts_with("ERROR 1: ") && stderr.contains("RANKRANGE_SEED"), "{stderr}");
}
