//! Golden-file runner for the `rankrange` binary.
//!
//! Each case runs twice in fresh output directories. Both runs must agree
//! byte for byte, exit with the expected code, and match the transcript in
//! `tests/golden/<name>.txt`. Set `RANKRANGE_BLESS=1` to rewrite the
//! transcripts instead of comparing.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    /// `$F/` expands to the fixture directory, `$O/` to the output directory.
    pub args: &'static [&'static str],
    pub exit: i32,
    /// Files written into the output directory that belong to the transcript.
    pub files: &'static [&'static str],
    pub env: &'static [(&'static str, &'static str)],
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32, files: &'static [&'static str]) -> Case {
    Case {
        name,
        args,
        exit,
        files,
        env: &[],
    }
}

pub const CASES: &[Case] = &[
    case("support_j2", &["support", "--matrix", "$F/j2.json", "--k", "1", "--xi", "0.7"], 0, &[]),
    case("support_diag_k2", &["support", "--matrix", "$F/diag4321.json", "--k", "2", "--xi", "-0.25"], 0, &[]),
    case("member_inside", &["member", "--matrix", "$F/diag4321.json", "--k", "2", "--mu", "2.5"], 0, &[]),
    case("member_outside", &["member", "--matrix", "$F/diag4321.json", "--k", "2", "--mu", "3.5"], 4, &[]),
    case("member_boundary_j2", &["member", "--matrix", "$F/j2.json", "--k", "1", "--mu", "0.5i", "--samples", "64"], 0, &[]),
    case(
        "boundary_j2",
        &["boundary", "--matrix", "$F/j2.json", "--k", "1", "--samples", "12", "--out", "$O/b.csv", "--svg", "$O/b.svg"],
        0,
        &["b.csv", "b.svg"],
    ),
    case(
        "boundary_nonnormal",
        &["boundary", "--matrix", "$F/nonnormal3.json", "--k", "1", "--samples", "24", "--out", "$O/b.csv"],
        0,
        &["b.csv"],
    ),
    case("polygon_segment", &["polygon", "--eigs", "$F/eigs4321.json", "--k", "2"], 0, &[]),
    case("polygon_point", &["polygon", "--eigs", "$F/eigs_quadrant.json", "--k", "2"], 0, &[]),
    case(
        "polygon_hexagon",
        &["polygon", "--eigs", "$F/eigs_hexagon.json", "--k", "2", "--svg", "$O/p.svg"],
        0,
        &["p.svg"],
    ),
    case("polygon_empty", &["polygon", "--eigs", "$F/eigs4321.json", "--k", "3"], 0, &[]),
    case("isodim_j2", &["isodim", "--matrix", "$F/j2.json"], 0, &[]),
    case("isodim_j3", &["isodim", "--matrix", "$F/j3.json"], 0, &[]),
    case(
        "compress_diag",
        &["compress", "--matrix", "$F/diag4321.json", "--k", "2", "--mu", "2.5", "--out", "$O/u.json"],
        0,
        &["u.json"],
    ),
    case(
        "compress_nonnormal",
        &["compress", "--matrix", "$F/nonnormal3.json", "--k", "1", "--mu", "0.1+0.1i", "--out", "$O/u.json"],
        0,
        &["u.json"],
    ),
    Case {
        name: "compress_nonnormal_seeded",
        args: &["compress", "--matrix", "$F/nonnormal3.json", "--k", "1", "--mu", "0.1+0.1i", "--out", "$O/u.json"],
        exit: 0,
        files: &["u.json"],
        env: &[("RANKRANGE_SEED", "7")],
    },
    case(
        "compress_non_member",
        &["compress", "--matrix", "$F/diag4321.json", "--k", "2", "--mu", "3.5", "--out", "$O/u.json"],
        3,
        &[],
    ),
    case(
        "compress_search_fails",
        &["compress", "--matrix", "$F/j2.json", "--k", "1", "--mu", "2", "--tol", "10", "--restarts", "2", "--out", "$O/u.json"],
        2,
        &[],
    ),
    case("solve_a_scalar", &["solve", "--eq", "a", "--args", "$F/two1.json", "$F/zero1.json", "--out", "$O/z.json"], 0, &["z.json"]),
    case("solve_a", &["solve", "--eq", "a", "--args", "$F/r2.json", "$F/s2.json", "--out", "$O/z.json"], 0, &["z.json"]),
    case("solve_b", &["solve", "--eq", "b", "--args", "$F/r2.json", "$F/s2.json", "--out", "$O/z.json"], 0, &["z.json"]),
    case(
        "solve_b_real_pairing",
        &["solve", "--eq", "b", "--pairing", "real", "--args", "$F/r2.json", "$F/s2.json", "--out", "$O/z.json"],
        0,
        &["z.json"],
    ),
    case("solve_c", &["solve", "--eq", "c", "--args", "$F/r2.json", "$F/s2.json", "--out", "$O/z.json"], 0, &["z.json"]),
    case(
        "solve_d_scalar",
        &["solve", "--eq", "d", "--args", "$F/zero1.json", "$F/one1.json", "--out", "$O/h.json", "--out2", "$O/h2.json"],
        0,
        &["h.json", "h2.json"],
    ),
    case(
        "solve_d",
        &["solve", "--eq", "d", "--args", "$F/r2.json", "$F/p2.json", "--gamma", "-0.5", "--out", "$O/h.json", "--out2", "$O/h2.json"],
        0,
        &["h.json", "h2.json"],
    ),
    case("solve_e", &["solve", "--eq", "e", "--args", "$F/r2.json", "$F/s2.json", "--out", "$O/u.json"], 0, &["u.json"]),
    case(
        "solve_f",
        &["solve", "--eq", "f", "--args", "$F/c2.json", "$F/p2.json", "--out", "$O/u.json", "--out2", "$O/h.json"],
        0,
        &["u.json", "h.json"],
    ),
    case(
        "solve_f_not_contraction",
        &["solve", "--eq", "f", "--args", "$F/two1.json", "$F/one1.json", "--out", "$O/u.json"],
        1,
        &[],
    ),
    case(
        "solve_d_indefinite",
        &["solve", "--eq", "d", "--args", "$F/zero1.json", "$F/zero1.json", "--out", "$O/h.json"],
        1,
        &[],
    ),
    case("canonical_kprime", &["canonical", "kprime", "--summands", "$F/summands.txt"], 0, &[]),
    case(
        "canonical_build",
        &["canonical", "build", "--summands", "$F/summands.txt", "--out", "$O/m.json"],
        0,
        &["m.json"],
    ),
    case("canonical_bad_summand", &["canonical", "kprime", "--summands", "$F/summands_bad.txt"], 1, &[]),
    case("error_ragged", &["isodim", "--matrix", "$F/ragged.json"], 1, &[]),
    case("error_truncated", &["isodim", "--matrix", "$F/truncated.json"], 1, &[]),
    case("error_not_square", &["isodim", "--matrix", "$F/rect.json"], 1, &[]),
    case("error_bad_mu", &["member", "--matrix", "$F/j2.json", "--k", "1", "--mu", "1+2j"], 1, &[]),
    case("error_rank", &["support", "--matrix", "$F/j2.json", "--k", "3", "--xi", "0"], 1, &[]),
    case("error_unknown_command", &["frobnicate"], 1, &[]),
    case("error_missing_file", &["isodim", "--matrix", "$F/absent.json"], 1, &[]),
];

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Runs one case in `out` and returns its transcript.
fn transcript(c: &Case, out: &Path) -> Result<String, String> {
    let fx = fixtures();
    let args: Vec<String> = c
        .args
        .iter()
        .map(|a| {
            a.replace("$F", fx.to_str().unwrap())
                .replace("$O", out.to_str().unwrap())
        })
        .collect();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rankrange"));
    cmd.args(&args).env_remove("RANKRANGE_SEED");
    for (k, v) in c.env {
        cmd.env(k, v);
    }
    let res = cmd.output().map_err(|e| format!("{}: cannot spawn: {e}", c.name))?;
    let code = res.status.code().unwrap_or(-1);
    let normalize = |b: &[u8]| {
        String::from_utf8_lossy(b)
            .replace(fx.to_str().unwrap(), "$F")
            .replace(out.to_str().unwrap(), "$O")
    };
    let stdout = normalize(&res.stdout);
    let stderr = normalize(&res.stderr);
    if code != c.exit {
        return Err(format!("{}: exit code {code}, expected {} (stderr: {})", c.name, c.exit, stderr.trim()));
    }
    if code != 0 {
        let prefix = format!("ERROR {code}: ");
        if !stderr.starts_with(&prefix) || stderr.lines().count() != 1 {
            return Err(format!("{}: stderr lacks a single '{prefix}' line: {stderr:?}", c.name));
        }
    }
    let mut t = format!("exit: {code}\n--- stdout\n{stdout}--- stderr\n{stderr}");
    for f in c.files {
        let body = fs::read_to_string(out.join(f)).map_err(|e| format!("{}: missing output {f}: {e}", c.name))?;
        t.push_str(&format!("--- file {f}\n{body}"));
    }
    Ok(t)
}

fn check(c: &Case, bless: bool) -> Result<(), String> {
    let first = tempfile::tempdir().map_err(|e| e.to_string())?;
    let second = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = transcript(c, first.path())?;
    let b = transcript(c, second.path())?;
    if a != b {
        return Err(format!("{}: rerun differs", c.name));
    }
    let path = golden_dir().join(format!("{}.txt", c.name));
    if bless {
        fs::create_dir_all(golden_dir()).map_err(|e| e.to_string())?;
        fs::write(&path, &a).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let want = fs::read_to_string(&path).map_err(|e| format!("{}: no golden transcript: {e}", c.name))?;
    if want != a {
        let line = want
            .lines()
            .zip(a.lines())
            .position(|(x, y)| x != y)
            .unwrap_or(want.lines().count().min(a.lines().count()));
        return Err(format!(
            "{}: transcript differs from golden at line {}:\n  golden: {:?}\n  actual: {:?}",
            c.name,
            line + 1,
            want.lines().nth(line),
            a.lines().nth(line)
        ));
    }
    Ok(())
}

/// Runs every case; `Ok` carries a one-line summary.
pub fn cli_conformance() -> Result<String, String> {
    let bless = std::env::var("RANKRANGE_BLESS").is_ok_and(|v| v == "1");
    let mut codes = std::collections::BTreeSet::new();
    for c in CASES {
        check(c, bless)?;
        codes.insert(c.exit);
    }
    for needed in 0..=4 {
        if !codes.contains(&needed) {
            return Err(format!("no case exercises exit code {needed}"));
        }
    }
    Ok(format!(
        "{} golden cases, reruns byte-identical, exit codes {:?} exercised",
        CASES.len(),
        codes
    ))
}
