//! Command dispatch for the `rankrange` binary.
//!
//! [`run`] parses an argument vector, performs one command and returns the
//! exit code with the text destined for stdout and stderr. Output files are
//! written directly.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rankrange::canonical::{build_direct_sum, kprime_formula, parse_summands};
use rankrange::constructors::{
    find_isometry, solve_eq_a, solve_eq_b_with, solve_eq_c, solve_eq_d, solve_eq_e, solve_eq_f, BPairing,
    EquationSolution, SearchOptions, DEFAULT_SEED,
};
use rankrange::normal_exact::normal_polygon;
use rankrange::numrange::{
    is_member, isotropic_dimension, polygon_from_samples, support, support_samples, DEFAULT_SAMPLES, DEFAULT_TOL,
};
use rankrange::{ComplexMatrix, ConvexPolygon, Error};

mod io;

pub use io::{format_matrix, parse_complex, parse_matrix, parse_matrix_text};

/// Exit status plus captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failure carrying its exit code: 1 invalid input, 2 numerical failure,
/// 3 infeasible request.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible(_) | Error::GuardExceeded(_) => 3,
            ref e if e.is_numerical() => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<Output, Failure>;

struct Output {
    stdout: String,
    stderr: String,
    code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "rankrange", version, about = "Rank-k numerical ranges, compressions and matrix equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// k-th largest eigenvalue of e^{i xi} A + e^{-i xi} A*
    Support {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        xi: f64,
    },
    /// Membership of mu in the rank-k numerical range
    Member {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Sampled support function and the outer polygon it bounds
    Boundary {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Exact rank-k numerical range of a normal matrix from its eigenvalues
    Polygon {
        #[arg(long)]
        eigs: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Dimension of a maximal totally isotropic subspace
    Isodim {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Unitary U with mu I_k as the leading block of U* A U
    Compress {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        out: PathBuf,
        /// membership tolerance of the pre-check
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Quadratic matrix equations (a)-(f)
    Solve {
        #[arg(long, value_enum)]
        eq: Equation,
        /// Input matrix files: R S for a, b, c, e; M P for d; C P for f
        #[arg(long, num_args = 2, required = true)]
        args: Vec<PathBuf>,
        /// gamma for equation d
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        gamma: f64,
        /// reduction pair for equation b
        #[arg(long, value_enum, default_value_t = Pairing::Imaginary)]
        pairing: Pairing,
        /// solution file (Z, H or U)
        #[arg(long)]
        out: PathBuf,
        /// second output: H for f, the alternative-route H for d
        #[arg(long)]
        out2: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Canonical *-congruence blocks
    Canonical {
        #[command(subcommand)]
        action: CanonicalAction,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// random starting frames for the isometry search
    #[arg(long, default_value_t = 20)]
    restarts: usize,
}

#[derive(Subcommand, Debug)]
enum CanonicalAction {
    /// Isotropic dimension predicted by the block structure
    Kprime {
        #[arg(long)]
        summands: PathBuf,
    },
    /// Direct sum of the listed blocks
    Build {
        #[arg(long)]
        summands: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Equation {
    A,
    B,
    C,
    D,
    E,
    F,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Pairing {
    Imaginary,
    Real,
}

/// `{:.16e}`: 17 significant digits, enough to round-trip an `f64`.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn search_options(args: &SearchArgs) -> Result<SearchOptions, Failure> {
    let seed = match std::env::var("RANKRANGE_SEED") {
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .map_err(|_| Failure::input(format!("RANKRANGE_SEED must be a nonnegative integer, got '{s}'")))?,
        Err(_) => DEFAULT_SEED,
    };
    Ok(SearchOptions {
        restarts: args.restarts,
        seed,
        ..SearchOptions::default()
    })
}

fn load(path: &Path) -> Result<ComplexMatrix, Failure> {
    parse_matrix(path).map_err(Failure::input)
}

fn save(path: &Path, m: &ComplexMatrix) -> Result<(), Failure> {
    fs::write(path, format_matrix(m)).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol >= 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::input(format!("tolerance must be finite and nonnegative, got {tol}")))
    }
}

fn complex_arg(text: &str) -> Result<Complex64, Failure> {
    parse_complex(text).map_err(Failure::input)
}

fn polygon_csv(poly: &ConvexPolygon, out: &mut String, prefix: &str) {
    for v in poly.vertices() {
        let _ = writeln!(out, "{prefix}{},{}", fmt_real(v.re), fmt_real(v.im));
    }
}

/// Closed polyline through the vertices, y axis pointing up, viewBox
/// padded by 5% of the larger extent.
fn polygon_svg(poly: &ConvexPolygon) -> String {
    let pts = poly.vertices();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in pts {
        x0 = x0.min(p.re);
        x1 = x1.max(p.re);
        y0 = y0.min(-p.im);
        y1 = y1.max(-p.im);
    }
    if pts.is_empty() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let extent = (x1 - x0).max(y1 - y0).max(1e-12);
    let pad = 0.05 * extent;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        fmt_real(x0 - pad),
        fmt_real(y0 - pad),
        fmt_real(x1 - x0 + 2.0 * pad),
        fmt_real(y1 - y0 + 2.0 * pad)
    );
    let mut coords: Vec<String> = pts.iter().map(|p| format!("{},{}", fmt_real(p.re), fmt_real(-p.im))).collect();
    if let Some(first) = coords.first().cloned() {
        coords.push(first);
    }
    let _ = writeln!(
        s,
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>",
        coords.join(" "),
        fmt_real(extent / 200.0)
    );
    s.push_str("</svg>\n");
    s
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn residual_json(sol: &EquationSolution<f64>) -> String {
    let fields: Vec<String> = sol
        .residuals
        .iter()
        .map(|(k, v)| format!("\"{k}\":{}", fmt_real(*v)))
        .collect();
    format!("{{{}}}\n", fields.join(","))
}

fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Support { matrix, k, xi } => {
            let a = load(&matrix)?;
            let h = support(&a, k, xi)?;
            Ok(Output::ok(format!("{}\n", fmt_real(h))))
        }
        Command::Member {
            matrix,
            k,
            mu,
            samples,
            tol,
        } => {
            let a = load(&matrix)?;
            let mu = complex_arg(&mu)?;
            check_tol(tol)?;
            let v = is_member(&a, k, mu, samples, tol)?;
            let text = format!(
                "{{\"member\":{},\"margin\":{},\"witness_xi\":{}}}\n",
                v.member,
                fmt_real(v.margin),
                fmt_real(v.witness_xi)
            );
            if v.member {
                Ok(Output::ok(text))
            } else {
                Ok(Output {
                    stdout: text,
                    stderr: format!("ERROR 4: {mu} is not in the rank-{k} numerical range\n"),
                    code: 4,
                })
            }
        }
        Command::Boundary {
            matrix,
            k,
            samples,
            out,
            svg,
        } => {
            let a = load(&matrix)?;
            if samples < 3 {
                return Err(Failure::input(format!("need at least 3 samples, got {samples}")));
            }
            let ss = support_samples(&a, k, samples)?;
            let poly = polygon_from_samples(&a, &ss);
            let mut csv = String::from("xi,support,hx,hy\n");
            for s in &ss {
                let _ = writeln!(
                    csv,
                    "{},{},{},{}",
                    fmt_real(s.xi),
                    fmt_real(s.value),
                    fmt_real(s.xi.cos()),
                    fmt_real(-s.xi.sin())
                );
            }
            polygon_csv(&poly, &mut csv, "V,");
            write_text(&out, &csv)?;
            if let Some(path) = svg {
                write_text(&path, &polygon_svg(&poly))?;
            }
            Ok(Output::ok(format!(
                "kind={} vertices={}\n",
                poly.kind().as_str(),
                poly.vertices().len()
            )))
        }
        Command::Polygon { eigs, k, svg } => {
            let e = load(&eigs)?;
            if e.rows() != 1 {
                return Err(Failure::input(format!(
                    "eigenvalue file must have rows=1, got rows={}",
                    e.rows()
                )));
            }
            let poly = normal_polygon(e.data(), k)?;
            let mut text = format!("kind={}\n", poly.kind().as_str());
            polygon_csv(&poly, &mut text, "");
            if let Some(path) = svg {
                write_text(&path, &polygon_svg(&poly))?;
            }
            Ok(Output::ok(text))
        }
        Command::Isodim { matrix, tol } => {
            let a = load(&matrix)?;
            check_tol(tol)?;
            Ok(Output::ok(format!("{}\n", isotropic_dimension(&a, tol)?)))
        }
        Command::Compress {
            matrix,
            k,
            mu,
            out,
            tol,
            search,
        } => {
            let a = load(&matrix)?;
            let mu = complex_arg(&mu)?;
            let opts = search_options(&search)?;
            check_tol(tol)?;
            let verdict = is_member(&a, k, mu, DEFAULT_SAMPLES, tol)?;
            if !verdict.member {
                return Err(Failure {
                    code: 3,
                    message: format!(
                        "{mu} is not in the rank-{k} numerical range (margin {})",
                        fmt_real(verdict.margin)
                    ),
                });
            }
            let iso = find_isometry(&a, mu, k, &opts)?;
            save(&out, &iso.to_unitary()?)?;
            Ok(Output::ok(format!("{}\n", fmt_real(iso.residual))))
        }
        Command::Solve {
            eq,
            args,
            gamma,
            pairing,
            out,
            out2,
            search,
        } => {
            let opts = search_options(&search)?;
            let x = load(&args[0])?;
            let y = load(&args[1])?;
            let pairing = match pairing {
                Pairing::Imaginary => BPairing::Imaginary,
                Pairing::Real => BPairing::Real,
            };
            let sol = match eq {
                Equation::A => solve_eq_a(&x, &y, &opts)?,
                Equation::B => solve_eq_b_with(&x, &y, pairing, &opts)?,
                Equation::C => solve_eq_c(&x, &y, &opts)?,
                Equation::D => solve_eq_d(&x, &y, gamma, &opts)?,
                Equation::E => solve_eq_e(&x, &y, &opts)?,
                Equation::F => solve_eq_f(&x, &y, &opts)?,
            };
            save(&out, &sol.solution)?;
            if let (Some(path), Some(second)) = (out2, &sol.secondary) {
                save(&path, second)?;
            }
            Ok(Output::ok(residual_json(&sol)))
        }
        Command::Canonical { action } => match action {
            CanonicalAction::Kprime { summands } => {
                let list = read_summands(&summands)?;
                Ok(Output::ok(format!("{}\n", kprime_formula(&list))))
            }
            CanonicalAction::Build { summands, out } => {
                let list = read_summands(&summands)?;
                let m = build_direct_sum(&list)?;
                save(&out, &m)?;
                Ok(Output::ok(format!("{}\n", m.rows())))
            }
        },
    }
}

fn read_summands(path: &Path) -> Result<Vec<rankrange::CanonicalSummand<f64>>, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_summands(&text)?)
}

/// Runs one command line (`argv[0]` is the program name).
pub fn run<I, S>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    exit_code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let text = e.to_string();
                    let first = text
                        .lines()
                        .find(|l| !l.trim().is_empty())
                        .unwrap_or("invalid arguments")
                        .trim_start_matches("error: ");
                    CommandResult {
                        exit_code: 1,
                        stdout: String::new(),
                        stderr: format!("ERROR 1: {first}\n"),
                    }
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => CommandResult {
            exit_code: out.code,
            stdout: out.stdout,
            stderr: out.stderr,
        },
        Err(f) => CommandResult {
            exit_code: f.code,
            stdout: String::new(),
            stderr: format!("ERROR {}: {}\n", f.code, f.message.replace('\n', " ")),
        },
    }
}
