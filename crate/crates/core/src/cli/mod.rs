//! The `lensmatch` command line tool.
//!
//! Exit codes: 0 success, 1 usage / I-O / parse failure, 2 mathematical
//! precondition failure.

mod files;
pub mod selftest;

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use crate::approximation::gap_sequence;
use crate::conformal::{lens_boundary_distance, lens_map, LensParams};
use crate::hinf_norm::{hinf_norm, DiagonalController, ProblemInstance};
use crate::interpolation::{solve_gamma, SolveResult, DEFAULT_TOL};
use crate::Error;

pub use files::{ControllerFile, EntrySpec, InstanceFile, LoadError, RationalSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lensmatch", version, about = "Structured H-infinity model matching via the lens conformal map")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the optimal cost, the inner function p and the controller.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Write the JSON result here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the matching cost of a diagonal controller.
    Verify {
        instance: PathBuf,
        /// Controller JSON file, or `optimal`. Defaults to the zero controller.
        #[arg(long)]
        controller: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Costs of normalized Taylor sections of the optimal closed loop.
    Gap {
        instance: PathBuf,
        #[arg(long, default_value = "1,3,5,9,15,25")]
        orders: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the lens map on the unit circle.
    Map {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long, default_value_t = 720)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the embedded invariant suite.
    Selftest {
        #[arg(long, hide = true, default_value_t = 0.0, allow_negative_numbers = true)]
        perturb: f64,
    },
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_precondition() { EXIT_MATH } else { EXIT_USAGE };
        Failure(code, e.to_string())
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Parse(msg) => Failure(EXIT_USAGE, msg),
            LoadError::Math(e) => e.into(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

type CmdResult = std::result::Result<(), Failure>;

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// CSV cell: 12 significant digits, exponent form outside `[1e-4, 1e15)`.
pub fn fmt12(x: f64) -> String {
    let y = sig12(x);
    let m = y.abs();
    if y == 0.0 {
        return "0".into();
    }
    if !y.is_finite() || (1e-4..1e15).contains(&m) {
        format!("{y}")
    } else {
        format!("{y:e}")
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Reads and validates an instance file.
pub fn load_instance(path: &Path) -> std::result::Result<ProblemInstance, String> {
    load(path).map_err(|f| f.1)
}

fn load(path: &Path) -> std::result::Result<ProblemInstance, Failure> {
    let file = InstanceFile::parse(&read(path)?).map_err(usage)?;
    Ok(file.to_instance()?)
}

fn solve(inst: &ProblemInstance, tol: f64) -> std::result::Result<SolveResult, Failure> {
    Ok(solve_gamma(inst, tol)?)
}

fn cmd_solve(instance: &Path, tol: f64, out: Option<&Path>) -> CmdResult {
    let inst = load(instance)?;
    let res = solve(&inst, tol)?;
    let p = res.p.as_ref().map(|p| {
        let s = RationalSpec::from_rational(p);
        json!({
            "num": s.num.iter().copied().map(sig12).collect::<Vec<_>>(),
            "den": s.den.iter().copied().map(sig12).collect::<Vec<_>>(),
        })
    });
    let body = json!({
        "gamma_star": sig12(res.gamma_star),
        "p": p,
        "feasibility_margin": sig12(res.margin),
        "supported": res.supported(),
    });
    let text = serde_json::to_string_pretty(&body).expect("json") + "\n";
    let summary = format!(
        "gamma* = {} (bracket width {:.1e}), p {}",
        sig12(res.gamma_star),
        res.bracket.hi - res.bracket.lo,
        match &res.p {
            Some(p) => format!("= {p}"),
            None => "not recovered (unsupported constraint count)".into(),
        }
    );
    match out {
        Some(_) => {
            emit(out, &text)?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn cmd_verify(instance: &Path, controller: Option<&str>, tol: f64) -> CmdResult {
    if tol.is_nan() || tol <= 0.0 {
        return Err(usage(format!("--tol must be positive, got {tol}")));
    }
    let inst = load(instance)?;
    let file = match controller {
        None => None,
        Some("optimal") => {
            Some(ControllerFile { s1: EntrySpec::Keyword("optimal".into()), s2: EntrySpec::Keyword("optimal".into()) })
        }
        Some(path) => Some(ControllerFile::parse(&read(Path::new(path))?).map_err(usage)?),
    };
    let q = match file {
        None => DiagonalController::zero(),
        Some(file) => {
            let optimal = if file.needs_optimal() {
                let res = solve(&inst, DEFAULT_TOL)?;
                let s = res.s_star.ok_or_else(|| {
                    Failure(EXIT_MATH, "unsupported structure: optimal controller not constructible".into())
                })?;
                Some(s)
            } else {
                None
            };
            file.to_controller(optimal.as_ref())?
        }
    };
    let est = hinf_norm(&inst, &q, tol)?;
    let body = json!({
        "norm": sig12(est.value),
        "grid_size": est.grid_size,
        "converged": est.converged,
    });
    println!("{}", serde_json::to_string_pretty(&body).expect("json"));
    Ok(())
}

fn parse_orders(spec: &str) -> std::result::Result<Vec<usize>, Failure> {
    let orders = spec
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| usage(format!("--orders: cannot parse `{s}`: {e}"))))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if orders.is_empty() || orders.contains(&0) {
        return Err(usage("--orders: expected a comma list of positive integers"));
    }
    Ok(orders)
}

fn cmd_gap(instance: &Path, orders: &str, out: Option<&Path>) -> CmdResult {
    let orders = parse_orders(orders)?;
    let inst = load(instance)?;
    let res = solve(&inst, DEFAULT_TOL)?;
    let points = gap_sequence(&inst, &res, &orders)?;
    let mut csv = String::from("order,norm,excess\n");
    for p in &points {
        writeln!(csv, "{},{},{}", p.order, fmt12(p.norm_value), fmt12(p.excess)).expect("string write");
    }
    emit(out, &csv)
}

fn cmd_map(gamma: f64, grid: usize, out: Option<&Path>) -> CmdResult {
    let params = LensParams::new(gamma).map_err(|e| usage(e.to_string()))?;
    if grid == 0 {
        return Err(usage("--grid must be positive"));
    }
    let mut csv = String::from("t,re_w,im_w,re_F,im_F,dist_lens_boundary\n");
    for m in 0..grid {
        let t = 2.0 * PI * m as f64 / grid as f64;
        let w = Complex64::from_polar(1.0, t);
        let f = lens_map(&params, w)?;
        let d = lens_boundary_distance(&params, f);
        writeln!(csv, "{},{},{},{},{},{}", fmt12(t), fmt12(w.re), fmt12(w.im), fmt12(f.re), fmt12(f.im), fmt12(d))
            .expect("string write");
    }
    emit(out, &csv)
}

fn cmd_selftest(perturb: f64) -> CmdResult {
    let results = selftest::run(perturb);
    let failed = results.iter().filter(|r| !r.passed).count();
    for r in &results {
        println!("{} {} ({})", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
    }
    println!("{} of {} groups passed", results.len() - failed, results.len());
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure(EXIT_MATH, format!("{failed} self-test group(s) failed")))
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Solve { instance, tol, out } => cmd_solve(instance, *tol, out.as_deref()),
        Command::Verify { instance, controller, tol } => cmd_verify(instance, controller.as_deref(), *tol),
        Command::Gap { instance, orders, out } => cmd_gap(instance, orders, out.as_deref()),
        Command::Map { gamma, grid, out } => cmd_map(*gamma, *grid, out.as_deref()),
        Command::Selftest { perturb } => cmd_selftest(*perturb),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(std::f64::consts::SQRT_2).to_string(), "1.41421356237");
        assert_eq!(sig12(1.5), 1.5);
        assert_eq!(sig12(0.0), 0.0);
        assert_eq!(sig12(-1.234567890123456e-20), -1.23456789012e-20);
        assert_eq!(fmt12(3.25176795283e-17), "3.25176795283e-17");
        assert_eq!(fmt12(0.0857864376143), "0.0857864376143");
    }

    #[test]
    fn orders_parse() {
        assert_eq!(parse_orders("1, 3,5").unwrap(), vec![1, 3, 5]);
        assert!(parse_orders("1,x").is_err());
        assert!(parse_orders("0").is_err());
    }

    #[test]
    fn selftest_perturbation_fails() {
        assert!(selftest::run(0.0).iter().all(|r| r.passed));
        assert!(selftest::run(1e-3).iter().any(|r| !r.passed));
    }
}
