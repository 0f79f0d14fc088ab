//! Command-line front end for the fgcap library: exact mean entanglement
//! capacities, Monte Carlo and quadrature cross-checks, sweep data for the
//! capacity-per-mode convergence curves, and the identity verification
//! suite, all emitted as JSON or CSV.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (inadmissible
//! parameters), 3 numerical failure (tolerance not met, or identity
//! verification found failures).

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fgcap::{
    asymptotic_limit, estimate_mean_capacity, fuzz_identities, mean_capacity, quad_mean_capacity,
    CapacityResult, EnsembleSpec, Error,
};

/// Exact, sampled, and integrated average entanglement capacities of random
/// fermionic Gaussian states.
#[derive(Debug, Parser)]
#[command(name = "fgcap", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the closed-form mean capacity of one ensemble.
    Exact {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Estimate the mean capacity by Monte Carlo sampling.
    Mc {
        #[command(flatten)]
        spec: SpecArgs,
        /// Number of random states to draw.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// RNG seed; the same seed reproduces the estimate bit for bit.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Evaluate the mean capacity by quadrature of the correlation kernel.
    Quad {
        #[command(flatten)]
        spec: SpecArgs,
        /// Maximum tanh-sinh refinement level.
        #[arg(long, default_value_t = 12)]
        levels: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tabulate capacity per mode against subsystem size at a fixed
    /// mode-number difference, with the distance to the asymptotic limit.
    Sweep {
        /// Which ensemble family to sweep.
        #[arg(long, value_enum)]
        ensemble: EnsembleKind,
        /// Mode-number difference n - m (even for the fixed ensemble, whose
        /// sweep uses the balanced filling p = (m + n) / 2).
        #[arg(long, default_value_t = 0)]
        diff: u32,
        /// Truncate the m-grid at this value.
        #[arg(long, default_value_t = 256)]
        m_max: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fuzz the identity catalog and report per-identity residuals.
    Verify {
        /// Random parameter draws per identity.
        #[arg(long, default_value_t = 100)]
        draws: u32,
        /// RNG seed for the parameter draws.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnsembleKind {
    /// Subsystem of a state with a fixed particle number.
    Fixed,
    /// Subsystem of a state with arbitrary particle number.
    Arbitrary,
}

#[derive(Debug, Args)]
struct SpecArgs {
    /// Which ensemble the subsystem is drawn from.
    #[arg(long, value_enum)]
    ensemble: EnsembleKind,
    /// Subsystem mode count.
    #[arg(long)]
    m: u32,
    /// Environment mode count (total modes are m + n).
    #[arg(long)]
    n: u32,
    /// Particle count; required for the fixed ensemble, meaningless for
    /// the arbitrary one.
    #[arg(long)]
    p: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output encoding; defaults to json (csv for sweep).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A fully validated run: everything checked before any computation.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) => 2,
            Error::Numerical(_) | Error::Tolerance { .. } => 3,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are successful terminations, not usage errors
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Exact { spec, out } => {
            let result = mean_capacity(&spec.to_spec()?)?;
            emit(&out, Format::Json, &ExactReport::from(&result))
        }
        Command::Mc {
            spec,
            samples,
            seed,
            out,
        } => {
            let est = estimate_mean_capacity(&spec.to_spec()?, samples, seed)?;
            emit(
                &out,
                Format::Json,
                &McReport {
                    mean: est.mean,
                    stderr: est.stderr,
                    n_samples: est.n_samples,
                    seed: est.seed,
                },
            )
        }
        Command::Quad { spec, levels, out } => {
            let r = quad_mean_capacity(&spec.to_spec()?, levels)?;
            emit(
                &out,
                Format::Json,
                &QuadReport {
                    value: r.value,
                    est_error: r.est_error,
                    n_nodes: r.n_nodes,
                },
            )
        }
        Command::Sweep {
            ensemble,
            diff,
            m_max,
            out,
        } => {
            let rows = sweep_rows(ensemble, diff, m_max)?;
            emit(&out, Format::Csv, &rows)
        }
        Command::Verify { draws, seed, out } => {
            let report = fuzz_identities(draws, seed)?;
            let rows: Vec<VerifyRow> = report
                .entries
                .iter()
                .map(|e| VerifyRow {
                    id: e.id.name(),
                    checks: e.n_checks,
                    errors: e.n_errors,
                    max_residual: e.max_residual,
                    tolerance: e.tolerance,
                    passed: e.passed,
                })
                .collect();
            let all_passed = report.all_passed();
            emit(
                &out,
                Format::Json,
                &VerifyReport {
                    n_draws: report.n_draws,
                    seed: report.seed,
                    all_passed,
                    identities: rows,
                },
            )?;
            if all_passed {
                Ok(())
            } else {
                let failed: Vec<&str> = report
                    .entries
                    .iter()
                    .filter(|e| !e.passed)
                    .map(|e| e.id.name())
                    .collect();
                Err(Failure {
                    code: 3,
                    message: format!(
                        "identity verification failed for: {}",
                        failed.join(", ")
                    ),
                })
            }
        }
    }
}

impl SpecArgs {
    fn to_spec(&self) -> Result<EnsembleSpec, Failure> {
        match (self.ensemble, self.p) {
            (EnsembleKind::Fixed, Some(p)) => Ok(EnsembleSpec::fixed(self.m, self.n, p)?),
            (EnsembleKind::Fixed, None) => Err(Failure::usage(
                "the fixed ensemble needs a particle count: pass --p",
            )),
            (EnsembleKind::Arbitrary, None) => Ok(EnsembleSpec::arbitrary(self.m, self.n)?),
            (EnsembleKind::Arbitrary, Some(_)) => Err(Failure::usage(
                "--p has no meaning for the arbitrary ensemble; drop it",
            )),
        }
    }
}

// --- reports -----------------------------------------------------------------

/// Closed-form result: the f64 value plus the exact coefficients of
/// 1, gamma, and pi^2 as rational strings ("p/q", or "p" for integers).
#[derive(Serialize)]
struct ExactReport {
    float: f64,
    q0: String,
    q_gamma: String,
    q_pi2: String,
}

impl From<&CapacityResult> for ExactReport {
    fn from(r: &CapacityResult) -> Self {
        Self {
            float: r.float_value,
            q0: r.exact.q0.to_string(),
            q_gamma: r.exact.q_gamma.to_string(),
            q_pi2: r.exact.q_pi2.to_string(),
        }
    }
}

#[derive(Serialize)]
struct McReport {
    mean: f64,
    stderr: f64,
    n_samples: u64,
    seed: u64,
}

#[derive(Serialize)]
struct QuadReport {
    value: f64,
    est_error: f64,
    n_nodes: usize,
}

#[derive(Serialize)]
struct SweepRow {
    m: u32,
    n: u32,
    p: Option<u32>,
    exact: f64,
    per_dim: f64,
    limit_gap: f64,
}

#[derive(Serialize)]
struct VerifyRow {
    id: &'static str,
    checks: u32,
    errors: u32,
    max_residual: f64,
    tolerance: f64,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    n_draws: u32,
    seed: u64,
    all_passed: bool,
    identities: Vec<VerifyRow>,
}

/// Subsystem sizes where the convergence curves bend, then doubling steps.
const SWEEP_GRID: [u32; 24] = [
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 24, 32, 48, 64, 96, 128, 192, 256,
];

fn sweep_rows(ensemble: EnsembleKind, diff: u32, m_max: u32) -> Result<Vec<SweepRow>, Failure> {
    if ensemble == EnsembleKind::Fixed && !diff.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "fixed-ensemble sweeps use the balanced filling p = (m + n) / 2, \
             which needs an even mode-number difference; got n - m = {diff}"
        ))
        .into());
    }
    if m_max < SWEEP_GRID[0] {
        return Err(Failure::usage(format!(
            "--m-max {m_max} leaves the sweep grid empty; the grid starts at 1"
        )));
    }
    let limit = asymptotic_limit().to_f64();
    let mut rows = Vec::new();
    for &m in SWEEP_GRID.iter().take_while(|&&m| m <= m_max) {
        let n = m + diff;
        let (spec, p) = match ensemble {
            EnsembleKind::Fixed => {
                let p = (m + n) / 2;
                (EnsembleSpec::fixed(m, n, p)?, Some(p))
            }
            EnsembleKind::Arbitrary => (EnsembleSpec::arbitrary(m, n)?, None),
        };
        let exact = mean_capacity(&spec)?.float_value;
        let per_dim = exact / f64::from(m);
        rows.push(SweepRow {
            m,
            n,
            p,
            exact,
            per_dim,
            limit_gap: per_dim - limit,
        });
    }
    Ok(rows)
}

// --- emission ----------------------------------------------------------------

/// Anything the CLI can print: serde for the JSON side, hand-rolled rows
/// for the CSV side (CSV has no nesting, so each report flattens itself).
trait Report: Serialize {
    fn csv(&self) -> String;
}

fn csv_f64(v: f64) -> String {
    // same shortest round-trip encoding as the JSON side (non-finite
    // becomes "null", which the emission guard rejects)
    serde_json::to_string(&v).unwrap_or_else(|_| "null".into())
}

impl Report for ExactReport {
    fn csv(&self) -> String {
        format!(
            "float,q0,q_gamma,q_pi2\n{},{},{},{}\n",
            csv_f64(self.float),
            self.q0,
            self.q_gamma,
            self.q_pi2
        )
    }
}

impl Report for McReport {
    fn csv(&self) -> String {
        format!(
            "mean,stderr,n_samples,seed\n{},{},{},{}\n",
            csv_f64(self.mean),
            csv_f64(self.stderr),
            self.n_samples,
            self.seed
        )
    }
}

impl Report for QuadReport {
    fn csv(&self) -> String {
        format!(
            "value,est_error,n_nodes\n{},{},{}\n",
            csv_f64(self.value),
            csv_f64(self.est_error),
            self.n_nodes
        )
    }
}

impl Report for Vec<SweepRow> {
    fn csv(&self) -> String {
        let mut out = String::from("m,n,p,exact,per_dim,limit_gap\n");
        for r in self {
            let p = r.p.map_or(String::new(), |p| p.to_string());
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.m,
                r.n,
                p,
                csv_f64(r.exact),
                csv_f64(r.per_dim),
                csv_f64(r.limit_gap)
            );
        }
        out
    }
}

impl Report for VerifyReport {
    fn csv(&self) -> String {
        let mut out = String::from("id,checks,errors,max_residual,tolerance,passed\n");
        for r in &self.identities {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.id,
                r.checks,
                r.errors,
                csv_f64(r.max_residual),
                csv_f64(r.tolerance),
                r.passed
            );
        }
        out
    }
}

fn emit<R: Report>(out: &OutputArgs, default: Format, report: &R) -> Result<(), Failure> {
    let text = match out.format.unwrap_or(default) {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| Failure {
                code: 3,
                message: format!("report serialization failed: {e}"),
            })?;
            s.push('\n');
            s
        }
        Format::Csv => report.csv(),
    };
    // every emitted float must be a real number; serde_json would silently
    // write null for NaN/Inf and CSV would write the literal
    if text.contains("NaN") || text.contains("inf") || text.contains("null") {
        return Err(Failure {
            code: 3,
            message: "report contains a non-finite value".into(),
        });
    }
    match &out.output {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(io_failure)?;
            stdout.flush().map_err(io_failure)
        }
        Some(path) => std::fs::write(path, text.as_bytes()).map_err(io_failure),
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::usage(format!("cannot write report: {e}"))
}
