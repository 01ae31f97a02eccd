//! `staircase` command-line tool.
//!
//! Standard output carries only the machine-readable result; progress and
//! diagnostics go to standard error. Exit codes: 0 success, 1 verification
//! failure, 2 usage or parse error, 3 budget exceeded.

mod range;
mod sweep;
mod table;
mod verify;

use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use staircase::constructions::{build, Family};
use staircase::longest::{longest_staircase, longest_value_staircase, st_profile, TurnBudget};
use staircase::matrix::{parse_matrix_any, serialize_matrix, Matrix, MatrixFormat};
use staircase::search::{exact_extremal, Progress, SearchOptions, SearchReport, Statistic};
use staircase::Error;

use crate::range::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "staircase", version, about = "Longest homogeneous staircases in 0/1 matrices")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: Format,
    /// Seed for every randomized step (ChaCha8Rng).
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads for exhaustive search (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Largest n*N accepted by exhaustive search.
    #[arg(long, global = true, default_value_t = staircase::search::DEFAULT_BUDGET_CELLS)]
    budget_cells: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Longest staircases of a matrix read from a file ("-" for stdin).
    Compute {
        /// Only report the longest staircase of this value.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        value: Option<u8>,
        /// Allow at most this many turning points.
        #[arg(long)]
        max_turns: Option<usize>,
        /// Also print a longest staircase as JSON.
        #[arg(long)]
        witness: bool,
        path: String,
    },
    /// Print one of the extremal constructions P, Q or R.
    Construct {
        family: Family,
        n: usize,
        #[arg(value_name = "N")]
        cols: usize,
    },
    /// Exact minimum of a statistic over all n x N matrices.
    Search {
        /// st, sigma or st-turns-K.
        statistic: Statistic,
        n: usize,
        #[arg(value_name = "N")]
        cols: usize,
        /// Shorthand for statistic st-turns-K.
        #[arg(long)]
        max_turns: Option<usize>,
    },
    /// Check a closed-form result against computation; exits 1 on any failure.
    Verify(verify::VerifyArgs),
    /// Tabulate bounds or construction values over a grid of shapes.
    Sweep {
        quantity: sweep::Quantity,
        /// Row counts, e.g. 2..6.
        n: Range,
        /// Column counts, e.g. 2..16.
        #[arg(value_name = "N")]
        cols: Range,
    },
}

/// Failure of a subcommand, carrying its exit code.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLarge { .. } => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

/// What a successful subcommand produced.
pub struct Output {
    pub stdout: String,
    /// Exit code 1 when set (verification failures).
    pub failed: bool,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

pub fn search_options(cli: &Cli, progress: bool) -> SearchOptions {
    let mut options =
        SearchOptions { threads: cli.threads, budget_cells: cli.budget_cells, ..SearchOptions::default() };
    if progress {
        options.progress = Some(Arc::new(|p: &Progress| {
            eprintln!(
                "progress: {}/{} matrices, {:.0} matrices/s, best {}",
                p.evaluated,
                p.total,
                p.rate(),
                p.best
            );
        }));
    }
    options
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Compute { value, max_turns, witness, path } => {
            let m = read_matrix(path)?;
            compute(cli.format, &m, *value, *max_turns, *witness).map(Output::ok)
        }
        Command::Construct { family, n, cols } => {
            let m = build(*family, *n, *cols)?;
            Ok(Output::ok(render_matrix(&m, cli.format)))
        }
        Command::Search { statistic, n, cols, max_turns } => {
            let statistic = match max_turns {
                Some(k) => Statistic::StTurns(*k),
                None => *statistic,
            };
            let (n, cols) = ((*n).min(*cols), (*n).max(*cols));
            let report = exact_extremal(n, cols, statistic, &search_options(cli, true))?;
            eprintln!(
                "searched {} matrices in {:.3}s ({:.0} matrices/s) on {} threads",
                report.matrices_enumerated,
                report.wall_time.as_secs_f64(),
                report.throughput(),
                report.thread_count
            );
            Ok(Output::ok(render_report(&report, cli.format)))
        }
        Command::Verify(args) => verify::run(cli, args),
        Command::Sweep { quantity, n, cols } => Ok(Output::ok(sweep::run(*quantity, *n, *cols).render(cli.format))),
    }
}

fn read_matrix(path: &str) -> Result<Matrix, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("reading {path}: {e}")))?
    };
    Ok(parse_matrix_any(&text)?)
}

fn compute(
    format: Format,
    m: &Matrix,
    value: Option<u8>,
    max_turns: Option<usize>,
    witness: bool,
) -> Result<String, Failure> {
    let budget = max_turns.map_or(TurnBudget::Unbounded, TurnBudget::Bounded);
    let turns_json = max_turns.map_or(serde_json::Value::Null, |k| json!(k));
    let mut out = String::new();
    match value {
        Some(v) => {
            let (len, w) = longest_value_staircase(m, v, budget);
            match format {
                Format::Plain => {
                    out.push_str(&format!("length={len}\n"));
                    if witness {
                        out.push_str(&serde_json::to_string(&w).expect("json"));
                        out.push('\n');
                    }
                }
                Format::Csv => out.push_str(&format!("value,max_turns,length\n{v},{},{len}\n", csv_opt(max_turns))),
                Format::Json => {
                    let mut obj = json!({"value": v, "max_turns": turns_json, "length": len});
                    if witness {
                        obj["witness"] = serde_json::to_value(&w).expect("json");
                    }
                    out = obj.to_string() + "\n";
                }
            }
        }
        None => {
            let p = if max_turns.is_some() {
                use staircase::longest::{longest_value_length, StProfile};
                StProfile::from_parts(longest_value_length(m, 0, budget), longest_value_length(m, 1, budget))
            } else {
                st_profile(m)
            };
            let w = witness.then(|| longest_staircase(m, budget));
            match format {
                Format::Plain => {
                    out.push_str(&format!("st0={} st1={} st={} sigma={}\n", p.st0, p.st1, p.st, p.sigma));
                    if let Some(w) = &w {
                        out.push_str(&serde_json::to_string(w).expect("json"));
                        out.push('\n');
                    }
                }
                Format::Csv => out.push_str(&format!(
                    "max_turns,st0,st1,st,sigma\n{},{},{},{},{}\n",
                    csv_opt(max_turns),
                    p.st0,
                    p.st1,
                    p.st,
                    p.sigma
                )),
                Format::Json => {
                    let mut obj = json!({
                        "max_turns": turns_json, "st0": p.st0, "st1": p.st1, "st": p.st, "sigma": p.sigma
                    });
                    if let Some(w) = &w {
                        obj["witness"] = serde_json::to_value(w).expect("json");
                    }
                    out = obj.to_string() + "\n";
                }
            }
        }
    }
    Ok(out)
}

fn csv_opt(k: Option<usize>) -> String {
    k.map_or_else(String::new, |k| k.to_string())
}

fn render_matrix(m: &Matrix, format: Format) -> String {
    match format {
        Format::Plain => serialize_matrix(m, MatrixFormat::Plain) + "\n",
        Format::Json => serialize_matrix(m, MatrixFormat::Json) + "\n",
        Format::Csv => {
            let mut s = String::new();
            for r in 0..m.rows() {
                let cells: Vec<String> = m.row_cells(r).map(|b| b.to_string()).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
    }
}

/// Report without wall time, so repeated runs print identical bytes.
fn render_report(r: &SearchReport, format: Format) -> String {
    let sample: Vec<Vec<String>> = r.minimizers_sample.iter().map(|m| m.row_strings()).collect();
    match format {
        Format::Json => {
            json!({
                "n": r.n,
                "N": r.cols,
                "statistic": r.statistic,
                "exact_value": r.exact_value,
                "minimizers_sample": r.minimizers_sample,
                "matrices_enumerated": r.matrices_enumerated,
                "symmetry_factor": r.symmetry_factor,
                "thread_count": r.thread_count,
            })
            .to_string()
                + "\n"
        }
        Format::Csv => format!(
            "n,N,statistic,exact_value,matrices_enumerated,symmetry_factor,thread_count\n{},{},{},{},{},{},{}\n",
            r.n,
            r.cols,
            r.statistic.name(),
            r.exact_value,
            r.matrices_enumerated,
            r.symmetry_factor,
            r.thread_count
        ),
        Format::Plain => {
            let mut s = format!(
                "statistic={} n={} N={} exact={} enumerated={} symmetry_factor={}\n",
                r.statistic.name(),
                r.n,
                r.cols,
                r.exact_value,
                r.matrices_enumerated,
                r.symmetry_factor
            );
            for (i, rows) in sample.iter().enumerate() {
                s.push_str(&format!("minimizer {}: {}\n", i + 1, rows.join("/")));
            }
            s
        }
    }
}
