use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use staircase::constructions::{
    build_p, build_q, build_r, formula_st_q, formula_st_r, in_q_range, in_r_range,
};
use staircase::longest::st_profile;
use staircase::matrix::{random_matrix_with, Matrix};
use staircase::search::{exact_extremal, Statistic};
use staircase::validate_staircase;
use staircase::witness::{corner_identity_sides, sigma_witness, square_witness};
use staircase::Error;

use crate::range::Range;
use crate::table::Table;
use crate::{search_options, Cli, Failure, Output};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// st0 and st1 of the P construction against ceil(n/2) and N - 1.
    Obs2,
    /// Exhaustive minimum of st0 + st1 against ceil(n/2) + N - 1, plus
    /// optional random witness checks (--trials).
    Thm3,
    /// st of the Q construction against its formula.
    Claim4,
    /// Exhaustive minimum of st in the wide regime against the Q formula.
    Thm5,
    /// st of the R construction against its formula.
    Claim7,
    /// Exhaustive minimum of st in the middle regime at most the R formula.
    Cor8,
    /// Square witness length against ceil((10n - 7) / 12).
    Thm2,
    /// Weighted corner-staircase identity on every frame that builds it.
    Obs10,
    /// Exhaustive minimum of st over n x n matrices against n - 1.
    Conjecture,
}

impl Target {
    fn name(self) -> &'static str {
        match self {
            Target::Obs2 => "obs2",
            Target::Thm3 => "thm3",
            Target::Claim4 => "claim4",
            Target::Thm5 => "thm5",
            Target::Claim7 => "claim7",
            Target::Cor8 => "cor8",
            Target::Thm2 => "thm2",
            Target::Obs10 => "obs10",
            Target::Conjecture => "conjecture",
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub target: Target,
    /// Row counts to check, e.g. 3..12.
    #[arg(long)]
    pub n: Option<Range>,
    /// Column counts to check.
    #[arg(long = "cols", value_name = "RANGE")]
    pub cols: Option<Range>,
    /// Largest n*N enumerated by exhaustive targets.
    #[arg(long, default_value_t = 20)]
    pub max_cells: usize,
    /// Random trials (thm2, obs10, thm3).
    #[arg(long)]
    pub trials: Option<u64>,
    /// Enumerate every n x n matrix instead of sampling (thm2, obs10).
    #[arg(long)]
    pub exhaustive: bool,
}

const HEADERS: [&str; 7] = ["target", "n", "N", "case", "expected", "computed", "pass"];

struct Rows {
    target: Target,
    table: Table,
    failures: usize,
    min_computed: Option<usize>,
}

impl Rows {
    fn new(target: Target) -> Self {
        Rows { target, table: Table::new(&HEADERS), failures: 0, min_computed: None }
    }

    #[allow(clippy::too_many_arguments)]
    fn push(&mut self, n: usize, cols: usize, case: &str, expected: usize, computed: usize, pass: bool, trace: Option<Value>) {
        self.failures += usize::from(!pass);
        self.min_computed = Some(self.min_computed.map_or(computed, |m| m.min(computed)));
        self.table.push_traced(
            vec![
                json!(self.target.name()),
                json!(n),
                json!(cols),
                json!(case),
                json!(expected),
                json!(computed),
                json!(if pass { "pass" } else { "fail" }),
            ],
            trace,
        );
    }
}

/// Shapes `n <= N` with `n` and `N` in the given ranges.
fn shapes(ns: Range, cols: Range, max_cells: Option<usize>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in ns.iter().filter(|&n| n >= 1) {
        for c in cols.iter().filter(|&c| c >= n) {
            if max_cells.is_some_and(|m| n * c > m) {
                continue;
            }
            out.push((n, c));
        }
    }
    out
}

pub fn run(cli: &Cli, args: &VerifyArgs) -> Result<Output, Failure> {
    let target = args.target;
    let mut rows = Rows::new(target);
    let cells = args.max_cells;
    let exhaustive_ns = args.n.unwrap_or(Range::new(1, cells));
    let exhaustive_cols = args.cols.unwrap_or(Range::new(1, cells));
    let options = search_options(cli, false);
    let with_traces = cli.format == crate::Format::Json;

    match target {
        Target::Obs2 => {
            for (n, c) in shapes(args.n.unwrap_or(Range::new(1, 12)), args.cols.unwrap_or(Range::new(1, 30)), None) {
                let p = st_profile(&build_p(n, c)?);
                rows.push(n, c, "st0", n.div_ceil(2), p.st0, p.st0 == n.div_ceil(2), None);
                rows.push(n, c, "st1", c - 1, p.st1, p.st1 == c - 1, None);
            }
        }
        Target::Thm3 => {
            for (n, c) in shapes(exhaustive_ns, exhaustive_cols, Some(cells)) {
                let r = exact_extremal(n, c, Statistic::Sigma, &options)?;
                let expected = n.div_ceil(2) + c - 1;
                let trace = with_traces.then(|| json!({"minimizers_sample": r.minimizers_sample}));
                rows.push(n, c, "exhaustive", expected, r.exact_value, r.exact_value == expected, trace);
            }
            let trials = args.trials.unwrap_or(0);
            if trials > 0 {
                let ns = args.n.unwrap_or(Range::new(1, 40));
                let cs = args.cols.unwrap_or(Range::new(1, 60));
                if ns.lo > ns.hi || cs.lo > cs.hi || ns.hi == 0 || cs.hi == 0 {
                    return Err(Failure::usage("empty shape range for random trials"));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                for _ in 0..trials {
                    let n = rng.random_range(ns.lo.max(1)..=ns.hi);
                    let c = rng.random_range(cs.lo.max(1)..=cs.hi);
                    let m = random_matrix_with(&mut rng, n, c, 0.5)?;
                    let w = sigma_witness(&m);
                    let expected = n.min(c).div_ceil(2) + n.max(c) - 1;
                    let valid = validate_staircase(&m, &w.majority).is_ok()
                        && validate_staircase(&m, &w.minority).is_ok()
                        && w.majority.value != w.minority.value;
                    let trace = with_traces.then(|| serde_json::to_value(&w).expect("json"));
                    rows.push(n, c, "witness", expected, w.total(), valid && w.total() >= expected, trace);
                }
            }
        }
        Target::Claim4 | Target::Claim7 => {
            let ns = args.n.unwrap_or(Range::new(1, 12));
            let cs = args.cols.unwrap_or(Range::new(1, 100));
            for (n, c) in shapes(ns, cs, None) {
                let (m, expected) = if target == Target::Claim4 {
                    if !in_q_range(n, c) {
                        continue;
                    }
                    (build_q(n, c)?, formula_st_q(n, c)?)
                } else {
                    if !in_r_range(n, c) {
                        continue;
                    }
                    (build_r(n, c)?, formula_st_r(n, c)?)
                };
                let st = st_profile(&m).st;
                rows.push(n, c, "construction", expected, st, st == expected, None);
            }
        }
        Target::Thm5 | Target::Cor8 => {
            for (n, c) in shapes(exhaustive_ns, exhaustive_cols, Some(cells)) {
                let expected = if target == Target::Thm5 {
                    if !in_q_range(n, c) {
                        continue;
                    }
                    formula_st_q(n, c)?
                } else {
                    if !in_r_range(n, c) {
                        continue;
                    }
                    formula_st_r(n, c)?
                };
                let r = exact_extremal(n, c, Statistic::St, &options)?;
                let (case, pass) = if target == Target::Thm5 {
                    ("exhaustive-equal", r.exact_value == expected)
                } else {
                    ("exhaustive-at-most", r.exact_value <= expected)
                };
                rows.push(n, c, case, expected, r.exact_value, pass, None);
            }
        }
        Target::Thm2 | Target::Obs10 => {
            let ns = args.n.unwrap_or(Range::new(6, 6));
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            for n in ns.iter().filter(|&n| n >= 1) {
                let corpus: Box<dyn Iterator<Item = Result<Matrix, Error>>> = if args.exhaustive {
                    let limit = cli.budget_cells.min(62);
                    if n * n > limit {
                        return Err(Error::TooLarge { cells: n * n, limit }.into());
                    }
                    Box::new((0..1u64 << (n * n)).map(move |code| Matrix::from_code(n, n, code)))
                } else {
                    let trials = args.trials.unwrap_or(1000);
                    let rng = &mut rng;
                    Box::new((0..trials).map(move |_| random_matrix_with(rng, n, n, 0.5)).collect::<Vec<_>>().into_iter())
                };
                for m in corpus {
                    let m = m?;
                    if target == Target::Thm2 {
                        check_square_witness(&m, &mut rows, with_traces)?;
                    } else {
                        check_identity(&m, &mut rows)?;
                    }
                }
            }
        }
        Target::Conjecture => {
            let verbose = search_options(cli, true);
            for n in args.n.unwrap_or(Range::new(2, 4)).iter().filter(|&n| n >= 2) {
                let r = exact_extremal(n, n, Statistic::St, &verbose)?;
                let trace = with_traces.then(|| json!({"minimizers_sample": r.minimizers_sample}));
                rows.push(n, n, "exhaustive-equal", n - 1, r.exact_value, r.exact_value == n - 1, trace);
            }
        }
    }

    eprintln!(
        "{}: {} rows, {} failed{}",
        target.name(),
        rows.table.len(),
        rows.failures,
        rows.min_computed.map_or(String::new(), |m| format!(", min computed {m}"))
    );
    Ok(Output { stdout: rows.table.render(cli.format), failed: rows.failures > 0 })
}

fn check_square_witness(m: &Matrix, rows: &mut Rows, with_traces: bool) -> Result<(), Failure> {
    let n = m.rows();
    let (s, trace) = square_witness(m)?;
    let valid = validate_staircase(m, &s).is_ok() && s.turns() <= 3;
    let case = serde_json::to_value(trace.case).expect("json");
    let case = case.as_str().unwrap_or("?").to_string();
    let json_trace = with_traces.then(|| {
        json!({"matrix": m.row_strings(), "witness": s, "analysis": trace})
    });
    rows.push(n, n, &case, trace.bound, s.len(), valid && s.len() >= trace.bound, json_trace);
    Ok(())
}

fn check_identity(m: &Matrix, rows: &mut Rows) -> Result<(), Failure> {
    let n = m.rows();
    let (_, trace) = square_witness(m)?;
    for (label, frame) in [("first-frame", Some(&trace.first)), ("second-frame", trace.second.as_ref())] {
        let Some(frame) = frame else { continue };
        match corner_identity_sides(m, frame) {
            Ok((weighted, sides)) => rows.push(n, n, label, sides, weighted, weighted == sides, None),
            Err(Error::BranchNotReached) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}
