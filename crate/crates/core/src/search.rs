//! Exhaustive extremal search over all `n × N` 0/1 matrices.
//!
//! Matrices are encoded row-major in a `u64` (bit `row * N + col`). The
//! first row selects the work partition; partitions run on a rayon pool and
//! merge through an order-independent reduction, so the result does not
//! depend on the thread count or scheduling.
//!
//! Every statistic searched here is invariant under complementing the
//! matrix, so only codes with cell `(1,1) = 0` are evaluated.

use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::longest::{longest_value_length, TurnBudget};
use crate::matrix::{random_matrix_with, Matrix, RNG_NAME};

/// Default limit on `n · N` for exhaustive runs.
pub const DEFAULT_BUDGET_CELLS: usize = 30;

/// Hard limit imposed by the `u64` encoding.
const MAX_CODE_CELLS: usize = 62;

const SAMPLE_SIZE: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// `max(st0, st1)`.
    St,
    /// `st0 + st1`.
    Sigma,
    /// Longest homogeneous staircase with at most `k` turns.
    StTurns(usize),
}

impl Statistic {
    pub fn evaluate(self, m: &Matrix) -> usize {
        match self {
            Statistic::St => crate::longest::st_profile(m).st,
            Statistic::Sigma => crate::longest::st_profile(m).sigma,
            Statistic::StTurns(k) => {
                let b = TurnBudget::Bounded(k);
                longest_value_length(m, 0, b).max(longest_value_length(m, 1, b))
            }
        }
    }

    pub fn name(self) -> String {
        match self {
            Statistic::St => "st".into(),
            Statistic::Sigma => "sigma".into(),
            Statistic::StTurns(k) => format!("st-turns-{k}"),
        }
    }
}

impl std::str::FromStr for Statistic {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "st" => Ok(Statistic::St),
            "sigma" => Ok(Statistic::Sigma),
            other => other
                .strip_prefix("st-turns-")
                .and_then(|k| k.parse().ok())
                .map(Statistic::StTurns)
                .ok_or_else(|| format!("unknown statistic {other:?}, expected st, sigma or st-turns-K")),
        }
    }
}

impl Serialize for Statistic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// Snapshot passed to progress callbacks.
#[derive(Clone, Copy, Debug)]
pub struct Progress {
    pub evaluated: u64,
    pub total: u64,
    pub best: usize,
    pub elapsed: Duration,
}

impl Progress {
    pub fn rate(&self) -> f64 {
        self.evaluated as f64 / self.elapsed.as_secs_f64().max(1e-9)
    }
}

pub type ProgressFn = Arc<dyn Fn(&Progress) + Send + Sync>;

#[derive(Clone)]
pub struct SearchOptions {
    /// Worker threads; 0 means rayon's default.
    pub threads: usize,
    pub budget_cells: usize,
    /// Called roughly every `progress_every` evaluations.
    pub progress: Option<ProgressFn>,
    pub progress_every: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { threads: 0, budget_cells: DEFAULT_BUDGET_CELLS, progress: None, progress_every: 1 << 22 }
    }
}

impl std::fmt::Debug for SearchOptions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SearchOptions")
            .field("threads", &self.threads)
            .field("budget_cells", &self.budget_cells)
            .field("progress", &self.progress.is_some())
            .finish()
    }
}

fn duration_secs<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub n: usize,
    #[serde(rename = "N")]
    pub cols: usize,
    pub statistic: Statistic,
    pub exact_value: usize,
    /// Up to ten minimizers with cell (1,1) = 0, smallest codes first.
    pub minimizers_sample: Vec<Matrix>,
    /// Matrices visited, including those cut short by pruning.
    pub matrices_enumerated: u64,
    /// Orbit size of the symmetry used to skip matrices (complement).
    pub symmetry_factor: u64,
    #[serde(rename = "wall_time_s", serialize_with = "duration_secs")]
    pub wall_time: Duration,
    pub thread_count: usize,
}

impl SearchReport {
    pub fn throughput(&self) -> f64 {
        self.matrices_enumerated as f64 / self.wall_time.as_secs_f64().max(1e-9)
    }
}

/// Longest staircases of a code-encoded matrix, computed on the stack.
#[derive(Clone, Copy)]
struct Grid {
    rows: usize,
    cols: usize,
}

impl Grid {
    /// `max(st0, st1)` if it is below `cap`, otherwise some value `>= cap`.
    #[inline]
    fn st_capped(self, code: u64, cap: u32) -> u32 {
        let mut col_best = [[0u8; 64]; 2];
        let mut best = 0u8;
        let cap = cap.min(255) as u8;
        for r in (0..self.rows).rev() {
            let mut row_best = [0u8; 2];
            let row = code >> (r * self.cols);
            for c in (0..self.cols).rev() {
                let v = ((row >> c) & 1) as usize;
                let l = 1 + row_best[v].max(col_best[v][c]);
                row_best[v] = l; // l > row_best[v], so this keeps the suffix maximum
                col_best[v][c] = l;
                if l > best {
                    best = l;
                    if best >= cap {
                        return best as u32;
                    }
                }
            }
        }
        best as u32
    }

    #[inline]
    fn sigma(self, code: u64) -> u32 {
        let mut col_best = [[0u8; 64]; 2];
        let mut best = [0u8; 2];
        for r in (0..self.rows).rev() {
            let mut row_best = [0u8; 2];
            let row = code >> (r * self.cols);
            for c in (0..self.cols).rev() {
                let v = ((row >> c) & 1) as usize;
                let l = 1 + row_best[v].max(col_best[v][c]);
                row_best[v] = l;
                col_best[v][c] = l;
                best[v] = best[v].max(l);
            }
        }
        best[0] as u32 + best[1] as u32
    }
}

/// Best value and the smallest codes attaining it.
#[derive(Clone, Debug)]
struct Partial {
    best: u32,
    sample: Vec<u64>,
}

impl Partial {
    fn empty() -> Self {
        Partial { best: u32::MAX, sample: Vec::new() }
    }

    fn offer(&mut self, value: u32, code: u64) {
        if value < self.best {
            self.best = value;
            self.sample.clear();
        }
        if value == self.best && self.sample.len() < SAMPLE_SIZE {
            self.sample.push(code);
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        if other.best < self.best {
            return other;
        }
        if other.best == self.best {
            self.sample.extend(other.sample);
            self.sample.sort_unstable();
            self.sample.truncate(SAMPLE_SIZE);
        }
        self
    }
}

fn check_budget(rows: usize, cols: usize, budget: usize) -> Result<()> {
    let cells = rows * cols;
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidDimensions { rows, cols });
    }
    if cells > budget.min(MAX_CODE_CELLS) {
        return Err(Error::TooLarge { cells, limit: budget.min(MAX_CODE_CELLS) });
    }
    Ok(())
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

/// Exact minimum of `statistic` over all `n × N` matrices, `n <= N`.
pub fn exact_extremal(n: usize, cols: usize, statistic: Statistic, options: &SearchOptions) -> Result<SearchReport> {
    if n > cols {
        return Err(Error::InvalidDimensions { rows: n, cols });
    }
    check_budget(n, cols, options.budget_cells)?;
    let grid = Grid { rows: n, cols };
    let rest_bits = (n - 1) * cols;
    // Partitions are first rows with cell (1,1) = 0.
    let partitions: u64 = 1 << (cols - 1);
    let per_partition: u64 = 1 << rest_bits;
    let total = partitions * per_partition;

    let pool = pool(options.threads);
    let thread_count = pool.current_num_threads();
    let shared_best = AtomicU32::new(u32::MAX);
    let evaluated = AtomicU64::new(0);
    let started = Instant::now();

    let run_partition = |p: u64| -> Partial {
        let row0 = p << 1;
        let mut local = Partial::empty();
        for rest in 0..per_partition {
            let code = row0 | (rest << cols);
            let bound = local.best.min(shared_best.load(Ordering::Relaxed));
            let value = match statistic {
                Statistic::St => grid.st_capped(code, bound.saturating_add(1)),
                Statistic::Sigma => grid.sigma(code),
                Statistic::StTurns(_) => {
                    let m = Matrix::from_code(n, cols, code).expect("encodable");
                    statistic.evaluate(&m) as u32
                }
            };
            if value <= bound {
                local.offer(value, code);
                if value < bound {
                    shared_best.fetch_min(value, Ordering::Relaxed);
                }
            }
        }
        if let Some(cb) = &options.progress {
            let before = evaluated.fetch_add(per_partition, Ordering::Relaxed);
            let step = options.progress_every.max(1);
            if (before + per_partition) / step != before / step || before + per_partition == total {
                cb(&Progress {
                    evaluated: before + per_partition,
                    total,
                    best: shared_best.load(Ordering::Relaxed) as usize,
                    elapsed: started.elapsed(),
                });
            }
        }
        local
    };

    let result = pool.install(|| {
        (0..partitions)
            .into_par_iter()
            .fold(Partial::empty, |acc, p| acc.merge(run_partition(p)))
            .reduce(Partial::empty, Partial::merge)
    });
    let wall_time = started.elapsed();

    let minimizers_sample = result
        .sample
        .iter()
        .map(|&code| Matrix::from_code(n, cols, code).expect("encodable"))
        .collect();
    Ok(SearchReport {
        n,
        cols,
        statistic,
        exact_value: result.best as usize,
        minimizers_sample,
        matrices_enumerated: total,
        symmetry_factor: 2,
        wall_time,
        thread_count,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub exact: usize,
    pub predicted: usize,
    pub holds: bool,
}

/// Exact `st(n, n)` against `n - 1` for `2 <= n <= n_max`.
pub fn conjecture_scan(n_max: usize, options: &SearchOptions) -> Result<Vec<ConjectureRow>> {
    (2..=n_max)
        .map(|n| {
            let r = exact_extremal(n, n, Statistic::St, options)?;
            Ok(ConjectureRow { n, exact: r.exact_value, predicted: n - 1, holds: r.exact_value == n - 1 })
        })
        .collect()
}

/// Lexicographically least image of `m` under complement, half turn and,
/// for square matrices, transposition.
pub fn canonical_reduce(m: &Matrix) -> Matrix {
    orbit(m).into_iter().min_by(|a, b| a.lex_cmp(b)).expect("orbit contains m")
}

/// Distinct images of `m` under the symmetry group used by
/// [`canonical_reduce`] (order 8 for square, 4 otherwise).
pub fn orbit(m: &Matrix) -> Vec<Matrix> {
    let mut base = vec![m.clone(), m.rotate180()];
    if m.is_square() {
        let t = m.transpose();
        base.push(t.rotate180());
        base.push(t);
    }
    let mut all: Vec<Matrix> = base.iter().flat_map(|x| [x.complement(), x.clone()]).collect();
    all.sort_by(|a, b| a.lex_cmp(b));
    all.dedup();
    all
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoTurnProbe {
    pub n: usize,
    /// True when every `n × n` matrix was examined.
    pub exact: bool,
    pub matrices_examined: u64,
    pub min_value: usize,
    /// Up to ten matrices attaining `min_value`.
    pub attaining: Vec<Matrix>,
    pub rng: Option<&'static str>,
    pub seed: Option<u64>,
}

/// Minimum over square matrices of the longest staircase with at most two
/// turns. Exhaustive when `n²` fits the options' cell budget, otherwise a
/// seeded random sample of `sample_budget` matrices (marked not exact).
pub fn probe_two_turn_bound(n: usize, sample_budget: u64, seed: u64, options: &SearchOptions) -> Result<TwoTurnProbe> {
    let statistic = Statistic::StTurns(2);
    if n * n <= options.budget_cells.min(MAX_CODE_CELLS) {
        let r = exact_extremal(n, n, statistic, options)?;
        return Ok(TwoTurnProbe {
            n,
            exact: true,
            matrices_examined: r.matrices_enumerated,
            min_value: r.exact_value,
            attaining: r.minimizers_sample,
            rng: None,
            seed: None,
        });
    }
    if n == 0 {
        return Err(Error::InvalidDimensions { rows: 0, cols: 0 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = usize::MAX;
    let mut attaining = Vec::new();
    for _ in 0..sample_budget {
        let m = random_matrix_with(&mut rng, n, n, 0.5)?;
        let v = statistic.evaluate(&m);
        if v < best {
            best = v;
            attaining.clear();
        }
        if v == best && attaining.len() < SAMPLE_SIZE {
            attaining.push(m);
        }
    }
    Ok(TwoTurnProbe {
        n,
        exact: false,
        matrices_examined: sample_budget,
        min_value: best,
        attaining,
        rng: Some(RNG_NAME),
        seed: Some(seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::longest::st_profile;
    use crate::matrix::random_matrix;

    fn opts(threads: usize) -> SearchOptions {
        SearchOptions { threads, ..SearchOptions::default() }
    }

    /// Plain minimum over every code, no symmetry, no pruning.
    fn naive_min(n: usize, cols: usize, statistic: Statistic) -> usize {
        (0..1u64 << (n * cols))
            .map(|code| statistic.evaluate(&Matrix::from_code(n, cols, code).unwrap()))
            .min()
            .unwrap()
    }

    #[test]
    fn grid_agrees_with_general_dp() {
        for seed in 0..500u64 {
            let (rows, cols) = (1 + (seed % 5) as usize, 1 + (seed / 5 % 6) as usize);
            let m = random_matrix(rows, cols, seed, 0.5).unwrap();
            let code = m.to_code().unwrap();
            let g = Grid { rows, cols };
            let p = st_profile(&m);
            assert_eq!(g.sigma(code) as usize, p.sigma);
            assert_eq!(g.st_capped(code, 100) as usize, p.st);
            let capped = g.st_capped(code, 2) as usize;
            assert!(if p.st >= 2 { capped >= 2 } else { capped == p.st });
        }
    }

    #[test]
    fn small_exact_values() {
        assert_eq!(exact_extremal(2, 2, Statistic::St, &opts(1)).unwrap().exact_value, 1);
        assert_eq!(exact_extremal(2, 4, Statistic::St, &opts(1)).unwrap().exact_value, 2);
        assert_eq!(exact_extremal(2, 3, Statistic::Sigma, &opts(1)).unwrap().exact_value, 3);
        assert_eq!(exact_extremal(3, 3, Statistic::Sigma, &opts(1)).unwrap().exact_value, 4);
        assert_eq!(exact_extremal(1, 1, Statistic::St, &opts(1)).unwrap().exact_value, 1);
    }

    #[test]
    fn agrees_with_naive_enumeration() {
        for (n, cols) in [(1, 3), (2, 2), (2, 3), (2, 4), (3, 3), (2, 5), (3, 4)] {
            for statistic in [Statistic::St, Statistic::Sigma, Statistic::StTurns(0), Statistic::StTurns(1)] {
                let r = exact_extremal(n, cols, statistic, &opts(2)).unwrap();
                assert_eq!(r.exact_value, naive_min(n, cols, statistic), "({n},{cols}) {statistic:?}");
                for m in &r.minimizers_sample {
                    assert_eq!(statistic.evaluate(m), r.exact_value);
                    assert_eq!(m.get(0, 0), 0);
                }
                assert!(!r.minimizers_sample.is_empty());
            }
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let a = exact_extremal(3, 4, Statistic::St, &opts(1)).unwrap();
        let b = exact_extremal(3, 4, Statistic::St, &opts(3)).unwrap();
        assert_eq!(a.exact_value, b.exact_value);
        assert_eq!(a.minimizers_sample, b.minimizers_sample);
        assert_eq!(a.minimizers_sample.len(), 10);
        let codes: Vec<u64> = a.minimizers_sample.iter().map(|m| m.to_code().unwrap()).collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budget_and_shape_errors() {
        assert!(matches!(exact_extremal(5, 7, Statistic::St, &opts(1)), Err(Error::TooLarge { cells: 35, limit: 30 })));
        assert!(matches!(exact_extremal(3, 2, Statistic::St, &opts(1)), Err(Error::InvalidDimensions { .. })));
        let big = SearchOptions { budget_cells: 100, ..opts(1) };
        assert!(matches!(exact_extremal(8, 8, Statistic::St, &big), Err(Error::TooLarge { limit: 62, .. })));
    }

    #[test]
    fn statistic_names_round_trip() {
        for s in [Statistic::St, Statistic::Sigma, Statistic::StTurns(3)] {
            assert_eq!(s.name().parse::<Statistic>(), Ok(s));
        }
        assert!("median".parse::<Statistic>().is_err());
    }

    #[test]
    fn canonical_forms() {
        for seed in 0..1000u64 {
            let (rows, cols) = (1 + (seed % 4) as usize, 1 + (seed / 4 % 4) as usize);
            let m = random_matrix(rows, cols, seed, 0.5).unwrap();
            let c = canonical_reduce(&m);
            assert_eq!(c, canonical_reduce(&m.rotate180()));
            assert_eq!(c, canonical_reduce(&m.complement()));
            if m.is_square() {
                assert_eq!(c, canonical_reduce(&m.transpose()));
            }
            let group = if m.is_square() { 8 } else { 4 };
            assert_eq!(group % orbit(&m).len(), 0);
            assert_eq!(st_profile(&c).st, st_profile(&m).st);
            assert_eq!(st_profile(&c).sigma, st_profile(&m).sigma);
            assert!(c.lex_cmp(&m).is_le());
        }
    }

    #[test]
    fn conjecture_small() {
        let rows = conjecture_scan(3, &opts(1)).unwrap();
        assert_eq!(
            rows,
            vec![
                ConjectureRow { n: 2, exact: 1, predicted: 1, holds: true },
                ConjectureRow { n: 3, exact: 2, predicted: 2, holds: true },
            ]
        );
    }

    #[test]
    fn two_turn_probe() {
        let p2 = probe_two_turn_bound(2, 0, 0, &opts(1)).unwrap();
        assert!(p2.exact);
        assert_eq!(p2.min_value, 1);
        let p3 = probe_two_turn_bound(3, 0, 0, &opts(1)).unwrap();
        assert!(p3.exact && p3.min_value <= 2);
        assert_eq!(p3.min_value, naive_min(3, 3, Statistic::StTurns(2)));

        let small = SearchOptions { budget_cells: 4, ..opts(1) };
        let mut last = usize::MAX;
        for budget in [1u64, 10, 100, 400] {
            let p = probe_two_turn_bound(6, budget, 9, &small).unwrap();
            assert!(!p.exact);
            assert_eq!(p.rng, Some(RNG_NAME));
            assert!(p.min_value <= last);
            last = p.min_value;
        }
    }

    #[test]
    fn progress_is_reported() {
        let calls = Arc::new(AtomicU64::new(0));
        let c = calls.clone();
        let options = SearchOptions {
            threads: 1,
            progress: Some(Arc::new(move |p: &Progress| {
                assert!(p.evaluated <= p.total);
                c.fetch_add(1, Ordering::Relaxed);
            })),
            progress_every: 1 << 10,
            ..SearchOptions::default()
        };
        let r = exact_extremal(3, 5, Statistic::St, &options).unwrap();
        assert_eq!(r.matrices_enumerated, 1 << 14);
        assert!(calls.load(Ordering::Relaxed) >= 1);
    }
}
