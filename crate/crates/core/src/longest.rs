//! Longest homogeneous staircases.
//!
//! Both algorithms sweep the matrix from the bottom-right corner, keeping for
//! every row the best value seen to the right and for every column the best
//! value seen below. The unbounded sweep is `O(nN)`; the turn-bounded sweep
//! carries one layer per (direction of first step, turns allowed) and costs
//! `O(nN·k)`.
//!
//! A matrix with no cell of the requested value has longest staircase 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Position};
use crate::staircase::Staircase;

/// Maximum number of turning points a staircase may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TurnBudget {
    Bounded(usize),
    Unbounded,
}

impl TurnBudget {
    /// The bound, or `None` when it cannot bind on an `rows × cols` matrix
    /// (a staircase there has at most `rows + cols - 3` turns).
    fn effective(self, rows: usize, cols: usize) -> Option<usize> {
        match self {
            TurnBudget::Bounded(k) if k + 3 < rows + cols => Some(k),
            _ => None,
        }
    }

    pub fn allows(self, turns: usize) -> bool {
        match self {
            TurnBudget::Bounded(k) => turns <= k,
            TurnBudget::Unbounded => true,
        }
    }
}

/// The four summary statistics of a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StProfile {
    pub st0: usize,
    pub st1: usize,
    pub st: usize,
    pub sigma: usize,
}

impl StProfile {
    pub fn from_parts(st0: usize, st1: usize) -> Self {
        StProfile { st0, st1, st: st0.max(st1), sigma: st0 + st1 }
    }
}

/// Length of the longest `value`-staircase with at most `budget` turns,
/// together with a witness attaining it.
///
/// Ties are broken deterministically: the witness starts at the first cell
/// in row-major order from which the maximum is reachable, and every step
/// prefers going right, then the nearest admissible cell.
pub fn longest_value_staircase(m: &Matrix, value: u8, budget: TurnBudget) -> (usize, Staircase) {
    match budget.effective(m.rows(), m.cols()) {
        None => unbounded(m, value),
        Some(k) => bounded(m, value, k),
    }
}

/// Length only; skips witness bookkeeping where possible.
pub fn longest_value_length(m: &Matrix, value: u8, budget: TurnBudget) -> usize {
    match budget.effective(m.rows(), m.cols()) {
        None => unbounded_table(m, value).1,
        Some(k) => bounded(m, value, k).0,
    }
}

pub fn st_profile(m: &Matrix) -> StProfile {
    StProfile::from_parts(unbounded_table(m, 0).1, unbounded_table(m, 1).1)
}

/// Longest homogeneous staircase of either value, preferring value 0 on ties.
pub fn longest_staircase(m: &Matrix, budget: TurnBudget) -> Staircase {
    let (l0, s0) = longest_value_staircase(m, 0, budget);
    let (l1, s1) = longest_value_staircase(m, 1, budget);
    if l1 > l0 {
        s1
    } else {
        s0
    }
}

/// Per-cell longest staircase starting there (0 for cells of the other
/// value), plus the overall maximum.
fn unbounded_table(m: &Matrix, value: u8) -> (Vec<u32>, usize) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut len = vec![0u32; rows * cols];
    let mut col_best = vec![0u32; cols];
    let mut best = 0u32;
    for r in (0..rows).rev() {
        let mut row_best = 0u32;
        for c in (0..cols).rev() {
            if m.get(r, c) != value {
                continue;
            }
            let l = 1 + row_best.max(col_best[c]);
            len[r * cols + c] = l;
            row_best = row_best.max(l);
            col_best[c] = col_best[c].max(l);
            best = best.max(l);
        }
    }
    (len, best as usize)
}

fn unbounded(m: &Matrix, value: u8) -> (usize, Staircase) {
    let (len, best) = unbounded_table(m, value);
    let cols = m.cols();
    let at = |p: Position| len[p.row * cols + p.col] as usize;
    let Some(start) = first_cell_with(m, |p| at(p) == best && best > 0) else {
        return (0, Staircase::empty(value));
    };
    let mut cells = vec![start];
    let mut cur = start;
    while at(cur) > 1 {
        let want = at(cur) - 1;
        cur = (cur.col + 1..cols)
            .map(|c| Position::new(cur.row, c))
            .chain((cur.row + 1..m.rows()).map(|r| Position::new(r, cur.col)))
            .find(|&p| at(p) == want)
            .expect("a successor attains the suffix maximum");
        cells.push(cur);
    }
    (best, Staircase::new(value, cells))
}

fn first_cell_with(m: &Matrix, pred: impl Fn(Position) -> bool) -> Option<Position> {
    (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| Position::new(r, c)))
        .find(|&p| pred(p))
}

const RIGHT: usize = 0;
const DOWN: usize = 1;

/// `g[dir][t][cell]`: longest staircase starting at `cell` whose first step
/// (if any) goes in `dir`, using at most `t` turns.
struct TurnTable {
    cols: usize,
    layers: usize,
    g: Vec<u32>,
}

impl TurnTable {
    #[inline]
    fn idx(&self, dir: usize, t: usize, p: Position) -> usize {
        ((dir * self.layers + t) * self.cols + p.col) + p.row * self.cols * 2 * self.layers
    }

    #[inline]
    fn get(&self, dir: usize, t: usize, p: Position) -> u32 {
        self.g[self.idx(dir, t, p)]
    }

    /// Best continuation after arriving at `p` with a step in `dir`.
    #[inline]
    fn after_step(&self, dir: usize, t: usize, p: Position) -> u32 {
        let straight = self.get(dir, t, p);
        if t > 0 {
            straight.max(self.get(1 - dir, t - 1, p))
        } else {
            straight
        }
    }
}

fn bounded(m: &Matrix, value: u8, k: usize) -> (usize, Staircase) {
    let (rows, cols) = (m.rows(), m.cols());
    let layers = k + 1;
    let mut table = TurnTable { cols, layers, g: vec![0; rows * cols * 2 * layers] };
    // row_best[t]: max over processed cells to the right of after_step(RIGHT, t)
    let mut col_best = vec![0u32; cols * layers];
    let mut row_best = vec![0u32; layers];
    let mut best = 0u32;
    for r in (0..rows).rev() {
        row_best.iter_mut().for_each(|x| *x = 0);
        for c in (0..cols).rev() {
            if m.get(r, c) != value {
                continue;
            }
            let p = Position::new(r, c);
            for t in 0..layers {
                let right = 1 + row_best[t];
                let down = 1 + col_best[c * layers + t];
                let i = table.idx(RIGHT, t, p);
                table.g[i] = right;
                let i = table.idx(DOWN, t, p);
                table.g[i] = down;
            }
            for t in 0..layers {
                row_best[t] = row_best[t].max(table.after_step(RIGHT, t, p));
                let cb = &mut col_best[c * layers + t];
                *cb = (*cb).max(table.after_step(DOWN, t, p));
            }
            best = best.max(table.get(RIGHT, k, p).max(table.get(DOWN, k, p)));
        }
    }
    if best == 0 {
        return (0, Staircase::empty(value));
    }
    let start = first_cell_with(m, |p| {
        m.at(p) == value && table.get(RIGHT, k, p).max(table.get(DOWN, k, p)) == best
    })
    .expect("maximum is attained");

    let mut dir = if table.get(RIGHT, k, start) == best { RIGHT } else { DOWN };
    let mut t = k;
    let mut cur = start;
    let mut cells = vec![start];
    let mut remaining = best;
    while remaining > 1 {
        let want = remaining - 1;
        let candidates: Box<dyn Iterator<Item = Position>> = if dir == RIGHT {
            Box::new((cur.col + 1..cols).map(move |c| Position::new(cur.row, c)))
        } else {
            Box::new((cur.row + 1..rows).map(move |r| Position::new(r, cur.col)))
        };
        let next = candidates
            .filter(|&q| m.at(q) == value)
            .find(|&q| table.after_step(dir, t, q) == want)
            .expect("a successor attains the suffix maximum");
        // Continue straight or turn at `next`; prefer the right-going option.
        let turn_ok = t > 0 && table.get(1 - dir, t - 1, next) == want;
        let straight_ok = table.get(dir, t, next) == want;
        let go_right_by_turning = turn_ok && dir == DOWN;
        if go_right_by_turning || !straight_ok {
            debug_assert!(turn_ok);
            dir = 1 - dir;
            t -= 1;
        }
        cells.push(next);
        cur = next;
        remaining = want;
    }
    (best as usize, Staircase::new(value, cells))
}

/// Default cell limit for [`brute_force_longest`].
pub const BRUTE_FORCE_MAX_CELLS: usize = 25;

/// Longest `value`-staircase by explicit enumeration of every staircase.
/// Exponential; refuses instances above [`BRUTE_FORCE_MAX_CELLS`] cells.
pub fn brute_force_longest(m: &Matrix, value: u8, budget: TurnBudget) -> Result<usize> {
    brute_force_longest_limited(m, value, budget, BRUTE_FORCE_MAX_CELLS)
}

pub fn brute_force_longest_limited(m: &Matrix, value: u8, budget: TurnBudget, max_cells: usize) -> Result<usize> {
    let by_turns = brute_force_by_turns(m, value, max_cells)?;
    Ok(by_turns
        .iter()
        .enumerate()
        .filter(|&(t, _)| budget.allows(t))
        .map(|(_, &l)| l)
        .max()
        .unwrap_or(0))
}

/// `out[t]` = longest `value`-staircase with exactly `t` turns (0 if none).
pub fn brute_force_by_turns(m: &Matrix, value: u8, max_cells: usize) -> Result<Vec<usize>> {
    let cells = m.rows() * m.cols();
    if cells > max_cells {
        return Err(Error::TooLarge { cells, limit: max_cells });
    }
    let mut best = vec![0usize; m.rows() + m.cols()];
    let mut path = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if m.get(r, c) == value {
                path.push((r, c));
                extend(m, value, &mut path, &mut best);
                path.pop();
            }
        }
    }
    Ok(best)
}

fn extend(m: &Matrix, value: u8, path: &mut Vec<(usize, usize)>, best: &mut [usize]) {
    // Count turns from scratch on the explicit path.
    let mut turns = 0;
    for w in path.windows(3) {
        let first_right = w[0].0 == w[1].0;
        let second_right = w[1].0 == w[2].0;
        if first_right != second_right {
            turns += 1;
        }
    }
    best[turns] = best[turns].max(path.len());

    let (r, c) = *path.last().expect("nonempty path");
    let mut successors = Vec::new();
    for c2 in c + 1..m.cols() {
        if m.get(r, c2) == value {
            successors.push((r, c2));
        }
    }
    for r2 in r + 1..m.rows() {
        if m.get(r2, c) == value {
            successors.push((r2, c));
        }
    }
    for s in successors {
        path.push(s);
        extend(m, value, path, best);
        path.pop();
    }
}
