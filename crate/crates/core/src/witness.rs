//! Constructive lower-bound witnesses.
//!
//! [`sigma_witness`] certifies `st0 + st1 >= ceil(n/2) + N - 1` with two
//! explicit staircases anchored at the lowest majority cell of the first
//! column.
//!
//! [`square_witness`] runs the corner case analysis on a square matrix and
//! returns a staircase with at most three turning points and length at least
//! `ceil((10n - 7) / 12)` for `n != 2`. For `n = 2` the bound evaluates to 2
//! while the two anti-diagonal matrices have no staircase longer than 1; the
//! routine still returns a longest staircase of the analysis.
//!
//! # Frames
//!
//! The analysis looks at the matrix from two corners. A [`Frame`] records how
//! the working copy was obtained from the input: an optional transpose, an
//! optional half turn, and an optional complement so that the top-right cell
//! of the working copy is 1. Staircases found in a frame are mapped back to
//! input coordinates before they are stored.
//!
//! In a frame with `n` rows the anchors are:
//! * `corner`: the top-right cell (value 1);
//! * `top_zero`: the last 0 of the top row;
//! * `right_zero`: the topmost 0 of the right column;
//! * `crossing`: the cell in the column of `top_zero` and the row of
//!   `right_zero`.
//!
//! When `crossing` holds 1, the four row-then-column staircases centered at
//! the anchors satisfy
//! `2|S_corner| + |S_top| + |S_right| + |S_crossing| = 4n - 3 + x + y + z + w`
//! where `x` counts 1's of the top row left of `top_zero`, `y` the 0's
//! strictly between `top_zero` and `crossing`, `z` the 0's strictly between
//! `crossing` and `right_zero`, and `w` the 1's below `right_zero`
//! (see [`check_corner_identity`]).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Position};
use crate::staircase::Staircase;

/// Shape of a staircase with at most one turn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corner {
    /// Cells of the row at or left of the center, then cells of the column
    /// below it.
    RowThenColumn,
    /// Cells of the column at or above the center, then cells of the row
    /// right of it.
    ColumnThenRow,
}

/// All cells equal to `m[p]` along the two hands of the corner centered at
/// `p`. Cells need not be contiguous.
pub fn corner_staircase(m: &Matrix, p: Position, corner: Corner) -> Staircase {
    let v = m.at(p);
    let mut cells = Vec::new();
    match corner {
        Corner::RowThenColumn => {
            cells.extend((0..=p.col).map(|c| Position::new(p.row, c)).filter(|&q| m.at(q) == v));
            cells.extend((p.row + 1..m.rows()).map(|r| Position::new(r, p.col)).filter(|&q| m.at(q) == v));
        }
        Corner::ColumnThenRow => {
            cells.extend((0..=p.row).map(|r| Position::new(r, p.col)).filter(|&q| m.at(q) == v));
            cells.extend((p.col + 1..m.cols()).map(|c| Position::new(p.row, c)).filter(|&q| m.at(q) == v));
        }
    }
    Staircase::new(v, cells)
}

/// Two staircases of opposite values whose lengths add up to at least
/// `ceil(n/2) + N - 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SigmaWitness {
    /// Whether the input was transposed to get `rows <= cols`; all fields
    /// are in input coordinates either way.
    pub transposed: bool,
    /// Lowest cell of the first column holding its majority value (the first
    /// row when transposed).
    pub anchor: Position,
    pub majority: Staircase,
    pub minority: Staircase,
}

impl SigmaWitness {
    pub fn total(&self) -> usize {
        self.majority.len() + self.minority.len()
    }
}

pub fn sigma_witness(m: &Matrix) -> SigmaWitness {
    if m.rows() > m.cols() {
        let w = sigma_witness(&m.transpose());
        return SigmaWitness {
            transposed: true,
            anchor: w.anchor.transposed(),
            majority: w.majority.transposed(),
            minority: w.minority.transposed(),
        };
    }
    let n = m.rows();
    let ones = (0..n).filter(|&r| m.get(r, 0) == 1).count();
    let v = u8::from(2 * ones >= n);
    let row = (0..n).rev().find(|&r| m.get(r, 0) == v).expect("majority value occurs");
    let anchor = Position::new(row, 0);
    let majority = corner_staircase(m, anchor, Corner::ColumnThenRow);
    let minority = Staircase::new(
        1 - v,
        (0..m.cols()).map(|c| Position::new(row, c)).filter(|&q| m.at(q) != v).collect(),
    );
    SigmaWitness { transposed: false, anchor, majority, minority }
}

/// How a working copy was derived from the input matrix.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Frame {
    pub transposed: bool,
    pub rotated: bool,
    pub complemented: bool,
}

impl Frame {
    pub fn apply(&self, m: &Matrix) -> Matrix {
        let mut out = if self.transposed { m.transpose() } else { m.clone() };
        if self.rotated {
            out = out.rotate180();
        }
        if self.complemented {
            out = out.complement();
        }
        out
    }

    /// Input coordinates to frame coordinates (square matrices only).
    pub fn to_frame(&self, p: Position, n: usize) -> Position {
        let p = if self.transposed { p.transposed() } else { p };
        if self.rotated {
            p.rotated180(n, n)
        } else {
            p
        }
    }

    pub fn to_input(&self, p: Position, n: usize) -> Position {
        let p = if self.rotated { p.rotated180(n, n) } else { p };
        if self.transposed {
            p.transposed()
        } else {
            p
        }
    }

    pub fn staircase_to_input(&self, s: &Staircase, n: usize) -> Staircase {
        let mut s = if self.complemented { s.complemented() } else { s.clone() };
        if self.rotated {
            s = s.rotated180(n, n);
        }
        if self.transposed {
            s = s.transposed();
        }
        s
    }
}

/// Counts around the anchors of one frame, measured in frame values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SideCounts {
    /// 1's of the top row left of `top_zero`.
    pub top_ones: usize,
    /// 0's strictly between `top_zero` and `crossing`.
    pub column_zeros: usize,
    /// 0's strictly between `crossing` and `right_zero`.
    pub row_zeros: usize,
    /// 1's of the right column below `right_zero`.
    pub right_ones: usize,
}

impl SideCounts {
    pub fn sum(&self) -> usize {
        self.top_ones + self.column_zeros + self.row_zeros + self.right_ones
    }
}

/// Everything computed in one frame. Positions and staircases are in input
/// coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameTrace {
    pub frame: Frame,
    pub corner: Position,
    pub top_zero: Option<Position>,
    pub right_zero: Option<Position>,
    pub crossing: Option<Position>,
    /// Value of `crossing` in frame values.
    pub crossing_value: Option<u8>,
    /// Row-then-column staircases centered at corner, top_zero, right_zero
    /// and crossing, in that order. Present only when `crossing` holds 1.
    pub corner_staircases: Option<[Staircase; 4]>,
    pub counts: Option<SideCounts>,
    /// Sizes of the horizontal and vertical hands of the corner staircase
    /// (the corner cell counts in both).
    pub corner_hands: (usize, usize),
}

impl FrameTrace {
    pub fn lengths(&self) -> Option<[usize; 4]> {
        self.corner_staircases.as_ref().map(|s| [s[0].len(), s[1].len(), s[2].len(), s[3].len()])
    }

    /// `2|S_corner| + |S_top| + |S_right| + |S_crossing|`.
    pub fn weighted_sum(&self) -> Option<usize> {
        self.lengths().map(|l| 2 * l[0] + l[1] + l[2] + l[3])
    }
}

/// Branch of the case analysis that produced the witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessCase {
    /// The top row of a frame is constant.
    TrivialRow,
    /// The right column of a frame is constant.
    TrivialColumn,
    /// The crossing cell of a frame is 0: a three-turn zero staircase and the
    /// corner staircase together cover at least `2n` cells.
    CrossingZero,
    /// The two corner staircases together reach `2n - 2`.
    LongCorners,
    /// Split column whose bottom cell is 0 (in the first frame).
    SplitColumnZero,
    /// Split column whose bottom cell is 1 (in the first frame).
    SplitColumnOne,
}

/// The column with 0 on top and the complement of the bottom-left value at
/// the bottom, with its two staircases.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplitTrace {
    pub top: Position,
    pub bottom: Position,
    /// Bottom-left value in the first frame.
    pub bottom_left_value: u8,
    pub staircases: [Staircase; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessTrace {
    pub n: usize,
    /// The analysis was re-run on the transpose to put the short pair of
    /// horizontal hands on top.
    pub transposed: bool,
    pub first: FrameTrace,
    pub second: Option<FrameTrace>,
    pub split: Option<SplitTrace>,
    pub case: WitnessCase,
    /// Length guaranteed by the weighted average, `ceil((10n - 7) / 12)`.
    pub bound: usize,
    pub witness_len: usize,
    pub witness_turns: usize,
}

impl WitnessTrace {
    /// All staircases the analysis built, in the fixed order
    /// first-frame corners, second-frame corners, split column.
    pub fn candidates(&self) -> Vec<&Staircase> {
        let mut out = Vec::new();
        for f in [Some(&self.first), self.second.as_ref()].into_iter().flatten() {
            if let Some(s) = &f.corner_staircases {
                out.extend(s.iter());
            }
        }
        if let Some(split) = &self.split {
            out.extend(split.staircases.iter());
        }
        out
    }
}

/// `ceil((10n - 7) / 12)`, clamped at 0 for `n = 0`.
pub fn square_bound(n: usize) -> usize {
    (10 * n).saturating_sub(7).div_ceil(12)
}

enum FrameOutcome {
    Done { trace: FrameTrace, case: WitnessCase, staircase: Staircase },
    Corners(FrameTrace),
}

/// Builds the frame of `input` given by `transposed`/`rotated`, complemented
/// as needed so the top-right cell is 1, and runs the anchor analysis.
fn analyze_frame(input: &Matrix, transposed: bool, rotated: bool) -> FrameOutcome {
    let n = input.rows();
    let mut frame = Frame { transposed, rotated, complemented: false };
    let base = frame.apply(input);
    frame.complemented = base.get(0, n - 1) == 0;
    let m = if frame.complemented { base.complement() } else { base };
    let back = |s: &Staircase| frame.staircase_to_input(s, n);
    let pos = |p: Position| frame.to_input(p, n);

    let corner = Position::new(0, n - 1);
    let corner_stair = corner_staircase(&m, corner, Corner::RowThenColumn);
    let top_ones = (0..n).filter(|&c| m.get(0, c) == 1).count();
    let right_ones = (0..n).filter(|&r| m.get(r, n - 1) == 1).count();
    let mut trace = FrameTrace {
        frame,
        corner: pos(corner),
        top_zero: None,
        right_zero: None,
        crossing: None,
        crossing_value: None,
        corner_staircases: None,
        counts: None,
        corner_hands: (top_ones, right_ones),
    };

    let Some(zc) = (0..n).rev().find(|&c| m.get(0, c) == 0) else {
        let row = Staircase::new(1, (0..n).map(|c| Position::new(0, c)).collect());
        return FrameOutcome::Done { trace, case: WitnessCase::TrivialRow, staircase: back(&row) };
    };
    let top_zero = Position::new(0, zc);
    trace.top_zero = Some(pos(top_zero));
    let Some(zr) = (0..n).find(|&r| m.get(r, n - 1) == 0) else {
        let col = Staircase::new(1, (0..n).map(|r| Position::new(r, n - 1)).collect());
        return FrameOutcome::Done { trace, case: WitnessCase::TrivialColumn, staircase: back(&col) };
    };
    let right_zero = Position::new(zr, n - 1);
    let crossing = Position::new(zr, zc);
    trace.right_zero = Some(pos(right_zero));
    trace.crossing = Some(pos(crossing));
    trace.crossing_value = Some(m.at(crossing));

    if m.at(crossing) == 0 {
        // Zeros of the top row, down the column of top_zero, along the row of
        // right_zero, down the right column.
        let mut cells: Vec<Position> = (0..=zc).map(|c| Position::new(0, c)).collect();
        cells.extend((1..=zr).map(|r| Position::new(r, zc)));
        cells.extend((zc + 1..n).map(|c| Position::new(zr, c)));
        cells.extend((zr + 1..n).map(|r| Position::new(r, n - 1)));
        cells.retain(|&q| m.at(q) == 0);
        let zero_stair = Staircase::new(0, cells);
        let best = if zero_stair.len() > corner_stair.len() { zero_stair } else { corner_stair };
        return FrameOutcome::Done { trace, case: WitnessCase::CrossingZero, staircase: back(&best) };
    }

    let stairs = [corner, top_zero, right_zero, crossing].map(|p| corner_staircase(&m, p, Corner::RowThenColumn));
    trace.counts = Some(SideCounts {
        top_ones: (0..zc).filter(|&c| m.get(0, c) == 1).count(),
        column_zeros: (1..zr).filter(|&r| m.get(r, zc) == 0).count(),
        row_zeros: (zc + 1..n - 1).filter(|&c| m.get(zr, c) == 0).count(),
        right_ones: (zr + 1..n).filter(|&r| m.get(r, n - 1) == 1).count(),
    });
    trace.corner_staircases = Some(stairs.each_ref().map(back));
    FrameOutcome::Corners(trace)
}

/// Longest of `candidates`, first one on ties.
fn longest_of<'a>(candidates: impl IntoIterator<Item = &'a Staircase>) -> Staircase {
    let mut best: Option<&Staircase> = None;
    for s in candidates {
        if best.is_none_or(|b| s.len() > b.len()) {
            best = Some(s);
        }
    }
    best.cloned().expect("at least one candidate")
}

/// Long staircase with at most three turns in a square matrix, with the
/// full trace of the case analysis.
pub fn square_witness(m: &Matrix) -> Result<(Staircase, WitnessTrace)> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    Ok(run_analysis(m, false))
}

fn run_analysis(input: &Matrix, transposed: bool) -> (Staircase, WitnessTrace) {
    let n = input.rows();
    let finish = |first: FrameTrace,
                  second: Option<FrameTrace>,
                  split: Option<SplitTrace>,
                  case: WitnessCase,
                  staircase: Staircase| {
        let trace = WitnessTrace {
            n,
            transposed,
            first,
            second,
            split,
            case,
            bound: square_bound(n),
            witness_len: staircase.len(),
            witness_turns: staircase.turns(),
        };
        (staircase, trace)
    };

    let first = match analyze_frame(input, transposed, false) {
        FrameOutcome::Done { trace, case, staircase } => return finish(trace, None, None, case, staircase),
        FrameOutcome::Corners(t) => t,
    };
    let second = match analyze_frame(input, transposed, true) {
        FrameOutcome::Done { trace, case, staircase } => {
            return finish(first, Some(trace), None, case, staircase)
        }
        FrameOutcome::Corners(t) => t,
    };

    let s1 = &first.corner_staircases.as_ref().expect("corners built")[0];
    let s1b = &second.corner_staircases.as_ref().expect("corners built")[0];
    if s1.len() + s1b.len() + 2 >= 2 * n {
        let best = longest_of([s1, s1b]);
        return finish(first, Some(second), None, WitnessCase::LongCorners, best);
    }

    if first.corner_hands.0 + second.corner_hands.0 >= n {
        // The vertical hands are then short; their roles swap under transposition.
        assert!(!transposed, "both hand sums reach n although the corner staircases are short");
        return run_analysis(input, true);
    }

    // Work in the first frame's values.
    let fm = first.frame.apply(input);
    let bottom_left = fm.get(n - 1, 0);
    let other = 1 - bottom_left;
    let c = (0..n)
        .find(|&c| fm.get(0, c) == 0 && fm.get(n - 1, c) == other)
        .expect("short horizontal hands leave a split column");
    let top = Position::new(0, c);
    let bottom = Position::new(n - 1, c);
    let (case, pair) = if other == 0 {
        let mut cells: Vec<Position> = (0..=c).map(|j| Position::new(0, j)).collect();
        cells.extend((1..n).map(|r| Position::new(r, c)));
        cells.extend((c + 1..n).map(|j| Position::new(n - 1, j)));
        cells.retain(|&q| fm.at(q) == 0);
        let zeros = Staircase::new(0, cells);
        let ones = Staircase::new(1, (0..n).map(|r| Position::new(r, c)).filter(|&q| fm.at(q) == 1).collect());
        (WitnessCase::SplitColumnZero, [zeros, ones])
    } else {
        (
            WitnessCase::SplitColumnOne,
            [corner_staircase(&fm, top, Corner::RowThenColumn), corner_staircase(&fm, bottom, Corner::ColumnThenRow)],
        )
    };
    let split = SplitTrace {
        top: first.frame.to_input(top, n),
        bottom: first.frame.to_input(bottom, n),
        bottom_left_value: bottom_left,
        staircases: pair.each_ref().map(|s| first.frame.staircase_to_input(s, n)),
    };
    let mut candidates: Vec<&Staircase> = Vec::new();
    candidates.extend(first.corner_staircases.iter().flatten());
    candidates.extend(second.corner_staircases.iter().flatten());
    candidates.extend(split.staircases.iter());
    let best = longest_of(candidates);
    finish(first, Some(second), Some(split), case, best)
}

/// Checks the corner identity of `frame` with side counts recounted
/// directly on `m`.
///
/// Returns `Err(BranchNotReached)` when the frame stopped before building
/// its corner staircases.
pub fn check_corner_identity(m: &Matrix, frame: &FrameTrace) -> Result<bool> {
    corner_identity_sides(m, frame).map(|(lhs, rhs)| lhs == rhs)
}

/// Both sides of the corner identity: the weighted length sum of the stored
/// staircases, and `4n - 3` plus the four side counts read from `m`.
pub fn corner_identity_sides(m: &Matrix, frame: &FrameTrace) -> Result<(usize, usize)> {
    let (Some(stairs), Some(top_zero), Some(right_zero)) = (&frame.corner_staircases, frame.top_zero, frame.right_zero)
    else {
        return Err(Error::BranchNotReached);
    };
    let n = m.rows();
    let f = frame.frame;
    // Frame values read straight from the input.
    let value = |r: usize, c: usize| -> u8 {
        let p = f.to_input(Position::new(r, c), n);
        m.at(p) ^ u8::from(f.complemented)
    };
    let a = f.to_frame(top_zero, n);
    let b = f.to_frame(right_zero, n);
    let mut x = 0;
    for c in 0..a.col {
        x += usize::from(value(0, c) == 1);
    }
    let mut y = 0;
    for r in 1..b.row {
        y += usize::from(value(r, a.col) == 0);
    }
    let mut z = 0;
    for c in a.col + 1..n - 1 {
        z += usize::from(value(b.row, c) == 0);
    }
    let mut w = 0;
    for r in b.row + 1..n {
        w += usize::from(value(r, n - 1) == 1);
    }
    let lhs = 2 * stairs[0].len() + stairs[1].len() + stairs[2].len() + stairs[3].len();
    Ok((lhs, 4 * n - 3 + x + y + z + w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_p;
    use crate::longest::st_profile;
    use crate::matrix::{parse_matrix, random_matrix};
    use crate::staircase::validate_staircase;
    use proptest::prelude::*;

    fn check_sound(m: &Matrix) -> (Staircase, WitnessTrace) {
        let (s, t) = square_witness(m).unwrap();
        assert!(validate_staircase(m, &s).is_ok(), "{m:?} {s:?}");
        assert!(s.turns() <= 3);
        assert!(s.len() <= st_profile(m).st);
        assert_eq!(t.witness_len, s.len());
        for c in t.candidates() {
            assert!(validate_staircase(m, c).is_ok(), "{m:?} {c:?}");
            assert!(c.turns() <= 2);
        }
        (s, t)
    }

    #[test]
    fn corner_staircase_shapes() {
        let m = parse_matrix("0101\n1011\n0111\n1110").unwrap();
        let s = corner_staircase(&m, Position::new(0, 3), Corner::RowThenColumn);
        assert_eq!(s.cells, vec![Position::new(0, 1), Position::new(0, 3), Position::new(1, 3), Position::new(2, 3)]);
        let z = Matrix::zeros(5, 6).unwrap();
        let s = corner_staircase(&z, Position::new(1, 3), Corner::RowThenColumn);
        assert_eq!(s.len(), 4 + (5 - 2));
        let s = corner_staircase(&m, Position::new(3, 0), Corner::ColumnThenRow);
        assert_eq!(s.cells, vec![Position::new(1, 0), Position::new(3, 0), Position::new(3, 1), Position::new(3, 2)]);
        assert!(validate_staircase(&m, &s).is_ok());
    }

    #[test]
    fn sigma_witness_examples() {
        let p = build_p(6, 8).unwrap();
        let w = sigma_witness(&p);
        assert_eq!(w.majority.value, 1);
        assert!(w.total() >= 10);
        assert!(validate_staircase(&p, &w.majority).is_ok());
        assert!(validate_staircase(&p, &w.minority).is_ok());
        assert!(w.total() <= st_profile(&p).sigma);

        let row = parse_matrix("0110100").unwrap();
        assert_eq!(sigma_witness(&row).total(), 7);

        let ones = Matrix::ones(4, 6).unwrap();
        let w = sigma_witness(&ones);
        assert_eq!((w.majority.len(), w.minority.len()), (9, 0));

        let tall = random_matrix(9, 4, 3, 0.5).unwrap();
        let w = sigma_witness(&tall);
        assert!(w.transposed);
        assert!(validate_staircase(&tall, &w.majority).is_ok());
        assert!(validate_staircase(&tall, &w.minority).is_ok());
        assert!(w.total() >= 2 + 9 - 1);
    }

    #[test]
    fn crossing_zero_example() {
        let m = parse_matrix("001\n101\n100").unwrap();
        let (s, t) = check_sound(&m);
        assert_eq!(t.case, WitnessCase::CrossingZero);
        assert_eq!(t.first.crossing, Some(Position::new(2, 1)));
        assert_eq!(
            s.cells,
            vec![Position::new(0, 0), Position::new(0, 1), Position::new(1, 1), Position::new(2, 1), Position::new(2, 2)]
        );
        assert_eq!(s.len(), st_profile(&m).st);
    }

    #[test]
    fn trivial_cases() {
        let (s, t) = check_sound(&Matrix::ones(5, 5).unwrap());
        assert_eq!((t.case, s.len()), (WitnessCase::TrivialRow, 5));
        let (s, t) = check_sound(&Matrix::zeros(4, 4).unwrap());
        assert_eq!((t.case, s.len(), s.value), (WitnessCase::TrivialRow, 4, 0));
        let (_, t) = check_sound(&parse_matrix("011\n001\n111").unwrap());
        assert_eq!(t.case, WitnessCase::TrivialColumn);
        assert!(square_witness(&Matrix::zeros(2, 3).unwrap()).is_err());
    }

    #[test]
    fn anti_diagonal_two_by_two_falls_short() {
        // The only square shape where the bound exceeds the true optimum.
        for text in ["01\n10", "10\n01"] {
            let m = parse_matrix(text).unwrap();
            let (s, t) = check_sound(&m);
            assert_eq!(st_profile(&m).st, 1);
            assert_eq!(s.len(), 1);
            assert_eq!(t.bound, 2);
            assert_eq!(t.case, WitnessCase::LongCorners);
        }
    }

    #[test]
    fn p_square_reaches_corner_branch() {
        let p = build_p(6, 6).unwrap();
        let (_, t) = check_sound(&p);
        assert!(t.first.corner_staircases.is_some());
        assert_eq!(check_corner_identity(&p, &t.first), Ok(true));
    }

    #[test]
    fn exhaustive_up_to_four() {
        let mut seen = std::collections::BTreeSet::new();
        for n in 1..=4usize {
            for code in 0..1u64 << (n * n) {
                let m = Matrix::from_code(n, n, code).unwrap();
                let (s, t) = check_sound(&m);
                seen.insert(format!("{:?}", t.case));
                if n != 2 {
                    assert!(s.len() >= square_bound(n), "{m:?}");
                }
                for f in [Some(&t.first), t.second.as_ref()].into_iter().flatten() {
                    if f.corner_staircases.is_some() {
                        assert_eq!(check_corner_identity(&m, f), Ok(true), "{m:?}");
                        assert_eq!(f.weighted_sum().unwrap(), 4 * n - 3 + f.counts.unwrap().sum());
                    }
                }
                if let (Some(split), Some(second)) = (&t.split, &t.second) {
                    let total = t.first.weighted_sum().unwrap()
                        + second.weighted_sum().unwrap()
                        + split.staircases[0].len()
                        + split.staircases[1].len();
                    assert!(total + 7 >= 10 * n, "{m:?}");
                    assert!(t.first.corner_hands.0 + second.corner_hands.0 < n);
                }
            }
        }
        assert!(seen.len() >= 5, "{seen:?}");
    }

    #[test]
    fn branch_not_reached_is_reported() {
        let m = Matrix::ones(3, 3).unwrap();
        let (_, t) = square_witness(&m).unwrap();
        assert_eq!(check_corner_identity(&m, &t.first), Err(Error::BranchNotReached));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn random_square_soundness(n in 3usize..40, seed in any::<u64>(), p in 0.2f64..0.8) {
            let m = random_matrix(n, n, seed, p).unwrap();
            let (s, t) = check_sound(&m);
            prop_assert!(s.len() >= square_bound(n));
            for f in [Some(&t.first), t.second.as_ref()].into_iter().flatten() {
                if f.corner_staircases.is_some() {
                    prop_assert_eq!(check_corner_identity(&m, f), Ok(true));
                }
            }
            if t.case == WitnessCase::CrossingZero {
                prop_assert!(s.len() >= n);
            }
        }

        #[test]
        fn sigma_witness_soundness(rows in 1usize..30, cols in 1usize..30, seed in any::<u64>()) {
            let m = random_matrix(rows, cols, seed, 0.5).unwrap();
            let w = sigma_witness(&m);
            prop_assert!(validate_staircase(&m, &w.majority).is_ok());
            prop_assert!(validate_staircase(&m, &w.minority).is_ok());
            prop_assert_ne!(w.majority.value, w.minority.value);
            let (n, big) = (rows.min(cols), rows.max(cols));
            prop_assert!(w.total() >= n.div_ceil(2) + big - 1);
        }
    }
}
