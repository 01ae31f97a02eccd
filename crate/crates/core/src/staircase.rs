//! Staircases: sequences of equal-valued cells, each strictly right of its
//! predecessor in the same row or strictly below it in the same column.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matrix::{Matrix, Position};

/// Direction of one step of a staircase.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Right,
    Down,
}

impl Step {
    /// Direction of the step `p -> q`, or `None` when `q` is neither
    /// strictly right of `p` in its row nor strictly below it in its column.
    pub fn between(p: Position, q: Position) -> Option<Step> {
        if p.row == q.row && q.col > p.col {
            Some(Step::Right)
        } else if p.col == q.col && q.row > p.row {
            Some(Step::Down)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Staircase {
    pub value: u8,
    pub cells: Vec<Position>,
}

impl Staircase {
    pub fn new(value: u8, cells: Vec<Position>) -> Self {
        Staircase { value, cells }
    }

    pub fn empty(value: u8) -> Self {
        Staircase { value, cells: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Step directions; `None` entries mark illegal steps.
    pub fn steps(&self) -> impl Iterator<Item = Option<Step>> + '_ {
        self.cells.windows(2).map(|w| Step::between(w[0], w[1]))
    }

    /// Number of turning points: cells whose incoming and outgoing steps
    /// differ in direction. Illegal steps are skipped.
    pub fn turns(&self) -> usize {
        let steps: Vec<Step> = self.steps().flatten().collect();
        steps.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn transposed(&self) -> Staircase {
        Staircase::new(self.value, self.cells.iter().map(|p| p.transposed()).collect())
    }

    /// Image under a half turn, listed in reverse so it is again a staircase.
    pub fn rotated180(&self, rows: usize, cols: usize) -> Staircase {
        Staircase::new(self.value, self.cells.iter().rev().map(|p| p.rotated180(rows, cols)).collect())
    }

    pub fn complemented(&self) -> Staircase {
        Staircase::new(1 - self.value, self.cells.clone())
    }
}

impl Serialize for Staircase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Staircase", 3)?;
        st.serialize_field("value", &self.value)?;
        st.serialize_field("cells", &self.cells)?;
        st.serialize_field("turns", &self.turns())?;
        st.end()
    }
}

/// Why a cell sequence fails to be a staircase of a given matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invalid {
    BadValue(u8),
    OutOfBounds { index: usize, cell: Position },
    ValueMismatch { index: usize, cell: Position, found: u8 },
    IllegalStep { index: usize, from: Position, to: Position },
}

impl fmt::Display for Invalid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invalid::BadValue(v) => write!(f, "staircase value {v} is not 0 or 1"),
            Invalid::OutOfBounds { index, cell } => write!(f, "cell #{index} {cell} lies outside the matrix"),
            Invalid::ValueMismatch { index, cell, found } => {
                write!(f, "cell #{index} {cell} holds {found}")
            }
            Invalid::IllegalStep { index, from, to } => {
                write!(f, "step #{index} {from} -> {to} is neither right in a row nor down in a column")
            }
        }
    }
}

impl std::error::Error for Invalid {}

/// Checks every staircase invariant of `s` against `m`.
pub fn validate_staircase(m: &Matrix, s: &Staircase) -> Result<(), Invalid> {
    if s.value > 1 {
        return Err(Invalid::BadValue(s.value));
    }
    for (index, &cell) in s.cells.iter().enumerate() {
        if !m.contains(cell) {
            return Err(Invalid::OutOfBounds { index, cell });
        }
        let found = m.at(cell);
        if found != s.value {
            return Err(Invalid::ValueMismatch { index, cell, found });
        }
    }
    for (index, w) in s.cells.windows(2).enumerate() {
        if Step::between(w[0], w[1]).is_none() {
            return Err(Invalid::IllegalStep { index, from: w[0], to: w[1] });
        }
    }
    Ok(())
}

/// Number of turning points of `s`.
pub fn turns(s: &Staircase) -> usize {
    s.turns()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(i: usize, j: usize) -> Position {
        Position::one_based(i, j)
    }

    #[test]
    fn validation_examples() {
        let m = Matrix::from_rows(&[[0, 0], [1, 0]]).unwrap();
        let good = Staircase::new(0, vec![p(1, 1), p(1, 2), p(2, 2)]);
        assert_eq!(validate_staircase(&m, &good), Ok(()));

        let diagonal = Staircase::new(0, vec![p(1, 1), p(2, 2)]);
        assert!(matches!(validate_staircase(&m, &diagonal), Err(Invalid::IllegalStep { index: 0, .. })));

        let wrong = Staircase::new(0, vec![p(1, 1), p(2, 1)]);
        assert!(matches!(validate_staircase(&m, &wrong), Err(Invalid::ValueMismatch { index: 1, found: 1, .. })));

        let outside = Staircase::new(0, vec![p(1, 1), p(1, 3)]);
        assert!(matches!(validate_staircase(&m, &outside), Err(Invalid::OutOfBounds { .. })));

        let backwards = Staircase::new(0, vec![p(1, 2), p(1, 1)]);
        assert!(validate_staircase(&m, &backwards).is_err());
        assert!(validate_staircase(&m, &Staircase::empty(1)).is_ok());
    }

    #[test]
    fn turn_counts() {
        assert_eq!(Staircase::new(1, vec![p(2, 2)]).turns(), 0);
        assert_eq!(Staircase::new(1, vec![p(1, 1), p(1, 3), p(4, 3)]).turns(), 1);
        assert_eq!(Staircase::new(1, vec![p(1, 1), p(1, 2), p(2, 2), p(2, 4)]).turns(), 2);
        assert_eq!(Staircase::new(0, vec![p(1, 1), p(3, 1), p(5, 1)]).turns(), 0);
    }

    #[test]
    fn json_shape() {
        let s = Staircase::new(1, vec![p(1, 1), p(1, 3), p(4, 3)]);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"value":1,"cells":[[1,1],[1,3],[4,3]],"turns":1}"#);
    }

    /// Random monotone walk on an all-`value` grid of the given shape.
    fn walk() -> impl Strategy<Value = (usize, usize, Vec<Position>)> {
        (2usize..8, 2usize..8, any::<u64>()).prop_map(|(rows, cols, mut bits)| {
            let mut cur = Position::new((bits % rows as u64) as usize, 0);
            bits /= 7;
            let mut cells = vec![cur];
            loop {
                let right = bits & 1 == 0;
                bits = bits.rotate_right(3) ^ 0x9e37_79b9;
                let next = if right && cur.col + 1 < cols {
                    Position::new(cur.row, cur.col + 1 + (bits % (cols - cur.col - 1) as u64) as usize)
                } else if cur.row + 1 < rows {
                    Position::new(cur.row + 1 + (bits % (rows - cur.row - 1) as u64) as usize, cur.col)
                } else {
                    break;
                };
                cells.push(next);
                cur = next;
                if cells.len() > rows + cols {
                    break;
                }
            }
            (rows, cols, cells)
        })
    }

    proptest! {
        #[test]
        fn random_walks_validate_and_bound_turns((rows, cols, cells) in walk(), value in 0u8..2) {
            let m = Matrix::from_fn(rows, cols, |_, _| value).unwrap();
            let s = Staircase::new(value, cells);
            prop_assert!(validate_staircase(&m, &s).is_ok());
            prop_assert!(s.len() < 2 || s.turns() <= s.len() - 2);
            let mt = m.transpose();
            prop_assert!(validate_staircase(&mt, &s.transposed()).is_ok());
            prop_assert_eq!(s.rotated180(rows, cols).turns(), s.turns());
        }

        #[test]
        fn single_cell_perturbations_break_validity(
            (rows, cols, cells) in walk(), value in 0u8..2, pick in any::<prop::sample::Index>()
        ) {
            let idx = pick.index(cells.len());
            // Flipping the value of one listed cell breaks homogeneity.
            let mut m = Matrix::from_fn(rows, cols, |_, _| value).unwrap();
            let cell = cells[idx];
            m.set(cell.row, cell.col, 1 - value);
            let s = Staircase::new(value, cells.clone());
            let flipped = matches!(validate_staircase(&m, &s), Err(Invalid::ValueMismatch { .. }));
            prop_assert!(flipped);

            // Moving one cell diagonally breaks the step rule.
            if cells.len() >= 2 {
                let m = Matrix::from_fn(rows + 1, cols + 1, |_, _| value).unwrap();
                let mut moved = cells.clone();
                moved[idx] = Position::new(cell.row + 1, cell.col + 1);
                let diag = matches!(
                    validate_staircase(&m, &Staircase::new(value, moved)),
                    Err(Invalid::IllegalStep { .. })
                );
                prop_assert!(diag);
            }
        }
    }
}
