//! Bit-packed rectangular 0/1 matrices.
//!
//! Rows are stored as runs of `u64` words. Bits beyond the last column of a
//! row are always zero, so two matrices are equal iff their words are equal.
//!
//! Cells are addressed with zero-based `(row, col)` internally; every textual
//! or JSON rendering of a [`Position`] is one-based, row first.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of the generator behind [`random_matrix`], recorded in reports.
pub const RNG_NAME: &str = "ChaCha8Rng";

/// A cell position, zero-based. Serializes as the one-based pair `[i, j]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub row: usize,
    pub col: usize,
}

impl Position {
    pub const fn new(row: usize, col: usize) -> Self {
        Position { row, col }
    }

    /// Builds a position from one-based coordinates.
    pub fn one_based(i: usize, j: usize) -> Self {
        assert!(i >= 1 && j >= 1, "one-based coordinates start at 1");
        Position { row: i - 1, col: j - 1 }
    }

    pub fn transposed(self) -> Self {
        Position { row: self.col, col: self.row }
    }

    /// Image under a half turn of an `rows × cols` matrix.
    pub fn rotated180(self, rows: usize, cols: usize) -> Self {
        Position { row: rows - 1 - self.row, col: cols - 1 - self.col }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row + 1, self.col + 1)
    }
}

impl Serialize for Position {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.row + 1, self.col + 1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Position {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [i, j] = <[usize; 2]>::deserialize(d)?;
        if i == 0 || j == 0 {
            return Err(serde::de::Error::custom("positions are one-based"));
        }
        Ok(Position::one_based(i, j))
    }
}

/// Rectangular 0/1 matrix with `rows()` rows and `cols()` columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl Matrix {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDimensions { rows, cols });
        }
        let words_per_row = cols.div_ceil(64);
        Ok(Matrix { rows, cols, words_per_row, words: vec![0; rows * words_per_row] })
    }

    pub fn ones(rows: usize, cols: usize) -> Result<Self> {
        Self::from_fn(rows, cols, |_, _| 1)
    }

    /// Builds a matrix cell by cell; `f(row, col)` is zero-based and any
    /// nonzero return value counts as 1.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut m = Self::zeros(rows, cols)?;
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) != 0 {
                    m.set(r, c, 1);
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from row vectors of 0/1 values.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != width {
                return Err(Error::Format(format!(
                    "row {} has {} cells, expected {}",
                    i + 1,
                    r.len(),
                    width
                )));
            }
            if let Some(&bad) = r.iter().find(|&&b| b > 1) {
                return Err(Error::Format(format!("row {} holds value {}", i + 1, bad)));
            }
        }
        Self::from_fn(n, width, |r, c| rows[r].as_ref()[c])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        debug_assert!(row < self.rows && col < self.cols);
        let w = self.words[row * self.words_per_row + col / 64];
        ((w >> (col % 64)) & 1) as u8
    }

    #[inline]
    pub fn at(&self, p: Position) -> u8 {
        self.get(p.row, p.col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        assert!(row < self.rows && col < self.cols, "cell ({row},{col}) out of range");
        let w = &mut self.words[row * self.words_per_row + col / 64];
        let bit = 1u64 << (col % 64);
        if value != 0 {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn contains(&self, p: Position) -> bool {
        p.row < self.rows && p.col < self.cols
    }

    /// Number of cells holding `value`.
    pub fn count(&self, value: u8) -> usize {
        let ones: usize = self.words.iter().map(|w| w.count_ones() as usize).sum();
        if value == 1 {
            ones
        } else {
            self.rows * self.cols - ones
        }
    }

    pub fn row_cells(&self, row: usize) -> impl Iterator<Item = u8> + '_ {
        (0..self.cols).map(move |c| self.get(row, c))
    }

    /// Every cell flipped.
    pub fn complement(&self) -> Matrix {
        let mut out = self.clone();
        let tail = self.cols % 64;
        for r in 0..self.rows {
            for k in 0..self.words_per_row {
                let idx = r * self.words_per_row + k;
                out.words[idx] = !self.words[idx];
                if k == self.words_per_row - 1 && tail != 0 {
                    out.words[idx] &= (1u64 << tail) - 1;
                }
            }
        }
        out
    }

    /// `(i, j) -> (j, i)`.
    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows).expect("nonempty");
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) == 1 {
                    out.set(c, r, 1);
                }
            }
        }
        out
    }

    /// `(i, j) -> (n+1-i, N+1-j)`.
    pub fn rotate180(&self) -> Matrix {
        let mut out = Matrix::zeros(self.rows, self.cols).expect("nonempty");
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) == 1 {
                    out.set(self.rows - 1 - r, self.cols - 1 - c, 1);
                }
            }
        }
        out
    }

    /// Row-major lexicographic comparison of the cell sequences, with 0 < 1.
    /// Matrices of different shape compare by shape first.
    pub fn lex_cmp(&self, other: &Matrix) -> Ordering {
        (self.rows, self.cols).cmp(&(other.rows, other.cols)).then_with(|| {
            for r in 0..self.rows {
                for c in 0..self.cols {
                    match self.get(r, c).cmp(&other.get(r, c)) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
            }
            Ordering::Equal
        })
    }

    /// Row strings of '0'/'1'.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| self.row_cells(r).map(|b| if b == 1 { '1' } else { '0' }).collect())
            .collect()
    }

    /// Packs a matrix of at most 64 cells into the row-major code used by
    /// the exhaustive search (bit `row * cols + col`).
    pub fn to_code(&self) -> Option<u64> {
        if self.rows * self.cols > 64 {
            return None;
        }
        let mut code = 0u64;
        for r in 0..self.rows {
            for c in 0..self.cols {
                code |= (self.get(r, c) as u64) << (r * self.cols + c);
            }
        }
        Some(code)
    }

    pub fn from_code(rows: usize, cols: usize, code: u64) -> Result<Self> {
        if rows * cols > 64 {
            return Err(Error::InvalidDimensions { rows, cols });
        }
        Self::from_fn(rows, cols, |r, c| ((code >> (r * cols + c)) & 1) as u8)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for line in self.row_strings() {
            writeln!(f, "  {line}")?;
        }
        write!(f, "]")
    }
}

/// Plain text rendering: one line per row, rows joined by `\n`, no trailing
/// newline.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.row_strings().join("\n"))
    }
}

/// Output formats for [`serialize_matrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    Plain,
    Json,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    #[serde(rename = "N")]
    cols: usize,
    rows: Vec<String>,
}

/// Parses the plain format: lines of '0'/'1' of equal length. A single
/// trailing newline is accepted.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() {
        return Err(Error::Format("empty input".into()));
    }
    let mut rows = Vec::new();
    for (i, line) in body.split('\n').enumerate() {
        let row = line
            .chars()
            .map(|ch| match ch {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                other => Err(Error::Format(format!(
                    "line {}: unexpected character {:?}",
                    i + 1,
                    other
                ))),
            })
            .collect::<Result<Vec<u8>>>()?;
        if row.is_empty() {
            return Err(Error::Format(format!("line {} is empty", i + 1)));
        }
        rows.push(row);
    }
    Matrix::from_rows(&rows)
}

/// Parses `{"n": .., "N": .., "rows": [..]}`.
pub fn parse_matrix_json(text: &str) -> Result<Matrix> {
    let raw: MatrixJson =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("invalid matrix JSON: {e}")))?;
    if raw.rows.len() != raw.n {
        return Err(Error::Format(format!("\"n\" is {} but {} rows given", raw.n, raw.rows.len())));
    }
    if let Some((i, r)) = raw.rows.iter().enumerate().find(|(_, r)| r.len() != raw.cols) {
        return Err(Error::Format(format!("row {} has length {}, expected {}", i + 1, r.len(), raw.cols)));
    }
    parse_matrix(&raw.rows.join("\n"))
}

/// Parses either format, sniffing a leading `{` for JSON.
pub fn parse_matrix_any(text: &str) -> Result<Matrix> {
    if text.trim_start().starts_with('{') {
        parse_matrix_json(text)
    } else {
        parse_matrix(text)
    }
}

pub fn serialize_matrix(m: &Matrix, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Plain => m.to_string(),
        MatrixFormat::Json => serde_json::to_string(&MatrixJson {
            n: m.rows(),
            cols: m.cols(),
            rows: m.row_strings(),
        })
        .expect("matrix JSON is infallible"),
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson { n: self.rows, cols: self.cols, rows: self.row_strings() }.serialize(s)
    }
}

/// Each cell independently 1 with probability `density`, drawn from
/// [`RNG_NAME`] seeded with `seed`.
pub fn random_matrix(rows: usize, cols: usize, seed: u64, density: f64) -> Result<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_matrix_with(&mut rng, rows, cols, density)
}

/// Same as [`random_matrix`] but draws from a caller-owned generator, so a
/// stream of matrices can share one seed.
pub fn random_matrix_with<R: Rng>(rng: &mut R, rows: usize, cols: usize, density: f64) -> Result<Matrix> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidDensity(density));
    }
    Matrix::from_fn(rows, cols, |_, _| rng.random_bool(density) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&str]) -> Matrix {
        parse_matrix(&rows.join("\n")).unwrap()
    }

    #[test]
    fn parses_plain_text() {
        let a = parse_matrix("01\n10").unwrap();
        assert_eq!((a.rows(), a.cols()), (2, 2));
        assert_eq!(a, Matrix::from_rows(&[[0, 1], [1, 0]]).unwrap());

        let b = parse_matrix("000").unwrap();
        assert_eq!(b, Matrix::zeros(1, 3).unwrap());
        assert_eq!(parse_matrix("01\n10\n").unwrap(), a);
    }

    #[test]
    fn rejects_malformed_text() {
        assert!(matches!(parse_matrix(""), Err(Error::Format(_))));
        assert!(matches!(parse_matrix("\n"), Err(Error::Format(_))));
        assert!(matches!(parse_matrix("01\n1"), Err(Error::Format(_))));
        assert!(matches!(parse_matrix("012"), Err(Error::Format(_))));
        assert!(matches!(parse_matrix("01 \n10"), Err(Error::Format(_))));
        assert!(matches!(parse_matrix("01\n\n10"), Err(Error::Format(_))));
    }

    #[test]
    fn serializes_both_formats() {
        let a = Matrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(serialize_matrix(&a, MatrixFormat::Plain), "01\n10");
        let one = Matrix::zeros(1, 1).unwrap();
        assert_eq!(serialize_matrix(&one, MatrixFormat::Json), r#"{"n":1,"N":1,"rows":["0"]}"#);
        assert_eq!(parse_matrix_json(&serialize_matrix(&a, MatrixFormat::Json)).unwrap(), a);
        assert!(parse_matrix_json(r#"{"n":2,"N":2,"rows":["01"]}"#).is_err());
        assert!(parse_matrix_json(r#"{"n":1,"N":3,"rows":["01"]}"#).is_err());
    }

    #[test]
    fn symmetry_transforms() {
        let a = Matrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(a.complement(), Matrix::from_rows(&[[1, 0], [0, 1]]).unwrap());
        assert_eq!(Matrix::zeros(3, 70).unwrap().complement(), Matrix::ones(3, 70).unwrap());

        let b = m(&["01", "00"]);
        assert_eq!(b.transpose(), m(&["00", "10"]));
        assert_eq!(b.rotate180(), m(&["00", "10"]));

        let wide = m(&["0110", "1000", "0011"]);
        assert_eq!(wide.transpose().rows(), 4);
        assert_eq!(wide.rotate180(), m(&["1100", "0001", "0110"]));
    }

    #[test]
    fn complement_keeps_padding_canonical() {
        let a = Matrix::zeros(2, 65).unwrap().complement();
        assert_eq!(a.count(1), 130);
        assert_eq!(a.complement(), Matrix::zeros(2, 65).unwrap());
    }

    #[test]
    fn involutions_on_random_matrices() {
        for seed in 0..100 {
            let a = random_matrix(1 + (seed as usize % 7), 1 + (seed as usize % 11), seed, 0.5).unwrap();
            assert_eq!(a.complement().complement(), a);
            assert_eq!(a.transpose().transpose(), a);
            assert_eq!(a.rotate180().rotate180(), a);
        }
    }

    #[test]
    fn random_generation() {
        assert_eq!(random_matrix(3, 3, 7, 0.0).unwrap(), Matrix::zeros(3, 3).unwrap());
        assert_eq!(random_matrix(3, 3, 7, 1.0).unwrap(), Matrix::ones(3, 3).unwrap());
        assert_eq!(random_matrix(4, 9, 42, 0.3).unwrap(), random_matrix(4, 9, 42, 0.3).unwrap());
        assert!(matches!(random_matrix(0, 3, 1, 0.5), Err(Error::InvalidDimensions { .. })));
        assert!(matches!(random_matrix(3, 3, 1, 1.5), Err(Error::InvalidDensity(_))));
    }

    #[test]
    fn code_round_trip() {
        let a = m(&["0110", "1001"]);
        let code = a.to_code().unwrap();
        assert_eq!(code, 0b1001_0110);
        assert_eq!(Matrix::from_code(2, 4, code).unwrap(), a);
    }

    #[test]
    fn positions_render_one_based() {
        let p = Position::new(0, 2);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,3]");
        assert_eq!(serde_json::from_str::<Position>("[1,3]").unwrap(), p);
        assert!(serde_json::from_str::<Position>("[0,3]").is_err());
        assert_eq!(p.to_string(), "(1,3)");
        assert_eq!(p.rotated180(2, 4), Position::new(1, 1));
    }
}
