//! Explicit extremal matrices and the closed-form values they attain.
//!
//! * `P(n, N)` minimizes `st0 + st1`: zeros fill the upper-left and
//!   lower-right corner triangles, ones everywhere else.
//! * `Q(n, N)`, for `N >= floor(5n/2) - 1`, attains the exact minimum of `st`.
//! * `R(n, N)`, for `n < N < floor(5n/2) - 1`, gives the best known upper
//!   bound on the minimum of `st`.
//!
//! Builders evaluate the defining predicates cell by cell with one-based
//! indices `i` (row) and `j` (column).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    P,
    Q,
    R,
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "P" | "p" => Ok(Family::P),
            "Q" | "q" => Ok(Family::Q),
            "R" | "r" => Ok(Family::R),
            other => Err(format!("unknown family {other:?}, expected P, Q or R")),
        }
    }
}

/// `floor(5n/2) - 1`, the smallest width of the wide regime.
pub fn wide_threshold(n: usize) -> usize {
    (5 * n / 2).saturating_sub(1)
}

pub fn in_q_range(n: usize, cols: usize) -> bool {
    n >= 1 && cols >= n && cols >= wide_threshold(n)
}

pub fn in_r_range(n: usize, cols: usize) -> bool {
    n >= 1 && n < cols && cols < wide_threshold(n)
}

fn out_of_range(n: usize, cols: usize, requirement: &str) -> Error {
    Error::OutOfRange { n, cols, requirement: requirement.to_string() }
}

pub fn check_range(family: Family, n: usize, cols: usize) -> Result<()> {
    match family {
        Family::P if n >= 1 && n <= cols => Ok(()),
        Family::P => Err(out_of_range(n, cols, "1 <= n <= N")),
        Family::Q if in_q_range(n, cols) => Ok(()),
        Family::Q => Err(out_of_range(n, cols, "N >= floor(5n/2) - 1")),
        Family::R if in_r_range(n, cols) => Ok(()),
        Family::R => Err(out_of_range(n, cols, "n < N < floor(5n/2) - 1")),
    }
}

pub fn build(family: Family, n: usize, cols: usize) -> Result<Matrix> {
    match family {
        Family::P => build_p(n, cols),
        Family::Q => build_q(n, cols),
        Family::R => build_r(n, cols),
    }
}

/// Zero exactly on the cells with `i + j <= floor(n/2) + 1` or
/// `i + j >= floor(n/2) + N + 1`.
pub fn build_p(n: usize, cols: usize) -> Result<Matrix> {
    check_range(Family::P, n, cols)?;
    let low = n / 2 + 1;
    let high = n / 2 + cols + 1;
    Matrix::from_fn(n, cols, |r, c| {
        let s = (r + 1) + (c + 1);
        u8::from(!(s <= low || s >= high))
    })
}

pub fn build_q(n: usize, cols: usize) -> Result<Matrix> {
    check_range(Family::Q, n, cols)?;
    let h = n.div_ceil(2);
    let width = (h + cols - 1) / 2;
    Matrix::from_fn(n, cols, |r, c| {
        let (i, j) = (r + 1, c + 1);
        let s = i + j;
        let one = (i <= h && s <= h + 1)
            || (i <= h && h + width + 1 < s)
            || (i > h && h + cols - width < s && s <= h + cols);
        u8::from(one)
    })
}

pub fn build_r(n: usize, cols: usize) -> Result<Matrix> {
    check_range(Family::R, n, cols)?;
    let h = n.div_ceil(2);
    let (left, middle, right) = r_blocks(n, cols);
    Matrix::from_fn(n, cols, |r, c| {
        let (i, j) = (r + 1, c + 1);
        let s = i + j;
        let one = (i <= h && s <= left + 1)
            || (i <= h && left + middle + 1 < s)
            || (i > h && n + left < s && s <= n + cols - right);
        u8::from(one)
    })
}

/// Widths of the three column blocks of `R(n, N)`:
/// `floor((N-n+2)/3)`, `ceil((2n+N-2)/3)`, `ceil((N-n-1)/3)`.
pub fn r_blocks(n: usize, cols: usize) -> (usize, usize, usize) {
    debug_assert!(cols > n);
    ((cols - n).div_ceil(3), (2 * n + cols - 2).div_ceil(3), (cols - n - 1).div_ceil(3))
}

/// `ceil(n/2) + N - 1`, the value of `st0 + st1` on `P(n, N)`.
pub fn formula_sigma_p(n: usize, cols: usize) -> Result<usize> {
    check_range(Family::P, n, cols)?;
    Ok(n.div_ceil(2) + cols - 1)
}

/// `ceil((ceil(n/2) + N - 1) / 2)`.
pub fn formula_st_q(n: usize, cols: usize) -> Result<usize> {
    check_range(Family::Q, n, cols)?;
    Ok(half_sigma(n, cols))
}

/// `ceil((2n + N - 2) / 3)`.
pub fn formula_st_r(n: usize, cols: usize) -> Result<usize> {
    check_range(Family::R, n, cols)?;
    Ok((2 * n + cols - 2).div_ceil(3))
}

fn half_sigma(n: usize, cols: usize) -> usize {
    (n.div_ceil(2) + cols - 1).div_ceil(2)
}

/// Lower bound on `st(M)` implied by the exact minimum of `st0 + st1`:
/// `ceil((ceil(n/2) + N - 1) / 2)`, with the shape oriented so `n <= N`.
pub fn st_lower_bound_from_sigma(n: usize, cols: usize) -> usize {
    let (n, cols) = (n.min(cols), n.max(cols));
    half_sigma(n, cols)
}

/// How much is known about an upper bound returned by [`st_upper_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundStatus {
    /// Matches the lower bound, so it is the exact extremal value.
    ProvedExact,
    /// Attained by an explicit matrix; optimality unknown.
    UpperBoundOnly,
    /// Square case, `n - 1`, relying on the open conjecture.
    Conjectured,
}

impl BoundStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundStatus::ProvedExact => "proved-exact",
            BoundStatus::UpperBoundOnly => "upper-bound-only",
            BoundStatus::Conjectured => "conjectured",
        }
    }
}

/// Best available upper bound on the minimum of `st` over `n × N` matrices.
/// The shape is oriented so that `n <= N`.
pub fn st_upper_bound(n: usize, cols: usize) -> (usize, BoundStatus) {
    let (n, cols) = (n.min(cols), n.max(cols));
    if cols >= wide_threshold(n) {
        (half_sigma(n, cols), BoundStatus::ProvedExact)
    } else if n < cols {
        ((2 * n + cols - 2).div_ceil(3), BoundStatus::UpperBoundOnly)
    } else {
        (n - 1, BoundStatus::Conjectured)
    }
}
