//! Longest homogeneous staircases in 0/1 matrices.
//!
//! A *v-staircase* of a 0/1 matrix is a sequence of cells holding `v`, each
//! strictly to the right of its predecessor in the same row or strictly below
//! it in the same column. This crate computes longest staircases exactly
//! (optionally with a limit on turning points), builds the known extremal
//! matrices, extracts explicit witnesses for the known lower bounds, and runs
//! exhaustive searches for the extremal functions
//! `st(n, N) = min max(st0, st1)` and `Σ(n, N) = min (st0 + st1)`.
//!
//! ```
//! use staircase::{constructions::build_p, longest::st_profile};
//!
//! let p = build_p(6, 8).unwrap();
//! let profile = st_profile(&p);
//! assert_eq!((profile.st0, profile.st1, profile.sigma), (3, 7, 10));
//! ```

pub mod constructions;
pub mod error;
pub mod longest;
pub mod matrix;
pub mod search;
pub mod staircase;
pub mod witness;

pub use error::{Error, Result};
pub use longest::{longest_value_staircase, st_profile, StProfile, TurnBudget};
pub use matrix::{parse_matrix, random_matrix, serialize_matrix, Matrix, MatrixFormat, Position};
pub use staircase::{validate_staircase, Staircase};
