use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("matrix format error: {0}")]
    Format(String),
    #[error("invalid dimensions {rows}x{cols}")]
    InvalidDimensions { rows: usize, cols: usize },
    #[error("density {0} outside [0, 1]")]
    InvalidDensity(f64),
    #[error("({n}, {cols}) outside the construction range: {requirement}")]
    OutOfRange { n: usize, cols: usize, requirement: String },
    #[error("instance has {cells} cells, limit is {limit}")]
    TooLarge { cells: usize, limit: usize },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("the witness trace never reached the branch with all four corner staircases")]
    BranchNotReached,
}
