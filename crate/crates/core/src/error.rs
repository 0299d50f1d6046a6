use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial degree {degree} exceeds target degree {target}")]
    DegreeExceeded { degree: usize, target: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("bad size: {0}")]
    BadSize(String),
    #[error("cannot evaluate at the point (0, 0)")]
    ZeroPoint,
    #[error("all polynomials are zero")]
    AllZero,
    #[error("entry ({row}, {col}) is not homogeneous of degree {expected}")]
    NotHomogeneous {
        row: usize,
        col: usize,
        expected: usize,
    },
    #[error("matrix does not have full generic row rank (rank {rank}, expected {expected})")]
    RankDeficient { rank: usize, expected: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("transformation matrix is singular")]
    SingularTransform,
    #[error("syzygy computation did not complete by degree {0}")]
    BudgetExceeded(usize),
    #[error("ell = {ell} is smaller than the McMillan degree {n}")]
    EllTooSmall { ell: usize, n: usize },
    #[error("system is not strictly proper (D must be zero)")]
    NotStrictlyProper,
    #[error("system is not observable")]
    NotObservable,
    #[error("pencil is not admissible")]
    NotAdmissible,
    #[error("pencil is not controllable")]
    NotControllable,
    #[error("system is degenerate")]
    DegenerateSystem,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
