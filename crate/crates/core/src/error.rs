use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("frame not affinely independent")]
    FrameNotIndependent,
    #[error("not invertible")]
    NotInvertible,
    #[error("no exact rational realization of the regular {0}-gon; use the models module or float corpus")]
    NoRationalRealization(usize),
    #[error("point not in set")]
    PointNotInSet,
    #[error("points not pairwise distinct")]
    DuplicatePoints,
    #[error("effect constant; no hyperplane")]
    EffectConstant,
    #[error("not full-dimensional; re-embed")]
    NotFullDimensional,
    #[error("not an extreme point of the {0}")]
    NotExtremePoint(&'static str),
    #[error("point outside the {0}")]
    OutsideModel(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
