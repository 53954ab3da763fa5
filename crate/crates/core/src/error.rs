use thiserror::Error;

use crate::rootsys::Offset;
use crate::scalars::ScalarError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("degree bound exceeded: offset {offset:?} has height {height} > bound {bound}")]
    DegreeBound { offset: Offset, height: i32, bound: i32 },
    #[error("weight-space dimension {found} at offset {offset:?} differs from the PBW count {expected}")]
    DimensionMismatch { offset: Offset, found: usize, expected: u64 },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("input not singular: e{generator} does not annihilate it")]
    NotSingular { generator: usize },
    #[error("no singular vector at expected weight offset {0:?}")]
    NoSingularVector(Offset),
    #[error("singular space dimension {dim} > 1 at offset {offset:?}")]
    SingularDimension { offset: Offset, dim: usize },
    #[error("pole at weight {0}")]
    Pole(String),
    #[error("zero denominator at {0}")]
    ZeroDenominator(String),
    #[error("no consistent gauge: {0}")]
    NoConsistentGauge(String),
    #[error("unknown catalog key {0:?}")]
    UnknownKey(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
