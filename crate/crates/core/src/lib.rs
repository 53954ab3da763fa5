//! Exact computer algebra for the quantum group `U_q(sp(6))`.

pub mod contraform;
pub mod error;
pub mod highest;
pub mod linalg;
pub mod projector;
pub mod rootsys;
pub mod scalars;
pub mod tensorcat;
pub mod uqneg;

pub use error::{AlgebraError, Result};
pub use rootsys::{Eps, Offset, Weight};
pub use scalars::{GaussRational, QField, QLevel, QScalar, Scalar};
