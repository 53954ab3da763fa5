//! Exact arithmetic in `Q(i)(q)` and q-number utilities.

mod field;
mod gauss;
mod laurent;
mod qscalar;

pub use field::{QField, QLevel, Scalar};
pub use gauss::GaussRational;
pub use laurent::LaurentPoly;
pub use qscalar::QScalar;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("denominator vanishes at probe point")]
    PoleAtProbe,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("q-level must be 1 or 2, got {0}")]
    BadLevel(u8),
    #[error("probe value {0} is 0 or of modulus 1")]
    BadProbe(String),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// `[n]_{q^d}` in the exact field.
pub fn qint(n: i64, level: QLevel) -> QScalar {
    QField::generic().qint(n, level)
}

/// `[1]_{q^d}·…·[n]_{q^d}`, with `qfact(0) = 1`.
pub fn qfact(n: u32, level: QLevel) -> QScalar {
    QField::generic().qfact(n, level)
}

/// `{x}_q = (q^x + q^-x)/(q + q^-1)`.
pub fn balanced(x: i64) -> QScalar {
    QField::generic().balanced(x)
}

/// Evaluates an exact scalar at `q = q0`.
pub fn eval_probe(s: &QScalar, q0: &GaussRational) -> Result<GaussRational, ScalarError> {
    s.eval_probe(q0)
}
