use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::gauss::GaussRational;
use super::qscalar::QScalar;
use super::ScalarError;

/// Coefficient field used by every algorithm in the crate.
///
/// Implemented by the exact field [`QScalar`] (q an indeterminate) and by
/// [`GaussRational`] (q specialised to a probe value).
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    fn iota() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_gauss(g: &GaussRational) -> Self;
    fn try_inv(&self) -> Option<Self>;
    /// Rough size, used to prefer small pivots during elimination.
    fn cost(&self) -> usize {
        1
    }
}

impl Scalar for QScalar {
    fn iota() -> Self {
        QScalar::iota()
    }
    fn from_i64(n: i64) -> Self {
        QScalar::from_int(n)
    }
    fn from_gauss(g: &GaussRational) -> Self {
        QScalar::from_gauss(g.clone())
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn cost(&self) -> usize {
        self.weight()
    }
}

impl Scalar for GaussRational {
    fn iota() -> Self {
        GaussRational::i()
    }
    fn from_i64(n: i64) -> Self {
        GaussRational::from_int(n)
    }
    fn from_gauss(g: &GaussRational) -> Self {
        g.clone()
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
    fn cost(&self) -> usize {
        (self.re.numer().bits() + self.re.denom().bits() + self.im.numer().bits() + self.im.denom().bits())
            as usize
    }
}

/// The base `q_α = q^d` of a q-number; `d = (α,α)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QLevel(u8);

impl QLevel {
    pub const ONE: QLevel = QLevel(1);
    pub const TWO: QLevel = QLevel(2);

    pub fn new(d: u8) -> Result<Self, ScalarError> {
        match d {
            1 | 2 => Ok(QLevel(d)),
            _ => Err(ScalarError::BadLevel(d)),
        }
    }

    pub fn get(self) -> i64 {
        self.0 as i64
    }
}

/// A field together with a chosen value of `q` (and its inverse).
///
/// For exact work `q` is the indeterminate; in probe mode it is a rational.
/// [`QField::bar`] swaps the roles of `q` and `q^-1`.
#[derive(Clone, Debug)]
pub struct QField<S> {
    q: S,
    q_inv: S,
}

impl QField<QScalar> {
    pub fn generic() -> Self {
        QField { q: QScalar::q(), q_inv: QScalar::q_pow(-1) }
    }
}

impl QField<GaussRational> {
    /// Probe field at `q = q0`; rejects `0` and `±1`, `±i` (roots of unity of
    /// small order that collapse q-integers).
    pub fn probe(q0: GaussRational) -> Result<Self, ScalarError> {
        let bad = q0.is_zero() || q0.norm_sq().is_one();
        if bad {
            return Err(ScalarError::BadProbe(q0.to_string()));
        }
        let q_inv = q0.inv().unwrap();
        Ok(QField { q: q0, q_inv })
    }
}

impl<S: Scalar> QField<S> {
    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn q_inv(&self) -> &S {
        &self.q_inv
    }

    /// The field with `q` replaced by `q^-1`.
    pub fn bar(&self) -> Self {
        QField { q: self.q_inv.clone(), q_inv: self.q.clone() }
    }

    pub fn q_pow(&self, e: i64) -> S {
        let (base, mut n) = if e < 0 { (&self.q_inv, e.unsigned_abs()) } else { (&self.q, e as u64) };
        let mut acc = S::one();
        let mut sq = base.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc *= &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = sq.clone() * &sq;
            }
        }
        acc
    }

    /// `[n]_{q^d}` as the finite sum `Σ q^{d(n-1-2k)}`.
    pub fn qint(&self, n: i64, level: QLevel) -> S {
        if n < 0 {
            return -self.qint(-n, level);
        }
        let d = level.get();
        let mut acc = S::zero();
        for k in 0..n {
            acc += &self.q_pow(d * (n - 1 - 2 * k));
        }
        acc
    }

    pub fn qfact(&self, n: u32, level: QLevel) -> S {
        let mut acc = S::one();
        for k in 1..=n as i64 {
            acc *= &self.qint(k, level);
        }
        acc
    }

    /// `{x}_q = (q^x + q^-x)/(q + q^-1)`.
    pub fn balanced(&self, x: i64) -> S {
        let num = self.q_pow(x) + &self.q_pow(-x);
        let den = self.q.clone() + &self.q_inv;
        num / den
    }

    /// Given `K = q_α^x` (possibly involving λ), returns `[x]_{q_α} = (K - K^-1)/(q_α - q_α^-1)`.
    pub fn bracket_of(&self, k: &S, level: QLevel) -> S {
        let d = level.get();
        let kinv = k.try_inv().expect("bracket of zero");
        (k.clone() - &kinv) / (self.q_pow(d) - &self.q_pow(-d))
    }
}
