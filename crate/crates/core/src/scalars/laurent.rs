use num_traits::{One, Zero};

use super::gauss::GaussRational;

/// Laurent polynomial `Σ c[k] q^(low+k)` over the Gaussian rationals.
///
/// Normalized: either `c` is empty (the zero polynomial, `low == 0`) or both
/// `c[0]` and the last entry are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    pub(crate) low: i32,
    pub(crate) c: Vec<GaussRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, c: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(GaussRational::one())
    }

    pub fn constant(a: GaussRational) -> Self {
        LaurentPoly::monomial(a, 0)
    }

    pub fn monomial(a: GaussRational, e: i32) -> Self {
        if a.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly { low: e, c: vec![a] }
        }
    }

    /// Builds from coefficients starting at exponent `low`, normalizing.
    pub fn from_coeffs(low: i32, c: Vec<GaussRational>) -> Self {
        let mut p = LaurentPoly { low, c };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let lead_zeros = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead_zeros > 0 {
            self.c.drain(..lead_zeros);
            self.low += lead_zeros as i32;
        }
        if self.c.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.c.len() == 1
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn high(&self) -> i32 {
        self.low + self.c.len() as i32 - 1
    }

    /// Difference between highest and lowest exponent.
    pub fn span(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.c
    }

    pub fn coeff(&self, e: i32) -> GaussRational {
        let k = e - self.low;
        if k < 0 || k as usize >= self.c.len() {
            GaussRational::zero()
        } else {
            self.c[k as usize].clone()
        }
    }

    pub fn top_coeff(&self) -> &GaussRational {
        self.c.last().expect("top coefficient of zero polynomial")
    }

    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, c: self.c.clone() }
    }

    pub fn with_low(mut self, low: i32) -> Self {
        if !self.is_zero() {
            self.low = low;
        }
        self
    }

    pub fn scale(&self, a: &GaussRational) -> Self {
        if a.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { low: self.low, c: self.c.iter().map(|x| x * a).collect() }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { low: self.low, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_signed(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add_signed(o, true)
    }

    fn add_signed(&self, o: &Self, negate: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let low = self.low.min(o.low);
        let high = self.high().max(o.high());
        let mut c = vec![GaussRational::zero(); (high - low + 1) as usize];
        for (k, x) in self.c.iter().enumerate() {
            c[(self.low - low) as usize + k] = x.clone();
        }
        for (k, x) in o.c.iter().enumerate() {
            let slot = &mut c[(o.low - low) as usize + k];
            if negate {
                *slot -= x;
            } else {
                *slot += x;
            }
        }
        LaurentPoly::from_coeffs(low, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        if o.c.len() == 1 {
            let mut p = self.scale(&o.c[0]);
            p.low += o.low;
            return p;
        }
        if self.c.len() == 1 {
            let mut p = o.scale(&self.c[0]);
            p.low += self.low;
            return p;
        }
        let mut c = vec![GaussRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                c[i + j] += &(x * y);
            }
        }
        LaurentPoly::from_coeffs(self.low + o.low, c)
    }

    /// Substitutes `q -> q^-1`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.c.clone();
        c.reverse();
        LaurentPoly { low: -self.high(), c }
    }

    /// Substitutes `q -> q^d` for `d >= 1`.
    pub fn dilate(&self, d: i32) -> Self {
        assert!(d >= 1);
        if self.is_zero() || d == 1 {
            return self.clone();
        }
        let mut c = vec![GaussRational::zero(); (self.c.len() - 1) * d as usize + 1];
        for (k, x) in self.c.iter().enumerate() {
            c[k * d as usize] = x.clone();
        }
        LaurentPoly { low: self.low * d, c }
    }

    /// Evaluates at `q = q0` (nonzero), exactly.
    pub fn eval(&self, q0: &GaussRational) -> GaussRational {
        if self.is_zero() {
            return GaussRational::zero();
        }
        let mut acc = GaussRational::zero();
        for x in self.c.iter().rev() {
            acc = &acc * q0;
            acc += x;
        }
        let p = q0.pow(self.low as i64).expect("evaluation at q = 0");
        &acc * &p
    }
}

/// Plain polynomial helpers on coefficient vectors (index = degree), used for
/// gcd computations after the monomial shift has been stripped.
pub(crate) mod plain {
    use super::*;

    fn trim(v: &mut Vec<GaussRational>) {
        while v.last().is_some_and(|x| x.is_zero()) {
            v.pop();
        }
    }

    pub fn make_monic(v: &[GaussRational]) -> Vec<GaussRational> {
        let lead = v.last().expect("monic of zero polynomial");
        if lead.is_one() {
            return v.to_vec();
        }
        let inv = lead.inv().unwrap();
        v.iter().map(|x| x * &inv).collect()
    }

    /// Returns `(quotient, remainder)` of `a / b`.
    pub fn divrem(
        a: &[GaussRational],
        b: &[GaussRational],
    ) -> (Vec<GaussRational>, Vec<GaussRational>) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = b.last().unwrap().inv().unwrap();
        let monic_b = lead_inv.is_one();
        let mut quot = vec![GaussRational::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let top = r.last().unwrap();
            let t = if monic_b { top.clone() } else { top * &lead_inv };
            if !t.is_zero() {
                for (k, y) in b.iter().enumerate() {
                    if !y.is_zero() {
                        r[shift + k] -= &(&t * y);
                    }
                }
            }
            quot[shift] = t;
            r.pop();
            trim(&mut r);
        }
        trim(&mut quot);
        (quot, r)
    }

    pub fn div_exact(a: &[GaussRational], b: &[GaussRational]) -> Vec<GaussRational> {
        let (q, r) = divrem(a, b);
        debug_assert!(r.is_empty(), "inexact polynomial division");
        q
    }

    /// Monic gcd; both inputs nonzero.
    pub fn gcd(a: &[GaussRational], b: &[GaussRational]) -> Vec<GaussRational> {
        let (mut x, mut y) = if a.len() >= b.len() {
            (a.to_vec(), b.to_vec())
        } else {
            (b.to_vec(), a.to_vec())
        };
        if y.len() == 1 {
            return vec![GaussRational::one()];
        }
        y = make_monic(&y);
        loop {
            let (_, r) = divrem(&x, &y);
            if r.is_empty() {
                return y;
            }
            if r.len() == 1 {
                return vec![GaussRational::one()];
            }
            x = y;
            y = make_monic(&r);
        }
    }
}
