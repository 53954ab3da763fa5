use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gauss::GaussRational;
use super::laurent::{plain, LaurentPoly};
use super::ScalarError;

/// Element of `Q(i)(q)`: a reduced fraction of Laurent polynomials.
///
/// Canonical form: numerator and denominator share no polynomial factor;
/// the denominator has top coefficient 1 and its exponents run over
/// `[-floor(s/2), s - floor(s/2)]` where `s` is its span, so `q - q^-1`
/// stays balanced and a monomial denominator is always `1`. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl QScalar {
    pub fn from_laurent(p: LaurentPoly) -> Self {
        QScalar { num: p, den: LaurentPoly::one() }
    }

    pub fn from_gauss(a: GaussRational) -> Self {
        QScalar::from_laurent(LaurentPoly::constant(a))
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::from_gauss(GaussRational::from_int(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        QScalar::from_gauss(GaussRational::from_ratio(n, d))
    }

    pub fn iota() -> Self {
        QScalar::from_gauss(GaussRational::i())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        QScalar::q_pow(1)
    }

    pub fn q_pow(e: i32) -> Self {
        QScalar::from_laurent(LaurentPoly::monomial(GaussRational::one(), e))
    }

    /// Builds `num/den` and brings it to canonical form.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(reduce(num, den))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(reduce_coprime(self.den.clone(), self.num.clone()))
    }

    /// Substitutes `q -> q^-1`.
    pub fn bar(&self) -> Self {
        reduce_coprime(self.num.bar(), self.den.bar())
    }

    /// Substitutes `q -> q^d`.
    pub fn dilate(&self, d: i32) -> Self {
        reduce_coprime(self.num.dilate(d), self.den.dilate(d))
    }

    /// Exact evaluation at `q = q0`.
    pub fn eval_probe(&self, q0: &GaussRational) -> Result<GaussRational, ScalarError> {
        if q0.is_zero() {
            return Err(ScalarError::PoleAtProbe);
        }
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(ScalarError::PoleAtProbe);
        }
        Ok(&self.num.eval(q0) / &d)
    }

    /// Total size of the representation, used to pick cheap pivots.
    pub fn weight(&self) -> usize {
        self.num.coeffs().len() + self.den.coeffs().len()
    }

    /// If the value is `c·q^e` returns `(c, e)`.
    pub fn as_monomial(&self) -> Option<(GaussRational, i32)> {
        if self.den.is_one() && self.num.is_monomial() {
            Some((self.num.coeffs()[0].clone(), self.num.low()))
        } else {
            None
        }
    }
}

/// Canonical form for inputs already known to be coprime.
fn reduce_coprime(num: LaurentPoly, den: LaurentPoly) -> QScalar {
    if num.is_zero() {
        return QScalar::zero();
    }
    if den.is_monomial() {
        let a = den.coeffs()[0].inv().unwrap();
        let low = num.low() - den.low();
        return QScalar { num: num.scale(&a).with_low(low), den: LaurentPoly::one() };
    }
    normalize_den(num.coeffs().to_vec(), num.low() - den.low(), den.coeffs().to_vec())
}

fn normalize_den(mut n: Vec<GaussRational>, shift: i32, mut d: Vec<GaussRational>) -> QScalar {
    let lead = d.last().unwrap().clone();
    if !lead.is_one() {
        let inv = lead.inv().unwrap();
        for x in n.iter_mut() {
            *x = &*x * &inv;
        }
        for x in d.iter_mut() {
            *x = &*x * &inv;
        }
    }
    let s = ((d.len() - 1) / 2) as i32;
    QScalar {
        num: LaurentPoly::from_coeffs(shift - s, n),
        den: LaurentPoly::from_coeffs(-s, d),
    }
}

fn reduce(num: LaurentPoly, den: LaurentPoly) -> QScalar {
    if num.is_zero() {
        return QScalar::zero();
    }
    if den.is_monomial() {
        return reduce_coprime(num, den);
    }
    let shift = num.low() - den.low();
    let g = plain::gcd(num.coeffs(), den.coeffs());
    if g.len() == 1 {
        return normalize_den(num.coeffs().to_vec(), shift, den.coeffs().to_vec());
    }
    let n = plain::div_exact(num.coeffs(), &g);
    let d = plain::div_exact(den.coeffs(), &g);
    if d.len() == 1 {
        let a = d[0].inv().unwrap();
        let n: Vec<_> = n.iter().map(|x| x * &a).collect();
        return QScalar { num: LaurentPoly::from_coeffs(shift, n), den: LaurentPoly::one() };
    }
    normalize_den(n, shift, d)
}

impl Zero for QScalar {
    fn zero() -> Self {
        QScalar { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QScalar {
    fn one() -> Self {
        QScalar { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }
}

fn add_impl(a: &QScalar, b: &QScalar, negate: bool) -> QScalar {
    let bn = if negate { b.num.neg() } else { b.num.clone() };
    if b.num.is_zero() {
        return a.clone();
    }
    if a.num.is_zero() {
        return QScalar { num: bn, den: b.den.clone() };
    }
    if a.den == b.den {
        let n = a.num.add(&bn);
        if a.den.is_one() {
            return QScalar { num: n, den: LaurentPoly::one() };
        }
        return reduce(n, a.den.clone());
    }
    if a.den.is_one() {
        return reduce_coprime(a.num.mul(&b.den).add(&bn), b.den.clone());
    }
    if b.den.is_one() {
        return reduce_coprime(bn.mul(&a.den).add(&a.num), a.den.clone());
    }
    let g = plain::gcd(a.den.coeffs(), b.den.coeffs());
    if g.len() == 1 {
        let n = a.num.mul(&b.den).add(&bn.mul(&a.den));
        return reduce(n, a.den.mul(&b.den));
    }
    let g = LaurentPoly::from_coeffs(0, g);
    let ad = LaurentPoly::from_coeffs(0, plain::div_exact(a.den.coeffs(), g.coeffs()));
    let bd = LaurentPoly::from_coeffs(0, plain::div_exact(b.den.coeffs(), g.coeffs()));
    let n = a.num.shift(-a.den.low()).mul(&bd).add(&bn.shift(-b.den.low()).mul(&ad));
    reduce(n, ad.mul(&bd).mul(&g))
}

fn mul_impl(a: &QScalar, b: &QScalar) -> QScalar {
    if a.num.is_zero() || b.num.is_zero() {
        return QScalar::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return QScalar { num: a.num.mul(&b.num), den: LaurentPoly::one() };
    }
    if let Some((c, e)) = a.as_monomial() {
        return QScalar { num: b.num.scale(&c).shift(e), den: b.den.clone() };
    }
    if let Some((c, e)) = b.as_monomial() {
        return QScalar { num: a.num.scale(&c).shift(e), den: a.den.clone() };
    }
    // Cross-cancel so that each gcd involves only the smaller factors.
    let (an, bd) = cancel(&a.num, &b.den);
    let (bn, ad) = cancel(&b.num, &a.den);
    reduce_coprime(an.mul(&bn), ad.mul(&bd))
}

fn cancel(n: &LaurentPoly, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    if d.is_monomial() || n.is_monomial() {
        return (n.clone(), d.clone());
    }
    let g = plain::gcd(n.coeffs(), d.coeffs());
    if g.len() == 1 {
        return (n.clone(), d.clone());
    }
    (
        LaurentPoly::from_coeffs(n.low(), plain::div_exact(n.coeffs(), &g)),
        LaurentPoly::from_coeffs(d.low(), plain::div_exact(d.coeffs(), &g)),
    )
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn add(self, o: &QScalar) -> QScalar {
        add_impl(self, o, false)
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn sub(self, o: &QScalar) -> QScalar {
        add_impl(self, o, true)
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn mul(self, o: &QScalar) -> QScalar {
        mul_impl(self, o)
    }
}

impl<'a> Div<&'a QScalar> for &'a QScalar {
    type Output = QScalar;
    fn div(self, o: &QScalar) -> QScalar {
        mul_impl(self, &o.inv().expect("division by zero QScalar"))
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: self.num.neg(), den: self.den }
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, o: QScalar) -> QScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, o: &QScalar) -> QScalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<'a> AddAssign<&'a QScalar> for QScalar {
    fn add_assign(&mut self, o: &QScalar) {
        *self = add_impl(self, o, false);
    }
}

impl<'a> SubAssign<&'a QScalar> for QScalar {
    fn sub_assign(&mut self, o: &QScalar) {
        *self = add_impl(self, o, true);
    }
}

impl<'a> MulAssign<&'a QScalar> for QScalar {
    fn mul_assign(&mut self, o: &QScalar) {
        *self = mul_impl(self, o);
    }
}

// ---------------------------------------------------------------------------
// Text form

fn fmt_poly(p: &LaurentPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let e = p.low() + k as i32;
        let neg = c.is_negative_lead();
        let a = if neg { -c } else { c.clone() };
        if neg {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        first = false;
        if e == 0 {
            write!(f, "{a}")?;
            continue;
        }
        if a == GaussRational::i() {
            write!(f, "i*")?;
        } else if !a.is_one() {
            write!(f, "{a}*")?;
        }
        if e == 1 {
            write!(f, "q")?;
        } else {
            write!(f, "q^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            fmt_poly(&self.num, f)
        } else {
            write!(f, "(")?;
            fmt_poly(&self.num, f)?;
            write!(f, ")/(")?;
            fmt_poly(&self.den, f)?;
            write!(f, ")")
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ScalarError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn err(&self, what: &str) -> ScalarError {
        ScalarError::Parse(format!("{what} at byte {}", self.pos))
    }

    fn digits(&mut self) -> Result<BigInt, ScalarError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn rational(&mut self) -> Result<BigRational, ScalarError> {
        let n = self.digits()?;
        if self.eat(b'/') {
            let d = self.digits()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    /// Coefficient without sign: `3`, `3/2`, `i`, `3i`, `(1-2i)`.
    fn coeff(&mut self) -> Result<GaussRational, ScalarError> {
        if self.eat(b'i') {
            return Ok(GaussRational::i());
        }
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let mut re = self.rational()?;
            if neg {
                re = -re;
            }
            let im_neg = if self.eat(b'-') {
                true
            } else {
                self.expect(b'+')?;
                false
            };
            let mut im = if self.peek() == Some(b'i') { BigRational::one() } else { self.rational()? };
            self.expect(b'i')?;
            self.expect(b')')?;
            if im_neg {
                im = -im;
            }
            return Ok(GaussRational::new(re, im));
        }
        let r = self.rational()?;
        if self.eat(b'i') {
            Ok(GaussRational::new(BigRational::zero(), r))
        } else {
            Ok(GaussRational::new(r, BigRational::zero()))
        }
    }

    fn qpow(&mut self) -> Result<i32, ScalarError> {
        self.expect(b'q')?;
        if !self.eat(b'^') {
            return Ok(1);
        }
        let neg = self.eat(b'-');
        let d = self.digits()?;
        let e: i32 = d.try_into().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -e } else { e })
    }

    fn term(&mut self) -> Result<LaurentPoly, ScalarError> {
        if self.peek() == Some(b'q') {
            let e = self.qpow()?;
            return Ok(LaurentPoly::monomial(GaussRational::one(), e));
        }
        let c = self.coeff()?;
        if self.eat(b'*') {
            let e = self.qpow()?;
            Ok(LaurentPoly::monomial(c, e))
        } else {
            Ok(LaurentPoly::constant(c))
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly, ScalarError> {
        let mut acc = LaurentPoly::zero();
        let mut neg = self.eat(b'-');
        loop {
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }
}

impl FromStr for QScalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bytes = compact.as_bytes();
        // Fraction form `(P)/(P)`.
        let mut cur = Cursor { s: bytes, pos: 0 };
        let frac = (|| {
            cur.expect(b'(')?;
            let n = cur.poly()?;
            cur.expect(b')')?;
            cur.expect(b'/')?;
            cur.expect(b'(')?;
            let d = cur.poly()?;
            cur.expect(b')')?;
            if cur.pos != bytes.len() {
                return Err(cur.err("trailing input"));
            }
            QScalar::from_parts(n, d)
        })();
        if let Ok(x) = frac {
            return Ok(x);
        }
        let mut cur = Cursor { s: bytes, pos: 0 };
        let p = cur.poly()?;
        if cur.pos != bytes.len() {
            return Err(cur.err("trailing input"));
        }
        Ok(QScalar::from_laurent(p))
    }
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
