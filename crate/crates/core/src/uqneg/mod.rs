//! The free algebra on `f1, f2, f3`, the quantum Serre ideal, normal forms in
//! `U_q(n-)`, composite root vectors and the identity catalog.

mod catalog;
mod engine;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rootsys::{offset_to_eps, Offset};
use crate::scalars::{QField, Scalar};


pub use catalog::{catalog_keys, j_generators, jacobi_fuzz, jacobi_residual, verify_identity, IdentityKind, IdentityReport, CATALOG_VERSION};
pub use engine::{SerreIdealBasis, SerreQuotient, WeightData};

/// A word in the generators; letters are `1`, `2`, `3`.
///
/// Ordered by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u8) -> Self {
        assert!((1..=3).contains(&i));
        Word(vec![i])
    }

    pub fn from_letters(l: &[u8]) -> Self {
        assert!(l.iter().all(|i| (1..=3).contains(i)));
        Word(l.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Word(v)
    }

    /// Positive weight `Σ α_letter` in simple-root coordinates.
    pub fn offset(&self) -> Offset {
        let mut o = [0; 3];
        for &l in &self.0 {
            o[l as usize - 1] += 1;
        }
        o
    }

    /// All words with the given letter counts, in increasing order.
    pub fn all_of_offset(o: Offset) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(left: [i32; 3], cur: &mut Vec<u8>, out: &mut Vec<Word>) {
            if left == [0, 0, 0] {
                out.push(Word(cur.clone()));
                return;
            }
            for i in 0..3 {
                if left[i] > 0 {
                    let mut l = left;
                    l[i] -= 1;
                    cur.push(i as u8 + 1);
                    rec(l, cur, out);
                    cur.pop();
                }
            }
        }
        rec(o, &mut cur, &mut out);
        out
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&o.0.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "f{l}")?;
        }
        Ok(())
    }
}

/// Finite linear combination of words.
#[derive(Clone, PartialEq, Debug)]
pub struct AlgElem<S> {
    terms: BTreeMap<Word, S>,
}

impl<S: Scalar> AlgElem<S> {
    pub fn zero() -> Self {
        AlgElem { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        AlgElem::word(Word::empty(), S::one())
    }

    pub fn word(w: Word, c: S) -> Self {
        let mut e = AlgElem::zero();
        e.add_term(w, c);
        e
    }

    /// The generator `f_i`.
    pub fn gen(i: u8) -> Self {
        AlgElem::word(Word::letter(i), S::one())
    }

    /// Product of generators `f_{l0} f_{l1} …`.
    pub fn monomial(letters: &[u8]) -> Self {
        AlgElem::word(Word::from_letters(letters), S::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, S)>) -> Self {
        let mut e = AlgElem::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, S> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common offset of all words, or `None` if inhomogeneous or zero.
    pub fn offset(&self) -> Option<Offset> {
        let mut it = self.terms.keys().map(|w| w.offset());
        let first = it.next()?;
        it.all(|o| o == first).then_some(first)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut e = self.clone();
        for (w, c) in &o.terms {
            e.add_term(w.clone(), c.clone());
        }
        e
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut e = self.clone();
        for (w, c) in &o.terms {
            e.add_term(w.clone(), -c.clone());
        }
        e
    }

    pub fn scale(&self, a: &S) -> Self {
        if a.is_zero() {
            return AlgElem::zero();
        }
        AlgElem { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.clone() * a)).collect() }
    }

    pub fn neg(&self) -> Self {
        AlgElem { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut e = AlgElem::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                e.add_term(w1.concat(w2), c1.clone() * c2);
            }
        }
        e
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = AlgElem::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> AlgElem<T> {
        AlgElem::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }
}

impl<S: Scalar> fmt::Display for AlgElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{w}")?;
        }
        Ok(())
    }
}

/// `[x, y]_a = xy - a·yx`.
pub fn qcomm<S: Scalar>(x: &AlgElem<S>, y: &AlgElem<S>, a: &S) -> AlgElem<S> {
    x.mul(y).sub(&y.mul(x).scale(a))
}

/// Positive weight of a homogeneous element as an ε-vector.
pub fn weight_eps<S: Scalar>(x: &AlgElem<S>) -> Option<crate::rootsys::Eps> {
    x.offset().map(offset_to_eps)
}

/// The four quantum Serre relations in the `f`'s:
/// `[f1,[f1,f2]_q]_q̄`, `[f2,[f2,f1]_q]_q̄`, `[f2,[f2,[f2,f3]_{q²}]]_{q̄²}` and
/// `[f3,[f3,f2]_{q²}]_{q̄²}`.
pub fn serre_relations_f<S: Scalar>(f: &QField<S>) -> Vec<AlgElem<S>> {
    let (f1, f2, f3) = (AlgElem::gen(1), AlgElem::gen(2), AlgElem::gen(3));
    let q = f.q().clone();
    let qb = f.q_inv().clone();
    let q2 = f.q_pow(2);
    let qb2 = f.q_pow(-2);
    vec![
        qcomm(&f1, &qcomm(&f1, &f2, &q), &qb),
        qcomm(&f2, &qcomm(&f2, &f1, &q), &qb),
        qcomm(&f2, &qcomm(&f2, &qcomm(&f2, &f3, &q2), &S::one()), &qb2),
        qcomm(&f3, &qcomm(&f3, &f2, &q2), &qb2),
    ]
}

/// Serre relations plus the commutation `[f1, f3]`: generators of the
/// two-sided ideal defining `U_q(n-)`.
pub fn ideal_generators<S: Scalar>(f: &QField<S>) -> Vec<AlgElem<S>> {
    let mut v = serre_relations_f(f);
    v.push(qcomm(&AlgElem::gen(1), &AlgElem::gen(3), &S::one()));
    v
}

/// The two relations exactly as typeset with indices 2 and 3 as printed:
/// `[f3,[f3,[f3,f2]_{q²}]]_{q̄²}` and `[f2,[f2,f3]_q]_q̄`. They are not
/// relations of `U_q(sp(6))` for α3 long; kept to demonstrate that.
pub fn misprinted_relations<S: Scalar>(f: &QField<S>) -> Vec<AlgElem<S>> {
    let (f2, f3) = (AlgElem::gen(2), AlgElem::gen(3));
    vec![
        qcomm(&f3, &qcomm(&f3, &qcomm(&f3, &f2, &f.q_pow(2)), &S::one()), &f.q_pow(-2)),
        qcomm(&f2, &qcomm(&f2, &f3, f.q()), f.q_inv()),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Composite {
    Delta,
    Xi,
    Theta,
    ThetaBar,
    Nu,
    F12,
    F23,
}

impl Composite {
    pub const ALL: [Composite; 7] = [
        Composite::Delta,
        Composite::Xi,
        Composite::Theta,
        Composite::ThetaBar,
        Composite::Nu,
        Composite::F12,
        Composite::F23,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Composite::Delta => "delta",
            Composite::Xi => "xi",
            Composite::Theta => "theta",
            Composite::ThetaBar => "theta_bar",
            Composite::Nu => "nu",
            Composite::F12 => "f12",
            Composite::F23 => "f23",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Composite::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Composite root vectors expanded in the free algebra.
///
/// `f_δ = f2²f3 - (q²+q̄²) f2f3f2 + f3f2²`, `f12 = f_ν = [f1,f2]_q̄`,
/// `f23 = [f2,f3]_{q̄²}`, `f_ξ = [f12, f3]_{q̄²}`, `f_θ = [f2, f_ξ]_q`, and
/// `f̄_θ` is `f_θ` with `q ↦ q̄`.
pub fn composite<S: Scalar>(name: Composite, f: &QField<S>) -> AlgElem<S> {
    let (f1, f2, f3) = (AlgElem::<S>::gen(1), AlgElem::<S>::gen(2), AlgElem::<S>::gen(3));
    match name {
        Composite::Delta => {
            let mid = -(f.q_pow(2) + &f.q_pow(-2));
            AlgElem::monomial(&[2, 2, 3])
                .add(&AlgElem::monomial(&[2, 3, 2]).scale(&mid))
                .add(&AlgElem::monomial(&[3, 2, 2]))
        }
        Composite::Nu | Composite::F12 => qcomm(&f1, &f2, f.q_inv()),
        Composite::F23 => qcomm(&f2, &f3, &f.q_pow(-2)),
        Composite::Xi => qcomm(&composite(Composite::F12, f), &f3, &f.q_pow(-2)),
        Composite::Theta => qcomm(&f2, &composite(Composite::Xi, f), f.q()),
        Composite::ThetaBar => composite(Composite::Theta, &f.bar()),
    }
}
