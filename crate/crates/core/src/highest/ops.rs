//! Words in the generators of `U_q(g)`, used as operators on modules.

use std::fmt;

use crate::rootsys::{pairing, Eps, SIMPLE};
use crate::scalars::{QField, Scalar};
use crate::uqneg::AlgElem;

/// A generator. `K(γ)` acts on weight `μ` by `q^{(γ,μ)}`, so `q^{h_i}` is
/// `K(α_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    E(u8),
    F(u8),
    K(Eps),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E(i) => write!(f, "e{i}"),
            Letter::F(i) => write!(f, "f{i}"),
            Letter::K(g) => write!(f, "K{:?}", g),
        }
    }
}

/// A linear combination of products of generators. Products are written
/// left to right and act right to left.
#[derive(Clone, Debug, PartialEq)]
pub struct Op<S> {
    pub terms: Vec<(Vec<Letter>, S)>,
}

impl<S: Scalar> Op<S> {
    pub fn zero() -> Self {
        Op { terms: Vec::new() }
    }

    pub fn scalar(c: S) -> Self {
        Op { terms: vec![(Vec::new(), c)] }
    }

    pub fn one() -> Self {
        Op::scalar(S::one())
    }

    pub fn letter(l: Letter) -> Self {
        Op { terms: vec![(vec![l], S::one())] }
    }

    pub fn e(i: u8) -> Self {
        Op::letter(Letter::E(i))
    }

    pub fn f(i: u8) -> Self {
        Op::letter(Letter::F(i))
    }

    pub fn k(gamma: Eps) -> Self {
        Op::letter(Letter::K(gamma))
    }

    /// `q^{h_i}`.
    pub fn kh(i: u8) -> Self {
        Op::k(SIMPLE[i as usize - 1])
    }

    /// `(K_γ - K_γ^-1)/(q_γ - q_γ^-1)` with `K_γ = K(γ)`, `q_γ = q^d`.
    pub fn bracket(f: &QField<S>, gamma: Eps, d: i64) -> Self {
        let den = (f.q_pow(d) - &f.q_pow(-d)).try_inv().unwrap();
        Op::k(gamma).sub(&Op::k(neg(gamma))).scale(&den)
    }

    pub fn from_alg(x: &AlgElem<S>) -> Self {
        Op {
            terms: x.terms().iter().map(|(w, c)| (w.0.iter().map(|&l| Letter::F(l)).collect(), c.clone())).collect(),
        }
    }

    /// Same as [`Op::from_alg`] with every `f_i` replaced by `e_i`.
    pub fn from_alg_e(x: &AlgElem<S>) -> Self {
        Op {
            terms: x.terms().iter().map(|(w, c)| (w.0.iter().map(|&l| Letter::E(l)).collect(), c.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        Op { terms: t }.simplify()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Op { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, a: &S) -> Self {
        Op { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.clone() * a)).collect() }.simplify()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut t = Vec::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let mut w = a.clone();
                w.extend(b.iter().copied());
                t.push((w, ca.clone() * cb));
            }
        }
        Op { terms: t }.simplify()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Op::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `[x, y]_a = xy - a·yx`.
    pub fn qcomm(x: &Self, y: &Self, a: &S) -> Self {
        x.mul(y).sub(&y.mul(x).scale(a))
    }

    fn simplify(self) -> Self {
        let mut out: Vec<(Vec<Letter>, S)> = Vec::new();
        for (w, c) in self.terms {
            if let Some(e) = out.iter_mut().find(|(v, _)| *v == w) {
                e.1 += &c;
            } else {
                out.push((w, c));
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Op { terms: out }
    }

    /// The anti-involution `ω = σ∘γ`: `ω(e_i) = -f_i K_i`,
    /// `ω(f_i) = -K_i^-1 e_i`, `ω(K) = K`.
    pub fn omega(&self) -> Self {
        let mut acc = Op::zero();
        for (w, c) in &self.terms {
            let mut t = Op::scalar(c.clone());
            for l in w.iter().rev() {
                let img = match *l {
                    Letter::E(i) => Op::f(i).mul(&Op::kh(i)).neg(),
                    Letter::F(i) => Op::k(neg(SIMPLE[i as usize - 1])).mul(&Op::e(i)).neg(),
                    Letter::K(g) => Op::k(g),
                };
                t = t.mul(&img);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Largest number by which a term raises the offset (f-count minus
    /// e-count) at any intermediate step.
    pub fn reach(&self) -> i32 {
        let mut best = 0;
        for (w, _) in &self.terms {
            let mut h = 0i32;
            for l in w.iter().rev() {
                match l {
                    Letter::F(_) => h += 1,
                    Letter::E(_) => h -= 1,
                    Letter::K(_) => {}
                }
                best = best.max(h);
            }
        }
        best
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn neg(g: Eps) -> Eps {
    [-g[0], -g[1], -g[2]]
}

/// `q^{(γ, μ)}` for an integral weight; convenience for tests.
pub fn k_value<S: Scalar>(f: &QField<S>, gamma: Eps, mu: Eps) -> S {
    f.q_pow(pairing(gamma, mu) as i64)
}

/// `e_ξ = [e3,[e2,e1]_q]_{q²}`.
pub fn e_xi<S: Scalar>(f: &QField<S>) -> Op<S> {
    let e21 = Op::qcomm(&Op::e(2), &Op::e(1), f.q());
    Op::qcomm(&Op::e(3), &e21, &f.q_pow(2))
}

/// `e_θ = [e_ξ, e2]_q̄`.
pub fn e_theta<S: Scalar>(f: &QField<S>) -> Op<S> {
    Op::qcomm(&e_xi(f), &Op::e(2), f.q_inv())
}
