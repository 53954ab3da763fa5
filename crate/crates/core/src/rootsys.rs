//! The C3 root datum, the subsystems for κ = sp(4)⊕sp(2) and l, normal
//! orders and pairings against the formal base weight λ.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::scalars::{QField, QLevel, QScalar, Scalar};

/// Integer vector in the orthonormal ε-basis.
pub type Eps = [i32; 3];

/// Nonnegative combination of simple roots, `a1·α1 + a2·α2 + a3·α3`.
pub type Offset = [i32; 3];

pub const ALPHA1: Eps = [1, -1, 0];
pub const ALPHA2: Eps = [0, 1, -1];
pub const ALPHA3: Eps = [0, 0, 2];
pub const SIMPLE: [Eps; 3] = [ALPHA1, ALPHA2, ALPHA3];

/// δ = 2α2 + α3 = 2ε2.
pub const DELTA: Eps = [0, 2, 0];
/// θ = α1 + 2α2 + α3 = ε1 + ε2.
pub const THETA: Eps = [1, 1, 0];
/// ξ = α1 + α2 + α3 = ε1 + ε3.
pub const XI: Eps = [1, 0, 1];
pub const RHO: Eps = [3, 2, 1];

pub const DELTA_OFFSET: Offset = [0, 2, 1];
pub const THETA_OFFSET: Offset = [1, 2, 1];
pub const XI_OFFSET: Offset = [1, 1, 1];

/// Simple roots of κ: α1, δ, α3.
pub const KAPPA_SIMPLE: [Eps; 3] = [ALPHA1, DELTA, ALPHA3];
/// Fundamental weights of κ dual to its simple coroots.
pub const KAPPA_FUNDAMENTAL: [Eps; 3] = [[1, 0, 0], [1, 1, 0], [0, 0, 1]];

pub fn add(a: Eps, b: Eps) -> Eps {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Eps, b: Eps) -> Eps {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(k: i32, a: Eps) -> Eps {
    [k * a[0], k * a[1], k * a[2]]
}

pub fn pairing(a: Eps, b: Eps) -> i32 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// `2(μ,α)/(α,α)`.
pub fn coroot_pairing(mu: Eps, alpha: Eps) -> Ratio<i32> {
    Ratio::new(2 * pairing(mu, alpha), pairing(alpha, alpha))
}

/// Level `d = (α,α)/2` of a root.
pub fn level(alpha: Eps) -> QLevel {
    QLevel::new((pairing(alpha, alpha) / 2) as u8).expect("not a root")
}

pub fn offset_to_eps(o: Offset) -> Eps {
    let mut e = [0; 3];
    for (k, a) in SIMPLE.iter().enumerate() {
        e = add(e, scale(o[k], *a));
    }
    e
}

/// Inverse of [`offset_to_eps`]; `None` off the root lattice.
pub fn eps_to_offset(e: Eps) -> Option<Offset> {
    let a1 = e[0];
    let a2 = e[1] + a1;
    let twice = e[2] + a2;
    if twice % 2 != 0 {
        return None;
    }
    Some([a1, a2, twice / 2])
}

pub fn height(o: Offset) -> i32 {
    o[0] + o[1] + o[2]
}

pub fn is_nonneg(o: Offset) -> bool {
    o.iter().all(|&x| x >= 0)
}

pub fn offset_add(a: Offset, b: Offset) -> Offset {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn offset_sub(a: Offset, b: Offset) -> Offset {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Offset of the simple root `α_{i+1}` (0-based index).
pub fn unit(i: usize) -> Offset {
    let mut o = [0; 3];
    o[i] = 1;
    o
}

/// All nonnegative offsets of height exactly `h`, in lexicographic order.
pub fn offsets_of_height(h: i32) -> Vec<Offset> {
    let mut v = Vec::new();
    for a in 0..=h {
        for b in 0..=h - a {
            v.push([a, b, h - a - b]);
        }
    }
    v
}

/// A weight `λ·[flag] + Σ eps_i ε_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub eps: Eps,
    pub lambda: bool,
}

impl Weight {
    pub fn integral(eps: Eps) -> Self {
        Weight { eps, lambda: false }
    }

    pub fn lambda_plus(eps: Eps) -> Self {
        Weight { eps, lambda: true }
    }

    pub fn add_eps(self, e: Eps) -> Self {
        Weight { eps: add(self.eps, e), lambda: self.lambda }
    }

    pub fn sub_offset(self, o: Offset) -> Self {
        Weight { eps: sub(self.eps, offset_to_eps(o)), lambda: self.lambda }
    }

    /// `q^{(self, γ)}` in the given field; the λ-part uses [`lambda_pairing_in`].
    pub fn q_pairing<S: Scalar>(&self, f: &QField<S>, gamma: Eps) -> S {
        let mut x = f.q_pow(pairing(self.eps, gamma) as i64);
        if self.lambda {
            x *= &lambda_pairing_in(f, gamma);
        }
        x
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.eps[0], self.eps[1], self.eps[2])?;
        if self.lambda {
            write!(f, "+lambda")?;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (body, lambda) = match s.strip_suffix("+lambda") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| format!("malformed weight {s:?}"))?;
        let parts: Vec<i32> = inner
            .split(',')
            .map(|x| x.trim().parse::<i32>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        if parts.len() != 3 {
            return Err(format!("weight needs 3 coordinates: {s:?}"));
        }
        Ok(Weight { eps: [parts[0], parts[1], parts[2]], lambda })
    }
}

/// `q^{(λ,γ)}` with the branch `q^{(λ,ε1)} = q^{(λ,ε2)} = i·q^-1`, `q^{(λ,ε3)} = 1`.
pub fn lambda_pairing_in<S: Scalar>(f: &QField<S>, gamma: Eps) -> S {
    let n = (gamma[0] + gamma[1]) as i64;
    // (i q^-1)^n = i^n q^-n
    let unit = match n.rem_euclid(4) {
        0 => S::one(),
        1 => S::iota(),
        2 => -S::one(),
        _ => -S::iota(),
    };
    unit * &f.q_pow(-n)
}

pub fn lambda_pairing(gamma: Eps) -> QScalar {
    lambda_pairing_in(&QField::generic(), gamma)
}

/// Root data of g = sp(6) and of its subalgebras κ and l.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub positive: Vec<Eps>,
    pub kappa_positive: Vec<Eps>,
    pub l_positive: Vec<Eps>,
    pub simple_g: [Eps; 3],
    pub simple_kappa: [Eps; 3],
    pub simple_l: [Eps; 2],
    pub kappa_fundamental: [Eps; 3],
    pub rho: Eps,
    pub normal_order: Vec<Eps>,
}

/// Fixed normal order: all of R+ minus {α1, α3}, then α1, α3.
pub const NORMAL_ORDER: [Eps; 9] = [
    [0, 1, -1],
    [1, 0, -1],
    [0, 2, 0],
    [1, 1, 0],
    [0, 1, 1],
    [2, 0, 0],
    [1, 0, 1],
    [1, -1, 0],
    [0, 0, 2],
];

/// A second valid normal order with the same R+_{g/l}-first property.
pub const ALT_NORMAL_ORDER: [Eps; 9] = [
    [0, 1, -1],
    [0, 2, 0],
    [0, 1, 1],
    [1, 1, 0],
    [1, 0, -1],
    [2, 0, 0],
    [1, 0, 1],
    [0, 0, 2],
    [1, -1, 0],
];

pub fn positive_roots() -> Vec<Eps> {
    let mut r = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let mut a = [0; 3];
            a[i] = 1;
            a[j] = -1;
            r.push(a);
            a[j] = 1;
            r.push(a);
        }
        let mut a = [0; 3];
        a[i] = 2;
        r.push(a);
    }
    r
}

pub fn root_systems() -> RootDatum {
    let positive = positive_roots();
    let kappa_positive = vec![[1, -1, 0], [1, 1, 0], [2, 0, 0], [0, 2, 0], [0, 0, 2]];
    let l_positive = vec![ALPHA1, ALPHA3];
    let mut twice_rho = [0; 3];
    for r in &positive {
        twice_rho = add(twice_rho, *r);
    }
    let rho = [twice_rho[0] / 2, twice_rho[1] / 2, twice_rho[2] / 2];
    RootDatum {
        positive,
        kappa_positive,
        l_positive,
        simple_g: SIMPLE,
        simple_kappa: KAPPA_SIMPLE,
        simple_l: [ALPHA1, ALPHA3],
        kappa_fundamental: KAPPA_FUNDAMENTAL,
        rho,
        normal_order: NORMAL_ORDER.to_vec(),
    }
}

/// Checks that every positive root that is a sum of two positive roots
/// sits strictly between them in `order`.
pub fn is_normal_order(order: &[Eps]) -> bool {
    let pos = |r: Eps| order.iter().position(|x| *x == r);
    if order.len() != 9 || positive_roots().iter().any(|r| pos(*r).is_none()) {
        return false;
    }
    for (i, a) in order.iter().enumerate() {
        for b in &order[i + 1..] {
            let s = add(*a, *b);
            if let Some(k) = pos(s) {
                let (lo, hi) = (i.min(pos(*b).unwrap()), i.max(pos(*b).unwrap()));
                if !(lo < k && k < hi) {
                    return false;
                }
            }
        }
    }
    true
}

/// Positive roots in simple-root coordinates.
pub fn positive_root_offsets() -> Vec<Offset> {
    positive_roots()
        .into_iter()
        .map(|r| eps_to_offset(r).unwrap())
        .collect()
}

/// Coefficients of `∏_{β∈roots} (1 - x^β)^{-1}` for all offsets up to height
/// `max_height`.
pub fn partition_table(roots: &[Offset], max_height: i32) -> BTreeMap<Offset, u64> {
    let mut all: Vec<Offset> = (0..=max_height).flat_map(offsets_of_height).collect();
    all.sort_by_key(|o| (height(*o), *o));
    let mut t: BTreeMap<Offset, u64> = all.iter().map(|o| (*o, 0)).collect();
    t.insert([0, 0, 0], 1);
    for beta in roots {
        for o in &all {
            let prev = offset_sub(*o, *beta);
            if is_nonneg(prev) {
                let add = t[&prev];
                *t.get_mut(o).unwrap() += add;
            }
        }
    }
    t
}

/// Kostant partition function of C3 up to the given height.
pub fn kostant_table(max_height: i32) -> BTreeMap<Offset, u64> {
    partition_table(&positive_root_offsets(), max_height)
}

/// Element of the Weyl group of κ: optional swap of (ε1, ε2) followed by
/// sign changes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedPerm {
    pub swap: bool,
    pub signs: [i32; 3],
}

impl SignedPerm {
    pub fn apply(&self, e: Eps) -> Eps {
        let (a, b) = if self.swap { (e[1], e[0]) } else { (e[0], e[1]) };
        [self.signs[0] * a, self.signs[1] * b, self.signs[2] * e[2]]
    }

    /// Determinant, i.e. the sign character of the Weyl group.
    pub fn sign(&self) -> i32 {
        let s = self.signs[0] * self.signs[1] * self.signs[2];
        if self.swap {
            -s
        } else {
            s
        }
    }
}

/// The Weyl group of κ (order 16).
pub fn kappa_weyl_group() -> Vec<SignedPerm> {
    let mut out = Vec::new();
    for swap in [false, true] {
        for s1 in [1, -1] {
            for s2 in [1, -1] {
                for s3 in [1, -1] {
                    out.push(SignedPerm { swap, signs: [s1, s2, s3] });
                }
            }
        }
    }
    out
}
