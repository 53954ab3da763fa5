//! The contravariant form and the norms of the vectors `f2^l f_θ^k 1_λ`.
//!
//! Gram matrices are built recursively from
//! `<f_j u, y> = <u, ω(f_j) y> = -q^{-(α_j, wt u)} <u, e_j y>`
//! with `<1,1> = 1`.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::error::Result;
use crate::highest::ops::e_theta;
use crate::highest::{ModuleTruncation, ModuleVector, Op};
use crate::linalg::{dot, Mat};
use crate::rootsys::{lambda_pairing_in, offset_sub, offsets_of_height, unit, Offset, SIMPLE, THETA};
use crate::scalars::{QField, QLevel, Scalar};
use crate::uqneg::{composite, Composite};

/// Gram matrices of one module, computed lazily.
pub struct GramTable<'a, S> {
    pub module: &'a ModuleTruncation<S>,
    cache: RwLock<BTreeMap<Offset, Arc<Mat<S>>>>,
}

impl<'a, S: Scalar> GramTable<'a, S> {
    pub fn new(module: &'a ModuleTruncation<S>) -> Self {
        GramTable { module, cache: RwLock::new(BTreeMap::new()) }
    }

    /// Gram matrix of the weight space at `o` in its stored basis.
    pub fn gram(&self, o: Offset) -> Result<Arc<Mat<S>>> {
        if let Some(g) = self.cache.read().unwrap().get(&o) {
            return Ok(g.clone());
        }
        let m = self.module;
        let g = match m.space(o)? {
            None => Mat::zeros(0, 0),
            Some(_) if o == [0, 0, 0] => Mat::identity(1),
            Some(s) => {
                let n = s.dim();
                let mut g = Mat::zeros(n, n);
                for (a, (j, u)) in s.origin.iter().enumerate() {
                    let lower = offset_sub(o, unit(*j));
                    let gl = self.gram(lower)?;
                    let ej = s.e[*j].as_ref().expect("origin implies a lower space");
                    // -q^{-(α_j, wt u)}
                    let c = -m.k_value(SIMPLE[*j], lower).try_inv().expect("unit");
                    let left = gl.transpose().mul_vec(u);
                    for b in 0..n {
                        g.set(a, b, dot(&left, &ej.col(b)) * &c);
                    }
                }
                g
            }
        };
        let g = Arc::new(g);
        self.cache.write().unwrap().insert(o, g.clone());
        Ok(g)
    }

    pub fn pair(&self, u: &ModuleVector<S>, v: &ModuleVector<S>) -> Result<S> {
        if u.offset != v.offset {
            return Ok(S::zero());
        }
        let g = self.gram(u.offset)?;
        Ok(dot(&u.coords, &g.mul_vec(&v.coords)))
    }

    /// Kernels of the Gram matrices up to height `n`.
    pub fn radical(&self, n: i32) -> Result<Vec<ModuleVector<S>>> {
        let mut out = Vec::new();
        for h in 0..=n {
            for o in offsets_of_height(h) {
                let g = self.gram(o)?;
                if g.rows() == 0 {
                    continue;
                }
                out.extend(g.kernel().into_iter().map(|c| ModuleVector { offset: o, coords: c }));
            }
        }
        Ok(out)
    }

    /// Offsets up to height `n` whose Gram matrix is not symmetric.
    pub fn asymmetric(&self, n: i32) -> Result<Vec<Offset>> {
        let mut out = Vec::new();
        for h in 0..=n {
            for o in offsets_of_height(h) {
                if !self.gram(o)?.is_symmetric() {
                    out.push(o);
                }
            }
        }
        Ok(out)
    }

    /// `<f_j u, v> - <u, ω(f_j) v>` over basis vectors `u` at `o - α_j`, `v` at `o`.
    pub fn contravariance_defect(&self, o: Offset) -> Result<usize> {
        let m = self.module;
        let mut bad = 0;
        for j in 0..3 {
            let lower = offset_sub(o, unit(j));
            if m.space(lower)?.is_none() {
                continue;
            }
            for a in 0..m.dim(lower)? {
                let u = m.basis_vector(lower, a)?;
                let fu = m.act_f(j, &u)?;
                for b in 0..m.dim(o)? {
                    let v = m.basis_vector(o, b)?;
                    let lhs = self.pair(&fu, &v)?;
                    let rhs = self.pair(&u, &omega_transport(m, j, &v)?)?;
                    if lhs != rhs {
                        bad += 1;
                    }
                }
            }
        }
        Ok(bad)
    }
}

/// `ω(f_{j+1}) v = -q^{-h_{j+1}} e_{j+1} v`.
pub fn omega_transport<S: Scalar>(m: &ModuleTruncation<S>, j: usize, v: &ModuleVector<S>) -> Result<ModuleVector<S>> {
    m.apply(&Op::f(j as u8 + 1).omega(), v)
}

/// Which exponent the `c̃_{l,k-1}` term of the norm recurrence carries:
/// `q^{-λ_θ+l+1}` or `q^{-λ_θ+l-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ExponentVariant {
    Plus,
    Minus,
}

impl ExponentVariant {
    pub fn shift(self) -> i64 {
        match self {
            ExponentVariant::Plus => 1,
            ExponentVariant::Minus => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ExponentVariant::Plus => "l+1",
            ExponentVariant::Minus => "l-1",
        }
    }
}

/// The variant confirmed by the brute-force value at `(1,1)`.
pub const NORM_EXPONENT: ExponentVariant = ExponentVariant::Minus;

fn lam_br<S: Scalar>(f: &QField<S>, gamma: crate::rootsys::Eps, n: i64) -> S {
    crate::highest::lambda_bracket(f, gamma, n, QLevel::ONE)
}

/// `c̃_{l,k}` from the two-term recurrence and its boundary values.
pub fn norm_recurrence<S: Scalar>(f: &QField<S>, l: u32, k: u32, variant: ExponentVariant) -> S {
    let mut t: BTreeMap<(u32, u32), S> = BTreeMap::new();
    let q_lt_inv = lambda_pairing_in(f, THETA).try_inv().unwrap();
    let two = f.qint(2, QLevel::ONE);
    for a in 0..=l {
        for b in 0..=k {
            let v = if a == 0 {
                let mut acc = f.qfact(b, QLevel::ONE) * &powu(&two, b);
                for i in 0..b {
                    acc = acc * &lam_br(f, THETA, -(i as i64));
                }
                acc
            } else if b == 0 {
                let mut acc = f.qfact(a, QLevel::ONE);
                for i in 0..a {
                    acc = acc * &lam_br(f, SIMPLE[1], -(i as i64));
                }
                acc
            } else {
                let kk = f.qint(b as i64, QLevel::ONE);
                let first = t[&(a, b - 1)].clone()
                    * &two
                    * &kk
                    * &kk
                    * &q_lt_inv
                    * &f.q_pow(a as i64 + variant.shift());
                let second = f.q_pow(-(b as i64))
                    * &f.qint(a as i64, QLevel::ONE)
                    * &lam_br(f, SIMPLE[1], 1 - a as i64)
                    * &t[&(a - 1, b)];
                second - &first
            };
            t.insert((a, b), v);
        }
    }
    t[&(l, k)].clone()
}

/// `(c̃_{l,k}, c_{l,k})` from the product formula.
pub fn norm_closed<S: Scalar>(f: &QField<S>, l: u32, k: u32) -> (S, S) {
    let mut ct = f.qfact(l, QLevel::ONE) * &f.qfact(k, QLevel::ONE) * &powu(&f.qint(2, QLevel::ONE), k);
    for i in 0..l {
        ct = ct * &lam_br(f, SIMPLE[1], -(i as i64));
    }
    for i in l..l + k {
        ct = ct * &lam_br(f, THETA, -(i as i64));
    }
    (ct.clone(), closed_prefactor(f, l, k) * &ct)
}

/// `(-1)^{l+k} q^{k(k-5)+lk+l(l-1)} q^{-l(λ,α2)}`.
pub fn closed_prefactor<S: Scalar>(f: &QField<S>, l: u32, k: u32) -> S {
    let (l, k) = (l as i64, k as i64);
    let sign = if (l + k) % 2 == 0 { S::one() } else { -S::one() };
    let ql2 = lambda_pairing_in(f, SIMPLE[1]).try_inv().unwrap();
    sign * &f.q_pow(k * (k - 5) + l * k + l * (l - 1)) * &powu(&ql2, l as u32)
}

/// `f2^l f_θ^k 1_λ`.
pub fn norm_vector<S: Scalar>(m: &ModuleTruncation<S>, l: u32, k: u32) -> Result<ModuleVector<S>> {
    let f = m.field();
    let theta = composite(Composite::Theta, f);
    let mut v = m.highest_vector();
    for _ in 0..k {
        v = m.apply_alg(&theta, &v)?;
    }
    for _ in 0..l {
        v = m.act_f(1, &v)?;
    }
    Ok(v)
}

/// `<1_λ, e_θ^k e2^l f2^l f_θ^k 1_λ>` by acting in `m`.
pub fn ctilde_brute<S: Scalar>(m: &ModuleTruncation<S>, l: u32, k: u32) -> Result<S> {
    let mut v = norm_vector(m, l, k)?;
    for _ in 0..l {
        v = m.act_e(1, &v)?;
    }
    let et = e_theta(m.field());
    for _ in 0..k {
        v = m.apply(&et, &v)?;
    }
    Ok(v.coords[0].clone())
}

/// `<f2^l f_θ^k 1_λ, f2^l f_θ^k 1_λ>` from the Gram matrices.
pub fn c_brute<S: Scalar>(g: &GramTable<'_, S>, l: u32, k: u32) -> Result<S> {
    let v = norm_vector(g.module, l, k)?;
    g.pair(&v, &v)
}

/// One cell of the norm table.
#[derive(Clone, Debug)]
pub struct NormCell<S> {
    pub l: u32,
    pub k: u32,
    pub ctilde_recurrence: S,
    pub ctilde_closed: S,
    pub ctilde_brute: S,
    pub c_closed: S,
    pub c_brute: S,
}

impl<S: Scalar> NormCell<S> {
    /// Recurrence, closed form and action agree on `c̃`.
    pub fn ctilde_match(&self) -> bool {
        self.ctilde_recurrence == self.ctilde_closed && self.ctilde_closed == self.ctilde_brute
    }
}

/// The variant of the recurrence that reproduces the action value at `(1,1)`.
pub fn resolve_exponent<S: Scalar>(m: &ModuleTruncation<S>) -> Result<Option<ExponentVariant>> {
    let b = ctilde_brute(m, 1, 1)?;
    let f = m.field();
    let hits: Vec<_> = [ExponentVariant::Plus, ExponentVariant::Minus]
        .into_iter()
        .filter(|v| norm_recurrence(f, 1, 1, *v) == b)
        .collect();
    Ok(if hits.len() == 1 { Some(hits[0]) } else { None })
}

/// Norm table for `0 ≤ l ≤ lmax`, `0 ≤ k ≤ kmax` on a module realizing `M`.
pub fn norm_table<S: Scalar>(g: &GramTable<'_, S>, lmax: u32, kmax: u32, variant: ExponentVariant) -> Result<Vec<NormCell<S>>> {
    let m = g.module;
    let f = m.field();
    let mut out = Vec::new();
    for l in 0..=lmax {
        for k in 0..=kmax {
            let (ct, c) = norm_closed(f, l, k);
            out.push(NormCell {
                l,
                k,
                ctilde_recurrence: norm_recurrence(f, l, k, variant),
                ctilde_closed: ct,
                ctilde_brute: ctilde_brute(m, l, k)?,
                c_closed: c,
                c_brute: c_brute(g, l, k)?,
            });
        }
    }
    Ok(out)
}

/// `c_brute / c_closed` as a character `(l, k) ↦ a^l b^k` of the grading,
/// which is what rescaling `ω` by one unit per generator produces. Returns
/// `(a, b)` if every cell fits.
pub fn gauge_character<S: Scalar>(cells: &[NormCell<S>]) -> Option<(S, S)> {
    let ratio = |c: &NormCell<S>| Some(c.c_brute.clone() * &c.c_closed.try_inv()?);
    let find = |l, k| cells.iter().find(|c| c.l == l && c.k == k).and_then(ratio);
    let a = find(1, 0).unwrap_or_else(S::one);
    let b = find(0, 1).unwrap_or_else(S::one);
    for c in cells {
        if ratio(c)? != powu(&a, c.l) * &powu(&b, c.k) {
            return None;
        }
    }
    Some((a, b))
}

/// `f1^i f3^j f2^l f_θ^k 1_λ` for all index tuples of degree `≤ n`,
/// with `i, j ≤ l`.
pub fn y_vectors<S: Scalar>(m: &ModuleTruncation<S>, n: i32) -> Result<Vec<([u32; 4], ModuleVector<S>)>> {
    let mut out = Vec::new();
    for k in 0..=(n / 4) as u32 {
        for l in 0..=(n as u32).saturating_sub(4 * k) {
            for i in 0..=l {
                for j in 0..=l {
                    if (i + j + l + 4 * k) as i32 > n {
                        continue;
                    }
                    let mut v = norm_vector(m, l, k)?;
                    for _ in 0..j {
                        v = m.act_f(2, &v)?;
                    }
                    for _ in 0..i {
                        v = m.act_f(0, &v)?;
                    }
                    out.push(([l, k, i, j], v));
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of the y-basis orthogonality scan.
#[derive(Clone, Debug)]
pub struct OrthogonalityReport<S> {
    pub vectors: usize,
    pub off_diagonal_nonzero: usize,
    /// `<y, y>` per `(l, k, i, j)`.
    pub diagonal: BTreeMap<[u32; 4], S>,
}

pub fn y_orthogonality<S: Scalar>(g: &GramTable<'_, S>, n: i32) -> Result<OrthogonalityReport<S>> {
    let ys = y_vectors(g.module, n)?;
    let mut by_offset: BTreeMap<Offset, Vec<usize>> = BTreeMap::new();
    for (a, (_, v)) in ys.iter().enumerate() {
        by_offset.entry(v.offset).or_default().push(a);
    }
    let mut bad = 0;
    let mut diagonal = BTreeMap::new();
    for idx in by_offset.values() {
        for &a in idx {
            for &b in idx {
                let p = g.pair(&ys[a].1, &ys[b].1)?;
                if a == b {
                    diagonal.insert(ys[a].0, p);
                } else if !p.is_zero() {
                    bad += 1;
                }
            }
        }
    }
    Ok(OrthogonalityReport { vectors: ys.len(), off_diagonal_nonzero: bad, diagonal })
}

pub(crate) fn powu<S: Scalar>(x: &S, n: u32) -> S {
    (0..n).fold(S::one(), |acc, _| acc * x)
}

/// `<f^a u, f^a u> / <u, u>` along an `sl2` string through a vector `u`
/// killed by `e`, where `m = (α, wt u)` and `d = (α, α)`.
pub fn string_norm<S: Scalar>(f: &QField<S>, m: i64, d: i64, a: u32) -> S {
    let mut acc = S::one();
    let mut c = S::zero();
    for t in 1..=a as i64 {
        // e f^t u = c_t f^{t-1} u with c_t = Σ_{b<t} [m - d b]
        c = c + &f.qint(m - d * (t - 1), QLevel::ONE);
        acc = acc * &(-f.q_pow(-(m - d * (t - 1)))) * &c;
    }
    acc
}

/// `<y, y> / <u, u>` for `y = f1^i f3^j u`, `u = f2^l f_θ^k 1_λ`.
pub fn y_norm_factor<S: Scalar>(f: &QField<S>, l: u32, i: u32, j: u32) -> S {
    let l = l as i64;
    string_norm(f, 2 * l, 4, j) * &string_norm(f, l, 2, i)
}
