//! The six-dimensional module `V`, tensor products `V ⊗ M_i`, their
//! singular vectors, and classical characters of κ = sp(4) ⊕ sp(2).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::contraform::GramTable;
use crate::error::{AlgebraError, Result};
use crate::highest::{build_irreducible, defining_relations, zeta, Letter, ModuleTruncation, ModuleVector, Op};
use crate::linalg::Mat;
use crate::rootsys::{
    add, eps_to_offset, is_nonneg, kappa_weyl_group, offset_add, offset_sub, offset_to_eps, offsets_of_height,
    pairing, sub, unit, Eps, Offset, SIMPLE,
};
use crate::scalars::{QField, Scalar};
use crate::uqneg::{composite, Composite};

/// Basis order of `V`: `v1, v2, v3, v-3, v-2, v-1`.
pub const V_WEIGHTS: [Eps; 6] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, -1], [0, -1, 0], [-1, 0, 0]];
pub const V_LABELS: [&str; 6] = ["v1", "v2", "v3", "v-3", "v-2", "v-1"];

/// `e_{i+1}` edges `(from, to)` of the chain `v-1 → v-2 → v-3 → v3 → v2 → v1`.
const E_EDGES: [&[(usize, usize)]; 3] = [&[(5, 4), (1, 0)], &[(4, 3), (2, 1)], &[(3, 2)]];

/// `V` with exact generator matrices and the diagonal contravariant form.
#[derive(Clone, Debug)]
pub struct FundamentalV<S> {
    pub field: QField<S>,
    pub e: [Mat<S>; 3],
    pub f: [Mat<S>; 3],
    /// `<v_a, v_a>`; the basis is orthogonal.
    pub norms: Vec<S>,
}

fn bracket_at<S: Scalar>(f: &QField<S>, i: usize, w: Eps) -> S {
    f.bracket_of(&f.q_pow(pairing(SIMPLE[i], w) as i64), crate::scalars::QLevel::ONE)
}

/// Builds `V`: every `e`-edge scalar is 1, `f` on the top of each edge is
/// `[(α_i, wt top)]_q` times the bottom. Relations, `e_k² = 0` and
/// contravariance of the computed norms are verified.
pub fn build_v<S: Scalar>(field: &QField<S>) -> Result<FundamentalV<S>> {
    let mut e: [Mat<S>; 3] = [Mat::zeros(6, 6), Mat::zeros(6, 6), Mat::zeros(6, 6)];
    let mut f: [Mat<S>; 3] = [Mat::zeros(6, 6), Mat::zeros(6, 6), Mat::zeros(6, 6)];
    for i in 0..3 {
        for &(from, to) in E_EDGES[i] {
            e[i].set(to, from, S::one());
            f[i].set(from, to, bracket_at(field, i, V_WEIGHTS[to]));
        }
    }
    // <f_i t, b> = -q^{-(α_i, wt t)} <t, e_i b> fixes the norm of the bottom.
    let mut norms = vec![S::zero(); 6];
    norms[0] = S::one();
    for (i, top, bottom) in [(0, 0, 1), (1, 1, 2), (2, 2, 3), (1, 3, 4), (0, 4, 5)] {
        let c = f[i].get(bottom, top).clone();
        let k = field.q_pow(-(pairing(SIMPLE[i], V_WEIGHTS[top]) as i64));
        norms[bottom] = -(k * &norms[top]) * &c.try_inv().ok_or_else(|| AlgebraError::NoConsistentGauge("zero edge".into()))?;
    }
    let v = FundamentalV { field: field.clone(), e, f, norms };
    let bad = v.failing_relations();
    if !bad.is_empty() {
        return Err(AlgebraError::NoConsistentGauge(bad.join(",")));
    }
    if (0..3).any(|i| !v.e[i].mul(&v.e[i]).is_zero() || !v.f[i].mul(&v.f[i]).is_zero()) {
        return Err(AlgebraError::NoConsistentGauge("e_k^2 != 0".into()));
    }
    if !v.contravariant() {
        return Err(AlgebraError::NoConsistentGauge("form is not contravariant".into()));
    }
    Ok(v)
}

impl<S: Scalar> FundamentalV<S> {
    pub fn k_diag(&self, g: Eps) -> Mat<S> {
        let mut m = Mat::zeros(6, 6);
        for a in 0..6 {
            m.set(a, a, self.field.q_pow(pairing(g, V_WEIGHTS[a]) as i64));
        }
        m
    }

    /// Matrix of an operator on `V`.
    pub fn op_matrix(&self, op: &Op<S>) -> Mat<S> {
        let mut acc = Mat::zeros(6, 6);
        for (w, c) in &op.terms {
            let mut m = Mat::identity(6);
            for l in w {
                let g = match *l {
                    Letter::E(i) => self.e[i as usize - 1].clone(),
                    Letter::F(i) => self.f[i as usize - 1].clone(),
                    Letter::K(g) => self.k_diag(g),
                };
                m = m.mul(&g);
            }
            acc = acc.add(&m.scale(c));
        }
        acc
    }

    pub fn failing_relations(&self) -> Vec<String> {
        defining_relations(&self.field)
            .into_iter()
            .filter(|(_, r)| !self.op_matrix(r).is_zero())
            .map(|(n, _)| n)
            .collect()
    }

    /// `<f_i u, w> = <u, ω(f_i) w>` on all basis pairs.
    pub fn contravariant(&self) -> bool {
        let g = Mat::from_rows(6, &(0..6).map(|a| (0..6).map(|b| if a == b { self.norms[a].clone() } else { S::zero() }).collect()).collect::<Vec<_>>());
        (0..3).all(|i| {
            let lhs = self.f[i].transpose().mul(&g);
            let rhs = g.mul(&self.op_matrix(&Op::f(i as u8 + 1).omega()));
            lhs == rhs
        })
    }

    /// `E_s` acting on `V`: `e1`, `σ(f_δ)` and `e3`, where `σ` replaces every
    /// `f_i` by `e_i`.
    pub fn e_hat(&self, s: usize) -> Mat<S> {
        match s {
            0 => self.e[0].clone(),
            1 => self.op_matrix(&Op::from_alg_e(&composite(Composite::Delta, &self.field))),
            _ => self.e[2].clone(),
        }
    }

    /// `∩_s ker E_s^{i_s+1}` as a list of basis vectors.
    pub fn v_plus(&self, i: [u32; 3]) -> Vec<Vec<S>> {
        let mut rows = Vec::new();
        for s in 0..3 {
            let p = (0..=i[s]).fold(Mat::identity(6), |acc, _| acc.mul(&self.e_hat(s)));
            for r in 0..6 {
                rows.push(p.row(r));
            }
        }
        Mat::from_rows(6, &rows).kernel()
    }
}

/// Vectors of `V ⊗ m` at a fixed total offset `t`, measured from the top
/// weight `wt(v1) + hw(m)`. Blocks are `(a, o)` with `v_a ⊗ m[o]`.
pub struct TensorProduct<'a, S> {
    pub v: &'a FundamentalV<S>,
    pub m: &'a ModuleTruncation<S>,
}

/// Offset of `v_a` below `v1`.
pub fn v_offset(a: usize) -> Offset {
    eps_to_offset(sub(V_WEIGHTS[0], V_WEIGHTS[a])).expect("weights of V lie below ε1")
}

#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector<S> {
    pub offset: Offset,
    pub coords: Vec<S>,
}

impl<'a, S: Scalar> TensorProduct<'a, S> {
    pub fn new(v: &'a FundamentalV<S>, m: &'a ModuleTruncation<S>) -> Self {
        TensorProduct { v, m }
    }

    /// Blocks `(a, o, dim)` of the space at `t`.
    pub fn blocks(&self, t: Offset) -> Result<Vec<(usize, Offset, usize)>> {
        let mut out = Vec::new();
        for a in 0..6 {
            let o = offset_sub(t, v_offset(a));
            if is_nonneg(o) {
                let d = self.m.dim(o)?;
                if d > 0 {
                    out.push((a, o, d));
                }
            }
        }
        Ok(out)
    }

    pub fn dim(&self, t: Offset) -> Result<usize> {
        Ok(self.blocks(t)?.iter().map(|b| b.2).sum())
    }

    pub fn pure(&self, a: usize, w: &ModuleVector<S>) -> Result<TensorVector<S>> {
        let t = offset_add(w.offset, v_offset(a));
        let mut coords = Vec::new();
        for (b, o, d) in self.blocks(t)? {
            if b == a && o == w.offset {
                coords.extend(w.coords.iter().cloned());
            } else {
                coords.extend(std::iter::repeat(S::zero()).take(d));
            }
        }
        Ok(TensorVector { offset: t, coords })
    }

    fn split(&self, x: &TensorVector<S>) -> Result<Vec<(usize, ModuleVector<S>)>> {
        let mut out = Vec::new();
        let mut start = 0;
        for (a, o, d) in self.blocks(x.offset)? {
            out.push((a, ModuleVector { offset: o, coords: x.coords[start..start + d].to_vec() }));
            start += d;
        }
        Ok(out)
    }

    fn assemble(&self, t: Offset, parts: Vec<(usize, ModuleVector<S>)>) -> Result<TensorVector<S>> {
        let blocks = self.blocks(t)?;
        let mut coords = Vec::new();
        for (a, o, d) in &blocks {
            let mut acc = vec![S::zero(); *d];
            for (b, w) in &parts {
                if b == a && w.offset == *o {
                    for (x, y) in acc.iter_mut().zip(&w.coords) {
                        *x += y;
                    }
                }
            }
            coords.extend(acc);
        }
        Ok(TensorVector { offset: t, coords })
    }

    /// `Δ(e_{i+1}) = e ⊗ K + 1 ⊗ e`.
    pub fn act_e(&self, i: usize, x: &TensorVector<S>) -> Result<TensorVector<S>> {
        let t = offset_sub(x.offset, unit(i));
        let mut parts = Vec::new();
        for (a, w) in self.split(x)? {
            for b in 0..6 {
                let c = self.v.e[i].get(b, a);
                if !c.is_zero() {
                    let k = self.m.k_value(SIMPLE[i], w.offset);
                    parts.push((b, w.scale(&(c.clone() * &k))));
                }
            }
            if is_nonneg(offset_sub(w.offset, unit(i))) {
                parts.push((a, self.m.act_e(i, &w)?));
            }
        }
        if !is_nonneg(t) {
            return Ok(TensorVector { offset: t, coords: Vec::new() });
        }
        self.assemble(t, parts)
    }

    /// `Δ(f_{i+1}) = f ⊗ 1 + K^{-1} ⊗ f`.
    pub fn act_f(&self, i: usize, x: &TensorVector<S>) -> Result<TensorVector<S>> {
        let t = offset_add(x.offset, unit(i));
        let mut parts = Vec::new();
        for (a, w) in self.split(x)? {
            for b in 0..6 {
                let c = self.v.f[i].get(b, a);
                if !c.is_zero() {
                    parts.push((b, w.scale(c)));
                }
            }
            let k = self.v.field.q_pow(-(pairing(SIMPLE[i], V_WEIGHTS[a]) as i64));
            parts.push((a, self.m.act_f(i, &w)?.scale(&k)));
        }
        self.assemble(t, parts)
    }

    pub fn act_k(&self, g: Eps, x: &TensorVector<S>) -> Result<TensorVector<S>> {
        let mut parts = Vec::new();
        for (a, w) in self.split(x)? {
            let c = self.v.field.q_pow(pairing(g, V_WEIGHTS[a]) as i64) * &self.m.k_value(g, w.offset);
            parts.push((a, w.scale(&c)));
        }
        self.assemble(x.offset, parts)
    }

    /// Applies an operator through the coproduct, letter by letter.
    pub fn apply(&self, op: &Op<S>, x: &TensorVector<S>) -> Result<Option<TensorVector<S>>> {
        let mut acc: Option<TensorVector<S>> = None;
        'terms: for (word, c) in &op.terms {
            let mut w = x.clone();
            for l in word.iter().rev() {
                w = match *l {
                    Letter::E(i) => self.act_e(i as usize - 1, &w)?,
                    Letter::F(i) => self.act_f(i as usize - 1, &w)?,
                    Letter::K(g) => self.act_k(g, &w)?,
                };
                if !is_nonneg(w.offset) {
                    continue 'terms;
                }
            }
            let w = TensorVector { offset: w.offset, coords: w.coords.iter().map(|y| y.clone() * c).collect() };
            acc = Some(match acc {
                None => w,
                Some(a) if a.offset == w.offset => {
                    TensorVector { offset: a.offset, coords: a.coords.iter().zip(&w.coords).map(|(p, q)| p.clone() + q).collect() }
                }
                Some(_) => return Err(AlgebraError::NotHomogeneous),
            });
        }
        Ok(acc)
    }

    /// Names of defining relations that fail on some basis vector at total
    /// offsets of height `≤ n - reach`.
    pub fn failing_relations(&self, n: i32) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        for (name, r) in defining_relations(&self.v.field) {
            let reach = r.reach();
            let mut ok = true;
            'scan: for h in 0..=(n - reach) {
                for t in offsets_of_height(h) {
                    let d = self.dim(t)?;
                    for k in 0..d {
                        let mut c = vec![S::zero(); d];
                        c[k] = S::one();
                        if let Some(y) = self.apply(&r, &TensorVector { offset: t, coords: c })? {
                            if y.coords.iter().any(|z| !z.is_zero()) {
                                ok = false;
                                break 'scan;
                            }
                        }
                    }
                }
            }
            if !ok {
                bad.push(name);
            }
        }
        Ok(bad)
    }

    /// Vectors at `t` killed by every `Δ(e_i)`.
    pub fn singular_vectors(&self, t: Offset) -> Result<Vec<TensorVector<S>>> {
        let d = self.dim(t)?;
        if d == 0 {
            return Ok(Vec::new());
        }
        let mut rows: Vec<Vec<S>> = Vec::new();
        let mut cols: Vec<Vec<S>> = Vec::new();
        for k in 0..d {
            let mut c = vec![S::zero(); d];
            c[k] = S::one();
            let x = TensorVector { offset: t, coords: c };
            let mut img = Vec::new();
            for i in 0..3 {
                let y = self.act_e(i, &x)?;
                img.extend(y.coords);
            }
            cols.push(img);
        }
        let n = cols.first().map_or(0, |c| c.len());
        for r in 0..n {
            rows.push(cols.iter().map(|c| c[r].clone()).collect());
        }
        if rows.is_empty() {
            return Ok((0..d)
                .map(|k| {
                    let mut c = vec![S::zero(); d];
                    c[k] = S::one();
                    TensorVector { offset: t, coords: c }
                })
                .collect());
        }
        Ok(Mat::from_rows(d, &rows).kernel().into_iter().map(|c| TensorVector { offset: t, coords: c }).collect())
    }

    /// Product form `<v ⊗ m, v' ⊗ m'> = <v, v'><m, m'>`.
    pub fn pair(&self, g: &GramTable<'_, S>, x: &TensorVector<S>, y: &TensorVector<S>) -> Result<S> {
        if x.offset != y.offset {
            return Ok(S::zero());
        }
        let mut acc = S::zero();
        for ((a, u), (_, w)) in self.split(x)?.into_iter().zip(self.split(y)?) {
            acc += &(self.v.norms[a].clone() * &g.pair(&u, &w)?);
        }
        Ok(acc)
    }
}

/// `(ν, β_s^∨)` for the simple roots `α1, 2ε2, α3` of κ.
pub fn kappa_triple(nu: Eps) -> [i32; 3] {
    [nu[0] - nu[1], nu[1], nu[2]]
}

/// `ξ = i1 ε1 + i2 (ε1 + ε2) + i3 ε3`.
pub fn xi_of(i: [u32; 3]) -> Eps {
    [(i[0] + i[1]) as i32, i[1] as i32, i[2] as i32]
}

/// The predicted index set: shifts by `±ε_j`, negatives excluded.
pub fn predicted_branch(i: [u32; 3]) -> BTreeSet<[i32; 3]> {
    let xi = xi_of(i);
    V_WEIGHTS.iter().map(|mu| kappa_triple(add(xi, *mu))).filter(|t| t.iter().all(|&x| x >= 0)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    pub i: [u32; 3],
    pub bound: i32,
    pub predicted: Vec<[i32; 3]>,
    pub observed: Vec<[i32; 3]>,
    /// Singular-vector count per observed triple.
    pub multiplicities: BTreeMap<String, usize>,
    /// Singular weights (ε-coordinates relative to ζ) outside `ζ + Λ(V)`.
    pub stray_weights: Vec<Eps>,
    pub singular_dim: usize,
    pub v_plus_dim: usize,
    pub gram_det: String,
    pub gram_det_nonzero: bool,
}

impl BranchReport {
    pub fn holds(&self) -> bool {
        self.predicted == self.observed
            && self.stray_weights.is_empty()
            && self.singular_dim == self.v_plus_dim
            && self.gram_det_nonzero
    }
}

/// Singular vectors of `V ⊗ L(ζ)` up to height `n` with the product-form
/// Gram determinant on their span.
pub fn decompose<S: Scalar>(v: &FundamentalV<S>, i: [u32; 3], n: i32) -> Result<BranchReport> {
    let m = build_irreducible(v.field.clone(), zeta(i), n);
    let tp = TensorProduct::new(v, &m);
    let g = GramTable::new(&m);
    let xi = xi_of(i);
    let mut observed = BTreeSet::new();
    let mut mult: BTreeMap<String, usize> = BTreeMap::new();
    let mut stray = Vec::new();
    let mut det = S::one();
    let mut total = 0;
    for h in 0..=n {
        for t in offsets_of_height(h) {
            let sing = tp.singular_vectors(t)?;
            if sing.is_empty() {
                continue;
            }
            total += sing.len();
            let mu = sub(V_WEIGHTS[0], offset_to_eps(t));
            if !V_WEIGHTS.contains(&mu) {
                stray.push(mu);
            }
            let tr = kappa_triple(add(xi, mu));
            observed.insert(tr);
            *mult.entry(format!("{},{},{}", tr[0], tr[1], tr[2])).or_default() += sing.len();
            let k = sing.len();
            let mut gm = Mat::zeros(k, k);
            for a in 0..k {
                for b in 0..k {
                    gm.set(a, b, tp.pair(&g, &sing[a], &sing[b])?);
                }
            }
            det = det * &gm.det();
        }
    }
    let predicted: Vec<_> = predicted_branch(i).into_iter().collect();
    Ok(BranchReport {
        i,
        bound: n,
        predicted,
        observed: observed.into_iter().collect(),
        multiplicities: mult,
        stray_weights: stray,
        singular_dim: total,
        v_plus_dim: v.v_plus(i).len(),
        gram_det_nonzero: !det.is_zero(),
        gram_det: det.to_string(),
    })
}

/// A formal character: weight (ε-coordinates) to multiplicity.
pub type Character = BTreeMap<Eps, i64>;

/// `H(ε) = (5, 3, 1)`: positive on positive roots, `H(α_i) = 2`.
pub fn h_level(w: Eps) -> i32 {
    5 * w[0] + 3 * w[1] + w[2]
}

fn order_key(w: &Eps) -> (i32, Eps) {
    (h_level(*w), *w)
}

fn char_mul(a: &Character, b: &Character) -> Character {
    let mut out = Character::new();
    for (x, c) in a {
        for (y, d) in b {
            *out.entry(add(*x, *y)).or_default() += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `ρ` of κ.
pub const RHO_KAPPA: Eps = [2, 1, 1];

/// Character of the irreducible κ-module with highest weight `ξ_i`, by the
/// Weyl character formula: the alternating sum over the 16 signed
/// permutations divided by the Weyl denominator.
pub fn classical_char_x(i: [u32; 3]) -> Character {
    classical_char(xi_of(i))
}

pub fn classical_char(top: Eps) -> Character {
    let w = kappa_weyl_group();
    let alt = |mu: Eps| -> Character {
        let mut c = Character::new();
        for s in &w {
            *c.entry(s.apply(mu)).or_default() += s.sign() as i64;
        }
        c.retain(|_, x| *x != 0);
        c
    };
    let mut num = alt(add(top, RHO_KAPPA));
    let den = alt(RHO_KAPPA);
    let (dlead, dc) = den.iter().max_by_key(|(w, _)| order_key(w)).map(|(w, c)| (*w, *c)).unwrap();
    let mut quot = Character::new();
    while let Some((lead, c)) = num.iter().max_by_key(|(w, _)| order_key(w)).map(|(w, c)| (*w, *c)) {
        assert_eq!(c % dc, 0, "Weyl denominator does not divide");
        let qw = sub(lead, dlead);
        let qc = c / dc;
        *quot.entry(qw).or_default() += qc;
        for (w, d) in &den {
            let e = num.entry(add(*w, qw)).or_default();
            *e -= qc * d;
        }
        num.retain(|_, x| *x != 0);
    }
    quot
}

/// Character of `V` restricted to κ.
pub fn char_v() -> Character {
    V_WEIGHTS.iter().map(|w| (*w, 1)).collect()
}

/// Multiplicities of κ-irreducibles in a finite character, by peeling off
/// highest weights. Keys are `(ν, β_s^∨)` triples.
pub fn classical_decompose(ch: &Character) -> BTreeMap<[i32; 3], i64> {
    let mut rest = ch.clone();
    let mut out = BTreeMap::new();
    while let Some((top, c)) = rest.iter().max_by_key(|(w, _)| order_key(w)).map(|(w, c)| (*w, *c)) {
        let x = classical_char(top);
        for (w, d) in x {
            *rest.entry(w).or_default() -= c * d;
        }
        rest.retain(|_, v| *v != 0);
        out.insert(kappa_triple(top), c);
    }
    out
}

/// Character of a truncation as a map from ε-weights relative to `λ`.
pub fn module_character<S: Scalar>(m: &ModuleTruncation<S>, n: i32) -> Result<Character> {
    let mut out = Character::new();
    for (o, d) in m.character(n)? {
        out.insert(sub(m.hw().eps, offset_to_eps(o)), d as i64);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CharIdentityReport {
    pub i: [u32; 3],
    pub bound: i32,
    pub compared: usize,
    pub mismatches: Vec<Eps>,
    /// `Char(M_i) = Char(M) Char(X_i)` on the same range.
    pub product_lemma_mismatches: Vec<Eps>,
}

impl CharIdentityReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty() && self.product_lemma_mismatches.is_empty()
    }
}

/// `Char(V) Char(M_i) = Σ_{i' ∈ Ĩ(i)} Char(M) Char(X_{i'})` on all weights
/// where both sides are determined by the height-`n` truncations.
pub fn char_identity_check<S: Scalar>(field: &QField<S>, i: [u32; 3], n: i32) -> Result<CharIdentityReport> {
    let mi = build_irreducible(field.clone(), zeta(i), n);
    let m = build_irreducible(field.clone(), zeta([0, 0, 0]), n);
    let ch_mi = module_character(&mi, n)?;
    let ch_m = module_character(&m, n)?;
    let xi = xi_of(i);
    let lhs = char_mul(&char_v(), &ch_mi);
    let mut rhs = Character::new();
    for t in predicted_branch(i) {
        let x = classical_char_x([t[0] as u32, t[1] as u32, t[2] as u32]);
        for (w, c) in char_mul(&ch_m, &x) {
            *rhs.entry(w).or_default() += c;
        }
    }
    let floor = h_level(xi) + 5 - 2 * n;
    let mut keys: BTreeSet<Eps> = lhs.keys().chain(rhs.keys()).copied().collect();
    keys.retain(|w| h_level(*w) >= floor);
    let mismatches: Vec<Eps> =
        keys.iter().filter(|w| lhs.get(*w).copied().unwrap_or(0) != rhs.get(*w).copied().unwrap_or(0)).copied().collect();
    let prod = char_mul(&ch_m, &classical_char_x(i));
    let floor2 = h_level(xi) - 2 * n;
    let mut keys2: BTreeSet<Eps> = prod.keys().chain(ch_mi.keys()).copied().collect();
    keys2.retain(|w| h_level(*w) >= floor2);
    let lemma: Vec<Eps> =
        keys2.iter().filter(|w| prod.get(*w).copied().unwrap_or(0) != ch_mi.get(*w).copied().unwrap_or(0)).copied().collect();
    Ok(CharIdentityReport { i, bound: n, compared: keys.len(), mismatches, product_lemma_mismatches: lemma })
}

/// Index triples with `|i| ≤ r`.
pub fn index_range(r: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=r {
        for b in 0..=r - a {
            for c in 0..=r - a - b {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Number of singular vectors of `V ⊗ X_i` per triple, computed classically.
pub fn classical_branch(i: [u32; 3]) -> BTreeMap<[i32; 3], i64> {
    classical_decompose(&char_mul(&char_v(), &classical_char_x(i)))
}
