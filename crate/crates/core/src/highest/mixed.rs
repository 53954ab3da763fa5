//! Identities involving both raising and lowering generators, checked as
//! operators on module truncations; the y-basis; the character formula.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::linalg::Mat;
use crate::rootsys::{height, offsets_of_height, partition_table, Offset, Weight, SIMPLE, THETA, XI};
use crate::scalars::{QField, QLevel, Scalar};
use crate::uqneg::{composite, ideal_generators, AlgElem, Composite, SerreQuotient};

use super::ops::{e_theta, e_xi, Op};
use super::{build_verma, ModuleTruncation, ModuleVector};

/// A sum of products of operators; the factors are applied right to left
/// one at a time, which keeps composite root vectors unexpanded.
type Side<S> = Vec<(S, Vec<Op<S>>)>;

fn prod<S: Scalar>(factors: Vec<Op<S>>) -> Side<S> {
    vec![(S::one(), factors)]
}

/// `[x, y]_a` for products `x`, `y` of operators.
fn comm<S: Scalar>(x: &[Op<S>], y: &[Op<S>], a: &S) -> Side<S> {
    let xy: Vec<Op<S>> = x.iter().chain(y).cloned().collect();
    let yx: Vec<Op<S>> = y.iter().chain(x).cloned().collect();
    vec![(S::one(), xy), (-a.clone(), yx)]
}

fn side_reach<S: Scalar>(s: &Side<S>) -> i32 {
    s.iter().map(|(_, fs)| fs.iter().map(|o| o.reach()).sum::<i32>()).max().unwrap_or(0)
}

fn apply_side<S: Scalar>(m: &ModuleTruncation<S>, s: &Side<S>, v: &ModuleVector<S>) -> Result<Option<ModuleVector<S>>> {
    let mut acc: Option<ModuleVector<S>> = None;
    for (c, factors) in s {
        let mut w = v.clone();
        let mut dead = false;
        for op in factors.iter().rev() {
            w = m.apply(op, &w)?;
            if !crate::rootsys::is_nonneg(w.offset) {
                dead = true;
                break;
            }
        }
        if dead {
            continue;
        }
        let w = w.scale(c);
        acc = Some(match acc {
            None => w,
            Some(a) if a.offset == w.offset => a.add(&w),
            Some(_) => return Err(AlgebraError::NotHomogeneous),
        });
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct MixedReport {
    pub key: String,
    pub holds: bool,
    /// Highest weights of the modules the identity was checked on.
    pub modules: Vec<String>,
    /// Number of basis vectors on which both sides were compared.
    pub vectors: usize,
    pub detail: String,
}

pub fn mixed_keys() -> Vec<&'static str> {
    vec![
        "e2_f_xi",
        "e_xi_f2",
        "e_xi_f_xi",
        "e3_f_theta",
        "e1_f_theta",
        "e3_f_delta",
        "e2_f_theta_pow_1",
        "e2_f_theta_pow_2",
        "e_theta_pow_f_xi_1",
        "e_theta_pow_f_xi_2",
        "omega_theta_bar",
    ]
}

fn sides<S: Scalar>(key: &str, f: &QField<S>) -> Result<(Side<S>, Side<S>)> {
    let fa = |c: Composite| Op::from_alg(&composite(c, f));
    let one = S::one();
    let zero: Side<S> = Vec::new();
    Ok(match key {
        "e2_f_xi" => (comm(&[Op::e(2)], &[fa(Composite::Xi)], &one), zero),
        "e_xi_f2" => (comm(&[e_xi(f)], &[Op::f(2)], &one), zero),
        "e_xi_f_xi" => (
            comm(&[e_xi(f)], &[fa(Composite::Xi)], &one),
            prod(vec![Op::bracket(f, XI, 1).scale(&f.qint(2, QLevel::ONE))]),
        ),
        "e3_f_theta" => (comm(&[Op::e(3)], &[fa(Composite::Theta)], &one), zero),
        "e1_f_theta" => (comm(&[Op::e(1)], &[fa(Composite::Theta)], &one), prod(vec![fa(Composite::Delta), Op::kh(1)])),
        "e3_f_delta" => (comm(&[Op::e(3)], &[fa(Composite::Delta)], &one), zero),
        "e2_f_theta_pow_1" | "e2_f_theta_pow_2" => {
            let k: usize = key[key.len() - 1..].parse().unwrap();
            let th = vec![fa(Composite::Theta); k];
            let mut rhs = vec![fa(Composite::Xi)];
            rhs.extend(vec![fa(Composite::Theta); k - 1]);
            rhs.push(Op::k([0, -1, 1]));
            let c = f.qint(k as i64, QLevel::ONE);
            (comm(&[Op::e(2)], &th, &one), vec![(c, rhs)])
        }
        "e_theta_pow_f_xi_1" | "e_theta_pow_f_xi_2" => {
            let k: usize = key[key.len() - 1..].parse().unwrap();
            let et = vec![e_theta(f); k];
            let mut rhs = vec![e_theta(f); k - 1];
            rhs.push(Op::e(2));
            rhs.push(Op::k([-XI[0], -XI[1], -XI[2]]));
            let c = -(f.q_pow(-(k as i64 - 1)) * &f.qint(2, QLevel::ONE) * &f.qint(k as i64, QLevel::ONE));
            (comm(&et, &[fa(Composite::Xi)], &one), vec![(c, rhs)])
        }
        "omega_theta_bar" => {
            let lhs = fa(Composite::ThetaBar).omega();
            let rhs = Op::k([-THETA[0], -THETA[1], -THETA[2]]).mul(&e_theta(f)).scale(&f.q_pow(-4));
            (prod(vec![lhs]), prod(vec![rhs]))
        }
        _ => return Err(AlgebraError::UnknownKey(key.to_string())),
    })
}

/// Compares two sides on every basis vector of `m` whose offset leaves room
/// for the operators within the bound. Returns (vectors checked, holds).
fn compare_on<S: Scalar>(m: &ModuleTruncation<S>, lhs: &Side<S>, rhs: &Side<S>) -> Result<(usize, bool)> {
    let reach = side_reach(lhs).max(side_reach(rhs));
    let top = m.bound() - reach;
    let mut count = 0;
    for h in 0..=top.max(0) {
        if h > top {
            break;
        }
        for o in offsets_of_height(h) {
            for k in 0..m.dim(o)? {
                let v = m.basis_vector(o, k)?;
                let a = apply_side(m, lhs, &v)?;
                let b = apply_side(m, rhs, &v)?;
                count += 1;
                let equal = match (a, b) {
                    (None, None) => true,
                    (Some(a), None) | (None, Some(a)) => a.is_zero(),
                    (Some(a), Some(b)) => {
                        if a.offset == b.offset {
                            a.sub(&b).is_zero()
                        } else {
                            a.is_zero() && b.is_zero()
                        }
                    }
                };
                if !equal {
                    return Ok((count, false));
                }
            }
        }
    }
    Ok((count, true))
}

/// Highest weights used for operator identities: `λ` and three random
/// integral dominant weights.
pub fn test_weights(seed: u64) -> Vec<Weight> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![Weight::lambda_plus([0, 0, 0])];
    while out.len() < 4 {
        let a3 = rng.gen_range(0..3);
        let a2 = a3 + rng.gen_range(0..3);
        let a1 = a2 + rng.gen_range(0..3);
        let w = Weight::integral([a1, a2, a3]);
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

/// Checks a keyed mixed identity as operators on Verma truncations.
pub fn mixed_identity_check<S: Scalar>(alg: &std::sync::Arc<SerreQuotient<S>>, key: &str, seed: u64) -> Result<MixedReport> {
    let f = alg.field();
    let (lhs, rhs) = sides(key, f)?;
    let mut total = 0;
    let mut holds = true;
    let mut modules = Vec::new();
    for hw in test_weights(seed) {
        let m = build_verma(alg.clone(), hw, alg.bound());
        let (n, ok) = compare_on(&m, &lhs, &rhs)?;
        total += n;
        modules.push(hw.to_string());
        if !ok {
            holds = false;
            break;
        }
    }
    Ok(MixedReport {
        key: key.to_string(),
        holds,
        detail: format!("{} basis vectors compared", total),
        modules,
        vectors: total,
    })
}

/// Defining relations of `U_q(g)` as named operators that must vanish:
/// `[e_i, f_j] - δ_ij [K_i]` and the Serre relations in `f` and in `e`.
pub fn defining_relations<S: Scalar>(f: &QField<S>) -> Vec<(String, Op<S>)> {
    let mut rels: Vec<(String, Op<S>)> = Vec::new();
    for i in 1..=3u8 {
        for j in 1..=3u8 {
            let mut r = Op::qcomm(&Op::e(i), &Op::f(j), &S::one());
            if i == j {
                r = r.sub(&Op::bracket(f, SIMPLE[i as usize - 1], 1));
            }
            rels.push((format!("[e{i},f{j}]"), r));
        }
    }
    for (k, r) in ideal_generators(f).iter().enumerate() {
        rels.push((format!("serre_f_{k}"), Op::from_alg(r)));
        rels.push((format!("serre_e_{k}"), Op::from_alg_e(r)));
    }
    rels
}

/// Checks the defining relations as operators: Chevalley commutators,
/// and the Serre relations in `e` and in `f`. With `omega`, their images
/// under `ω` are checked instead. Returns the names of failing relations.
pub fn relation_check<S: Scalar>(m: &ModuleTruncation<S>, omega: bool) -> Result<Vec<String>> {
    let rels = defining_relations(m.field());
    let mut failed = Vec::new();
    for (name, r) in rels {
        let r = if omega { r.omega() } else { r };
        let (_, ok) = compare_on(m, &prod(vec![r]), &Vec::new())?;
        if !ok {
            failed.push(name);
        }
    }
    Ok(failed)
}

/// `f1^i f3^j f2^l f_θ^k · 1` in `m`.
pub fn y_basis<S: Scalar>(m: &ModuleTruncation<S>, l: u32, k: u32, i: u32, j: u32) -> Result<ModuleVector<S>> {
    let f = m.field().clone();
    let theta = composite(Composite::Theta, &f);
    let mut v = m.highest_vector();
    if m.is_presented() {
        let x = AlgElem::gen(1)
            .pow(i)
            .mul(&AlgElem::gen(3).pow(j))
            .mul(&AlgElem::gen(2).pow(l))
            .mul(&theta.pow(k));
        let o = [i + l + k, 2 * k + l, j + k].map(|x| x as i32);
        m.check_bound(o)?;
        return m.apply_alg(&x, &v);
    }
    for _ in 0..k {
        v = m.apply_alg(&theta, &v)?;
    }
    for (g, n) in [(1usize, l), (2, j), (0, i)] {
        for _ in 0..n {
            v = m.act_f(g, &v)?;
        }
    }
    Ok(v)
}

/// Coefficients of `e2 f2^l f_θ^k 1 = a f2^{l-1} f_θ^k 1 + b f2^l f_ξ f_θ^{k-1} 1`.
#[derive(Clone, Debug)]
pub struct E2Action<S> {
    pub l: u32,
    pub k: u32,
    pub a: S,
    pub b: S,
    /// `[l]_q [λ3 - l - k]_q`
    pub printed_a: S,
    /// `[l]_q [λ2 - l - k + 1]_q`
    pub derived_a: S,
    /// `[k]_q q^{-λ2}`
    pub printed_b: S,
}

/// `[(λ,γ) + n]_{q^d}`.
pub fn lambda_bracket<S: Scalar>(f: &QField<S>, gamma: crate::rootsys::Eps, n: i64, level: QLevel) -> S {
    let k = crate::rootsys::lambda_pairing_in(f, gamma) * &f.q_pow(n * level.get());
    f.bracket_of(&k, level)
}

pub fn e2_action_coefficients<S: Scalar>(m: &ModuleTruncation<S>, l: u32, k: u32) -> Result<E2Action<S>> {
    let f = m.field().clone();
    let v = y_basis(m, l, k, 0, 0)?;
    let lhs = m.act_e(1, &v)?;
    let u1 = if l > 0 { y_basis(m, l - 1, k, 0, 0)? } else { m.zero_vector(lhs.offset)? };
    let u2 = if k > 0 {
        let mut w = m.highest_vector();
        let theta = composite(Composite::Theta, &f);
        for _ in 0..k - 1 {
            w = m.apply_alg(&theta, &w)?;
        }
        w = m.apply_alg(&composite(Composite::Xi, &f), &w)?;
        for _ in 0..l {
            w = m.act_f(1, &w)?;
        }
        w
    } else {
        m.zero_vector(lhs.offset)?
    };
    let a_mat = Mat::from_cols(lhs.coords.len(), &[u1.coords.clone(), u2.coords.clone()]);
    let sol = a_mat.solve(&lhs.coords).ok_or(AlgebraError::NotHomogeneous)?;
    let ql = f.qint(l as i64, QLevel::ONE);
    let alpha2 = SIMPLE[1];
    let alpha3 = SIMPLE[2];
    let l3 = lambda_bracket(&f, alpha3, -(l as i64) - k as i64, QLevel::ONE);
    let l2 = lambda_bracket(&f, alpha2, 1 - l as i64 - k as i64, QLevel::ONE);
    let q_l2 = crate::rootsys::lambda_pairing_in(&f, alpha2).try_inv().unwrap();
    Ok(E2Action {
        l,
        k,
        a: sol[0].clone(),
        b: sol[1].clone(),
        printed_a: ql.clone() * &l3,
        derived_a: ql * &l2,
        printed_b: f.qint(k as i64, QLevel::ONE) * &q_l2,
    })
}

/// Coefficients of `Π_{α ∈ {ε1±ε3, ε2±ε3}} (1 - e^{-α})^{-1}` up to height `n`.
pub fn char_product_formula(n: i32) -> BTreeMap<Offset, u64> {
    let roots = [[1, 1, 0], [1, 1, 1], [0, 1, 0], [0, 1, 1]];
    partition_table(&roots, n).into_iter().filter(|(o, _)| height(*o) <= n).collect()
}
