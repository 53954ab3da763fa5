//! Catalogue of f-side identities, each checked exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::linalg::proportionality;
use crate::rootsys::Offset;
use crate::scalars::{QField, QLevel, Scalar};

use super::{composite, ideal_generators, qcomm, AlgElem, Composite, SerreQuotient, Word};

pub const CATALOG_VERSION: &str = "1";

/// How an identity is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    /// Exact zero in the free algebra.
    Free,
    /// Zero modulo the Serre ideal.
    ModSerre,
    /// Membership in the left ideal `J` generated by `f1, f3, f_δ`.
    ModJ,
}

impl IdentityKind {
    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Free => "free",
            IdentityKind::ModSerre => "mod-serre",
            IdentityKind::ModJ => "mod-J",
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentityReport<S> {
    pub key: String,
    pub kind: IdentityKind,
    /// Offsets of the checked residuals.
    pub offsets: Vec<Offset>,
    pub holds: bool,
    /// Normal forms of the residuals that failed (empty when `holds`).
    pub residual: Vec<AlgElem<S>>,
    pub detail: String,
}

struct Entry {
    key: &'static str,
    kind: IdentityKind,
}

const CATALOG: &[Entry] = &[
    Entry { key: "jacobi_fuzz", kind: IdentityKind::Free },
    Entry { key: "serre_relations", kind: IdentityKind::ModSerre },
    Entry { key: "f_delta_commutes_f3", kind: IdentityKind::ModSerre },
    Entry { key: "f_delta_central", kind: IdentityKind::ModSerre },
    Entry { key: "theta_product_form", kind: IdentityKind::ModSerre },
    Entry { key: "theta_bar_forms", kind: IdentityKind::ModSerre },
    Entry { key: "great_auxiliary", kind: IdentityKind::ModSerre },
    Entry { key: "theta_commutes_f3", kind: IdentityKind::ModSerre },
    Entry { key: "theta_bar_commutes_f3", kind: IdentityKind::ModSerre },
    Entry { key: "serre_step", kind: IdentityKind::ModSerre },
    Entry { key: "serre_step_bar", kind: IdentityKind::ModSerre },
    Entry { key: "serre_step_equation", kind: IdentityKind::ModSerre },
    Entry { key: "delta_prime", kind: IdentityKind::ModSerre },
    Entry { key: "delta_double_prime", kind: IdentityKind::ModSerre },
    Entry { key: "theta_delta", kind: IdentityKind::ModSerre },
    Entry { key: "nu_relations", kind: IdentityKind::ModSerre },
    Entry { key: "f1_xi", kind: IdentityKind::ModSerre },
    Entry { key: "f2_f1_theta", kind: IdentityKind::ModSerre },
    Entry { key: "f2_nu_xi", kind: IdentityKind::ModSerre },
    Entry { key: "f1_theta", kind: IdentityKind::ModSerre },
    Entry { key: "nu_theta", kind: IdentityKind::ModSerre },
    Entry { key: "xi_theta", kind: IdentityKind::ModSerre },
    Entry { key: "f1_delta_theta_appendix", kind: IdentityKind::ModSerre },
    Entry { key: "f1_delta_theta_section2", kind: IdentityKind::ModSerre },
    Entry { key: "f1_delta_theta_solved", kind: IdentityKind::ModSerre },
    Entry { key: "f1_delta_theta_in_j", kind: IdentityKind::ModJ },
    Entry { key: "theta_normalizer", kind: IdentityKind::ModJ },
    Entry { key: "aux_comm_rel_f1", kind: IdentityKind::ModJ },
    Entry { key: "aux_comm_rel_f3", kind: IdentityKind::ModJ },
    Entry { key: "fullness", kind: IdentityKind::ModJ },
];

pub fn catalog_keys() -> Vec<&'static str> {
    CATALOG.iter().map(|e| e.key).collect()
}

/// Generators `f1, f3, f_δ` of the left ideal `J`.
pub fn j_generators<S: Scalar>(f: &QField<S>) -> Vec<AlgElem<S>> {
    vec![AlgElem::gen(1), AlgElem::gen(3), composite(Composite::Delta, f)]
}

/// Checks `[x,[y,z]_a]_b = [[x,y]_c,z]_{ab/c} + c[y,[x,z]_{b/c}]_{a/c}`.
pub fn jacobi_residual<S: Scalar>(x: &AlgElem<S>, y: &AlgElem<S>, z: &AlgElem<S>, a: &S, b: &S, c: &S) -> AlgElem<S> {
    let lhs = qcomm(x, &qcomm(y, z, a), b);
    let ab_c = a.clone() * b / c;
    let r1 = qcomm(&qcomm(x, y, c), z, &ab_c);
    let r2 = qcomm(y, &qcomm(x, z, &(b.clone() / c)), &(a.clone() / c)).scale(c);
    lhs.sub(&r1).sub(&r2)
}

fn random_elem<S: Scalar>(rng: &mut ChaCha8Rng, f: &QField<S>) -> AlgElem<S> {
    let mut e = AlgElem::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(1..=3);
        let w: Vec<u8> = (0..len).map(|_| rng.gen_range(1..=3)).collect();
        let c = S::from_i64(rng.gen_range(-3..=3)) * &f.q_pow(rng.gen_range(-2..=2));
        e.add_term(Word(w), c);
    }
    e
}

fn random_scalar<S: Scalar>(rng: &mut ChaCha8Rng, f: &QField<S>) -> S {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-3..=3);
    }
    let base = S::from_i64(n) * &f.q_pow(rng.gen_range(-3..=3));
    if rng.gen_bool(0.3) {
        base + &f.q_pow(rng.gen_range(-2..=2))
    } else {
        base
    }
}

/// Runs `count` seeded random instances of the modified Jacobi identity.
pub fn jacobi_fuzz<S: Scalar>(f: &QField<S>, count: usize, seed: u64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zero = 0;
    for _ in 0..count {
        let (x, y, z) = (random_elem(&mut rng, f), random_elem(&mut rng, f), random_elem(&mut rng, f));
        let a = random_scalar(&mut rng, f);
        let b = random_scalar(&mut rng, f);
        let mut c = random_scalar(&mut rng, f);
        while c.is_zero() {
            c = random_scalar(&mut rng, f);
        }
        if jacobi_residual(&x, &y, &z, &a, &b, &c).is_zero() {
            zero += 1;
        }
    }
    (zero, count)
}

fn comm<S: Scalar>(x: &AlgElem<S>, y: &AlgElem<S>) -> AlgElem<S> {
    qcomm(x, y, &S::one())
}

/// Residuals (expected zero) for a key, with the way to check them.
fn residuals<S: Scalar>(key: &str, f: &QField<S>) -> Result<Vec<AlgElem<S>>> {
    let (f1, f2, f3) = (AlgElem::<S>::gen(1), AlgElem::<S>::gen(2), AlgElem::<S>::gen(3));
    let q = f.q().clone();
    let qb = f.q_inv().clone();
    let qp = |e: i64| f.q_pow(e);
    let delta = composite(Composite::Delta, f);
    let theta = composite(Composite::Theta, f);
    let theta_bar = composite(Composite::ThetaBar, f);
    let xi = composite(Composite::Xi, f);
    let nu = composite(Composite::Nu, f);
    let one = S::one();
    Ok(match key {
        "serre_relations" => ideal_generators(f),
        "f_delta_commutes_f3" => vec![comm(&delta, &f3)],
        "f_delta_central" => vec![comm(&delta, &f2), comm(&delta, &f3)],
        "theta_product_form" => {
            let rhs = qcomm(&qcomm(&f1, &f2, &qb), &qcomm(&f2, &f3, &qp(2)), &qb).scale(&qb);
            vec![theta.sub(&rhs)]
        }
        "theta_bar_forms" => {
            let a = qcomm(&f2, &qcomm(&qcomm(&f1, &f2, &q), &f3, &qp(2)), &qb);
            let b = qcomm(&qcomm(&f1, &f2, &q), &qcomm(&f2, &f3, &qp(-2)), &q).scale(&q);
            vec![theta_bar.sub(&a), theta_bar.sub(&b)]
        }
        "great_auxiliary" => {
            let xy = qcomm(&f3, &f2, &qp(2));
            vec![qcomm(&xy, &qcomm(&xy, &f1, &q), &qb)]
        }
        "theta_commutes_f3" => vec![comm(&theta, &f3)],
        "theta_bar_commutes_f3" => vec![comm(&theta_bar, &f3)],
        "serre_step" => vec![f2.mul(&theta).sub(&theta.mul(&f2).scale(&qb))],
        "serre_step_bar" => vec![f2.mul(&theta_bar).sub(&theta_bar.mul(&f2).scale(&q))],
        "serre_step_equation" => vec![qcomm(&f2, &theta, &qp(-3))
            .scale(&qp(2))
            .add(&qcomm(&f2, &theta, &q))
            .add(&qcomm(&f2, &theta_bar, &q).scale(&qp(-2)))],
        "delta_prime" => {
            let l = theta.scale(&(qp(2) + &one)).add(&theta_bar.scale(&qp(-2)));
            let r = theta.scale(&(qb.clone() + &q)).add(&theta_bar.scale(&qb));
            vec![f2.mul(&l).sub(&r.mul(&f2))]
        }
        "delta_double_prime" => {
            let l = theta.scale(&qp(2)).add(&theta_bar.scale(&(qp(-2) + &one)));
            let r = theta.scale(&q).add(&theta_bar.scale(&(qb.clone() + &q)));
            vec![f2.mul(&l).sub(&r.mul(&f2))]
        }
        "theta_delta" => vec![delta.mul(&theta).sub(&theta.mul(&delta).scale(&qp(-2)))],
        "nu_relations" => vec![qcomm(&f2, &nu, &qb), qcomm(&f1, &nu, &q)],
        "f1_xi" => vec![qcomm(&f1, &xi, &q)],
        "f2_f1_theta" => vec![comm(&f2, &comm(&f1, &theta)).sub(&qcomm(&qcomm(&f2, &f1, &q), &theta, &qb))],
        "f2_nu_xi" => {
            let l = comm(&f2, &qcomm(&nu, &xi, &qp(2)));
            let r = qcomm(&nu, &qcomm(&f2, &xi, &q), &qp(3)).scale(&qb);
            vec![l.sub(&r)]
        }
        "f1_theta" => vec![comm(&f1, &theta).sub(&qcomm(&nu, &xi, &qp(2)))],
        "nu_theta" => vec![nu.mul(&theta).sub(&theta.mul(&nu).scale(&q))],
        "xi_theta" => vec![qcomm(&xi, &theta, &q)],
        "f1_delta_theta_appendix" => vec![theta.scale(&q).add(&theta_bar.scale(&qb)).sub(&comm(&f1, &delta))],
        "f1_delta_theta_section2" => vec![theta.scale(&q).add(&theta_bar).sub(&comm(&f1, &delta))],
        "f1_delta_theta_in_j" => vec![theta.scale(&q).add(&theta_bar.scale(&qb))],
        "theta_normalizer" => vec![f1.mul(&theta), f3.mul(&theta), delta.mul(&theta)],
        "aux_comm_rel_f1" => (1..=4)
            .map(|k| {
                let f12 = composite(Composite::F12, f);
                f1.mul(&f2.pow(k))
                    .sub(&f2.pow(k - 1).mul(&f12).scale(&f.qint(k as i64, QLevel::ONE)))
                    .sub(&f2.pow(k).mul(&f1).scale(&qp(-(k as i64))))
            })
            .collect(),
        "aux_comm_rel_f3" => (1..=4)
            .map(|k| {
                let f23 = composite(Composite::F23, f);
                let c = qp(2) * &f.qint(k as i64, QLevel::TWO);
                f3.mul(&f2.pow(k))
                    .add(&f2.pow(k - 1).mul(&f23).scale(&c))
                    .sub(&f2.pow(k).mul(&f3).scale(&qp(2 * k as i64)))
            })
            .collect(),
        "fullness" => (2..=4)
            .map(|k| {
                let kk = k as i64;
                let inner_a = AlgElem::monomial(&[2, 3, 1, 2]).scale(&f.qint(kk, QLevel::ONE));
                let coef = f.qint(kk - 1, QLevel::ONE) * &f.qint(2, QLevel::ONE) / (one.clone() - &qp(-2));
                let inner = inner_a.sub(&theta.scale(&coef));
                let rhs = f2.pow(k - 2).mul(&inner).scale(&f.qint(kk, QLevel::TWO));
                f1.mul(&f3).mul(&f2.pow(k)).sub(&rhs)
            })
            .collect(),
        _ => return Err(AlgebraError::UnknownKey(key.to_string())),
    })
}

/// Verifies one catalogued identity.
pub fn verify_identity<S: Scalar>(engine: &SerreQuotient<S>, key: &str) -> Result<IdentityReport<S>> {
    let entry = CATALOG
        .iter()
        .find(|e| e.key == key)
        .ok_or_else(|| AlgebraError::UnknownKey(key.to_string()))?;
    let f = engine.field();
    if key == "jacobi_fuzz" {
        let (zero, count) = jacobi_fuzz(f, 100, 0x5eed);
        return Ok(IdentityReport {
            key: key.to_string(),
            kind: entry.kind,
            offsets: vec![],
            holds: zero == count,
            residual: vec![],
            detail: format!("{zero}/{count} random instances vanish"),
        });
    }
    if key == "f1_delta_theta_solved" {
        // Solve [f1,f_δ] - q f_θ = c f̄_θ in U_q(n-).
        let theta = composite(Composite::Theta, f);
        let theta_bar = composite(Composite::ThetaBar, f);
        let lhs = comm(&AlgElem::gen(1), &composite(Composite::Delta, f)).sub(&theta.scale(f.q()));
        let (o, a) = engine.coords(&lhs)?;
        let (_, b) = engine.coords(&theta_bar)?;
        let c = proportionality(&a, &b);
        return Ok(IdentityReport {
            key: key.to_string(),
            kind: entry.kind,
            offsets: vec![o],
            holds: c.is_some(),
            residual: vec![],
            detail: match c {
                Some(c) => format!("c = {c}"),
                None => "no scalar c".to_string(),
            },
        });
    }
    let res = residuals(key, f)?;
    let jg = j_generators(f);
    let mut offsets = Vec::new();
    let mut failed = Vec::new();
    for r in &res {
        if let Some(o) = r.offset() {
            offsets.push(o);
        }
        let ok = match entry.kind {
            IdentityKind::Free => r.is_zero(),
            IdentityKind::ModSerre => engine.is_zero_mod_serre(r)?,
            IdentityKind::ModJ => engine.in_left_ideal(r, &jg)?,
        };
        if !ok {
            failed.push(engine.normal_form(r)?);
        }
    }
    let holds = failed.is_empty();
    Ok(IdentityReport {
        key: key.to_string(),
        kind: entry.kind,
        offsets,
        holds,
        detail: format!("{} residual(s), {} nonzero", res.len(), failed.len()),
        residual: failed,
    })
}
