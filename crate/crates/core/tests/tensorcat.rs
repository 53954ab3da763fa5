use num_traits::Zero;
use uqsp6::highest::{build_irreducible, zeta};
use uqsp6::highest::Op;
use uqsp6::rootsys::Weight;
use uqsp6::tensorcat::*;
use uqsp6::{GaussRational, QField, QScalar};

fn p(s: &str) -> QScalar {
    s.parse().unwrap()
}

fn v() -> FundamentalV<QScalar> {
    build_v(&QField::generic()).unwrap()
}

#[test]
fn v_shape() {
    let v = v();
    assert!(v.failing_relations().is_empty());
    assert!(v.contravariant());
    let nonzero = |m: &uqsp6::linalg::Mat<QScalar>| (0..6).flat_map(|a| (0..6).map(move |b| (a, b))).filter(|&(a, b)| !m.get(a, b).is_zero()).count();
    assert_eq!(nonzero(&v.e[2]), 1);
    assert!(!v.e[2].get(2, 3).is_zero());
    // [e2, f2] on v3: (α2, ε3) = -1.
    let c = v.op_matrix(&Op::qcomm(&Op::e(2), &Op::f(2), &p("1")));
    assert_eq!(c.get(2, 2), &p("-1"));
    // Norms are not units: <v-3, v-3> = -q^-4/[2].
    assert_eq!(v.norms[3], p("(-q^-4)/(q+q^-1)"));
}

#[test]
fn kernels_and_v_plus() {
    let v = v();
    let ker = |s: usize| v.e_hat(s).kernel();
    let missing = |k: Vec<Vec<QScalar>>| -> Vec<usize> {
        (0..6).filter(|&a| k.iter().all(|x| x[a].is_zero())).collect()
    };
    assert_eq!(missing(ker(0)), vec![1, 5]);
    assert_eq!(missing(ker(1)), vec![4]);
    assert_eq!(missing(ker(2)), vec![3]);
    let vp = v.v_plus([0, 0, 0]);
    assert_eq!(vp.len(), 2);
    assert_eq!(missing(vp), vec![1, 3, 4, 5]);
    assert_eq!(v.v_plus([1, 1, 1]).len(), 6);
    for s in 0..3 {
        assert!(v.e_hat(s).mul(&v.e_hat(s)).is_zero());
    }
}

#[test]
fn coproduct_examples() {
    let v = v();
    let f = QField::<QScalar>::generic();
    let m = build_irreducible(f.clone(), Weight::lambda_plus([0, 0, 0]), 3);
    let tp = TensorProduct::new(&v, &m);
    let top = tp.pure(0, &m.highest_vector()).unwrap();
    let y = tp.act_f(1, &top).unwrap();
    let f2 = m.act_f(1, &m.highest_vector()).unwrap();
    let expect = tp.pure(0, &f2).unwrap();
    assert_eq!(y, expect);
    let k = tp.act_k(uqsp6::rootsys::SIMPLE[0], &top).unwrap();
    assert_eq!(k.coords, vec![p("q")]);
    // Δ respects the defining relations on V ⊗ L(λ).
    assert!(tp.failing_relations(3).unwrap().is_empty());
}

#[test]
fn branching_base_cases() {
    let v = v();
    let r = decompose(&v, [0, 0, 0], 6).unwrap();
    assert_eq!(r.observed, vec![[0, 0, 1], [1, 0, 0]]);
    assert_eq!(r.singular_dim, 2);
    assert!(r.gram_det_nonzero);
    assert_eq!(predicted_branch([1, 0, 0]).into_iter().collect::<Vec<_>>(), vec![[0, 0, 0], [0, 1, 0], [1, 0, 1], [2, 0, 0]]);
}

#[test]
fn branching_scan() {
    let v = v();
    for i in index_range(2) {
        let r = decompose(&v, i, 6).unwrap();
        assert!(r.holds(), "{r:?}");
        let classical = classical_branch(i);
        for (t, c) in &classical {
            let key = format!("{},{},{}", t[0], t[1], t[2]);
            assert_eq!(r.multiplicities.get(&key).copied().unwrap_or(0) as i64, *c, "{i:?} {t:?}");
        }
    }
}

#[test]
fn classical_characters() {
    let x0 = classical_char_x([0, 0, 0]);
    assert_eq!(x0.len(), 1);
    let x1 = classical_char_x([1, 0, 0]);
    assert_eq!(x1.values().sum::<i64>(), 4);
    for w in [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0]] {
        assert_eq!(x1[&w], 1);
    }
    // Weyl dimension formula for sp(4) ⊕ sp(2) as an independent oracle.
    let weyl_dim = |i: [u32; 3]| -> i64 {
        let l = xi_of(i);
        let r = [l[0] + 2, l[1] + 1, l[2] + 1];
        let num = (r[0] - r[1]) * (r[0] + r[1]) * r[0] * r[1] * r[2];
        let den = 1 * 3 * 2 * 1 * 1;
        (num / den) as i64
    };
    for i in index_range(3) {
        assert_eq!(classical_char_x(i).values().sum::<i64>(), weyl_dim(i), "{i:?}");
    }
}

#[test]
fn character_identities() {
    let f = QField::<QScalar>::generic();
    for i in index_range(2) {
        let r = char_identity_check(&f, i, 6).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.compared > 30);
    }
    assert!(char_identity_check(&f, [0, 0, 0], 6).unwrap().mismatches.is_empty());
    let _ = zeta([0, 0, 0]);
}

#[test]
fn probe_mode_branching_agrees() {
    let f = QField::probe(GaussRational::from_ratio(3, 2)).unwrap();
    let v = build_v(&f).unwrap();
    let r = decompose(&v, [1, 0, 0], 6).unwrap();
    assert!(r.holds());
}
