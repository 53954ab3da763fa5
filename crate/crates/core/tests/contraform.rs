use std::sync::Arc;

use proptest::prelude::*;
use uqsp6::contraform::*;
use uqsp6::highest::*;
use uqsp6::rootsys::Weight;
use uqsp6::uqneg::SerreQuotient;
use uqsp6::{QField, QLevel, QScalar};

fn alg(b: i32) -> Arc<SerreQuotient<QScalar>> {
    Arc::new(SerreQuotient::new(QField::generic(), b))
}

fn p(s: &str) -> QScalar {
    s.parse().unwrap()
}

fn lambda() -> Weight {
    Weight::lambda_plus([0, 0, 0])
}

#[test]
fn gram_small_weights() {
    let m = base_module_m(alg(4), 4).unwrap();
    let g = GramTable::new(&m);
    assert_eq!(g.gram([0, 0, 0]).unwrap().get(0, 0), &p("1"));
    let f = m.field().clone();
    let g2 = g.gram([0, 1, 0]).unwrap();
    assert_eq!(g2.get(0, 0), &norm_closed(&f, 1, 0).1);
    // By hand: -q^{-λ2}[λ2] = -(-i q)(i(q+q^-1)/(q-q^-1)) with q^{-λ2} = -iq.
    assert_eq!(g2.get(0, 0), &p("(-q^2-1)/(q-q^-1)"));

    let v = build_verma(alg(2), lambda(), 2);
    let gv = GramTable::new(&v);
    assert!(gv.gram([1, 0, 0]).unwrap().det() == p("0"));
    let rad = gv.radical(2).unwrap();
    let f1 = v.act_f(0, &v.highest_vector()).unwrap();
    let f3 = v.act_f(2, &v.highest_vector()).unwrap();
    for x in [f1, f3] {
        assert!(rad.iter().any(|r| r.offset == x.offset && uqsp6::linalg::proportionality(&r.coords, &x.coords).is_some()));
    }
}

#[test]
fn boundary_values() {
    let f = QField::<QScalar>::generic();
    let two = f.qint(2, QLevel::ONE);
    let three = f.qint(3, QLevel::ONE);
    assert_eq!(norm_recurrence(&f, 0, 0, NORM_EXPONENT), p("1"));
    assert_eq!(norm_recurrence(&f, 0, 1, NORM_EXPONENT), two.clone() * &two);
    assert_eq!(norm_recurrence(&f, 1, 0, NORM_EXPONENT), p("(i*q+i*q^-1)/(q-q^-1)"));
    assert_eq!(norm_closed(&f, 0, 0), (p("1"), p("1")));
    let expect = f.qfact(2, QLevel::ONE) * &two * &two * &two * &three;
    assert_eq!(norm_closed(&f, 0, 2).0, expect);
}

#[test]
fn exponent_variant_resolved_by_action() {
    let l = build_irreducible(QField::generic(), lambda(), 6);
    assert_eq!(resolve_exponent(&l).unwrap(), Some(NORM_EXPONENT));
    assert_eq!(NORM_EXPONENT.name(), "l-1");
    let f = l.field();
    assert_ne!(norm_recurrence(f, 1, 1, ExponentVariant::Plus), ctilde_brute(&l, 1, 1).unwrap());
}

#[test]
fn norm_triple_agreement() {
    let l = build_irreducible(QField::generic(), lambda(), 20);
    let g = GramTable::new(&l);
    let cells = norm_table(&g, 4, 4, NORM_EXPONENT).unwrap();
    assert_eq!(cells.len(), 25);
    for c in &cells {
        assert!(c.ctilde_match(), "c~ mismatch at ({},{})", c.l, c.k);
    }
    let (a, b) = gauge_character(&cells).expect("gauge is a character of the grading");
    assert_eq!(a, p("1"));
    assert_eq!(b, p("-1"));
}

#[test]
fn module_m_form_properties() {
    let m = base_module_m(alg(8), 8).unwrap();
    let g = GramTable::new(&m);
    assert!(g.asymmetric(8).unwrap().is_empty());
    assert!(g.radical(8).unwrap().is_empty());
    for o in [[1, 2, 1], [2, 3, 1], [1, 1, 1], [2, 4, 2]] {
        assert_eq!(g.contravariance_defect(o).unwrap(), 0, "{o:?}");
    }
    let r = y_orthogonality(&g, 8).unwrap();
    assert_eq!(r.vectors, 80);
    assert_eq!(r.off_diagonal_nonzero, 0);
    let f = m.field().clone();
    for (key, d) in &r.diagonal {
        let [l, k, i, j] = *key;
        let sign = if k % 2 == 0 { p("1") } else { p("-1") };
        let expect = norm_closed(&f, l, k).1 * &y_norm_factor(&f, l, i, j) * &sign;
        assert_eq!(*d, expect, "{key:?}");
    }
}

#[test]
fn irreducible_realization_gives_same_norms() {
    let m = base_module_m(alg(6), 6).unwrap();
    let l = build_irreducible(QField::generic(), lambda(), 6);
    let (gm, gl) = (GramTable::new(&m), GramTable::new(&l));
    for (a, b) in [(0, 0), (3, 0), (1, 1), (2, 1)] {
        assert_eq!(c_brute(&gm, a, b).unwrap(), c_brute(&gl, a, b).unwrap());
    }
}

#[test]
fn pseudo_parabolic_base_is_nondegenerate() {
    let (m0, _) = pseudo_parabolic(alg(6), [0, 0, 0], 6).unwrap();
    assert!(GramTable::new(&m0).radical(6).unwrap().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn contravariance_on_random_vectors(j in 0usize..3, o in prop::sample::select(vec![[1, 1, 1], [1, 2, 1], [1, 3, 1], [2, 3, 1], [1, 3, 2]]), seed in prop::collection::vec(-3i64..4, 12)) {
        let m = base_module_m(alg(6), 6).unwrap();
        let g = GramTable::new(&m);
        let lower = uqsp6::rootsys::offset_sub(o, uqsp6::rootsys::unit(j));
        prop_assume!(m.dim(lower).unwrap() > 0 && m.dim(o).unwrap() > 0);
        let pick = |n: usize, off: usize| (0..n).map(|t| QScalar::from_int(seed[(t + off) % seed.len()])).collect::<Vec<_>>();
        let u = ModuleVector { offset: lower, coords: pick(m.dim(lower).unwrap(), 0) };
        let v = ModuleVector { offset: o, coords: pick(m.dim(o).unwrap(), 5) };
        let lhs = g.pair(&m.act_f(j, &u).unwrap(), &v).unwrap();
        let rhs = g.pair(&u, &omega_transport(&m, j, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
