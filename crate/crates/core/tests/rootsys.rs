use num_rational::Ratio;
use num_traits::One;
use proptest::prelude::*;
use uqsp6::rootsys::*;
use uqsp6::QScalar;

#[test]
fn pairings() {
    assert_eq!(pairing(ALPHA2, ALPHA3), -2);
    assert_eq!(coroot_pairing([1, 0, 0], [2, 0, 0]), Ratio::one());
    let d = root_systems();
    assert_eq!(d.rho, [3, 2, 1]);
    assert_eq!(pairing(d.rho, ALPHA1), 1);
    assert_eq!(d.positive.len(), 9);
    assert_eq!(offset_to_eps(DELTA_OFFSET), DELTA);
    assert_eq!(offset_to_eps(THETA_OFFSET), THETA);
}

#[test]
fn cartan_matrix() {
    let expect = [[2, -1, 0], [-1, 2, -2], [0, -1, 2]];
    for i in 0..3 {
        for j in 0..3 {
            let a = coroot_pairing(SIMPLE[j], SIMPLE[i]);
            assert_eq!(a, Ratio::from_integer(expect[i][j]), "({i},{j})");
        }
    }
}

#[test]
fn lambda_branch() {
    assert_eq!(lambda_pairing(THETA), -QScalar::q_pow(-2));
    assert_eq!(lambda_pairing([0, 0, 2]), QScalar::one());
    let a2 = lambda_pairing(ALPHA2);
    assert_eq!(a2.clone() * &a2, -QScalar::q_pow(-2));
    assert_eq!(a2, QScalar::iota() * QScalar::q_pow(-1));
}

#[test]
fn normal_orders() {
    assert!(is_normal_order(&NORMAL_ORDER));
    assert!(is_normal_order(&ALT_NORMAL_ORDER));
    let spec_listed = [[1, 0, -1], [1, 0, 1], [0, 1, -1], [0, 1, 1], [1, -1, 0], [1, 1, 0], [2, 0, 0], [0, 2, 0], [0, 0, 2]];
    assert!(!is_normal_order(&spec_listed));
    for order in [NORMAL_ORDER, ALT_NORMAL_ORDER] {
        assert_eq!(&order[7..].iter().copied().collect::<std::collections::BTreeSet<_>>(), &[ALPHA1, ALPHA3].into_iter().collect());
    }
}

#[test]
fn subsystems() {
    let d = root_systems();
    for r in d.kappa_positive.iter().chain(&d.l_positive) {
        assert!(d.positive.contains(r));
    }
    for (k, b) in d.simple_kappa.iter().enumerate() {
        for (j, m) in d.kappa_fundamental.iter().enumerate() {
            let expect = if k == j { 1 } else { 0 };
            assert_eq!(coroot_pairing(*m, *b), Ratio::from_integer(expect));
        }
    }
}

#[test]
fn kostant_small() {
    let t = kostant_table(4);
    assert_eq!(t[&[1, 1, 0]], 2);
    assert_eq!(t[&[2, 1, 0]], 2);
    assert_eq!(t[&[1, 2, 1]], 7);
    assert_eq!(kappa_weyl_group().len(), 16);
}

proptest! {
    #[test]
    fn offsets_roundtrip(a in 0i32..6, b in 0i32..6, c in 0i32..6) {
        let o = [a, b, c];
        prop_assert_eq!(eps_to_offset(offset_to_eps(o)), Some(o));
        prop_assert_eq!(height(o), a + b + c);
    }

    #[test]
    fn weyl_group_preserves_pairing(x in prop::array::uniform3(-4i32..5), y in prop::array::uniform3(-4i32..5)) {
        for w in kappa_weyl_group() {
            prop_assert_eq!(pairing(w.apply(x), w.apply(y)), pairing(x, y));
        }
    }

}
