use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;
use uqsp6::highest::{pseudo_parabolic, zeta};
use uqsp6::linalg::Mat;
use uqsp6::projector::*;
use uqsp6::rootsys::{level, Weight, ALT_NORMAL_ORDER, NORMAL_ORDER, SIMPLE};
use uqsp6::tensorcat::{build_v, TensorProduct, V_WEIGHTS};
use uqsp6::uqneg::SerreQuotient;
use uqsp6::{QField, QScalar};

fn field() -> QField<QScalar> {
    QField::generic()
}

fn p(s: &str) -> QScalar {
    s.parse().unwrap()
}

#[test]
fn root_vectors_are_cartan_normalized_on_tensor() {
    let f = field();
    let v = build_v(&f).unwrap();
    let rvs = root_vectors(&v, &NORMAL_ORDER).unwrap();
    assert_eq!(rvs.len(), 9);
    let (m, _) = pseudo_parabolic(Arc::new(SerreQuotient::new(f.clone(), 8)), [1, 0, 0], 8).unwrap();
    let tp = TensorProduct::new(&v, &m);
    for (g, rv) in &rvs {
        let lv = level(*g);
        for a in 0..3 {
            let x = tp.pure(a, &m.highest_vector()).unwrap();
            let two = |o1: &uqsp6::highest::ops::Op<QScalar>, o2: &uqsp6::highest::ops::Op<QScalar>| {
                let y = tp.apply(o2, &x).unwrap();
                let z = y.and_then(|y| tp.apply(o1, &y).unwrap());
                z.map(|z| z.coords).unwrap_or_else(|| vec![QScalar::zero(); x.coords.len()])
            };
            let ef = two(&rv.e, &rv.f);
            let fe = two(&rv.f, &rv.e);
            // [ẽ, f̃] acts on a weight vector of weight η by (K_γ - K_γ^-1)/(q_γ - q_γ^-1).
            let eta = m.hw().add_eps(V_WEIGHTS[0]).sub_offset(x.offset);
            let expect = f.bracket_of(&eta.q_pairing(&f, *g), lv);
            for (c, (l, r)) in x.coords.iter().zip(ef.iter().zip(&fe)) {
                assert_eq!(l.clone() - r, c.clone() * &expect, "{g:?} on v{a}");
            }
        }
    }
}

#[test]
fn simple_factor_is_sl2_projector_on_v() {
    let f = field();
    let v = build_v(&f).unwrap();
    let rvs = root_vectors(&v, &NORMAL_ORDER).unwrap();
    for g in SIMPLE {
        let pm = p_factor_v(&v, &rvs[&g], Weight::integral([0, 0, 0])).unwrap();
        let e = v.op_matrix(&rvs[&g].e);
        let fm = v.op_matrix(&rvs[&g].f);
        assert_eq!(pm.mul(&pm), pm, "{g:?} idempotent");
        assert!(e.mul(&pm).is_zero(), "{g:?} e p = 0");
        assert!(pm.mul(&fm).is_zero(), "{g:?} p f = 0");
    }
}

#[test]
fn full_projector_on_v_is_top_projection() {
    let f = field();
    let v = build_v(&f).unwrap();
    for order in [&NORMAL_ORDER, &ALT_NORMAL_ORDER] {
        let pm = p_total_v(&v, order, Weight::integral([0, 0, 0])).unwrap();
        let mut expect = Mat::zeros(6, 6);
        expect.set(0, 0, QScalar::one());
        assert_eq!(pm, expect);
    }
}

#[test]
fn string_lengths_on_v() {
    let f = field();
    let v = build_v(&f).unwrap();
    let rvs = root_vectors(&v, &NORMAL_ORDER).unwrap();
    assert_eq!(l_mu_alpha(&v, &rvs, 4, [0, 2, 0]), 1);
    assert_eq!(l_mu_alpha(&v, &rvs, 0, [1, -1, 0]), 0);
    let mut ones = 0;
    for a in 0..6 {
        for g in rvs.keys() {
            let l = l_mu_alpha(&v, &rvs, a, *g);
            assert!(l <= 1);
            ones += l;
        }
    }
    assert_eq!(ones, 15);
}

#[test]
fn v_plus_indices_match_kernel() {
    let f = field();
    let v = build_v(&f).unwrap();
    for i in [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 1, 0], [1, 1, 1]] {
        let idx = v_plus_indices(&v, i);
        let ker = v.v_plus(i);
        assert_eq!(idx.len(), ker.len(), "{i:?}");
    }
    assert_eq!(v_plus_indices(&v, [0, 0, 0]), vec![0, 2]);
    assert_eq!(v_plus_indices(&v, [1, 1, 1]).len(), 6);
}

#[test]
fn theta_explicit_values() {
    let f = field();
    let v = build_v(&f).unwrap();
    let rvs = root_vectors(&v, &NORMAL_ORDER).unwrap();
    let i = [1, 1, 1];
    // [4]_{q^2}/[3]_{q^2} for 2ε1 at -ε1, i1 + i2 = 2.
    let t = theta_eigenvalue(&v, &rvs, [2, 0, 0], 5, i).unwrap();
    assert_eq!(t, f.qint(4, level([2, 0, 0])) / f.qint(3, level([2, 0, 0])));
    // [6]/[5] for ε1+ε2 at -ε2.
    let t = theta_eigenvalue(&v, &rvs, [1, 1, 0], 4, i).unwrap();
    assert_eq!(t, p("(q^5+q^3+q+q^-1+q^-3+q^-5)/(q^4+q^2+1+q^-2+q^-4)"));
    // l = 0 gives 1.
    assert!(theta_eigenvalue(&v, &rvs, [1, 1, 0], 3, i).unwrap().is_one());
}

#[test]
fn theta_families_match_displayed_forms() {
    let f = field();
    let v = build_v(&f).unwrap();
    let rvs = root_vectors(&v, &NORMAL_ORDER).unwrap();
    for i in [[1, 1, 1], [2, 1, 1], [1, 2, 3], [3, 0, 2], [0, 0, 0], [1, 0, 0]] {
        let r = theta_family_check(&v, &rvs, i).unwrap();
        assert!(r.holds(), "{i:?}: {r:?}");
        assert!(r.misprinted_value_is_one);
    }
    let r = theta_family_check(&v, &rvs, [1, 1, 1]).unwrap();
    assert_eq!(r.compared, 15);
    assert_eq!(r.balanced.len(), 8);
}

#[test]
fn v_side_eigenvalue_times_theta_is_q_alpha() {
    let f = field();
    let v = build_v(&f).unwrap();
    let rvs = root_vectors(&v, &NORMAL_ORDER).unwrap();
    let i = [2, 1, 1];
    for a in v_plus_indices(&v, i) {
        for (g, rv) in &rvs {
            if l_mu_alpha(&v, &rvs, a, *g) != 1 {
                continue;
            }
            // Lowest vector of the string through v_a.
            let fm = v.op_matrix(&rv.f);
            let b = (0..6).find(|&b| !fm.get(b, a).is_zero()).unwrap_or(a);
            let pm = p_factor_v(&v, rv, zeta(i)).unwrap();
            let theta = theta_eigenvalue(&v, &rvs, *g, a, i).unwrap();
            let qa = f.q_pow(level(*g).get());
            let low = if b == a { a } else { b };
            assert_eq!(pm.get(low, low).clone() * &theta, qa, "{g:?} {}", V_WEIGHTS[a].iter().map(|x| x.to_string()).collect::<String>());
        }
    }
}

#[test]
fn extremal_outputs_are_singular_and_order_independent() {
    let f = field();
    let v = build_v(&f).unwrap();
    let rvs = root_vectors(&v, &NORMAL_ORDER).unwrap();
    let rvs2 = root_vectors(&v, &ALT_NORMAL_ORDER).unwrap();
    for i in [[0, 0, 0], [1, 0, 0], [1, 1, 1]] {
        let (m, _) = pseudo_parabolic(Arc::new(SerreQuotient::new(f.clone(), 6)), i, 6).unwrap();
        let tp = TensorProduct::new(&v, &m);
        for a in v_plus_indices(&v, i) {
            let u = extremal_projector_apply(&tp, &rvs, &NORMAL_ORDER, a).unwrap();
            let w = extremal_projector_apply(&tp, &rvs2, &ALT_NORMAL_ORDER, a).unwrap();
            let c = top_coefficient(&tp, &u, a).unwrap();
            assert!(!c.is_zero());
            assert_eq!(c, top_coefficient(&tp, &w, a).unwrap(), "{i:?} v{a}");
            let sing = tp.singular_vectors(u.offset).unwrap();
            let mut stack: Vec<Vec<QScalar>> = sing.iter().map(|s| s.coords.clone()).collect();
            stack.push(u.coords.clone());
            assert_eq!(Mat::from_rows(u.coords.len(), &stack).rank(), sing.len(), "{i:?} v{a} in singular span");
        }
    }
}

#[test]
fn invertibility_and_regularity() {
    let f = field();
    let v = build_v(&f).unwrap();
    let rvs = root_vectors(&v, &NORMAL_ORDER).unwrap();
    let r = invertibility_scan(&v, &rvs, 2).unwrap();
    assert!(r.holds(), "{:?} {:?}", r.zero_factors, r.poles_inside_v_plus);
    assert!(!r.poles.is_empty());
    for i in [[0, 0, 0], [1, 1, 1], [2, 0, 1]] {
        let g = regularity_scan(&v, i, 3);
        assert!(g.holds(), "{i:?}: {:?} {:?}", g.zero, g.not_balanced);
    }
}

#[test]
fn crosscheck_reports_nondegenerate_form() {
    let probes = probe_points(2, 7);
    let r = crosscheck_theorem([1, 0, 0], 5, &probes, true).unwrap();
    assert_eq!(r.probes.len(), 3);
    assert!(r.nondegenerate());
    // The ratios are q^{-2(ρ, ε1 - wt v)}: units, but not one global unit.
    assert!(!r.agrees());
    assert!(r.agrees_up_to_k2rho());
    let p = &r.probes[0];
    assert_eq!(p.v_plus, vec!["v1", "v2", "v3", "v-1"]);
    assert_eq!(p.ratios, vec!["1", "q^-2", "q^-4", "q^-12"]);
    let r0 = crosscheck_theorem([0, 0, 0], 5, &[], true).unwrap();
    assert!(r0.nondegenerate());
    assert!(!r0.agrees());
    assert!(r0.agrees_up_to_k2rho());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn probe_points_are_distinct(seed in 0u64..1000) {
        let pts = probe_points(4, seed);
        for x in 0..4 {
            for y in 0..x {
                prop_assert_ne!(&pts[x], &pts[y]);
            }
        }
    }

    #[test]
    fn theta_families_hold_on_a_box(a in 0u32..5, b in 0u32..5, c in 0u32..5) {
        let f = field();
        let v = build_v(&f).unwrap();
        let rvs = root_vectors(&v, &NORMAL_ORDER).unwrap();
        let r = theta_family_check(&v, &rvs, [a, b, c]).unwrap();
        prop_assert!(r.holds(), "{:?}", r);
    }
}
