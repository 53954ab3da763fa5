use num_traits::{One, Zero};
use proptest::prelude::*;
use uqsp6::scalars::{balanced, eval_probe, qfact, qint, ScalarError};
use uqsp6::{GaussRational, QField, QLevel, QScalar, Scalar};

fn p(s: &str) -> QScalar {
    s.parse().unwrap()
}

#[test]
fn qint_examples() {
    assert!(qint(0, QLevel::ONE).is_zero());
    assert_eq!(qint(3, QLevel::ONE), p("q^2+1+q^-2"));
    assert_eq!(qint(2, QLevel::TWO), p("q^2+q^-2"));
    assert_eq!(qfact(0, QLevel::ONE), QScalar::one());
    assert_eq!(qfact(3, QLevel::ONE), p("q^3+2*q+2*q^-1+q^-3"));
}

#[test]
fn qint_times_difference() {
    let diff = QScalar::q() - QScalar::q_pow(-1);
    for n in -20..=20 {
        let lhs = qint(n, QLevel::ONE) * &diff;
        let rhs = QScalar::q_pow(n as i32) - QScalar::q_pow(-n as i32);
        assert_eq!(lhs, rhs, "n = {n}");
        assert_eq!(qint(-n, QLevel::ONE), -qint(n, QLevel::ONE));
    }
}

#[test]
fn balanced_examples() {
    assert_eq!(balanced(1), QScalar::one());
    let two_over = QScalar::from_int(2) / (QScalar::q() + QScalar::q_pow(-1));
    assert_eq!(balanced(0), two_over);
    for m in -6..=6 {
        assert!(!balanced(m).is_zero());
    }
}

#[test]
fn probe_examples() {
    let two = GaussRational::from_int(2);
    assert_eq!(eval_probe(&qint(2, QLevel::ONE), &two).unwrap(), GaussRational::from_ratio(5, 2));
    let one = GaussRational::one();
    let d = QScalar::q() - QScalar::q_pow(-1);
    assert!(eval_probe(&d, &one).unwrap().is_zero());
    assert_eq!(eval_probe(&d.inv().unwrap(), &one), Err(ScalarError::PoleAtProbe));
}

#[test]
fn canonical_text() {
    let x = qint(3, QLevel::ONE) / (QScalar::q() - QScalar::q_pow(-1));
    assert_eq!(x.to_string(), "(q^2+1+q^-2)/(q-q^-1)");
    assert_eq!(p("(q^2+1+q^-2)/(q-q^-1)"), x);
    let y = QScalar::iota() * QScalar::q_pow(-1);
    assert_eq!(y.to_string(), "i*q^-1");
    let z = p("(1+2i)*q^3-3/2i*q-(1-i)");
    assert_eq!(z.to_string(), "(1+2i)*q^3-3/2i*q-(1-i)");
    // q^2 - 1 over q^2 + 1 keeps a balanced denominator
    let w = (QScalar::q_pow(2) - QScalar::one()) / (QScalar::q_pow(2) + QScalar::one());
    assert_eq!(w.to_string(), "(q-q^-1)/(q+q^-1)");
}

#[test]
fn cancellation() {
    let a = QScalar::q_pow(4) - QScalar::one();
    let b = QScalar::q_pow(2) - QScalar::one();
    assert_eq!(a / b, p("q^2+1"));
    let c = qint(6, QLevel::ONE) / qint(3, QLevel::ONE);
    assert_eq!(c, p("q^3+q^-3"));
    assert_eq!(qint(4, QLevel::ONE) / qint(2, QLevel::ONE), qint(2, QLevel::TWO));
}

fn small_laurent() -> impl Strategy<Value = QScalar> {
    (prop::collection::vec((-3i64..4, -2i64..3), 1..4), -3i32..3).prop_map(|(cs, low)| {
        let mut acc = QScalar::zero();
        for (k, (a, b)) in cs.into_iter().enumerate() {
            let c = QScalar::from_int(a) + QScalar::iota() * QScalar::from_int(b);
            acc = acc + c * QScalar::q_pow(low + k as i32);
        }
        acc
    })
}

fn small_rational() -> impl Strategy<Value = QScalar> {
    (small_laurent(), small_laurent()).prop_filter_map("nonzero denominator", |(a, b)| b.inv().map(|bi| a * bi))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
        if let Some(ai) = a.inv() {
            prop_assert!((a * ai).is_one());
        }
    }

    #[test]
    fn bar_is_an_involutive_automorphism(a in small_rational(), b in small_rational()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((a.clone() * b.clone()).bar(), a.bar() * b.bar());
        prop_assert_eq!((a.clone() + b.clone()).bar(), a.bar() + b.bar());
    }

    #[test]
    fn display_parse_roundtrip(a in small_rational()) {
        let back: QScalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn probe_evaluation_is_a_homomorphism(a in small_rational(), b in small_rational(), n in 2i64..9, d in 1i64..5) {
        let q0 = GaussRational::from_ratio(n, d);
        prop_assume!(n != d);
        if let (Ok(x), Ok(y)) = (eval_probe(&a, &q0), eval_probe(&b, &q0)) {
            prop_assert_eq!(eval_probe(&(a.clone() * b.clone()), &q0).unwrap(), x.clone() * y.clone());
            prop_assert_eq!(eval_probe(&(a + b), &q0).unwrap(), x + y);
        }
    }

    #[test]
    fn qint_recursion(n in -15i64..15) {
        // [n+1] = q[n] + q^-n, for both levels.
        for lv in [QLevel::ONE, QLevel::TWO] {
            let d = lv.get() as i32;
            let lhs = qint(n + 1, lv);
            let rhs = QScalar::q_pow(d) * qint(n, lv) + QScalar::q_pow(-d * n as i32);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn generic_and_probe_fields_agree(n in 0i64..8, m in -6i64..6) {
        let g = QField::<QScalar>::generic();
        let q0 = GaussRational::from_ratio(3, 2);
        let p = QField::probe(q0.clone()).unwrap();
        let x = g.qint(m, QLevel::ONE) * g.qfact(n as u32, QLevel::TWO) + g.balanced(m);
        let y = p.qint(m, QLevel::ONE) * p.qfact(n as u32, QLevel::TWO) + p.balanced(m);
        prop_assert_eq!(eval_probe(&x, &q0).unwrap(), y);
    }
}

#[test]
fn level_and_probe_errors() {
    assert!(QLevel::new(3).is_err());
    assert!(QField::probe(GaussRational::from_int(1)).is_err());
    assert!(QField::probe(GaussRational::from_int(0)).is_err());
    assert!("q^".parse::<QScalar>().is_err());
    assert!(QScalar::zero().inv().is_none());
    let f = QField::<QScalar>::generic();
    assert_eq!(QScalar::iota() * QScalar::iota(), -QScalar::one());
    assert_eq!(<QScalar as Scalar>::iota(), QScalar::iota());
    assert_eq!(f.q().clone() * f.q_inv(), QScalar::one());
}
