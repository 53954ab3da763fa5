use num_traits::Zero;
use proptest::prelude::*;
use uqsp6::linalg::*;
use uqsp6::QScalar;

fn s(n: i64) -> QScalar {
    QScalar::from_int(n)
}

#[test]
fn kernel_and_det() {
    let m = Mat::from_rows(3, &[vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)]]);
    assert_eq!(m.rank(), 1);
    let k = m.kernel();
    assert_eq!(k.len(), 2);
    for v in &k {
        assert!(vec_is_zero(&m.mul_vec(v)));
    }
    let a = Mat::from_rows(2, &[vec![QScalar::q(), s(1)], vec![s(1), QScalar::q()]]);
    assert_eq!(a.det(), QScalar::q_pow(2) - s(1));
    let inv = a.inverse().unwrap();
    assert_eq!(a.mul(&inv), Mat::identity(2));
}

#[test]
fn incremental() {
    let mut b = IncrementalBasis::<QScalar>::new(2);
    assert!(matches!(b.insert(&[s(1), s(1)]), Insert::New(0)));
    assert!(matches!(b.insert(&[s(1), s(2)]), Insert::New(1)));
    match b.insert(&[s(3), s(5)]) {
        Insert::Dependent(c) => assert_eq!(c, vec![s(1), s(2)]),
        _ => panic!("expected dependent"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity_and_det(entries in prop::collection::vec(-3i64..4, 9)) {
        let rows: Vec<Vec<QScalar>> = entries.chunks(3).map(|r| r.iter().map(|&x| s(x)).collect()).collect();
        let m = Mat::from_rows(3, &rows);
        prop_assert_eq!(m.rank() + m.kernel().len(), 3);
        prop_assert_eq!(m.det().is_zero(), m.rank() < 3);
        for v in m.kernel() {
            prop_assert!(vec_is_zero(&m.mul_vec(&v)));
        }
    }
}
