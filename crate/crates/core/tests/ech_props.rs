use capax_core::ech::{ech_prefix, ech_prefix_with, nkj, EchError, EchLimits};
use capax_core::selftest::oracle::naive_ech;
use capax_core::Rat;
use proptest::prelude::*;

fn weight() -> impl Strategy<Value = Rat> {
    (1i64..=7, 1i64..=4).prop_map(|(n, d)| Rat::new(n, d))
}

fn weights() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(weight(), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_naive_enumeration(w in weights(), count in 1usize..80) {
        prop_assert_eq!(ech_prefix(&w, count).unwrap().values, naive_ech(&w, count));
    }

    #[test]
    fn homogeneous(w in weights(), lambda in weight()) {
        let base = ech_prefix(&w, 40).unwrap().values;
        let scaled: Vec<Rat> = w.iter().map(|x| x * &lambda).collect();
        let got = ech_prefix(&scaled, 40).unwrap().values;
        let want: Vec<Rat> = base.iter().map(|x| x * &lambda).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn permutation_invariant(mut w in weights()) {
        let base = ech_prefix(&w, 40).unwrap().values;
        w.reverse();
        prop_assert_eq!(ech_prefix(&w, 40).unwrap().values, base);
    }

    #[test]
    fn sorted_and_starts_at_zero(w in weights()) {
        let v = ech_prefix(&w, 60).unwrap().values;
        prop_assert!(v[0].is_zero());
        prop_assert!(v.windows(2).all(|p| p[0] <= p[1]));
        let min = w.iter().min().unwrap();
        prop_assert_eq!(&v[1], min);
    }

    #[test]
    fn monotone_in_weights(w in weights(), bump in weight(), k in 0usize..3) {
        let k = k % w.len();
        let mut bigger = w.clone();
        bigger[k] = &bigger[k] + &bump;
        let small = ech_prefix(&w, 50).unwrap().values;
        let big = ech_prefix(&bigger, 50).unwrap().values;
        prop_assert!(small.iter().zip(&big).all(|(a, b)| a <= b));
    }

    #[test]
    fn nkj_indexes_prefix(w in weights(), j in 0usize..40) {
        prop_assert_eq!(nkj(&w, j).unwrap(), ech_prefix(&w, j + 1).unwrap().values[j].clone());
    }
}

#[test]
fn resource_limit_is_reported() {
    let w = [Rat::int(1), Rat::int(1)];
    let err = ech_prefix_with(&w, 11, EchLimits { max_prefix: 10 }).unwrap_err();
    assert!(matches!(err, EchError::ResourceLimit { requested: 11, limit: 10 }));
}
