use capax_core::partitions::{
    block_sum, enum_pair_partitions, enum_triple_partitions, feasible_interval, pairwise_c0,
    pairwise_c1, BoundaryVector, CInterval, PartitionRec, Sides,
};
use capax_core::selftest::oracle::{naive_c0, naive_c1};
use capax_core::{ExtRat, Rat};
use proptest::prelude::*;

fn value() -> impl Strategy<Value = Rat> {
    (-8i64..=8, 1i64..=4).prop_map(|(n, d)| Rat::new(n, d))
}

fn bv(prefix: &'static str, len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = BoundaryVector> {
    prop::collection::vec(value(), len).prop_map(move |vals| {
        BoundaryVector::new(vals.into_iter().enumerate().map(|(i, v)| (format!("{prefix}{i}"), v)))
            .unwrap()
    })
}

/// Points worth probing: the interval ends, a midpoint and a fixed grid.
fn probes(iv: &CInterval) -> Vec<Rat> {
    let mut out: Vec<Rat> = (1..=24).map(|k| Rat::new(k, 4)).collect();
    if let CInterval::Range { lo, hi, .. } = iv {
        out.push(lo.clone());
        out.push(lo + Rat::new(1, 1000));
        if let ExtRat::Finite(h) = hi {
            out.push(h.clone());
            out.push((lo + h) / Rat::int(2));
            out.push(h + Rat::new(1, 1000));
        }
    }
    out.retain(Rat::is_positive);
    out
}

fn interval_is_exact(p: &PartitionRec, sides: &Sides<'_>) -> Result<(), TestCaseError> {
    let iv = feasible_interval(p, sides).unwrap();
    for c in probes(&iv) {
        let feasible = p
            .blocks
            .iter()
            .all(|b| !block_sum(b, sides, &c).unwrap().is_negative());
        prop_assert_eq!(iv.contains(&c), feasible, "C = {} in {:?}", c, iv);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn c0_matches_oracle(f in bv("i", 1..=3), g in bv("j", 0..=4)) {
        let fast = pairwise_c0(&f, &g).unwrap();
        prop_assert_eq!(&fast.value, &naive_c0(&f, &g));
        if let Some(w) = &fast.witness {
            let sides = Sides::pair(&f, &g);
            w.validate(&sides).unwrap();
            prop_assert_eq!(feasible_interval(w, &sides).unwrap().sup(), Some(fast.value.clone()));
        } else {
            prop_assert_eq!(fast.value, ExtRat::zero());
        }
    }

    #[test]
    fn c1_matches_oracle(p in bv("p", 1..=2), m in bv("m", 1..=2), g in bv("j", 0..=3)) {
        let fast = pairwise_c1(&p, &m, &g).unwrap();
        prop_assert_eq!(&fast.value, &naive_c1(&p, &m, &g));
        if let Some(w) = &fast.witness {
            let sides = Sides::triple(&p, &m, &g);
            w.validate(&sides).unwrap();
            prop_assert_eq!(feasible_interval(w, &sides).unwrap().sup(), Some(fast.value.clone()));
        }
    }

    #[test]
    fn pair_intervals_are_exact(f in bv("i", 1..=3), g in bv("j", 0..=3)) {
        let labels = |b: &BoundaryVector| b.labels().map(String::from).collect::<Vec<_>>();
        let sides = Sides::pair(&f, &g);
        for p in enum_pair_partitions(&labels(&f), &labels(&g)).unwrap() {
            p.validate(&sides).unwrap();
            interval_is_exact(&p, &sides)?;
        }
    }

    #[test]
    fn triple_intervals_are_exact(p in bv("p", 1..=2), m in bv("m", 1..=2), g in bv("j", 0..=2)) {
        let labels = |b: &BoundaryVector| b.labels().map(String::from).collect::<Vec<_>>();
        let sides = Sides::triple(&p, &m, &g);
        for part in enum_triple_partitions(&labels(&p), &labels(&m), &labels(&g)).unwrap() {
            part.validate(&sides).unwrap();
            interval_is_exact(&part, &sides)?;
        }
    }

    #[test]
    fn large_values_take_the_same_path(f in bv("i", 1..=3), g in bv("j", 0..=3)) {
        // 2^70 pushes the integerized values past the fast path.
        let huge = Rat::from_bigint(num_bigint::BigInt::from(1u128 << 70));
        let base = pairwise_c0(&f, &g).unwrap().value;
        let scaled = pairwise_c0(&f.scaled(&huge), &g.scaled(&huge)).unwrap().value;
        prop_assert_eq!(scaled, base);
    }
}

#[test]
fn empty_source_is_rejected() {
    let empty = BoundaryVector::default();
    let g = BoundaryVector::new([("x", Rat::one())]).unwrap();
    assert!(pairwise_c0(&empty, &g).is_err());
    assert!(pairwise_c1(&g, &empty, &g).is_err());
}
