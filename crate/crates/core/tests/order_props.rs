use capax_core::order::{
    almost_order_recognizing, can_monotonely_generate, monotonize, order_capacity, vector_column,
    Element, InstanceKind, ScalableInstance, VECTOR_TARGETS,
};
use capax_core::selftest::{random_vector_instance, random_vector_table};
use capax_core::{ExtRat, Rat};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rescaled(inst: &ScalableInstance, lambda: &Rat) -> ScalableInstance {
    let elements = inst
        .elements()
        .iter()
        .map(|e| Element::new(e.name.clone(), e.base.clone(), &e.scale * lambda))
        .collect();
    ScalableInstance::new(inst.kind(), elements, inst.truncation_j()).unwrap()
}

fn random_partial(rng: &mut ChaCha8Rng, n: usize) -> Vec<Option<ExtRat>> {
    (0..n)
        .map(|_| match rng.gen_range(0..4) {
            0 => None,
            1 => Some(ExtRat::Infinity),
            _ => Some(Rat::new(rng.gen_range(0..20), rng.gen_range(1..4)).into()),
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn monotonization_is_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_vector_instance(&mut rng);
        let f = random_partial(&mut rng, inst.len());
        let big = monotonize(&inst, &f);
        for i in 0..inst.len() {
            for j in 0..inst.len() {
                if inst.leq(i, j) {
                    prop_assert!(big[i] <= big[j]);
                }
            }
            if let Some(v) = &f[i] {
                prop_assert!(big[i] >= *v);
            }
        }
    }

    #[test]
    fn monotonization_extends_monotone_maps(seed in any::<u64>(), name in 0usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_vector_instance(&mut rng);
        let col = vector_column(&inst, VECTOR_TARGETS[name]).unwrap();
        let f: Vec<Option<ExtRat>> = col.iter().map(|v| rng.gen_bool(0.6).then(|| v.clone())).collect();
        let big = monotonize(&inst, &f);
        for (i, v) in f.iter().enumerate() {
            if let Some(v) = v {
                prop_assert_eq!(&big[i], v);
            }
        }
    }

    #[test]
    fn monotonization_commutes_with_scaling(seed in any::<u64>(), num in 1i64..6, den in 1i64..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda = Rat::new(num, den);
        let inst = random_vector_instance(&mut rng);
        let f = random_partial(&mut rng, inst.len());
        let scaled_f: Vec<Option<ExtRat>> =
            f.iter().map(|v| v.as_ref().map(|v| v.scale(&lambda).unwrap())).collect();
        let lhs = monotonize(&rescaled(&inst, &lambda), &scaled_f);
        let rhs: Vec<ExtRat> = monotonize(&inst, &f).iter().map(|v| v.scale(&lambda).unwrap()).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn order_capacity_scales_inversely(seed in any::<u64>(), num in 1i64..6, den in 1i64..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda = Rat::new(num, den);
        let inst = random_vector_instance(&mut rng);
        let mut elements = inst.elements().to_vec();
        let first = elements[0].clone();
        elements.push(Element::new("scaled", first.base.clone(), &first.scale * &lambda));
        let ext = ScalableInstance::vectors(elements).unwrap();
        let last = ext.len() - 1;
        for j in 0..inst.len() {
            let c = order_capacity(&ext, 0, j).unwrap();
            let scaled = order_capacity(&ext, last, j).unwrap();
            prop_assert_eq!(scaled, c.scale(&lambda.recip().unwrap()).unwrap());
        }
    }

    #[test]
    fn recognition_matches_generation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_vector_instance(&mut rng);
        let table = random_vector_table(&mut rng, &inst);
        let rec = almost_order_recognizing(&inst, &table).unwrap();
        let mut all = true;
        for name in VECTOR_TARGETS {
            let target = vector_column(&inst, name).unwrap();
            let g = can_monotonely_generate(&inst, &table, &target).unwrap();
            prop_assert!(!g.holds || g.realized);
            all &= g.holds;
        }
        prop_assert_eq!(rec.holds, all);
    }
}

#[test]
fn ellipsoid_order_capacity_scales() {
    let e = |name: &str, ws: &[i64], s: Rat| Element::new(name, ws.iter().map(|&w| Rat::int(w)).collect(), s);
    let inst = ScalableInstance::new(
        InstanceKind::Ellipsoids,
        vec![
            e("a", &[1, 4], Rat::one()),
            e("b", &[2, 2], Rat::one()),
            e("3a", &[1, 4], Rat::int(3)),
        ],
        100,
    )
    .unwrap();
    let c = order_capacity(&inst, 0, 1).unwrap();
    assert_eq!(c, Rat::one());
    assert_eq!(order_capacity(&inst, 2, 1).unwrap(), Rat::new(1, 3));
}
