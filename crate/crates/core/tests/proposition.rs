use capax_core::partitions::{check_prop_hypotheses, is_i_collection};
use capax_core::selftest::{oracle_bound, random_family};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sufficient_conditions_give_i_collections(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (family, ell) = random_family(&mut rng);
        prop_assume!(check_prop_hypotheses(&family, ell).all_pass);
        let cert = is_i_collection(&family).unwrap();
        prop_assert!(cert.is_i_collection, "C0 = {}, C1 = {}", cert.c0, cert.c1);
    }

    #[test]
    fn family_bound_matches_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (family, ell) = random_family(&mut rng);
        prop_assume!(ell <= 3 && family.len() <= 5);
        let cert = is_i_collection(&family).unwrap();
        prop_assert_eq!(cert.bound(), oracle_bound(&family));
    }
}
