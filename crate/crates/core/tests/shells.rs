use capax_core::partitions::{check_prop_hypotheses, is_i_collection};
use capax_core::selftest::oracle_bound;
use capax_core::shells::{
    build_family, distinguish, separation_bound, shell_sum, symmetric_samples, ShellParams,
    ShellSpec,
};
use capax_core::{ExtRat, Rat};

fn q(s: &str) -> Rat {
    s.parse().unwrap()
}

fn desk(samples: usize) -> ShellSpec {
    ShellSpec::with_sample_count(ShellParams::new(q("21/20"), 2, 2, q("1/40")), samples).unwrap()
}

/// Valid parameters with `kn ∈ {4, 6, 8}` on a coarse rational grid.
fn valid_grid() -> Vec<ShellParams> {
    let mut out = Vec::new();
    for (k, n) in [(2, 2), (2, 3), (2, 4), (4, 2)] {
        for r in ["51/50", "21/20", "27/25", "11/10", "23/20"] {
            for a0 in ["1/200", "1/100", "1/50", "1/40", "1/20"] {
                let p = ShellParams::new(q(r), k, n, q(a0));
                if p.violations().is_empty() {
                    out.push(p);
                }
            }
        }
    }
    out
}

#[test]
fn grid_is_nontrivial() {
    let grid = valid_grid();
    assert!(grid.len() >= 20, "{}", grid.len());
    for kn in [4, 6, 8] {
        assert!(grid.iter().any(|p| p.kn() == kn));
    }
}

#[test]
fn sums_are_helicity_totals_and_increase() {
    for p in valid_grid() {
        let spec = ShellSpec::with_sample_count(p.clone(), 7).unwrap();
        let family = build_family(&spec).unwrap();
        let lo = (&p.r - &p.a0).pow(p.kn() as i32) - Rat::one();
        let hi = (&p.r + &p.a0).pow(p.kn() as i32) - Rat::one();
        let sums: Vec<Rat> = spec.samples.iter().map(|a| shell_sum(&spec, a).unwrap()).collect();
        for (m, s) in family.iter().zip(&sums) {
            assert_eq!(m.values.total(), *s);
            assert!(lo <= *s && *s <= hi);
        }
        assert!(sums.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn valid_shells_give_i_collections() {
    for p in valid_grid() {
        let spec = ShellSpec::with_sample_count(p.clone(), 5).unwrap();
        let family = build_family(&spec).unwrap();
        let rep = check_prop_hypotheses(&family, 2);
        assert!(rep.all_pass, "{p:?}: {:?}", rep.failed());
        let cert = is_i_collection(&family).unwrap();
        assert!(cert.is_i_collection, "{p:?}: C0 = {}, C1 = {}", cert.c0, cert.c1);
    }
}

#[test]
fn pinned_separation_bounds() {
    let sep = separation_bound(&build_family(&desk(3)).unwrap()).unwrap();
    assert_eq!(sep.bound, q("551696/3418801"));
    assert_eq!(sep.certificate.c1, ExtRat::zero());

    let family = build_family(&desk(5)).unwrap();
    let sep = separation_bound(&family).unwrap();
    assert_eq!(sep.certificate.c0, q("11240625/54700816"));
    assert_eq!(sep.certificate.c1, q("6870408/49829473"));
    assert_eq!(sep.bound, q("11240625/54700816"));
    assert_eq!(oracle_bound(&family), sep.bound);
    let w = sep.certificate.c0_witness.unwrap();
    assert_eq!((w.a, w.a_prime), (q("1/40"), q("1/80")));
}

#[test]
fn distinguish_examples() {
    let family = build_family(&desk(5)).unwrap();
    let d = distinguish(&family, 2, &[q("1/40")], &[]).unwrap();
    assert_eq!(d.witness, q("1/40"));
    let d = distinguish(&family, 2, &[q("1/40")], &[q("1/80"), q("1/40")]).unwrap();
    assert_eq!(d.witness, q("1/80"));
    assert!(distinguish(&family, 2, &[q("1/80")], &[q("1/80")]).is_err());
}

#[test]
fn oversized_parameters_lose_separation() {
    let spec = ShellSpec::unchecked(ShellParams::new(q("2"), 2, 2, q("1/2")), symmetric_samples(&q("1/2"), 5))
        .unwrap();
    let family = build_family(&spec).unwrap();
    let sep = separation_bound(&family).unwrap();
    assert!(!sep.separates);
    assert_eq!(sep.certificate.c1, q("5000/4481"));
    assert_eq!(oracle_bound(&family), sep.bound);
}
