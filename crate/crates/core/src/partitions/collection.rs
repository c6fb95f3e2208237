//! Deciding whether a finite family of boundary vectors is an I-collection.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::optimize::{pairwise_c0, pairwise_c1, Optimum};
use super::{BoundaryVector, PartitionError, PartitionRec};
use crate::exact::{ExtRat, Rat};

/// One indexed entry `(a, f_a)` of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub a: Rat,
    pub values: BoundaryVector,
}

impl FamilyMember {
    pub fn new(a: Rat, values: BoundaryVector) -> Self {
        FamilyMember { a, values }
    }
}

/// The optimum for one pair of indices.
///
/// For `C₀` this is the pair `a > a′`; for `C₁` it is `0 < a < a′` with the
/// mirror index `−a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairOptimum {
    pub a: Rat,
    pub a_prime: Rat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mirror: Option<Rat>,
    pub value: ExtRat,
    pub partition: Option<PartitionRec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ICollectionCertificate {
    pub c0: ExtRat,
    pub c1: ExtRat,
    pub is_i_collection: bool,
    /// Pair attaining `c0` (absent when no pair has a feasible partition).
    pub c0_witness: Option<PairOptimum>,
    pub c1_witness: Option<PairOptimum>,
    pub c0_pairs: usize,
    pub c1_pairs: usize,
    pub warnings: Vec<String>,
}

impl ICollectionCertificate {
    /// `max(C₀, C₁)`.
    pub fn bound(&self) -> ExtRat {
        self.c0.clone().max(self.c1.clone())
    }
}

enum Job<'a> {
    Zero(&'a FamilyMember, &'a FamilyMember),
    One(&'a FamilyMember, &'a FamilyMember, &'a FamilyMember),
}

fn run(job: &Job<'_>) -> Result<PairOptimum, PartitionError> {
    let (opt, a, a_prime, mirror): (Optimum, _, _, _) = match job {
        Job::Zero(hi, lo) => (pairwise_c0(&hi.values, &lo.values)?, &hi.a, &lo.a, None),
        Job::One(plus, minus, target) => (
            pairwise_c1(&plus.values, &minus.values, &target.values)?,
            &plus.a,
            &target.a,
            Some(minus.a.clone()),
        ),
    };
    Ok(PairOptimum {
        a: a.clone(),
        a_prime: a_prime.clone(),
        mirror,
        value: opt.value,
        partition: opt.witness,
    })
}

/// First maximum in job order, so the result does not depend on scheduling.
fn argmax(results: Vec<PairOptimum>) -> (ExtRat, Option<PairOptimum>) {
    let mut best: Option<PairOptimum> = None;
    for r in results {
        if r.partition.is_some() && best.as_ref().is_none_or(|b| r.value > b.value) {
            best = Some(r);
        }
    }
    match best {
        Some(b) => (b.value.clone(), Some(b)),
        None => (ExtRat::zero(), None),
    }
}

/// Computes `C₀` over ordered pairs `a > a′` and `C₁` over `0 < a < a′`
/// with `−a` sampled, and reports whether both are `< 1`.
///
/// Only the finitely many sampled indices are considered, so a `true`
/// verdict certifies the restriction of the family to its samples.
pub fn is_i_collection(family: &[FamilyMember]) -> Result<ICollectionCertificate, PartitionError> {
    let mut members: Vec<&FamilyMember> = family.iter().collect();
    members.sort_by(|x, y| x.a.cmp(&y.a));
    if let Some(w) = members.windows(2).find(|w| w[0].a == w[1].a) {
        return Err(PartitionError::DuplicateIndex(w[0].a.clone()));
    }
    let lookup = |a: &Rat| {
        members
            .binary_search_by(|m| m.a.cmp(a))
            .ok()
            .map(|i| members[i])
    };

    let mut zero_jobs = Vec::new();
    for (i, lo) in members.iter().enumerate() {
        for hi in &members[i + 1..] {
            zero_jobs.push(Job::Zero(hi, lo));
        }
    }

    let positive: Vec<&FamilyMember> = members
        .iter()
        .copied()
        .filter(|m| m.a.is_positive())
        .collect();
    let mut one_jobs = Vec::new();
    let mut warnings = Vec::new();
    for (i, small) in positive.iter().enumerate() {
        let mirror = lookup(&-&small.a);
        for big in &positive[i + 1..] {
            match mirror {
                Some(m) => one_jobs.push(Job::One(small, m, big)),
                None => warnings.push(format!(
                    "C1 pair (a = {}, a' = {}) skipped: -a is not sampled",
                    small.a, big.a
                )),
            }
        }
    }

    let zero: Vec<PairOptimum> = zero_jobs.par_iter().map(run).collect::<Result<_, _>>()?;
    let one: Vec<PairOptimum> = one_jobs.par_iter().map(run).collect::<Result<_, _>>()?;
    let (c0, c0_witness) = argmax(zero);
    let (c1, c1_witness) = argmax(one);
    let is_i_collection = c0 < Rat::one() && c1 < Rat::one();
    Ok(ICollectionCertificate {
        c0,
        c1,
        is_i_collection,
        c0_witness,
        c1_witness,
        c0_pairs: zero_jobs.len(),
        c1_pairs: one_jobs.len(),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{feasible_interval, Sides};
    use super::*;

    fn member(a: &str, entries: &[(&str, &str)]) -> FamilyMember {
        FamilyMember::new(
            a.parse().unwrap(),
            BoundaryVector::new(entries.iter().map(|&(l, v)| (l, v.parse::<Rat>().unwrap())))
                .unwrap(),
        )
    }

    #[test]
    fn singleton_family_is_a_collection() {
        let cert = is_i_collection(&[member("0", &[("p", "1")])]).unwrap();
        assert!(cert.is_i_collection);
        assert_eq!(cert.c0, ExtRat::zero());
        assert_eq!(cert.c1, ExtRat::zero());
        assert_eq!(cert.c0_pairs, 0);
    }

    #[test]
    fn big_shell_inside_fails_with_witness() {
        let fam = [
            member("1", &[("p", "1"), ("q", "-1")]),
            member("0", &[("s", "2"), ("t", "-1")]),
        ];
        let cert = is_i_collection(&fam).unwrap();
        assert!(!cert.is_i_collection);
        assert!(cert.c0 >= Rat::one());
        let w = cert.c0_witness.unwrap();
        assert_eq!(w.a, Rat::one());
        assert_eq!(w.a_prime, Rat::zero());
        let part = w.partition.unwrap();
        let (hi, lo) = (&fam[0].values, &fam[1].values);
        let iv = feasible_interval(&part, &Sides::pair(hi, lo)).unwrap();
        assert!(iv.contains(&Rat::one()));
    }

    #[test]
    fn missing_mirror_is_reported() {
        let fam = [
            member("1", &[("p", "-1"), ("q", "2")]),
            member("2", &[("p", "-1"), ("q", "3")]),
        ];
        let cert = is_i_collection(&fam).unwrap();
        assert_eq!(cert.c1_pairs, 0);
        assert_eq!(cert.warnings.len(), 1);
    }

    #[test]
    fn duplicate_index_rejected() {
        let fam = [member("1", &[("p", "1")]), member("1", &[("q", "1")])];
        assert!(matches!(
            is_i_collection(&fam),
            Err(PartitionError::DuplicateIndex(_))
        ));
    }
}
