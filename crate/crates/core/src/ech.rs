//! Sorted nonnegative integer combinations of a weight vector.
//!
//! For weights `a = (a_1, …, a_n)` the multiset `{m · a : m ∈ ℕ₀ⁿ}` listed in
//! nondecreasing order (with repetitions) is the ECH capacity sequence of the
//! ellipsoid `E(a)` in units of π. [`nkj`] returns its `j`-th entry
//! (0-based) and [`ech_prefix`] the first `N` entries.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::exact::Rat;

pub const DEFAULT_MAX_PREFIX: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EchError {
    #[error("weight vector is empty")]
    EmptyWeights,
    #[error("weight {0} is not positive")]
    NonPositiveWeight(Rat),
    #[error("prefix of length {requested} exceeds the configured limit {limit}")]
    ResourceLimit { requested: usize, limit: usize },
}

/// Caps on the enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EchLimits {
    pub max_prefix: usize,
}

impl Default for EchLimits {
    fn default() -> Self {
        EchLimits {
            max_prefix: DEFAULT_MAX_PREFIX,
        }
    }
}

/// The first `values.len()` terms of the sequence for `weights`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapPrefix {
    pub weights: Vec<Rat>,
    pub values: Vec<Rat>,
}

impl CapPrefix {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, j: usize) -> Option<&Rat> {
        self.values.get(j)
    }
}

fn validate(weights: &[Rat]) -> Result<(), EchError> {
    if weights.is_empty() {
        return Err(EchError::EmptyWeights);
    }
    if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
        return Err(EchError::NonPositiveWeight(w.clone()));
    }
    Ok(())
}

/// Common denominator `D` and integer weights `a_i · D`.
fn integerize(weights: &[Rat]) -> (BigInt, Vec<BigInt>) {
    let den = weights
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let ints = weights
        .iter()
        .map(|w| w.numer() * (&den / w.denom()))
        .collect();
    (den, ints)
}

/// Streams lattice points of `ℕ₀ⁿ` in nondecreasing order of `m · a`.
///
/// Each point `m ≠ 0` is generated once, from its canonical parent
/// `m − e_L` where `L` is the last nonzero coordinate of `m`; a popped point
/// pushes `m + e_i` only for `i ≥ L`.
struct Frontier {
    weights: Vec<BigInt>,
    heap: BinaryHeap<Reverse<(BigInt, Vec<u64>)>>,
}

impl Frontier {
    fn new(weights: Vec<BigInt>) -> Self {
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((BigInt::from(0), vec![0; weights.len()])));
        Frontier { weights, heap }
    }
}

impl Iterator for Frontier {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let Reverse((value, point)) = self.heap.pop()?;
        let last = point.iter().rposition(|&c| c != 0).unwrap_or(0);
        for i in last..point.len() {
            let mut child = point.clone();
            child[i] += 1;
            self.heap
                .push(Reverse((&value + &self.weights[i], child)));
        }
        Some(value)
    }
}

pub fn ech_prefix(weights: &[Rat], count: usize) -> Result<CapPrefix, EchError> {
    ech_prefix_with(weights, count, EchLimits::default())
}

pub fn ech_prefix_with(
    weights: &[Rat],
    count: usize,
    limits: EchLimits,
) -> Result<CapPrefix, EchError> {
    validate(weights)?;
    if count > limits.max_prefix {
        return Err(EchError::ResourceLimit {
            requested: count,
            limit: limits.max_prefix,
        });
    }
    let (den, ints) = integerize(weights);
    let values = Frontier::new(ints)
        .take(count)
        .map(|v| Rat::from_parts(v, den.clone()).expect("common denominator is positive"))
        .collect();
    Ok(CapPrefix {
        weights: weights.to_vec(),
        values,
    })
}

/// The `(j+1)`-th smallest element of `{m · a : m ∈ ℕ₀ⁿ}` counted with
/// multiplicity.
pub fn nkj(weights: &[Rat], j: usize) -> Result<Rat, EchError> {
    nkj_with(weights, j, EchLimits::default())
}

pub fn nkj_with(weights: &[Rat], j: usize, limits: EchLimits) -> Result<Rat, EchError> {
    let requested = j.checked_add(1).ok_or(EchError::ResourceLimit {
        requested: usize::MAX,
        limit: limits.max_prefix,
    })?;
    let mut prefix = ech_prefix_with(weights, requested, limits)?;
    Ok(prefix.values.swap_remove(j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::int(x)).collect()
    }

    fn ints(p: &CapPrefix) -> Vec<Rat> {
        p.values.clone()
    }

    #[test]
    fn nkj_examples() {
        assert_eq!(nkj(&w(&[3]), 4).unwrap(), Rat::int(12));
        assert_eq!(nkj(&w(&[1, 1]), 3).unwrap(), Rat::int(2));
        assert_eq!(nkj(&w(&[1, 2]), 2).unwrap(), Rat::int(2));
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(ints(&ech_prefix(&w(&[1, 1]), 7).unwrap()), w(&[0, 1, 1, 2, 2, 2, 3]));
        assert_eq!(ints(&ech_prefix(&w(&[1, 4]), 6).unwrap()), w(&[0, 1, 2, 3, 4, 4]));
        assert_eq!(ints(&ech_prefix(&w(&[5]), 3).unwrap()), w(&[0, 5, 10]));
    }

    #[test]
    fn fractional_weights() {
        let a = vec![Rat::new(1, 2), Rat::new(1, 3)];
        let p = ech_prefix(&a, 6).unwrap();
        let expect: Vec<Rat> = ["0", "1/3", "1/2", "2/3", "5/6", "1"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(p.values, expect);
    }

    #[test]
    fn errors() {
        assert_eq!(ech_prefix(&[], 3), Err(EchError::EmptyWeights));
        assert!(matches!(
            ech_prefix(&w(&[1, 0]), 3),
            Err(EchError::NonPositiveWeight(_))
        ));
        let limits = EchLimits { max_prefix: 10 };
        assert!(matches!(
            nkj_with(&w(&[1, 1]), 10, limits),
            Err(EchError::ResourceLimit { requested: 11, limit: 10 })
        ));
        assert!(nkj_with(&w(&[1, 1]), 9, limits).is_ok());
        assert!(matches!(
            nkj_with(&w(&[1]), usize::MAX, limits),
            Err(EchError::ResourceLimit { .. })
        ));
    }

    #[test]
    fn starts_at_zero_and_is_nondecreasing() {
        let p = ech_prefix(&[Rat::new(7, 3), Rat::new(2, 5), Rat::int(1)], 300).unwrap();
        assert!(p.values[0].is_zero());
        assert!(p.values.windows(2).all(|v| v[0] <= v[1]));
    }
}
