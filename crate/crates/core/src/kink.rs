//! The embedding-capacity curve of nested ellipsoids and its kink.
//!
//! For `a0 ≥ 1` the curve is `a ↦ c(E(1,a0) → E(1,a))`. It is exactly 1
//! for `a ≥ a0` and drops linearly just below `a0`, so no differentiable
//! function of finitely many curves that are differentiable at `a0` can
//! reproduce it there.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Pow;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::ellipsoid::{embedding_factor, EllipsoidError, EllipsoidSpec};
use crate::exact::{ExtRat, Rat};

pub const DEFAULT_KINK_TRUNCATION: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KinkError {
    #[error("a0 = {0} must be at least 1")]
    BadCenter(Rat),
    #[error("grid value {0} is below 1")]
    BadGridPoint(Rat),
    #[error("step h = {0} must be positive")]
    BadStep(Rat),
    #[error("curve {curve:?} has no sample at a = {a}")]
    MissingPoint { curve: String, a: Rat },
    #[error("input {:?} is not differentiable at a0: left {}, right {}", .0.name, .0.left, .0.right)]
    NotDifferentiable(Box<InputQuotients>),
    #[error("embedding factor is unbounded at a = {0}")]
    Unbounded(Rat),
    #[error(transparent)]
    Ellipsoid(#[from] EllipsoidError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurvePoint {
    pub a: Rat,
    /// ECH upper bound for the embedding factor.
    pub value: Rat,
    /// `j` realizing the bound, 0 for the volume bound.
    pub binding_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveSample {
    pub a0: Rat,
    pub points: Vec<CurvePoint>,
    pub truncation_j: usize,
}

impl CurveSample {
    pub fn value_at(&self, a: &Rat) -> Option<&Rat> {
        self.points
            .binary_search_by(|p| p.a.cmp(a))
            .ok()
            .map(|i| &self.points[i].value)
    }

    pub fn as_map(&self) -> BTreeMap<Rat, Rat> {
        self.points
            .iter()
            .map(|p| (p.a.clone(), p.value.clone()))
            .collect()
    }

    /// Violations of: value 1 above `a0`, `value²·a0 ≤ a` below, and
    /// monotonicity. Empty when all hold.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for p in &self.points {
            if p.a >= self.a0 && p.value != Rat::one() {
                out.push(format!("value {} at a = {} is not 1", p.value, p.a));
            }
            if p.a < self.a0 && &p.value * &p.value * &self.a0 > p.a {
                out.push(format!("value {} at a = {} exceeds the volume bound", p.value, p.a));
            }
        }
        for w in self.points.windows(2) {
            if w[1].value < w[0].value {
                out.push(format!("value decreases from a = {} to a = {}", w[0].a, w[1].a));
            }
        }
        out
    }
}

/// `value(a) = embedding_factor(E(1,a0), E(1,a), truncation_j)`.
pub fn capacity_curve(a0: &Rat, grid: &[Rat], truncation_j: usize) -> Result<CurveSample, KinkError> {
    if *a0 < Rat::one() {
        return Err(KinkError::BadCenter(a0.clone()));
    }
    if let Some(a) = grid.iter().find(|a| **a < Rat::one()) {
        return Err(KinkError::BadGridPoint(a.clone()));
    }
    let mut grid = grid.to_vec();
    grid.sort();
    grid.dedup();
    let src = EllipsoidSpec::new(vec![Rat::one(), a0.clone()])?;
    let points = grid
        .par_iter()
        .map(|a| {
            let dst = EllipsoidSpec::new(vec![Rat::one(), a.clone()])?;
            let v = embedding_factor(&src, &dst, truncation_j)?;
            match v.factor {
                ExtRat::Finite(value) => Ok(CurvePoint {
                    a: a.clone(),
                    value,
                    binding_index: v.binding_index,
                }),
                ExtRat::Infinity => Err(KinkError::Unbounded(a.clone())),
            }
        })
        .collect::<Result<Vec<_>, KinkError>>()?;
    Ok(CurveSample {
        a0: a0.clone(),
        points,
        truncation_j,
    })
}

/// `a0 + i·h` for `i = −steps..=steps`, dropping points below 1.
pub fn auto_grid(a0: &Rat, h: &Rat, steps: i64) -> Vec<Rat> {
    (-steps..=steps)
        .map(|i| a0 + Rat::int(i) * h)
        .filter(|a| *a >= Rat::one())
        .collect()
}

fn sample<'a>(curve: &'a BTreeMap<Rat, Rat>, name: &str, a: &Rat) -> Result<&'a Rat, KinkError> {
    curve.get(a).ok_or_else(|| KinkError::MissingPoint {
        curve: name.to_string(),
        a: a.clone(),
    })
}

/// `(left, right)` difference quotients at `a0` with step `h`.
pub fn one_sided_quotients(
    curve: &BTreeMap<Rat, Rat>,
    name: &str,
    a0: &Rat,
    h: &Rat,
) -> Result<(Rat, Rat), KinkError> {
    if !h.is_positive() {
        return Err(KinkError::BadStep(h.clone()));
    }
    let mid = sample(curve, name, a0)?;
    let lo = sample(curve, name, &(a0 - h))?;
    let hi = sample(curve, name, &(a0 + h))?;
    Ok(((mid - lo) / h, (hi - mid) / h))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KinkReport {
    pub a0: Rat,
    pub h: Rat,
    pub left: Rat,
    pub right: Rat,
    pub threshold: Rat,
    /// `right = 0` and `left ≥ threshold`.
    pub pass: bool,
}

/// `1/(4·a0)`, half the slope of the volume bound at `a0`.
pub fn default_threshold(a0: &Rat) -> Rat {
    (Rat::int(4) * a0).recip().expect("a0 >= 1")
}

pub fn kink_certificate(
    curve: &CurveSample,
    h: &Rat,
    threshold: Option<Rat>,
) -> Result<KinkReport, KinkError> {
    let threshold = threshold.unwrap_or_else(|| default_threshold(&curve.a0));
    let (left, right) = one_sided_quotients(&curve.as_map(), "target", &curve.a0, h)?;
    Ok(KinkReport {
        a0: curve.a0.clone(),
        h: h.clone(),
        pass: right.is_zero() && left >= threshold,
        left,
        right,
        threshold,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefuteOptions {
    /// Largest `|left − right|` accepted for an input curve.
    pub tolerance: Rat,
    /// Smallest `|left − right|` that counts as a kink of the target.
    pub threshold: Rat,
}

impl RefuteOptions {
    pub fn for_center(a0: &Rat) -> Self {
        RefuteOptions {
            tolerance: Rat::new(1, 1_000_000_000),
            threshold: default_threshold(a0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputQuotients {
    pub name: String,
    pub left: Rat,
    pub right: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub a0: Rat,
    pub h: Rat,
    pub inputs: Vec<InputQuotients>,
    pub target_left: Rat,
    pub target_right: Rat,
    pub options: RefuteOptions,
    /// Every input has matching one-sided quotients while the target's
    /// differ by at least the threshold.
    pub refuted: bool,
}

/// Checks that the sampled inputs look differentiable at `a0` while the
/// target does not. Inputs that fail the two-sided test are rejected.
pub fn refute_finite_generation(
    inputs: &BTreeMap<String, BTreeMap<Rat, Rat>>,
    target: &CurveSample,
    h: &Rat,
    options: RefuteOptions,
) -> Result<Refutation, KinkError> {
    let a0 = &target.a0;
    let mut checked = Vec::new();
    for (name, curve) in inputs {
        let (left, right) = one_sided_quotients(curve, name, a0, h)?;
        if (&left - &right).abs() > options.tolerance {
            return Err(KinkError::NotDifferentiable(Box::new(InputQuotients {
                name: name.clone(),
                left,
                right,
            })));
        }
        checked.push(InputQuotients {
            name: name.clone(),
            left,
            right,
        });
    }
    let (target_left, target_right) = one_sided_quotients(&target.as_map(), "target", a0, h)?;
    let refuted = (&target_left - &target_right).abs() >= options.threshold;
    Ok(Refutation {
        a0: a0.clone(),
        h: h.clone(),
        inputs: checked,
        target_left,
        target_right,
        options,
        refuted,
    })
}

/// `⌊√x · 10^digits⌋ / 10^digits`, within `10^-digits` of `√x`.
pub fn sqrt_approx(x: &Rat, digits: u32) -> Rat {
    let scale: BigInt = Pow::pow(BigInt::from(10), digits);
    // √(p/q) = √(p·q)/q
    let radicand = x.numer() * x.denom() * &scale * &scale;
    let root = radicand.sqrt();
    Rat::from_parts(root, x.denom() * scale).expect("nonzero denominator")
}

/// The volume capacity `a ↦ √(vol E(1,a)) = √a`, sampled to `digits`
/// decimal places.
pub fn volume_capacity_curve(grid: &[Rat], digits: u32) -> BTreeMap<Rat, Rat> {
    grid.iter()
        .map(|a| (a.clone(), sqrt_approx(a, digits)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn curve_examples() {
        let curve = capacity_curve(&r("2"), &[r("1"), r("19/10"), r("2"), r("3")], 200).unwrap();
        assert_eq!(curve.value_at(&r("2")), Some(&r("1")));
        assert_eq!(curve.value_at(&r("1")), Some(&r("1/2")));
        assert_eq!(curve.value_at(&r("19/10")), Some(&r("19/20")));
        assert_eq!(curve.value_at(&r("3")), Some(&r("1")));
        assert!(curve.invariant_violations().is_empty());
    }

    #[test]
    fn curve_preconditions() {
        assert!(matches!(
            capacity_curve(&r("1/2"), &[r("1")], 10),
            Err(KinkError::BadCenter(_))
        ));
        assert!(matches!(
            capacity_curve(&r("2"), &[r("1/2")], 10),
            Err(KinkError::BadGridPoint(_))
        ));
    }

    #[test]
    fn certificate_examples() {
        for h in ["1/10", "1/100"] {
            let h = r(h);
            let curve = capacity_curve(&r("2"), &auto_grid(&r("2"), &h, 10), 200).unwrap();
            let rep = kink_certificate(&curve, &h, None).unwrap();
            assert_eq!(rep.left, r("1/2"));
            assert_eq!(rep.right, Rat::zero());
            assert!(rep.pass);
        }
        let curve = capacity_curve(&r("2"), &[r("2")], 10).unwrap();
        assert_eq!(
            kink_certificate(&curve, &Rat::zero(), None),
            Err(KinkError::BadStep(Rat::zero()))
        );
        assert!(matches!(
            kink_certificate(&curve, &r("1/10"), None),
            Err(KinkError::MissingPoint { .. })
        ));
    }

    #[test]
    fn sqrt_approximation_is_close() {
        let s = sqrt_approx(&r("2"), 30);
        let err = (&s * &s - r("2")).abs();
        assert!(err < r("1/1000000000000000000000000000"));
        assert_eq!(sqrt_approx(&r("9/4"), 5), r("3/2"));
    }

    #[test]
    fn refutation() {
        let a0 = r("2");
        let h = Rat::new(1, 1_000_000_000_000);
        let grid = auto_grid(&a0, &h, 1);
        let target = capacity_curve(&a0, &grid, 200).unwrap();
        let opts = RefuteOptions::for_center(&a0);

        let mut inputs = BTreeMap::new();
        inputs.insert("volume".to_string(), volume_capacity_curve(&grid, 40));
        let v = refute_finite_generation(&inputs, &target, &h, opts.clone()).unwrap();
        assert!(v.refuted);

        let empty = BTreeMap::new();
        assert!(refute_finite_generation(&empty, &target, &h, opts.clone()).unwrap().refuted);

        let mut own = BTreeMap::new();
        own.insert("target".to_string(), target.as_map());
        assert!(matches!(
            refute_finite_generation(&own, &target, &h, opts),
            Err(KinkError::NotDifferentiable(_))
        ));
    }
}
