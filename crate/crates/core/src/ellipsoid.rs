//! Ellipsoids `E(a)` and the ECH embedding-factor oracle.
//!
//! All capacities are stored divided by π, so the unit ball `E(1,…,1)` has
//! Gromov width 1 and volumes are reported in units of `πⁿ/n!`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ech::{ech_prefix_with, EchError, EchLimits};
use crate::exact::{ExtRat, Rat};

pub const DEFAULT_TRUNCATION: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipsoidError {
    #[error("ellipsoid needs at least one weight")]
    Empty,
    #[error("weight {0} is not positive")]
    NonPositiveWeight(Rat),
    #[error("dimension mismatch: {0} weights vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("truncation index must be at least 1")]
    ZeroTruncation,
    #[error("scale factor {0} is not positive")]
    NonPositiveScale(Rat),
    #[error(transparent)]
    Ech(#[from] EchError),
}

/// `E(a) = {Σ π|z_i|²/a_i < 1}` with `a` kept sorted nondecreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EllipsoidSpec {
    weights: Vec<Rat>,
}

impl EllipsoidSpec {
    pub fn new(mut weights: Vec<Rat>) -> Result<Self, EllipsoidError> {
        if weights.is_empty() {
            return Err(EllipsoidError::Empty);
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(EllipsoidError::NonPositiveWeight(w.clone()));
        }
        weights.sort();
        Ok(EllipsoidSpec { weights })
    }

    /// Convenience for integer weights in tests and examples.
    pub fn from_ints(weights: &[i64]) -> Result<Self, EllipsoidError> {
        Self::new(weights.iter().map(|&w| Rat::int(w)).collect())
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn scaled(&self, c: &Rat) -> Result<Self, EllipsoidError> {
        if !c.is_positive() {
            return Err(EllipsoidError::NonPositiveScale(c.clone()));
        }
        Ok(EllipsoidSpec {
            weights: self.weights.iter().map(|w| w * c).collect(),
        })
    }

    /// `Π a_i`, the volume in units of `πⁿ/n!`.
    pub fn volume(&self) -> Rat {
        self.weights.iter().product()
    }

    /// `min a_i`, the Gromov width in units of π.
    pub fn gromov_width(&self) -> Rat {
        self.weights[0].clone()
    }
}

impl fmt::Display for EllipsoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("E(")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str(")")
    }
}

pub fn volume(e: &EllipsoidSpec) -> Rat {
    e.volume()
}

pub fn gromov_width(e: &EllipsoidSpec) -> Rat {
    e.gromov_width()
}

/// Result of [`embedding_factor`].
///
/// `factor` is an upper bound for `sup{c : c·src ↪ dst}` obtained from the
/// ECH ratios `c_j(dst)/c_j(src)` for `1 ≤ j ≤ truncation_j` and from the
/// volume constraint. In dimension 4 (`exact_in_limit`) the bound converges
/// to the true value as the truncation grows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbedVerdict {
    pub factor: ExtRat,
    pub truncation_j: usize,
    /// `Π dst / Π src`: the `n`-th power of the volume bound.
    pub volume_bound_pow: Rat,
    /// The volume bound itself when it is rational.
    pub volume_bound: Option<Rat>,
    /// 0 when the volume bound binds, otherwise the first `j` attaining
    /// the minimal ECH ratio.
    pub binding_index: usize,
    /// The volume bound is irrational and strictly below every ECH ratio
    /// seen, so the true bound lies strictly below `factor`.
    pub volume_bound_limited: bool,
    pub exact_in_limit: bool,
    pub dim: usize,
}

fn check_pair(
    src: &EllipsoidSpec,
    dst: &EllipsoidSpec,
    truncation_j: usize,
) -> Result<(), EllipsoidError> {
    if src.dim() != dst.dim() {
        return Err(EllipsoidError::DimensionMismatch(src.dim(), dst.dim()));
    }
    if truncation_j == 0 {
        return Err(EllipsoidError::ZeroTruncation);
    }
    Ok(())
}

pub fn embedding_factor(
    src: &EllipsoidSpec,
    dst: &EllipsoidSpec,
    truncation_j: usize,
) -> Result<EmbedVerdict, EllipsoidError> {
    embedding_factor_with(src, dst, truncation_j, EchLimits::default())
}

pub fn embedding_factor_with(
    src: &EllipsoidSpec,
    dst: &EllipsoidSpec,
    truncation_j: usize,
    limits: EchLimits,
) -> Result<EmbedVerdict, EllipsoidError> {
    check_pair(src, dst, truncation_j)?;
    let count = truncation_j.checked_add(1).ok_or(EchError::ResourceLimit {
        requested: usize::MAX,
        limit: limits.max_prefix,
    })?;
    let cs = ech_prefix_with(src.weights(), count, limits)?;
    let cd = ech_prefix_with(dst.weights(), count, limits)?;

    // j = 0 is 0/0 and skipped; c_j(src) > 0 for j ≥ 1.
    let mut best: Option<(Rat, usize)> = None;
    for j in 1..count {
        let ratio = &cd.values[j] / &cs.values[j];
        if best.as_ref().is_none_or(|(b, _)| ratio < *b) {
            best = Some((ratio, j));
        }
    }
    let (ratio, ratio_j) = best.expect("truncation_j >= 1");

    let n = src.dim() as u32;
    let volume_bound_pow = dst.volume() / src.volume();
    let volume_bound = volume_bound_pow.exact_root(n);

    let (factor, binding_index, volume_bound_limited) = match &volume_bound {
        Some(v) if *v < ratio => (v.clone(), 0, false),
        Some(_) => (ratio, ratio_j, false),
        None => {
            // ratio^n > Π dst/Π src means the irrational bound is smaller.
            let limited = ratio.pow(n as i32).cmp(&volume_bound_pow) == Ordering::Greater;
            (ratio, ratio_j, limited)
        }
    };

    Ok(EmbedVerdict {
        factor: ExtRat::Finite(factor),
        truncation_j,
        volume_bound_pow,
        volume_bound,
        binding_index,
        volume_bound_limited,
        exact_in_limit: n == 2,
        dim: src.dim(),
    })
}

/// `c_j(src) ≤ c_j(dst)` for every `1 ≤ j ≤ truncation_j`.
pub fn ech_dominates(
    src: &EllipsoidSpec,
    dst: &EllipsoidSpec,
    truncation_j: usize,
) -> Result<bool, EllipsoidError> {
    ech_dominates_with(src, dst, truncation_j, EchLimits::default())
}

pub fn ech_dominates_with(
    src: &EllipsoidSpec,
    dst: &EllipsoidSpec,
    truncation_j: usize,
    limits: EchLimits,
) -> Result<bool, EllipsoidError> {
    check_pair(src, dst, truncation_j)?;
    let count = truncation_j.checked_add(1).ok_or(EchError::ResourceLimit {
        requested: usize::MAX,
        limit: limits.max_prefix,
    })?;
    let cs = ech_prefix_with(src.weights(), count, limits)?;
    let cd = ech_prefix_with(dst.weights(), count, limits)?;
    Ok(cs.values[1..]
        .iter()
        .zip(&cd.values[1..])
        .all(|(s, d)| s <= d))
}
