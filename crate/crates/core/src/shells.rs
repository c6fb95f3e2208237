//! Boundary helicities of scaled starshaped shells.
//!
//! For a compact strictly starshaped body `K` and `r > 1`, the shell
//! `M_a = (r+a)K \ int K` carries the form normalized by `∫_K ωⁿ`. Its
//! boundary has two components with helicities `−1` (inner, `∂K`) and
//! `(r+a)^{kn}` (outer). `K` itself never enters: after normalization every
//! quantity below is a closed-form rational in `r`, `a` and `kn`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{cmp_pow, ExtRat, Rat};
use crate::partitions::{
    check_prop_hypotheses, is_i_collection, BoundaryVector, FamilyMember, HypothesisReport,
    ICollectionCertificate, PartitionError,
};

pub const INNER: &str = "inner";
pub const OUTER: &str = "outer";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShellError {
    #[error("invalid shell parameters: {0}")]
    InvalidParams(String),
    #[error("sample a = {a} lies outside [-{a0}, {a0}]")]
    SampleOutOfRange { a: Rat, a0: Rat },
    #[error("sample set is empty")]
    EmptySamples,
    #[error("sample set is not symmetric about 0 (missing -{0})")]
    AsymmetricSamples(Rat),
    #[error("the normalized checks need k = 2, got k = {0}")]
    RequiresKTwo(u32),
    #[error("the two index sets are equal")]
    IdenticalSubsets,
    #[error("index {0} is not a positive sample of the family")]
    NotPositiveSample(Rat),
    #[error("family does not separate: max(C0, C1) = {0} is not < 1")]
    NotSeparating(ExtRat),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// `r`, `k`, `n` and the half-width `a0` of the parameter interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShellParams {
    pub r: Rat,
    pub k: u32,
    pub n: u32,
    pub a0: Rat,
}

impl ShellParams {
    pub fn new(r: Rat, k: u32, n: u32, a0: Rat) -> Self {
        ShellParams { r, k, n, a0 }
    }

    pub fn kn(&self) -> u32 {
        self.k * self.n
    }

    /// `(r + a)^{kn}`.
    pub fn outer_power(&self, a: &Rat) -> Rat {
        (&self.r + a).pow(self.kn() as i32)
    }

    /// Every violated structural condition; empty when the parameters
    /// describe a valid family (`0 < a0 < min{r − 1, ᵏⁿ√2 − r}`).
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.r <= Rat::one() {
            out.push(format!("r = {} must exceed 1", self.r));
        }
        if self.k == 0 || !self.k.is_multiple_of(2) {
            out.push(format!("k = {} must be even and positive", self.k));
        }
        if self.n < 2 {
            out.push(format!("n = {} must be at least 2", self.n));
        }
        if !self.a0.is_positive() {
            out.push(format!("a0 = {} must be positive", self.a0));
        }
        if self.a0 >= &self.r - Rat::one() {
            out.push(format!("a0 = {} must be below r - 1", self.a0));
        }
        let top = &self.r + &self.a0;
        let below_root = self.kn() > 0
            && top.is_positive()
            && cmp_pow(&top, &Rat::int(2), self.kn()) == Ok(Ordering::Less);
        if !below_root {
            out.push(format!("(r + a0)^{} must be below 2", self.kn()));
        }
        out
    }
}

/// `n` evenly spaced samples of `[−a0, a0]`, symmetric about 0. Odd counts
/// include 0; a count of 1 is `{0}`.
pub fn symmetric_samples(a0: &Rat, count: usize) -> Vec<Rat> {
    match count {
        0 => vec![],
        1 => vec![Rat::zero()],
        _ => {
            let steps = Rat::int(count as i64 - 1);
            (0..count)
                .map(|i| a0 * (Rat::int(2 * i as i64) / &steps - Rat::one()))
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShellSpec {
    pub params: ShellParams,
    pub samples: Vec<Rat>,
}

impl ShellSpec {
    /// Validated construction.
    pub fn new(params: ShellParams, samples: Vec<Rat>) -> Result<Self, ShellError> {
        let bad = params.violations();
        if !bad.is_empty() {
            return Err(ShellError::InvalidParams(bad.join("; ")));
        }
        Self::unchecked(params, samples)
    }

    /// Only the sample set is validated; for exploring parameters outside
    /// the admissible range.
    pub fn unchecked(params: ShellParams, mut samples: Vec<Rat>) -> Result<Self, ShellError> {
        if samples.is_empty() {
            return Err(ShellError::EmptySamples);
        }
        samples.sort();
        samples.dedup();
        let set: BTreeSet<&Rat> = samples.iter().collect();
        for a in &samples {
            if a.abs() > params.a0 {
                return Err(ShellError::SampleOutOfRange {
                    a: a.clone(),
                    a0: params.a0.clone(),
                });
            }
            if !set.contains(&-a) {
                return Err(ShellError::AsymmetricSamples(a.clone()));
            }
        }
        Ok(ShellSpec { params, samples })
    }

    pub fn with_sample_count(params: ShellParams, count: usize) -> Result<Self, ShellError> {
        let samples = symmetric_samples(&params.a0, count);
        Self::new(params, samples)
    }

    pub fn positive_samples(&self) -> Vec<Rat> {
        self.samples.iter().filter(|a| a.is_positive()).cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShellHelicity {
    pub inner: Rat,
    pub outer: Rat,
}

impl ShellHelicity {
    pub fn boundary_vector(&self) -> BoundaryVector {
        BoundaryVector::new([(INNER, self.inner.clone()), (OUTER, self.outer.clone())])
            .expect("distinct labels")
    }
}

fn check_range(spec: &ShellSpec, a: &Rat) -> Result<(), ShellError> {
    if a.abs() > spec.params.a0 {
        return Err(ShellError::SampleOutOfRange {
            a: a.clone(),
            a0: spec.params.a0.clone(),
        });
    }
    Ok(())
}

/// `{inner: −1, outer: (r+a)^{kn}}`.
pub fn shell_helicity(spec: &ShellSpec, a: &Rat) -> Result<ShellHelicity, ShellError> {
    check_range(spec, a)?;
    Ok(ShellHelicity {
        inner: -Rat::one(),
        outer: spec.params.outer_power(a),
    })
}

/// `−1 + (r+a)^{kn}`: the total boundary helicity, which is also the
/// normalized volume of `M_a`.
pub fn shell_sum(spec: &ShellSpec, a: &Rat) -> Result<Rat, ShellError> {
    check_range(spec, a)?;
    Ok(spec.params.outer_power(a) - Rat::one())
}

/// One boundary vector per sample, labeled `inner` and `outer`.
pub fn build_family(spec: &ShellSpec) -> Result<Vec<FamilyMember>, ShellError> {
    if spec.samples.is_empty() {
        return Err(ShellError::EmptySamples);
    }
    spec.samples
        .iter()
        .map(|a| Ok(FamilyMember::new(a.clone(), shell_helicity(spec, a)?.boundary_vector())))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizedReport {
    /// `(r + a0)^{2n} < 2`, which bounds the Gromov width of every shell
    /// below 1.
    pub width_ok: bool,
    /// `2 − (r + a0)^{2n}`
    pub width_margin: Rat,
    /// `r − a0 > 1`: the inner radius exceeds 1.
    pub inner_ok: bool,
    /// `r − a0 − 1`
    pub inner_margin: Rat,
    pub pass: bool,
}

pub fn check_normalized_hypotheses(params: &ShellParams) -> Result<NormalizedReport, ShellError> {
    if params.k != 2 {
        return Err(ShellError::RequiresKTwo(params.k));
    }
    let top = (&params.r + &params.a0).pow(2 * params.n as i32);
    let width_margin = Rat::int(2) - top;
    let inner_margin = &params.r - &params.a0 - Rat::one();
    let width_ok = width_margin.is_positive();
    let inner_ok = inner_margin.is_positive();
    Ok(NormalizedReport {
        width_ok,
        width_margin,
        inner_ok,
        inner_margin,
        pass: width_ok && inner_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    /// `C = max(C₀, C₁)`
    pub bound: ExtRat,
    /// `C < 1`, equivalently `C^{1/n} < 1`.
    pub separates: bool,
    pub certificate: ICollectionCertificate,
}

/// The constant `C` such that `c_A(W_{a′}) ≤ C^{1/n}` whenever `a′ ∉ A`.
pub fn separation_bound(family: &[FamilyMember]) -> Result<SeparationReport, ShellError> {
    let certificate = is_i_collection(family)?;
    let bound = certificate.bound();
    Ok(SeparationReport {
        separates: bound < Rat::one(),
        bound,
        certificate,
    })
}

/// Certifies that the capacities `c_A` and `c_{A′}` differ on `W_{a′}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distinction {
    /// The index `a′` in the symmetric difference.
    pub witness: Rat,
    /// `true` when `a′ ∈ A′ \ A`, so `c_A(W_{a′}) < 1 = c_{A′}(W_{a′})`;
    /// `false` for the mirrored situation.
    pub larger_in_prime: bool,
    /// `C`; the small side is bounded by `C^{1/n}`.
    pub bound: ExtRat,
    /// `C^{1/n}` when it is rational.
    pub bound_root: Option<Rat>,
    pub n: u32,
}

pub fn distinguish(
    family: &[FamilyMember],
    n: u32,
    a_set: &[Rat],
    a_prime_set: &[Rat],
) -> Result<Distinction, ShellError> {
    let positives: BTreeSet<&Rat> = family
        .iter()
        .map(|m| &m.a)
        .filter(|a| a.is_positive())
        .collect();
    for a in a_set.iter().chain(a_prime_set) {
        if !positives.contains(a) {
            return Err(ShellError::NotPositiveSample(a.clone()));
        }
    }
    let a: BTreeSet<&Rat> = a_set.iter().collect();
    let ap: BTreeSet<&Rat> = a_prime_set.iter().collect();
    let witness = a.symmetric_difference(&ap).min().cloned().cloned();
    let witness = witness.ok_or(ShellError::IdenticalSubsets)?;
    let sep = separation_bound(family)?;
    if !sep.separates {
        return Err(ShellError::NotSeparating(sep.bound));
    }
    let bound_root = sep.bound.finite().and_then(|c| c.exact_root(n));
    Ok(Distinction {
        larger_in_prime: ap.contains(&witness),
        witness,
        bound: sep.bound,
        bound_root,
        n,
    })
}

/// Hypothesis report for a shell family with `ℓ = 2`.
pub fn check_shell_hypotheses(spec: &ShellSpec) -> Result<HypothesisReport, ShellError> {
    Ok(check_prop_hypotheses(&build_family(spec)?, 2))
}
