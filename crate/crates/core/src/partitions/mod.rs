//! Boundary-helicity partitions.
//!
//! Two partition classes of a tagged disjoint union are enumerated:
//!
//! * `(I, I′)`-partitions, where every block meets `I` in exactly one point.
//!   They correspond to functions `I′ → I`.
//! * `(I⁺, I⁻, I′)`-partitions, where one block meets both `I⁺` and `I⁻` in
//!   exactly one point and every other block meets `I = I⁺ ⊔ I⁻` once.
//!
//! Given boundary values `f` on `I` and `f′` on `I′`, a block `J` is
//! feasible for a scale `C > 0` when
//! `Σ(J) = −C·Σ_{J∩I} f + Σ_{J∩I′} f′ ≥ 0`. The optimizers in [`optimize`]
//! compute the supremum of the feasible scales over all partitions, with the
//! convention `sup ∅ = 0`.
//!
//! Throughout, `I` (or `I⁺`) is the [`Side::Source`], `I⁻` the
//! [`Side::Mirror`] and `I′` the [`Side::Target`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExtRat, Rat};

mod collection;
mod enumerate;
mod hypotheses;
pub mod optimize;

pub use collection::{is_i_collection, FamilyMember, ICollectionCertificate, PairOptimum};
pub use enumerate::{enum_pair_partitions, enum_triple_partitions, PairPartitions, TriplePartitions};
pub use hypotheses::{check_prop_hypotheses, Hypothesis, HypothesisCheck, HypothesisReport};
pub use optimize::{pairwise_c0, pairwise_c1, Optimum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("the source label set I is empty")]
    EmptySource,
    #[error("the mirror label set I⁻ is empty")]
    EmptyMirror,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("label {label:?} not found on side {side}")]
    UnknownLabel { side: Side, label: String },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("duplicate family index a = {0}")]
    DuplicateIndex(Rat),
}

/// A finite labeled map `i ↦ f(i)`, iterated in label order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoundaryVector {
    values: BTreeMap<String, Rat>,
}

impl BoundaryVector {
    pub fn new<S: Into<String>>(
        entries: impl IntoIterator<Item = (S, Rat)>,
    ) -> Result<Self, PartitionError> {
        let mut values = BTreeMap::new();
        for (label, v) in entries {
            let label = label.into();
            if values.contains_key(&label) {
                return Err(PartitionError::DuplicateLabel(label));
            }
            values.insert(label, v);
        }
        Ok(BoundaryVector { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&Rat> {
        self.values.get(label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.values.keys().map(String::as_str)
    }

    pub fn values(&self) -> impl Iterator<Item = &Rat> {
        self.values.values()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Rat)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn total(&self) -> Rat {
        self.values.values().sum()
    }

    pub fn scaled(&self, c: &Rat) -> BoundaryVector {
        BoundaryVector {
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Source,
    Mirror,
    Target,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Source => "source",
            Side::Mirror => "mirror",
            Side::Target => "target",
        })
    }
}

/// One element of the tagged union.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Member {
    pub side: Side,
    pub label: String,
}

impl Member {
    pub fn new(side: Side, label: impl Into<String>) -> Self {
        Member {
            side,
            label: label.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionKind {
    Pair,
    Triple,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRec {
    pub kind: PartitionKind,
    pub blocks: Vec<Vec<Member>>,
}

/// The boundary data a partition is evaluated against.
#[derive(Debug, Clone, Copy)]
pub struct Sides<'a> {
    pub source: &'a BoundaryVector,
    pub mirror: Option<&'a BoundaryVector>,
    pub target: &'a BoundaryVector,
}

impl<'a> Sides<'a> {
    pub fn pair(source: &'a BoundaryVector, target: &'a BoundaryVector) -> Self {
        Sides {
            source,
            mirror: None,
            target,
        }
    }

    pub fn triple(
        plus: &'a BoundaryVector,
        minus: &'a BoundaryVector,
        target: &'a BoundaryVector,
    ) -> Self {
        Sides {
            source: plus,
            mirror: Some(minus),
            target,
        }
    }

    fn value(&self, m: &Member) -> Result<&'a Rat, PartitionError> {
        let bv = match m.side {
            Side::Source => Some(self.source),
            Side::Mirror => self.mirror,
            Side::Target => Some(self.target),
        };
        bv.and_then(|bv| bv.get(&m.label))
            .ok_or_else(|| PartitionError::UnknownLabel {
                side: m.side,
                label: m.label.clone(),
            })
    }

    fn universe(&self) -> Vec<Member> {
        let mut all: Vec<Member> = self
            .source
            .labels()
            .map(|l| Member::new(Side::Source, l))
            .collect();
        if let Some(m) = self.mirror {
            all.extend(m.labels().map(|l| Member::new(Side::Mirror, l)));
        }
        all.extend(self.target.labels().map(|l| Member::new(Side::Target, l)));
        all
    }
}

/// `(Σ_{J∩I} f, Σ_{J∩I′} f′)` for a block `J`.
pub fn block_parts(block: &[Member], sides: &Sides<'_>) -> Result<(Rat, Rat), PartitionError> {
    let mut inner = Rat::zero();
    let mut outer = Rat::zero();
    for m in block {
        let v = sides.value(m)?;
        match m.side {
            Side::Source | Side::Mirror => inner += v,
            Side::Target => outer += v,
        }
    }
    Ok((inner, outer))
}

/// `Σ(J, f, f′, C) = −C·Σ_{J∩I} f + Σ_{J∩I′} f′`.
pub fn block_sum(block: &[Member], sides: &Sides<'_>, c: &Rat) -> Result<Rat, PartitionError> {
    let (inner, outer) = block_parts(block, sides)?;
    Ok(outer - c * inner)
}

/// A subset of `(0, ∞)`; `lo = 0` with `lo_closed = false` is the open end 0⁺.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CInterval {
    Empty,
    Range {
        lo: Rat,
        lo_closed: bool,
        hi: ExtRat,
        hi_closed: bool,
    },
}

impl CInterval {
    /// `(0, ∞)`.
    pub fn full() -> Self {
        CInterval::Range {
            lo: Rat::zero(),
            lo_closed: false,
            hi: ExtRat::Infinity,
            hi_closed: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, CInterval::Empty)
    }

    /// Intersects with `C ≤ x`.
    pub fn cap_above(self, x: &Rat) -> Self {
        match self {
            CInterval::Empty => CInterval::Empty,
            CInterval::Range { .. } if !x.is_positive() => CInterval::Empty,
            CInterval::Range {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => {
                let (hi, hi_closed) = match hi.partial_cmp(x) {
                    Some(std::cmp::Ordering::Greater) => (ExtRat::Finite(x.clone()), true),
                    _ => (hi, hi_closed),
                };
                Self::normalized(lo, lo_closed, hi, hi_closed)
            }
        }
    }

    /// Intersects with `C ≥ x`.
    pub fn cap_below(self, x: &Rat) -> Self {
        match self {
            CInterval::Empty => CInterval::Empty,
            CInterval::Range {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => {
                let (lo, lo_closed) = if *x > lo {
                    (x.clone(), true)
                } else {
                    (lo, lo_closed)
                };
                Self::normalized(lo, lo_closed, hi, hi_closed)
            }
        }
    }

    fn normalized(lo: Rat, lo_closed: bool, hi: ExtRat, hi_closed: bool) -> Self {
        let empty = match &hi {
            ExtRat::Infinity => false,
            ExtRat::Finite(h) => lo > *h || (lo == *h && !(lo_closed && hi_closed)),
        };
        if empty {
            CInterval::Empty
        } else {
            CInterval::Range {
                lo,
                lo_closed,
                hi,
                hi_closed,
            }
        }
    }

    pub fn contains(&self, c: &Rat) -> bool {
        match self {
            CInterval::Empty => false,
            CInterval::Range {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => {
                let above = if *lo_closed { c >= lo } else { c > lo };
                let below = match hi {
                    ExtRat::Infinity => true,
                    ExtRat::Finite(h) => {
                        if *hi_closed {
                            c <= h
                        } else {
                            c < h
                        }
                    }
                };
                c.is_positive() && above && below
            }
        }
    }

    /// `None` for the empty set.
    pub fn sup(&self) -> Option<ExtRat> {
        match self {
            CInterval::Empty => None,
            CInterval::Range { hi, .. } => Some(hi.clone()),
        }
    }
}

/// The exact set of `C > 0` for which every block sum is nonnegative.
pub fn feasible_interval(p: &PartitionRec, sides: &Sides<'_>) -> Result<CInterval, PartitionError> {
    let mut iv = CInterval::full();
    for block in &p.blocks {
        let (inner, outer) = block_parts(block, sides)?;
        if inner.is_positive() {
            iv = iv.cap_above(&(outer / inner));
        } else if inner.is_negative() {
            iv = iv.cap_below(&(outer / inner));
        } else if outer.is_negative() {
            iv = CInterval::Empty;
        }
    }
    Ok(iv)
}

impl PartitionRec {
    /// Checks the structural definition of `self.kind` against `sides`.
    pub fn validate(&self, sides: &Sides<'_>) -> Result<(), PartitionError> {
        let bad = |msg: String| Err(PartitionError::InvalidPartition(msg));
        let mut seen: Vec<&Member> = self.blocks.iter().flatten().collect();
        for m in &seen {
            sides.value(m)?;
        }
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return bad("blocks are not disjoint".into());
        }
        if seen.len() != sides.universe().len() {
            return bad("blocks do not cover the union".into());
        }
        if self.blocks.iter().any(Vec::is_empty) {
            return bad("empty block".into());
        }
        let count = |b: &[Member], s: Side| b.iter().filter(|m| m.side == s).count();
        match self.kind {
            PartitionKind::Pair => {
                if sides.mirror.is_some() {
                    return bad("pair partition evaluated with a mirror side".into());
                }
                for b in &self.blocks {
                    if count(b, Side::Source) != 1 {
                        return bad("a block does not meet I exactly once".into());
                    }
                }
            }
            PartitionKind::Triple => {
                let mut joint = 0;
                for b in &self.blocks {
                    let (p, m) = (count(b, Side::Source), count(b, Side::Mirror));
                    if p == 1 && m == 1 {
                        joint += 1;
                    } else if p + m != 1 {
                        return bad("a block meets I neither once nor in a ± pair".into());
                    }
                }
                if joint != 1 {
                    return bad(format!("{joint} blocks meet both I⁺ and I⁻"));
                }
            }
        }
        Ok(())
    }
}
