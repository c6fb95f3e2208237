//! Finite scalable preorders and capacities on them.
//!
//! An instance is a finite list of elements `scale · base`. For vectors the
//! order is componentwise; for ellipsoids it is ECH dominance up to a fixed
//! index. The order capacity `c^≤(s, s′) = sup{a : a·s ≤ s′}` is exact for
//! vectors and an ECH upper bound for ellipsoids.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ellipsoid::{
    ech_dominates, embedding_factor, EllipsoidError, EllipsoidSpec, DEFAULT_TRUNCATION,
};
use crate::exact::{ExtRat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("instance has no elements")]
    Empty,
    #[error("element {0:?} has an empty base")]
    EmptyBase(String),
    #[error("element {name:?} has a nonpositive entry {value}")]
    NonPositive { name: String, value: Rat },
    #[error("element {name:?} has length {got}, expected {expected}")]
    DimensionMismatch {
        name: String,
        got: usize,
        expected: usize,
    },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("relation is not a preorder: {0}")]
    NotPreorder(String),
    #[error("capacity {capacity:?} has no value for element {element:?}")]
    MissingValue { capacity: String, element: String },
    #[error("target has no value for element {0:?}")]
    MissingTarget(String),
    #[error("truncation index must be at least 1")]
    ZeroTruncation,
    #[error(transparent)]
    Ellipsoid(#[from] EllipsoidError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    Vectors,
    Ellipsoids,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Element {
    pub name: String,
    pub base: Vec<Rat>,
    #[serde(default = "Rat::one")]
    pub scale: Rat,
}

impl Element {
    pub fn new(name: impl Into<String>, base: Vec<Rat>, scale: Rat) -> Self {
        Element {
            name: name.into(),
            base,
            scale,
        }
    }

    /// `scale · base`
    pub fn datum(&self) -> Vec<Rat> {
        self.base.iter().map(|b| b * &self.scale).collect()
    }
}

/// On-disk form of an instance; `truncation_j` only matters for ellipsoids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub kind: InstanceKind,
    #[serde(default)]
    pub truncation_j: Option<usize>,
    pub elements: Vec<Element>,
}

#[derive(Debug, Clone)]
pub struct ScalableInstance {
    kind: InstanceKind,
    truncation_j: usize,
    elements: Vec<Element>,
    data: Vec<Vec<Rat>>,
    leq: Vec<Vec<bool>>,
}

fn vec_leq(x: &[Rat], y: &[Rat]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b)
}

impl ScalableInstance {
    pub fn new(
        kind: InstanceKind,
        elements: Vec<Element>,
        truncation_j: usize,
    ) -> Result<Self, OrderError> {
        if elements.is_empty() {
            return Err(OrderError::Empty);
        }
        if truncation_j == 0 {
            return Err(OrderError::ZeroTruncation);
        }
        let expected = elements[0].base.len();
        let mut names = HashSet::new();
        for e in &elements {
            if !names.insert(e.name.as_str()) {
                return Err(OrderError::DuplicateName(e.name.clone()));
            }
            if e.base.is_empty() {
                return Err(OrderError::EmptyBase(e.name.clone()));
            }
            if e.base.len() != expected {
                return Err(OrderError::DimensionMismatch {
                    name: e.name.clone(),
                    got: e.base.len(),
                    expected,
                });
            }
            if let Some(v) = e.base.iter().chain([&e.scale]).find(|v| !v.is_positive()) {
                return Err(OrderError::NonPositive {
                    name: e.name.clone(),
                    value: v.clone(),
                });
            }
        }
        let data: Vec<Vec<Rat>> = elements.iter().map(Element::datum).collect();
        let leq = match kind {
            InstanceKind::Vectors => data
                .iter()
                .map(|x| data.iter().map(|y| vec_leq(x, y)).collect())
                .collect(),
            InstanceKind::Ellipsoids => {
                let specs = data
                    .iter()
                    .map(|w| EllipsoidSpec::new(w.clone()))
                    .collect::<Result<Vec<_>, _>>()?;
                specs
                    .par_iter()
                    .map(|x| {
                        specs
                            .iter()
                            .map(|y| ech_dominates(x, y, truncation_j))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
        };
        let inst = ScalableInstance {
            kind,
            truncation_j,
            elements,
            data,
            leq,
        };
        inst.check_preorder()?;
        Ok(inst)
    }

    pub fn vectors(elements: Vec<Element>) -> Result<Self, OrderError> {
        Self::new(InstanceKind::Vectors, elements, DEFAULT_TRUNCATION)
    }

    pub fn from_file(file: InstanceFile) -> Result<Self, OrderError> {
        let j = file.truncation_j.unwrap_or(DEFAULT_TRUNCATION);
        Self::new(file.kind, file.elements, j)
    }

    fn check_preorder(&self) -> Result<(), OrderError> {
        let n = self.len();
        for i in 0..n {
            if !self.leq[i][i] {
                return Err(OrderError::NotPreorder(format!(
                    "{} is not below itself",
                    self.elements[i].name
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !self.leq[i][j] {
                    continue;
                }
                if let Some(k) = (0..n).find(|&k| self.leq[j][k] && !self.leq[i][k]) {
                    return Err(OrderError::NotPreorder(format!(
                        "{} <= {} <= {} but not {} <= {}",
                        self.elements[i].name,
                        self.elements[j].name,
                        self.elements[k].name,
                        self.elements[i].name,
                        self.elements[k].name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> InstanceKind {
        self.kind
    }

    pub fn truncation_j(&self) -> usize {
        self.truncation_j
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn datum(&self, i: usize) -> &[Rat] {
        &self.data[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i].name
    }

    pub fn index_of(&self, name: &str) -> Result<usize, OrderError> {
        self.elements
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| OrderError::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    fn check_index(&self, i: usize) -> Result<(), OrderError> {
        if i >= self.len() {
            return Err(OrderError::IndexOutOfRange(i));
        }
        Ok(())
    }
}

/// `c^≤(x, y)` for raw data of one kind.
pub fn order_capacity_of(
    kind: InstanceKind,
    x: &[Rat],
    y: &[Rat],
    truncation_j: usize,
) -> Result<ExtRat, OrderError> {
    if x.len() != y.len() {
        return Err(OrderError::DimensionMismatch {
            name: "argument".into(),
            got: y.len(),
            expected: x.len(),
        });
    }
    match kind {
        InstanceKind::Vectors => {
            let ratio = x
                .iter()
                .zip(y)
                .map(|(a, b)| b / a)
                .min()
                .ok_or(OrderError::EmptyBase("argument".into()))?;
            Ok(ExtRat::Finite(ratio))
        }
        InstanceKind::Ellipsoids => {
            let src = EllipsoidSpec::new(x.to_vec())?;
            let dst = EllipsoidSpec::new(y.to_vec())?;
            Ok(embedding_factor(&src, &dst, truncation_j)?.factor)
        }
    }
}

/// `c^≤(s, s′)` for two elements of the instance.
pub fn order_capacity(inst: &ScalableInstance, s: usize, s_prime: usize) -> Result<ExtRat, OrderError> {
    inst.check_index(s)?;
    inst.check_index(s_prime)?;
    order_capacity_of(inst.kind, inst.datum(s), inst.datum(s_prime), inst.truncation_j)
}

/// Named capacities, each with one value per element (in element order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapacityTable {
    pub names: Vec<String>,
    pub columns: Vec<Vec<ExtRat>>,
}

/// A column that is not a capacity on the listed elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableViolation {
    pub capacity: String,
    pub s: String,
    pub s_prime: String,
    /// `"monotone"` or `"equivariant"`
    pub property: String,
}

impl CapacityTable {
    pub fn new() -> Self {
        CapacityTable {
            names: vec![],
            columns: vec![],
        }
    }

    pub fn push(&mut self, name: impl Into<String>, column: Vec<ExtRat>) {
        self.names.push(name.into());
        self.columns.push(column);
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Builds a table from `capacity → element name → value`.
    pub fn from_named(
        inst: &ScalableInstance,
        named: &BTreeMap<String, BTreeMap<String, ExtRat>>,
    ) -> Result<Self, OrderError> {
        let mut table = CapacityTable::new();
        for (cap, values) in named {
            for key in values.keys() {
                inst.index_of(key)?;
            }
            let col = inst
                .elements()
                .iter()
                .map(|e| {
                    values.get(&e.name).cloned().ok_or_else(|| OrderError::MissingValue {
                        capacity: cap.clone(),
                        element: e.name.clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            table.push(cap.clone(), col);
        }
        Ok(table)
    }

    fn check_shape(&self, inst: &ScalableInstance) -> Result<(), OrderError> {
        for (name, col) in self.names.iter().zip(&self.columns) {
            if col.len() != inst.len() {
                return Err(OrderError::MissingValue {
                    capacity: name.clone(),
                    element: inst.name(col.len().min(inst.len() - 1)).to_string(),
                });
            }
        }
        Ok(())
    }

    /// Checks monotonicity and, for elements sharing a base, equivariance
    /// `c(λs) = λ c(s)`.
    pub fn validate(&self, inst: &ScalableInstance) -> Result<Option<TableViolation>, OrderError> {
        self.check_shape(inst)?;
        for (name, col) in self.names.iter().zip(&self.columns) {
            for i in 0..inst.len() {
                for j in 0..inst.len() {
                    let violation = |property: &str| TableViolation {
                        capacity: name.clone(),
                        s: inst.name(i).to_string(),
                        s_prime: inst.name(j).to_string(),
                        property: property.to_string(),
                    };
                    if inst.leq(i, j) && col[i] > col[j] {
                        return Ok(Some(violation("monotone")));
                    }
                    let (ei, ej) = (&inst.elements()[i], &inst.elements()[j]);
                    if i != j && ei.base == ej.base {
                        let lambda = &ej.scale / &ei.scale;
                        if col[i].scale(&lambda).ok().as_ref() != Some(&col[j]) {
                            return Ok(Some(violation("equivariant")));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    fn dominated(&self, i: usize, j: usize) -> bool {
        self.columns.iter().all(|c| c[i] <= c[j])
    }
}

impl Default for CapacityTable {
    fn default() -> Self {
        Self::new()
    }
}

/// `F(x) = sup{f(x₀) : x₀ ∈ dom f, x₀ ≤ x}` with `sup ∅ = 0`.
pub fn monotonize_by(
    n: usize,
    leq: impl Fn(usize, usize) -> bool,
    f: &[Option<ExtRat>],
) -> Vec<ExtRat> {
    (0..n)
        .map(|x| {
            (0..n)
                .filter_map(|x0| f[x0].as_ref().filter(|_| leq(x0, x)))
                .max()
                .cloned()
                .unwrap_or_else(ExtRat::zero)
        })
        .collect()
}

/// Monotonization over the instance order; `f[i] = None` means `i ∉ dom f`.
pub fn monotonize(inst: &ScalableInstance, f: &[Option<ExtRat>]) -> Vec<ExtRat> {
    assert_eq!(f.len(), inst.len(), "one entry per element");
    monotonize_by(inst.len(), |i, j| inst.leq(i, j), f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub s: usize,
    pub s_prime: usize,
    pub s_name: String,
    pub s_prime_name: String,
}

impl PairWitness {
    fn new(inst: &ScalableInstance, s: usize, s_prime: usize) -> Self {
        PairWitness {
            s,
            s_prime,
            s_name: inst.name(s).to_string(),
            s_prime_name: inst.name(s_prime).to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Recognition {
    pub holds: bool,
    pub witness: Option<PairWitness>,
    /// `c^≤(s, s′)` at the witness, which is `< 1`.
    pub order_capacity: Option<ExtRat>,
}

/// Whether `c(s) ≤ c(s′)` for every column forces `c^≤(s, s′) ≥ 1`.
/// Returns the first violating pair in row-major order.
pub fn almost_order_recognizing(
    inst: &ScalableInstance,
    table: &CapacityTable,
) -> Result<Recognition, OrderError> {
    table.check_shape(inst)?;
    let one = ExtRat::one();
    for i in 0..inst.len() {
        for j in 0..inst.len() {
            if !table.dominated(i, j) {
                continue;
            }
            let c = order_capacity(inst, i, j)?;
            if c < one {
                return Ok(Recognition {
                    holds: false,
                    witness: Some(PairWitness::new(inst, i, j)),
                    order_capacity: Some(c),
                });
            }
        }
    }
    Ok(Recognition {
        holds: true,
        witness: None,
        order_capacity: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generation {
    pub holds: bool,
    pub witness: Option<PairWitness>,
    /// When `holds`, whether monotonizing `target` over the evaluation image
    /// reproduces it on every element.
    pub realized: bool,
}

/// Whether `target` is a monotone function of the table's columns on the
/// listed elements.
pub fn can_monotonely_generate(
    inst: &ScalableInstance,
    table: &CapacityTable,
    target: &[ExtRat],
) -> Result<Generation, OrderError> {
    table.check_shape(inst)?;
    if target.len() != inst.len() {
        return Err(OrderError::MissingTarget(
            inst.name(target.len().min(inst.len() - 1)).to_string(),
        ));
    }
    for i in 0..inst.len() {
        for j in 0..inst.len() {
            if table.dominated(i, j) && target[i] > target[j] {
                return Ok(Generation {
                    holds: false,
                    witness: Some(PairWitness::new(inst, i, j)),
                    realized: false,
                });
            }
        }
    }

    // Evaluation image: distinct value vectors with componentwise order.
    let ev = |i: usize| -> Vec<&ExtRat> { table.columns.iter().map(|c| &c[i]).collect() };
    let mut image: Vec<Vec<&ExtRat>> = Vec::new();
    let mut slot = Vec::with_capacity(inst.len());
    let mut f: Vec<Option<ExtRat>> = Vec::new();
    for (i, t) in target.iter().enumerate() {
        let p = ev(i);
        let k = match image.iter().position(|q| *q == p) {
            Some(k) => k,
            None => {
                image.push(p);
                f.push(None);
                image.len() - 1
            }
        };
        slot.push(k);
        f[k] = Some(f[k].take().map_or(t.clone(), |v| v.max(t.clone())));
    }
    let image_leq = |a: usize, b: usize| image[a].iter().zip(&image[b]).all(|(x, y)| x <= y);
    let big_f = monotonize_by(image.len(), image_leq, &f);
    let realized = (0..inst.len()).all(|i| big_f[slot[i]] == target[i]);
    Ok(Generation {
        holds: true,
        witness: None,
        realized,
    })
}

/// A fixed family of ten capacities on positive vectors: monotone and
/// 1-homogeneous, defined for every dimension.
pub const VECTOR_TARGETS: [&str; 10] = [
    "coord0", "coord1", "coord2", "min", "max", "sum", "weighted", "min01", "max12", "harmonic01",
];

pub fn vector_target(name: &str, x: &[Rat]) -> Option<Rat> {
    let d = x.len();
    if d == 0 {
        return None;
    }
    let at = |k: usize| x[k % d].clone();
    Some(match name {
        "coord0" => at(0),
        "coord1" => at(1),
        "coord2" => at(2),
        "min" => x.iter().min()?.clone(),
        "max" => x.iter().max()?.clone(),
        "sum" => x.iter().sum(),
        "weighted" => (0..d).map(|k| Rat::int(k as i64 + 1) * &x[k]).sum(),
        "min01" => at(0).min(at(1)),
        "max12" => at(1).max(at(2)),
        "harmonic01" => {
            let (p, q) = (at(0), at(1));
            &p * &q / (&p + &q)
        }
        _ => return None,
    })
}

/// One column per named vector capacity, evaluated on the instance data.
pub fn vector_column(inst: &ScalableInstance, name: &str) -> Option<Vec<ExtRat>> {
    (0..inst.len())
        .map(|i| vector_target(name, inst.datum(i)).map(ExtRat::Finite))
        .collect()
}
