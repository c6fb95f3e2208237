//! Lexicographic streams of pair and triple partitions.

use super::{Member, PartitionError, PartitionKind, PartitionRec, Side};

/// Odometer over `base^len` assignments, last position fastest.
#[derive(Debug, Clone)]
struct Odometer {
    digits: Vec<usize>,
    base: usize,
    exhausted: bool,
}

impl Odometer {
    fn new(len: usize, base: usize) -> Self {
        Odometer {
            digits: vec![0; len],
            base,
            // base 0 with len > 0 has no assignment at all
            exhausted: base == 0 && len > 0,
        }
    }

    fn current(&self) -> Option<&[usize]> {
        (!self.exhausted).then_some(self.digits.as_slice())
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.base {
                return;
            }
            *d = 0;
        }
        self.exhausted = true;
    }
}

fn assemble(
    kind: PartitionKind,
    mut blocks: Vec<Vec<Member>>,
    targets: &[String],
    assignment: &[usize],
) -> PartitionRec {
    for (t, &k) in targets.iter().zip(assignment) {
        blocks[k].push(Member::new(Side::Target, t.clone()));
    }
    PartitionRec { kind, blocks }
}

/// All `(I, I′)`-partitions; block `k` holds the `k`-th label of `I`.
#[derive(Debug, Clone)]
pub struct PairPartitions {
    sources: Vec<String>,
    targets: Vec<String>,
    odo: Odometer,
}

pub fn enum_pair_partitions<S: AsRef<str>>(
    sources: &[S],
    targets: &[S],
) -> Result<PairPartitions, PartitionError> {
    if sources.is_empty() {
        return Err(PartitionError::EmptySource);
    }
    let sources = sorted_labels(sources)?;
    let targets = sorted_labels(targets)?;
    let odo = Odometer::new(targets.len(), sources.len());
    Ok(PairPartitions {
        sources,
        targets,
        odo,
    })
}

impl Iterator for PairPartitions {
    type Item = PartitionRec;

    fn next(&mut self) -> Option<PartitionRec> {
        let assignment = self.odo.current()?.to_vec();
        self.odo.advance();
        let blocks = self
            .sources
            .iter()
            .map(|s| vec![Member::new(Side::Source, s.clone())])
            .collect();
        Some(assemble(PartitionKind::Pair, blocks, &self.targets, &assignment))
    }
}

/// All `(I⁺, I⁻, I′)`-partitions.
///
/// The joint block `{p⁺, m⁻}` comes first, then the remaining `I⁺` labels,
/// then the remaining `I⁻` labels, each as its own block.
#[derive(Debug, Clone)]
pub struct TriplePartitions {
    plus: Vec<String>,
    minus: Vec<String>,
    targets: Vec<String>,
    pair: (usize, usize),
    odo: Odometer,
}

pub fn enum_triple_partitions<S: AsRef<str>>(
    plus: &[S],
    minus: &[S],
    targets: &[S],
) -> Result<TriplePartitions, PartitionError> {
    if plus.is_empty() {
        return Err(PartitionError::EmptySource);
    }
    if minus.is_empty() {
        return Err(PartitionError::EmptyMirror);
    }
    let plus = sorted_labels(plus)?;
    let minus = sorted_labels(minus)?;
    let targets = sorted_labels(targets)?;
    let blocks = plus.len() + minus.len() - 1;
    let odo = Odometer::new(targets.len(), blocks);
    Ok(TriplePartitions {
        plus,
        minus,
        targets,
        pair: (0, 0),
        odo,
    })
}

impl TriplePartitions {
    fn base_blocks(&self) -> Vec<Vec<Member>> {
        let (p, m) = self.pair;
        let mut blocks = vec![vec![
            Member::new(Side::Source, self.plus[p].clone()),
            Member::new(Side::Mirror, self.minus[m].clone()),
        ]];
        blocks.extend(
            self.plus
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != p)
                .map(|(_, l)| vec![Member::new(Side::Source, l.clone())]),
        );
        blocks.extend(
            self.minus
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != m)
                .map(|(_, l)| vec![Member::new(Side::Mirror, l.clone())]),
        );
        blocks
    }
}

impl Iterator for TriplePartitions {
    type Item = PartitionRec;

    fn next(&mut self) -> Option<PartitionRec> {
        if self.pair.0 >= self.plus.len() {
            return None;
        }
        let assignment = self.odo.current()?.to_vec();
        let rec = assemble(
            PartitionKind::Triple,
            self.base_blocks(),
            &self.targets,
            &assignment,
        );
        self.odo.advance();
        if self.odo.current().is_none() {
            self.pair.1 += 1;
            if self.pair.1 == self.minus.len() {
                self.pair = (self.pair.0 + 1, 0);
            }
            let blocks = self.plus.len() + self.minus.len() - 1;
            self.odo = Odometer::new(self.targets.len(), blocks);
        }
        Some(rec)
    }
}

fn sorted_labels<S: AsRef<str>>(labels: &[S]) -> Result<Vec<String>, PartitionError> {
    let mut v: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
    v.sort();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(PartitionError::DuplicateLabel(w[0].clone()));
    }
    Ok(v)
}
