//! Slow reference implementations used to cross-check the fast paths.
//!
//! Nothing here shares code with the modules it checks: the ECH oracle
//! enumerates a bounded box and sorts, the partition oracle walks every set
//! partition of the tagged union and filters by definition, and the
//! supremum oracle evaluates block constraints directly.

use std::collections::BTreeSet;

use crate::exact::{ExtRat, Rat};
use crate::partitions::{BoundaryVector, Member, PartitionRec, Side};

/// The first `count` values of `{m·a : m ∈ ℕ₀ⁿ}` with multiplicity.
///
/// Every one of them is at most `(count − 1)·min a`, because the multiples
/// `k·min a` with `k < count` already give `count` values up to that bound.
pub fn naive_ech(weights: &[Rat], count: usize) -> Vec<Rat> {
    if count == 0 {
        return vec![];
    }
    let min = weights.iter().min().expect("nonempty weights");
    let bound = Rat::int(count as i64 - 1) * min;
    let mut out = Vec::new();
    fn walk(weights: &[Rat], acc: Rat, bound: &Rat, out: &mut Vec<Rat>) {
        match weights.split_first() {
            None => out.push(acc),
            Some((w, rest)) => {
                let mut v = acc;
                while v <= *bound {
                    walk(rest, v.clone(), bound, out);
                    v += w;
                }
            }
        }
    }
    walk(weights, Rat::zero(), &bound, &mut out);
    out.sort();
    out.truncate(count);
    out
}

/// Calls `visit` with every set partition of `{0, …, n−1}` as a restricted
/// growth string (`rgs[i]` is the block of element `i`) and its block count.
pub fn for_each_set_partition(n: usize, mut visit: impl FnMut(&[usize], usize)) {
    if n == 0 {
        visit(&[], 0);
        return;
    }
    let mut rgs = vec![0usize; n];
    // mx[i] = max(rgs[0..=i])
    let mut mx = vec![0usize; n];
    loop {
        visit(&rgs, mx[n - 1] + 1);
        let Some(i) = (1..n).rev().find(|&i| rgs[i] <= mx[i - 1]) else {
            return;
        };
        rgs[i] += 1;
        mx[i] = mx[i - 1].max(rgs[i]);
        for k in i + 1..n {
            rgs[k] = 0;
            mx[k] = mx[i];
        }
    }
}

/// A partition as an order-free value.
pub type Canonical = BTreeSet<BTreeSet<Member>>;

pub fn canonical(p: &PartitionRec) -> Canonical {
    p.blocks
        .iter()
        .map(|b| b.iter().cloned().collect())
        .collect()
}

fn collect_blocks(universe: &[Member], rgs: &[usize], count: usize) -> Canonical {
    let mut blocks = vec![BTreeSet::new(); count];
    for (m, &b) in universe.iter().zip(rgs) {
        blocks[b].insert(m.clone());
    }
    blocks.into_iter().collect()
}

fn members(side: Side, labels: &[&str]) -> Vec<Member> {
    labels.iter().map(|l| Member::new(side, *l)).collect()
}

/// Per-block counts of `I⁺` and `I⁻` members.
fn side_counts(universe: &[Member], rgs: &[usize], count: usize) -> Vec<(usize, usize)> {
    let mut counts = vec![(0, 0); count];
    for (m, &b) in universe.iter().zip(rgs) {
        match m.side {
            Side::Source => counts[b].0 += 1,
            Side::Mirror => counts[b].1 += 1,
            Side::Target => {}
        }
    }
    counts
}

/// Every partition of `I ⊔ I′` whose blocks each meet `I` exactly once.
pub fn naive_pair_partitions(sources: &[&str], targets: &[&str]) -> Vec<Canonical> {
    let mut universe = members(Side::Source, sources);
    universe.extend(members(Side::Target, targets));
    let mut out = Vec::new();
    for_each_set_partition(universe.len(), |rgs, count| {
        let counts = side_counts(&universe, rgs, count);
        if counts.iter().all(|&(p, _)| p == 1) {
            out.push(collect_blocks(&universe, rgs, count));
        }
    });
    out
}

/// Every partition of `I⁺ ⊔ I⁻ ⊔ I′` with exactly one block meeting `I⁺`
/// and `I⁻` once each, and every other block meeting `I⁺ ⊔ I⁻` once.
pub fn naive_triple_partitions(plus: &[&str], minus: &[&str], targets: &[&str]) -> Vec<Canonical> {
    let mut universe = members(Side::Source, plus);
    universe.extend(members(Side::Mirror, minus));
    universe.extend(members(Side::Target, targets));
    let mut out = Vec::new();
    for_each_set_partition(universe.len(), |rgs, count| {
        let counts = side_counts(&universe, rgs, count);
        let joint = counts.iter().filter(|&&c| c == (1, 1)).count();
        let single = counts.iter().filter(|&&(p, q)| p + q == 1).count();
        if joint == 1 && joint + single == count {
            out.push(collect_blocks(&universe, rgs, count));
        }
    });
    out
}

fn value(m: &Member, source: &BoundaryVector, mirror: Option<&BoundaryVector>, target: &BoundaryVector) -> Rat {
    let bv = match m.side {
        Side::Source => source,
        Side::Mirror => mirror.expect("mirror side present"),
        Side::Target => target,
    };
    bv.get(&m.label).expect("label present").clone()
}

/// The largest feasible `C > 0` for one partition, `None` if none is.
pub fn naive_partition_sup(
    p: &Canonical,
    source: &BoundaryVector,
    mirror: Option<&BoundaryVector>,
    target: &BoundaryVector,
) -> Option<ExtRat> {
    let mut lo: Option<Rat> = None;
    let mut hi = ExtRat::Infinity;
    for block in p {
        let mut inner = Rat::zero();
        let mut outer = Rat::zero();
        for m in block {
            let v = value(m, source, mirror, target);
            if m.side == Side::Target {
                outer += &v;
            } else {
                inner += &v;
            }
        }
        // outer − C·inner ≥ 0
        if inner.is_positive() {
            hi = hi.min(ExtRat::Finite(&outer / &inner));
        } else if inner.is_negative() {
            let bound = &outer / &inner;
            lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
        } else if outer.is_negative() {
            return None;
        }
    }
    let positive = hi > Rat::zero();
    let ordered = match (&lo, &hi) {
        (Some(l), h) => h >= l,
        (None, _) => true,
    };
    (positive && ordered).then_some(hi)
}

/// `sup` over the given partitions, with `sup ∅ = 0`.
pub fn naive_sup(
    partitions: &[Canonical],
    source: &BoundaryVector,
    mirror: Option<&BoundaryVector>,
    target: &BoundaryVector,
) -> ExtRat {
    partitions
        .iter()
        .filter_map(|p| naive_partition_sup(p, source, mirror, target))
        .max()
        .unwrap_or_else(ExtRat::zero)
}

fn labels(bv: &BoundaryVector) -> Vec<&str> {
    bv.labels().collect()
}

pub fn naive_c0(source: &BoundaryVector, target: &BoundaryVector) -> ExtRat {
    let parts = naive_pair_partitions(&labels(source), &labels(target));
    naive_sup(&parts, source, None, target)
}

pub fn naive_c1(plus: &BoundaryVector, minus: &BoundaryVector, target: &BoundaryVector) -> ExtRat {
    let parts = naive_triple_partitions(&labels(plus), &labels(minus), &labels(target));
    naive_sup(&parts, plus, Some(minus), target)
}
