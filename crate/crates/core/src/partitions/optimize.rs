//! Suprema of feasible scales over all pair or triple partitions.
//!
//! Every partition is visited. The search assigns target labels to blocks
//! depth-first while keeping per-block target sums, so each leaf costs one
//! pass over the blocks. Values are first brought to a common denominator;
//! the ratios that bound `C` are unchanged by that scaling. When all
//! integers are small the search runs on `i128`, otherwise on `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{
    BoundaryVector, Member, PartitionError, PartitionKind, PartitionRec, Side,
};
use crate::exact::{ExtRat, Rat};

/// Supremum of the feasible scales and a partition attaining it.
///
/// `witness` is `None` exactly when no partition is feasible for any
/// `C > 0` (then `value` is the `sup ∅ = 0` convention).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Optimum {
    pub value: ExtRat,
    pub witness: Option<PartitionRec>,
    pub partitions_examined: u64,
}

/// Best upper end found among feasible leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Best<T> {
    Unbounded,
    /// `num / den` with `den > 0`
    Upper(T, T),
}

trait Scalar: Clone + Ord + Signed {}
impl Scalar for i128 {}
impl Scalar for BigInt {}

/// `a/b < c/d` for positive `b`, `d`.
fn frac_lt<T: Scalar>(a: &T, b: &T, c: &T, d: &T) -> bool {
    a.clone() * d.clone() < c.clone() * b.clone()
}

/// Best value so far and the target assignment attaining it.
type Found<T> = (Best<T>, Vec<usize>);

struct Search<'a, T> {
    bases: &'a [T],
    targets: &'a [T],
    sums: Vec<T>,
    assign: Vec<usize>,
    best: Option<Found<T>>,
    leaves: u64,
}

impl<'a, T: Scalar> Search<'a, T> {
    fn new(bases: &'a [T], targets: &'a [T]) -> Self {
        Search {
            bases,
            targets,
            sums: vec![T::zero(); bases.len()],
            assign: vec![0; targets.len()],
            best: None,
            leaves: 0,
        }
    }

    fn run(mut self) -> (Option<Found<T>>, u64) {
        self.descend(0);
        (self.best, self.leaves)
    }

    fn done(&self) -> bool {
        matches!(self.best, Some((Best::Unbounded, _)))
    }

    fn descend(&mut self, depth: usize) {
        if self.done() {
            return;
        }
        if depth == self.targets.len() {
            self.leaves += 1;
            self.leaf();
            return;
        }
        for k in 0..self.bases.len() {
            self.sums[k] = self.sums[k].clone() + self.targets[depth].clone();
            self.assign[depth] = k;
            self.descend(depth + 1);
            self.sums[k] = self.sums[k].clone() - self.targets[depth].clone();
            if self.done() {
                return;
            }
        }
    }

    /// Block `k` demands `C·base_k ≤ sum_k`.
    fn leaf(&mut self) {
        let mut upper: Option<(T, T)> = None;
        let mut lower: Option<(T, T)> = None;
        for (b, t) in self.bases.iter().zip(&self.sums) {
            if b.is_positive() {
                if upper
                    .as_ref()
                    .is_none_or(|(n, d)| frac_lt(t, b, n, d))
                {
                    upper = Some((t.clone(), b.clone()));
                }
            } else if b.is_negative() {
                let (n, d) = (-t.clone(), -b.clone());
                if lower
                    .as_ref()
                    .is_none_or(|(ln, ld)| frac_lt(ln, ld, &n, &d))
                {
                    lower = Some((n, d));
                }
            } else if t.is_negative() {
                return;
            }
        }
        let candidate = match upper {
            None => Best::Unbounded,
            Some((n, d)) => {
                if !n.is_positive() {
                    return;
                }
                if let Some((ln, ld)) = &lower {
                    if frac_lt(&n, &d, ln, ld) {
                        return;
                    }
                }
                Best::Upper(n, d)
            }
        };
        let better = match (&self.best, &candidate) {
            (None, _) => true,
            (Some((Best::Unbounded, _)), _) => false,
            (Some(_), Best::Unbounded) => true,
            (Some((Best::Upper(bn, bd), _)), Best::Upper(n, d)) => frac_lt(bn, bd, n, d),
        };
        if better {
            self.best = Some((candidate, self.assign.clone()));
        }
    }
}

/// One search instance: fixed per-block source sums plus target values.
struct Problem {
    bases: Vec<Rat>,
    targets: Vec<Rat>,
}

struct Solved {
    value: Option<ExtRat>,
    assignment: Vec<usize>,
    leaves: u64,
}

fn to_rat<T: Into<BigInt>>(num: T, den: T) -> Rat {
    Rat::from_parts(num.into(), den.into()).expect("positive denominator")
}

impl Problem {
    fn solve(&self) -> Solved {
        let den = self
            .bases
            .iter()
            .chain(&self.targets)
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scale = |v: &Rat| v.numer() * (&den / v.denom());
        let bases: Vec<BigInt> = self.bases.iter().map(scale).collect();
        let targets: Vec<BigInt> = self.targets.iter().map(scale).collect();
        let magnitude: BigInt = bases.iter().chain(&targets).map(|v| v.abs()).sum();

        if magnitude < BigInt::from(1u64 << 60) {
            let cast = |v: &BigInt| i128::try_from(v).expect("bounded by magnitude check");
            let bases: Vec<i128> = bases.iter().map(cast).collect();
            let targets: Vec<i128> = targets.iter().map(cast).collect();
            let (best, leaves) = Search::new(&bases, &targets).run();
            finish(best, leaves, to_rat)
        } else {
            let (best, leaves) = Search::new(&bases, &targets).run();
            finish(best, leaves, to_rat)
        }
    }
}

fn finish<T>(
    best: Option<Found<T>>,
    leaves: u64,
    conv: impl Fn(T, T) -> Rat,
) -> Solved {
    match best {
        None => Solved {
            value: None,
            assignment: vec![],
            leaves,
        },
        Some((b, assignment)) => Solved {
            value: Some(match b {
                Best::Unbounded => ExtRat::Infinity,
                Best::Upper(n, d) => ExtRat::Finite(conv(n, d)),
            }),
            assignment,
            leaves,
        },
    }
}

fn better(current: &Option<ExtRat>, new: &Option<ExtRat>) -> bool {
    match (current, new) {
        (_, None) => false,
        (None, Some(_)) => true,
        (Some(a), Some(b)) => b > a,
    }
}

/// `sup` over all `(I, I′)`-partitions of the feasible scales, where `I`
/// carries `source` and `I′` carries `target`.
pub fn pairwise_c0(
    source: &BoundaryVector,
    target: &BoundaryVector,
) -> Result<Optimum, PartitionError> {
    if source.is_empty() {
        return Err(PartitionError::EmptySource);
    }
    let problem = Problem {
        bases: source.values().cloned().collect(),
        targets: target.values().cloned().collect(),
    };
    let solved = problem.solve();
    let witness = solved.value.as_ref().map(|_| {
        let blocks = source
            .labels()
            .map(|l| vec![Member::new(Side::Source, l)])
            .collect();
        place_targets(PartitionKind::Pair, blocks, target, &solved.assignment)
    });
    Ok(Optimum {
        value: solved.value.unwrap_or_else(ExtRat::zero),
        witness,
        partitions_examined: solved.leaves,
    })
}

/// `sup` over all `(I⁺, I⁻, I′)`-partitions of the feasible scales.
pub fn pairwise_c1(
    plus: &BoundaryVector,
    minus: &BoundaryVector,
    target: &BoundaryVector,
) -> Result<Optimum, PartitionError> {
    if plus.is_empty() {
        return Err(PartitionError::EmptySource);
    }
    if minus.is_empty() {
        return Err(PartitionError::EmptyMirror);
    }
    let plus_v: Vec<(&str, &Rat)> = plus.iter().collect();
    let minus_v: Vec<(&str, &Rat)> = minus.iter().collect();
    let targets: Vec<Rat> = target.values().cloned().collect();

    let mut best: Option<ExtRat> = None;
    let mut best_blocks: Option<(Vec<Vec<Member>>, Vec<usize>)> = None;
    let mut leaves = 0;
    'outer: for (pi, &(pl, pv)) in plus_v.iter().enumerate() {
        for (mi, &(ml, mv)) in minus_v.iter().enumerate() {
            let mut bases = vec![pv + mv];
            let mut blocks = vec![vec![
                Member::new(Side::Source, pl),
                Member::new(Side::Mirror, ml),
            ]];
            for &(l, v) in plus_v.iter().enumerate().filter(|&(i, _)| i != pi).map(|(_, e)| e) {
                bases.push(v.clone());
                blocks.push(vec![Member::new(Side::Source, l)]);
            }
            for &(l, v) in minus_v.iter().enumerate().filter(|&(i, _)| i != mi).map(|(_, e)| e) {
                bases.push(v.clone());
                blocks.push(vec![Member::new(Side::Mirror, l)]);
            }
            let solved = Problem {
                bases,
                targets: targets.clone(),
            }
            .solve();
            leaves += solved.leaves;
            if better(&best, &solved.value) {
                best = solved.value;
                best_blocks = Some((blocks, solved.assignment));
                if best == Some(ExtRat::Infinity) {
                    break 'outer;
                }
            }
        }
    }
    let witness = best_blocks
        .map(|(blocks, assign)| place_targets(PartitionKind::Triple, blocks, target, &assign));
    Ok(Optimum {
        value: best.unwrap_or_else(ExtRat::zero),
        witness,
        partitions_examined: leaves,
    })
}

fn place_targets(
    kind: PartitionKind,
    mut blocks: Vec<Vec<Member>>,
    target: &BoundaryVector,
    assignment: &[usize],
) -> PartitionRec {
    for (label, &k) in target.labels().zip(assignment) {
        blocks[k].push(Member::new(Side::Target, label));
    }
    PartitionRec { kind, blocks }
}

#[cfg(test)]
mod tests {
    use super::super::{feasible_interval, Sides};
    use super::*;

    fn bv(entries: &[(&str, &str)]) -> BoundaryVector {
        BoundaryVector::new(entries.iter().map(|&(l, v)| (l, v.parse::<Rat>().unwrap()))).unwrap()
    }

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn c0_shell_pair() {
        let hi = BoundaryVector::new([("inner", r("-1")), ("outer", r("43/40").pow(4))]).unwrap();
        let lo = BoundaryVector::new([("inner", r("-1")), ("outer", r("21/20").pow(4))]).unwrap();
        let opt = pairwise_c0(&hi, &lo).unwrap();
        assert_eq!(opt.value, r("551696/3418801"));
        assert_eq!(opt.partitions_examined, 4);
        let w = opt.witness.unwrap();
        let iv = feasible_interval(&w, &Sides::pair(&hi, &lo)).unwrap();
        assert_eq!(iv.sup(), Some(opt.value));
        // both target labels sit with the outer source label
        let outer_block = w
            .blocks
            .iter()
            .find(|b| b.contains(&Member::new(Side::Source, "outer")))
            .unwrap();
        assert_eq!(outer_block.len(), 3);
    }

    #[test]
    fn c0_trivial_cases() {
        assert_eq!(pairwise_c0(&bv(&[("p", "1")]), &bv(&[("q", "2")])).unwrap().value, r("2"));
        assert_eq!(
            pairwise_c0(&bv(&[("p", "-1")]), &bv(&[("q", "-2")])).unwrap().value,
            ExtRat::Infinity
        );
        let none = pairwise_c0(&bv(&[("p", "1")]), &bv(&[("q", "-2")])).unwrap();
        assert_eq!(none.value, ExtRat::zero());
        assert!(none.witness.is_none());
        assert_eq!(
            pairwise_c0(&BoundaryVector::default(), &bv(&[("q", "1")])).unwrap_err(),
            PartitionError::EmptySource
        );
    }

    #[test]
    fn c1_trivial_cases() {
        let empty = BoundaryVector::default();
        let r1 = pairwise_c1(&bv(&[("p", "1")]), &bv(&[("p", "1")]), &empty).unwrap();
        assert_eq!(r1.value, ExtRat::zero());
        assert!(r1.witness.is_none());
        let r2 = pairwise_c1(&bv(&[("p", "1")]), &bv(&[("q", "-1")]), &empty).unwrap();
        assert_eq!(r2.value, ExtRat::Infinity);
        assert!(r2.witness.is_some());
    }

    #[test]
    fn big_integer_path_matches_small_path() {
        // Same ratios, but scaled past the i128 fast-path bound.
        let huge = r("1000000000000000000000000");
        let f = bv(&[("a", "-1"), ("b", "3/2"), ("c", "-1/3")]);
        let g = bv(&[("x", "-1"), ("y", "5/4"), ("z", "-2/7")]);
        let small = pairwise_c0(&f, &g).unwrap();
        let big = pairwise_c0(&f.scaled(&huge), &g.scaled(&huge)).unwrap();
        assert_eq!(small.value, big.value);
        assert_eq!(small.witness, big.witness);
    }
}
