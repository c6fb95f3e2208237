//! The acceptance checks, runnable from tests and from the command line.
//!
//! Each criterion is deterministic given the seed and reports a single
//! pass/fail verdict with a short detail string.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ech::ech_prefix;
use crate::exact::{ExtRat, Rat};
use crate::kink::{
    auto_grid, capacity_curve, kink_certificate, refute_finite_generation, volume_capacity_curve,
    KinkError, RefuteOptions,
};
use crate::order::{
    almost_order_recognizing, can_monotonely_generate, order_capacity, vector_column,
    CapacityTable, Element, ScalableInstance, VECTOR_TARGETS,
};
use crate::partitions::{
    check_prop_hypotheses, enum_pair_partitions, enum_triple_partitions, is_i_collection,
    pairwise_c0, BoundaryVector, FamilyMember,
};
use crate::shells::{
    build_family, check_normalized_hypotheses, distinguish, separation_bound, shell_helicity,
    shell_sum, ShellParams, ShellSpec,
};

pub mod oracle;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_ms: Option<u128>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {}: {} ({} ms)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed_ms
        )
    }
}

type Check = fn(u64) -> Result<String, String>;

/// `(id, name, runtime budget in ms, check)`
const CRITERIA: [(u8, &str, Option<u128>, Check); 10] = [
    (1, "ech oracle equivalence", Some(5_000), ech_oracle),
    (2, "shell substitution", None, shell_substitution),
    (3, "partition counts", Some(10_000), partition_counts),
    (4, "pairwise C0 pinning", None, c0_pinning),
    (5, "I-collection property", Some(60_000), i_collection_property),
    (6, "separation pipeline", None, separation_pipeline),
    (7, "normalized hypotheses", None, normalized_hypotheses),
    (8, "monotone generation", Some(30_000), monotone_generation),
    (9, "kink certificate", Some(10_000), kink),
    (10, "homogeneity and permutation", None, invariants),
];

pub fn criterion_ids() -> Vec<u8> {
    CRITERIA.iter().map(|c| c.0).collect()
}

pub fn run_criterion(id: u8, seed: u64) -> Option<CriterionResult> {
    let &(id, name, budget_ms, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let outcome = check(seed.wrapping_add(id as u64));
    let elapsed_ms = start.elapsed().as_millis();
    let (mut pass, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(b) = budget_ms {
        if elapsed_ms >= b {
            pass = false;
            detail = format!("{detail}; over the {b} ms budget");
        }
    }
    Some(CriterionResult {
        id,
        name: name.to_string(),
        pass,
        detail,
        elapsed_ms,
        budget_ms,
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    criterion_ids()
        .into_iter()
        .filter_map(|id| run_criterion(id, seed))
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(s: &str) -> Rat {
    s.parse().expect("literal rational")
}

fn ech_oracle(_seed: u64) -> Result<String, String> {
    let mut checked = 0;
    for a1 in 1..=5 {
        for a2 in 1..=5 {
            let w = [Rat::int(a1), Rat::int(a2)];
            let fast = ech_prefix(&w, 200).map_err(|e| e.to_string())?.values;
            let slow = oracle::naive_ech(&w, 200);
            ensure(fast == slow, || format!("mismatch for weights ({a1}, {a2})"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} weight pairs agree on 200 terms"))
}

pub fn desk_params() -> ShellParams {
    ShellParams::new(q("21/20"), 2, 2, q("1/40"))
}

fn shell_substitution(_seed: u64) -> Result<String, String> {
    let spec = ShellSpec::with_sample_count(desk_params(), 3).map_err(|e| e.to_string())?;
    let expected = [
        ("-1/40", "2825761/2560000", "265761/2560000"),
        ("0", "194481/160000", "34481/160000"),
        ("1/40", "3418801/2560000", "858801/2560000"),
    ];
    for (a, outer, sum) in expected {
        let a = q(a);
        let h = shell_helicity(&spec, &a).map_err(|e| e.to_string())?;
        let s = shell_sum(&spec, &a).map_err(|e| e.to_string())?;
        ensure(h.inner == -Rat::one(), || format!("inner at {a} is {}", h.inner))?;
        ensure(h.outer == q(outer), || format!("outer at {a} is {}", h.outer))?;
        ensure(s == q(sum), || format!("sum at {a} is {s}"))?;
        ensure(s == &h.inner + &h.outer, || format!("sum at {a} is not inner + outer"))?;
    }
    Ok("3 samples match exactly".into())
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn as_strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn partition_counts(_seed: u64) -> Result<String, String> {
    let mut cases = 0;
    for i in 1..=6usize {
        for t in 0..=5usize {
            let src = labels("s", i);
            let tgt = labels("t", t);
            let fast: BTreeSet<oracle::Canonical> = enum_pair_partitions(&src, &tgt)
                .map_err(|e| e.to_string())?
                .map(|p| oracle::canonical(&p))
                .collect();
            let want = i.pow(t as u32);
            ensure(fast.len() == want, || {
                format!("pair |I|={i} |I'|={t}: {} partitions, expected {want}", fast.len())
            })?;
            let slow: BTreeSet<_> = oracle::naive_pair_partitions(&as_strs(&src), &as_strs(&tgt))
                .into_iter()
                .collect();
            ensure(fast == slow, || format!("pair |I|={i} |I'|={t} differs from oracle"))?;
            cases += 1;

            for p in 1..i {
                let plus = labels("p", p);
                let minus = labels("m", i - p);
                let parts: Vec<_> = enum_triple_partitions(&plus, &minus, &tgt)
                    .map_err(|e| e.to_string())?
                    .collect();
                let want = p * (i - p) * (i - 1).pow(t as u32);
                ensure(parts.len() == want, || {
                    format!("triple ({p},{},{t}): {} partitions, expected {want}", i - p, parts.len())
                })?;
                ensure(parts.iter().all(|x| x.blocks.len() == i - 1), || {
                    format!("triple ({p},{},{t}): block count is not |I| - 1", i - p)
                })?;
                let fast: BTreeSet<_> = parts.iter().map(oracle::canonical).collect();
                ensure(fast.len() == want, || "duplicate triple partitions".into())?;
                let slow: BTreeSet<_> =
                    oracle::naive_triple_partitions(&as_strs(&plus), &as_strs(&minus), &as_strs(&tgt))
                        .into_iter()
                        .collect();
                ensure(fast == slow, || format!("triple ({p},{},{t}) differs from oracle", i - p))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} label-set shapes match the formulas and the oracle"))
}

fn shell_vector(a: &str) -> BoundaryVector {
    let spec = ShellSpec::with_sample_count(desk_params(), 3).expect("valid desk spec");
    shell_helicity(&spec, &q(a))
        .expect("sample in range")
        .boundary_vector()
}

fn c0_pinning(_seed: u64) -> Result<String, String> {
    let hi = shell_vector("1/40");
    let lo = shell_vector("0");
    let opt = pairwise_c0(&hi, &lo).map_err(|e| e.to_string())?;
    let want = q("551696/3418801");
    ensure(opt.value == want, || format!("C0 = {}, expected {want}", opt.value))?;
    ensure(opt.partitions_examined == 4, || {
        format!("examined {} partitions, expected 4", opt.partitions_examined)
    })?;
    let labels_hi: Vec<&str> = hi.labels().collect();
    let labels_lo: Vec<&str> = lo.labels().collect();
    let all = oracle::naive_pair_partitions(&labels_hi, &labels_lo);
    ensure(all.len() == 4, || format!("oracle found {} partitions", all.len()))?;
    let slow = oracle::naive_sup(&all, &hi, None, &lo);
    ensure(slow == want, || format!("oracle C0 = {slow}"))?;
    Ok(format!("C0 = {want} over 4 partitions"))
}

/// A random family built to satisfy the sufficient conditions; callers
/// still filter through [`check_prop_hypotheses`].
pub fn random_family(rng: &mut impl Rng) -> (Vec<FamilyMember>, usize) {
    let ell = rng.gen_range(2..=4usize);
    let pool = ["1/4", "1/2", "3/4", "1"];
    let k = rng.gen_range(1..=3usize);
    let mut positives: Vec<Rat> = pool.choose_multiple(rng, k).map(|s| q(s)).collect();
    positives.sort();
    let mut indices: Vec<Rat> = positives.iter().map(|a| -a).collect();
    if rng.gen_bool(0.5) {
        indices.push(Rat::zero());
    }
    indices.extend(positives);
    indices.sort();

    let mut sums: BTreeSet<i64> = BTreeSet::new();
    while sums.len() < indices.len() {
        sums.insert(rng.gen_range(1..=60));
    }
    let sums: Vec<Rat> = sums.into_iter().map(|s| Rat::new(s, 60)).collect();
    let s_min = sums[0].clone();

    let family = indices
        .into_iter()
        .zip(sums)
        .map(|(a, sum)| {
            let mut nonpos = vec![-Rat::one()];
            for _ in 2..ell {
                let u = Rat::new(rng.gen_range(0..10), 10);
                nonpos.push(-Rat::one() + &s_min * u);
            }
            let positive = &sum - nonpos.iter().sum::<Rat>();
            let mut entries: Vec<(String, Rat)> = nonpos
                .into_iter()
                .enumerate()
                .map(|(i, v)| (format!("n{i}"), v))
                .collect();
            entries.push(("p".into(), positive));
            entries.shuffle(rng);
            let bv = BoundaryVector::new(entries).expect("distinct labels");
            FamilyMember::new(a, bv)
        })
        .collect();
    (family, ell)
}

fn i_collection_property(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut kept, mut drawn) = (0, 0);
    let mut worst = ExtRat::zero();
    while kept < 1000 {
        drawn += 1;
        ensure(drawn <= 20_000, || format!("only {kept} families passed the conditions"))?;
        let (family, ell) = random_family(&mut rng);
        if !check_prop_hypotheses(&family, ell).all_pass {
            continue;
        }
        kept += 1;
        let cert = is_i_collection(&family).map_err(|e| e.to_string())?;
        ensure(cert.is_i_collection, || {
            format!(
                "family {drawn} passes the conditions but C0 = {}, C1 = {}: {family:?}",
                cert.c0, cert.c1
            )
        })?;
        worst = worst.max(cert.bound());
    }
    Ok(format!("{kept} of {drawn} drawn families checked, max C = {worst}"))
}

fn five_sample_family() -> Result<Vec<FamilyMember>, String> {
    let spec = ShellSpec::with_sample_count(desk_params(), 5).map_err(|e| e.to_string())?;
    build_family(&spec).map_err(|e| e.to_string())
}

/// `max(C₀, C₁)` computed by the partition oracle.
pub fn oracle_bound(family: &[FamilyMember]) -> ExtRat {
    let mut members: Vec<&FamilyMember> = family.iter().collect();
    members.sort_by(|x, y| x.a.cmp(&y.a));
    let mut best = ExtRat::zero();
    for (i, lo) in members.iter().enumerate() {
        for hi in &members[i + 1..] {
            best = best.max(oracle::naive_c0(&hi.values, &lo.values));
        }
    }
    let positive: Vec<&&FamilyMember> = members.iter().filter(|m| m.a.is_positive()).collect();
    for (i, small) in positive.iter().enumerate() {
        let Some(mirror) = members.iter().find(|m| m.a == -&small.a) else {
            continue;
        };
        for big in &positive[i + 1..] {
            best = best.max(oracle::naive_c1(&small.values, &mirror.values, &big.values));
        }
    }
    best
}

fn separation_pipeline(_seed: u64) -> Result<String, String> {
    let family = five_sample_family()?;
    let sep = separation_bound(&family).map_err(|e| e.to_string())?;
    let slow = oracle_bound(&family);
    ensure(sep.bound == slow, || format!("C = {} but oracle gives {slow}", sep.bound))?;
    ensure(sep.separates, || format!("C = {} is not below 1", sep.bound))?;

    let positives: Vec<Rat> = family
        .iter()
        .map(|m| m.a.clone())
        .filter(Rat::is_positive)
        .collect();
    let subsets: Vec<Vec<Rat>> = (0..1u32 << positives.len())
        .map(|mask| {
            positives
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, a)| a.clone())
                .collect()
        })
        .collect();
    let mut pairs = 0;
    for (i, a) in subsets.iter().enumerate() {
        for b in &subsets[i + 1..] {
            let d = distinguish(&family, 2, a, b).map_err(|e| e.to_string())?;
            let in_a = a.contains(&d.witness);
            let in_b = b.contains(&d.witness);
            ensure(in_a != in_b, || format!("witness {} not in the difference", d.witness))?;
            ensure(d.larger_in_prime == in_b, || "wrong side reported".into())?;
            ensure(d.bound < Rat::one(), || "bound not below 1".into())?;
            pairs += 1;
        }
    }
    Ok(format!("C = {} < 1; {pairs} subset pairs distinguished", sep.bound))
}

fn normalized_hypotheses(_seed: u64) -> Result<String, String> {
    let good = check_normalized_hypotheses(&desk_params()).map_err(|e| e.to_string())?;
    ensure(good.pass, || "(21/20, 1/40) does not pass".into())?;
    let margin = q("1701199/2560000");
    ensure(good.width_margin == margin, || {
        format!("margin {} differs from {margin}", good.width_margin)
    })?;

    let other = ShellParams::new(q("23/20"), 2, 2, q("1/40"));
    let rep = check_normalized_hypotheses(&other).map_err(|e| e.to_string())?;
    let power = q("4879681/2560000");
    ensure(Rat::int(2) - &rep.width_margin == power, || {
        format!("(47/40)^4 computed as {}", Rat::int(2) - &rep.width_margin)
    })?;
    ensure(!rep.pass, || {
        format!(
            "(23/20, 1/40) was expected to fail, but (47/40)^4 = {power} is below 2 \
             (margin {}) and r - a0 - 1 = {}, so both conditions hold",
            rep.width_margin, rep.inner_margin
        )
    })?;
    Ok(format!("(21/20, 1/40) passes with margin {margin}; (23/20, 1/40) fails"))
}

/// Up to six positive vectors of dimension at most 3, some sharing a base.
pub fn random_vector_instance(rng: &mut impl Rng) -> ScalableInstance {
    let dim = rng.gen_range(1..=3usize);
    let n = rng.gen_range(1..=6usize);
    let scales = ["1", "1/2", "2", "3/2"];
    let mut elements: Vec<Element> = Vec::with_capacity(n);
    for i in 0..n {
        let base = if i > 0 && rng.gen_bool(0.25) {
            elements[rng.gen_range(0..i)].base.clone()
        } else {
            (0..dim)
                .map(|_| Rat::new(rng.gen_range(1..=4), rng.gen_range(1..=2)))
                .collect()
        };
        let scale = q(scales.choose(rng).expect("nonempty"));
        elements.push(Element::new(format!("s{i}"), base, scale));
    }
    ScalableInstance::vectors(elements).expect("valid random instance")
}

/// Zero to three columns drawn from the fixed vector capacities.
pub fn random_vector_table(rng: &mut impl Rng, inst: &ScalableInstance) -> CapacityTable {
    let k = rng.gen_range(0..=3usize);
    let mut table = CapacityTable::new();
    for name in VECTOR_TARGETS.choose_multiple(rng, k) {
        table.push(*name, vector_column(inst, name).expect("known capacity"));
    }
    table
}

fn dominated(table: &CapacityTable, i: usize, j: usize) -> bool {
    table.columns.iter().all(|c| c[i] <= c[j])
}

fn monotone_generation(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut recognizing, mut total) = (0, 0);
    for case in 0..500 {
        let inst = random_vector_instance(&mut rng);
        let table = random_vector_table(&mut rng, &inst);
        if let Some(v) = table.validate(&inst).map_err(|e| e.to_string())? {
            return Err(format!("case {case}: column {} is not a capacity", v.capacity));
        }
        let rec = almost_order_recognizing(&inst, &table).map_err(|e| e.to_string())?;
        if let Some(w) = &rec.witness {
            let c = order_capacity(&inst, w.s, w.s_prime).map_err(|e| e.to_string())?;
            ensure(dominated(&table, w.s, w.s_prime) && c < Rat::one(), || {
                format!("case {case}: invalid recognition witness")
            })?;
        }
        let mut all_generate = true;
        for name in VECTOR_TARGETS {
            let target = vector_column(&inst, name).expect("known capacity");
            let g = can_monotonely_generate(&inst, &table, &target).map_err(|e| e.to_string())?;
            match &g.witness {
                Some(w) => ensure(
                    dominated(&table, w.s, w.s_prime) && target[w.s] > target[w.s_prime],
                    || format!("case {case}: invalid generation witness for {name}"),
                )?,
                None => ensure(g.realized, || {
                    format!("case {case}: monotonization does not realize {name}")
                })?,
            }
            all_generate &= g.holds;
        }
        ensure(rec.holds == all_generate, || {
            format!(
                "case {case}: recognizing = {}, every target generated = {all_generate}",
                rec.holds
            )
        })?;
        recognizing += rec.holds as usize;
        total += 1;
    }
    Ok(format!("{total} instances agree ({recognizing} recognizing)"))
}

fn kink(_seed: u64) -> Result<String, String> {
    let a0 = Rat::int(2);
    for h in ["1/10", "1/100"] {
        let h = q(h);
        let curve = capacity_curve(&a0, &auto_grid(&a0, &h, 1), 200).map_err(|e| e.to_string())?;
        let rep = kink_certificate(&curve, &h, None).map_err(|e| e.to_string())?;
        ensure(rep.right.is_zero(), || format!("h = {h}: right quotient {}", rep.right))?;
        ensure(rep.left == q("1/2"), || format!("h = {h}: left quotient {}", rep.left))?;
        ensure(rep.pass, || format!("h = {h}: certificate fails"))?;
    }

    let h = Rat::new(1, 1_000_000_000_000);
    let grid = auto_grid(&a0, &h, 1);
    let target = capacity_curve(&a0, &grid, 200).map_err(|e| e.to_string())?;
    let opts = RefuteOptions::for_center(&a0);
    let mut inputs = BTreeMap::new();
    inputs.insert("volume".to_string(), volume_capacity_curve(&grid, 40));
    let verdict =
        refute_finite_generation(&inputs, &target, &h, opts.clone()).map_err(|e| e.to_string())?;
    ensure(verdict.refuted, || "smooth input not refuted".into())?;

    let mut own = BTreeMap::new();
    own.insert("target".to_string(), target.as_map());
    let rejected = matches!(
        refute_finite_generation(&own, &target, &h, opts),
        Err(KinkError::NotDifferentiable(_))
    );
    ensure(rejected, || "target accepted as a differentiable input".into())?;
    Ok("left 1/2, right 0 at h = 1/10 and 1/100; refutation holds".into())
}

fn random_rat(rng: &mut impl Rng, lo: i64, hi: i64, den: i64) -> Rat {
    Rat::new(rng.gen_range(lo..=hi), rng.gen_range(1..=den))
}

fn random_scale(rng: &mut impl Rng) -> Rat {
    random_rat(rng, 1, 9, 4)
}

fn random_bv(rng: &mut impl Rng, prefix: &str, n: usize) -> BoundaryVector {
    BoundaryVector::new((0..n).map(|i| (format!("{prefix}{i}"), random_rat(rng, -6, 6, 3))))
        .expect("distinct labels")
}

fn invariants(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let err = |e: &dyn std::fmt::Display| e.to_string();

    for case in 0..100 {
        let n = rng.gen_range(1..=3);
        let w: Vec<Rat> = (0..n).map(|_| random_rat(&mut rng, 1, 6, 3)).collect();
        let lambda = random_scale(&mut rng);
        let base = ech_prefix(&w, 60).map_err(|e| err(&e))?.values;
        let scaled_w: Vec<Rat> = w.iter().map(|x| x * &lambda).collect();
        let scaled = ech_prefix(&scaled_w, 60).map_err(|e| err(&e))?.values;
        ensure(
            scaled.iter().zip(&base).all(|(s, b)| *s == b * &lambda),
            || format!("ech homogeneity fails in case {case}"),
        )?;
        let mut perm = w.clone();
        perm.shuffle(&mut rng);
        let permuted = ech_prefix(&perm, 60).map_err(|e| err(&e))?.values;
        ensure(permuted == base, || format!("ech permutation fails in case {case}"))?;
    }

    for case in 0..100 {
        let dim = rng.gen_range(1..=3);
        let s: Vec<Rat> = (0..dim).map(|_| random_rat(&mut rng, 1, 6, 3)).collect();
        let t: Vec<Rat> = (0..dim).map(|_| random_rat(&mut rng, 1, 6, 3)).collect();
        let lambda = random_scale(&mut rng);
        let mut perm: Vec<usize> = (0..dim).collect();
        perm.shuffle(&mut rng);
        let permute = |x: &[Rat]| perm.iter().map(|&k| x[k].clone()).collect::<Vec<_>>();
        let inst = ScalableInstance::vectors(vec![
            Element::new("s", s.clone(), Rat::one()),
            Element::new("t", t.clone(), Rat::one()),
            Element::new("ls", s.clone(), lambda.clone()),
            Element::new("ps", permute(&s), Rat::one()),
            Element::new("pt", permute(&t), Rat::one()),
        ])
        .map_err(|e| err(&e))?;
        let c = order_capacity(&inst, 0, 1).map_err(|e| err(&e))?;
        let scaled = order_capacity(&inst, 2, 1).map_err(|e| err(&e))?;
        let inv = lambda.recip().map_err(|e| err(&e))?;
        ensure(Ok(scaled) == c.scale(&inv), || {
            format!("order capacity scaling fails in case {case}")
        })?;
        let permuted = order_capacity(&inst, 3, 4).map_err(|e| err(&e))?;
        ensure(permuted == c, || format!("order capacity permutation fails in case {case}"))?;
    }

    for case in 0..100 {
        let (nf, ng) = (rng.gen_range(1..=3), rng.gen_range(0..=3));
        let f = random_bv(&mut rng, "i", nf);
        let g = random_bv(&mut rng, "j", ng);
        let lambda = random_scale(&mut rng);
        let base = pairwise_c0(&f, &g).map_err(|e| err(&e))?.value;
        let both = pairwise_c0(&f.scaled(&lambda), &g.scaled(&lambda))
            .map_err(|e| err(&e))?
            .value;
        ensure(both == base, || format!("joint rescaling changes C0 in case {case}"))?;
        let target = pairwise_c0(&f, &g.scaled(&lambda)).map_err(|e| err(&e))?.value;
        ensure(Ok(target) == base.scale(&lambda), || {
            format!("target rescaling does not scale C0 in case {case}")
        })?;
        let relabel = |bv: &BoundaryVector, prefix: &str, rng: &mut ChaCha8Rng| {
            let mut vals: Vec<Rat> = bv.values().cloned().collect();
            vals.shuffle(rng);
            BoundaryVector::new(vals.into_iter().enumerate().map(|(i, v)| (format!("{prefix}{i}"), v)))
                .expect("distinct labels")
        };
        let f2 = relabel(&f, "u", &mut rng);
        let g2 = relabel(&g, "v", &mut rng);
        let renamed = pairwise_c0(&f2, &g2).map_err(|e| err(&e))?.value;
        ensure(renamed == base, || format!("relabeling changes C0 in case {case}"))?;
    }
    Ok("300 cases: ech, order and partition invariants hold exactly".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_families_mostly_satisfy_the_conditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let passing = (0..200)
            .filter(|_| {
                let (fam, ell) = random_family(&mut rng);
                check_prop_hypotheses(&fam, ell).all_pass
            })
            .count();
        assert!(passing > 100, "{passing}");
    }

    #[test]
    fn unknown_criterion() {
        assert!(run_criterion(42, 0).is_none());
        assert_eq!(criterion_ids(), (1..=10).collect::<Vec<u8>>());
    }
}
