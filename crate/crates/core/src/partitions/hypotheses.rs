//! The sufficient conditions for a family to be an I-collection.

use std::fmt;

use serde::Serialize;

use super::FamilyMember;
use crate::exact::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// `|I_a| = ℓ`
    LabelCount,
    /// `f_a ≥ −1`
    BoundedBelow,
    /// `f_a⁻¹(−1) ≠ ∅`
    AttainsMinusOne,
    /// exactly one positive value per `f_a`
    SinglePositive,
    /// `Σ f_a ≤ 1`
    SumAtMostOne,
    /// `a > a′ ⇒ Σ f_a > Σ f_a′`
    SumIncreasing,
    /// `sup(im f ∩ (−∞, 0]) < −1 + inf_a Σ f_a`
    NonpositiveGap,
    /// for `ℓ ≥ 4`: `sup f < 2·inf(im f ∩ (0, ∞)) + 1`
    PositiveSpread,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hypothesis::LabelCount => "label_count",
            Hypothesis::BoundedBelow => "bounded_below",
            Hypothesis::AttainsMinusOne => "attains_minus_one",
            Hypothesis::SinglePositive => "single_positive",
            Hypothesis::SumAtMostOne => "sum_at_most_one",
            Hypothesis::SumIncreasing => "sum_increasing",
            Hypothesis::NonpositiveGap => "nonpositive_gap",
            Hypothesis::PositiveSpread => "positive_spread",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub hypothesis: Hypothesis,
    /// `false` only for the spread condition when `ℓ < 4`.
    pub applies: bool,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub ell: usize,
    pub checks: Vec<HypothesisCheck>,
    pub all_pass: bool,
}

impl HypothesisReport {
    pub fn failed(&self) -> Vec<Hypothesis> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.hypothesis)
            .collect()
    }

    pub fn get(&self, h: Hypothesis) -> Option<&HypothesisCheck> {
        self.checks.iter().find(|c| c.hypothesis == h)
    }
}

fn per_member(
    family: &[FamilyMember],
    hypothesis: Hypothesis,
    ok: impl Fn(&FamilyMember) -> bool,
) -> HypothesisCheck {
    let bad: Vec<String> = family
        .iter()
        .filter(|m| !ok(m))
        .map(|m| m.a.to_string())
        .collect();
    HypothesisCheck {
        hypothesis,
        applies: true,
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            "holds for every index".into()
        } else {
            format!("violated at a = {}", bad.join(", "))
        },
    }
}

/// Evaluates every condition exactly. The report is total: an empty family
/// passes everything vacuously.
pub fn check_prop_hypotheses(family: &[FamilyMember], ell: usize) -> HypothesisReport {
    let minus_one = -Rat::one();
    let mut checks = vec![
        per_member(family, Hypothesis::LabelCount, |m| m.values.len() == ell),
        per_member(family, Hypothesis::BoundedBelow, |m| {
            m.values.values().all(|v| *v >= minus_one)
        }),
        per_member(family, Hypothesis::AttainsMinusOne, |m| {
            m.values.values().any(|v| *v == minus_one)
        }),
        per_member(family, Hypothesis::SinglePositive, |m| {
            m.values.values().filter(|v| v.is_positive()).count() == 1
        }),
        per_member(family, Hypothesis::SumAtMostOne, |m| {
            m.values.total() <= Rat::one()
        }),
    ];

    let mut by_index: Vec<(&Rat, Rat)> = family.iter().map(|m| (&m.a, m.values.total())).collect();
    by_index.sort_by(|x, y| x.0.cmp(y.0));
    let drops: Vec<String> = by_index
        .windows(2)
        .filter(|w| w[1].1 <= w[0].1)
        .map(|w| format!("{} -> {}", w[0].0, w[1].0))
        .collect();
    checks.push(HypothesisCheck {
        hypothesis: Hypothesis::SumIncreasing,
        applies: true,
        pass: drops.is_empty(),
        detail: if drops.is_empty() {
            "sums strictly increase with a".into()
        } else {
            format!("sum does not increase on {}", drops.join(", "))
        },
    });

    let all_values = || family.iter().flat_map(|m| m.values.values());
    let inf_sum = by_index.iter().map(|(_, s)| s).min().cloned();
    let sup_nonpos = all_values().filter(|v| !v.is_positive()).max().cloned();
    let (pass, detail) = match (&sup_nonpos, &inf_sum) {
        (Some(s), Some(i)) => {
            let rhs = i - Rat::one();
            (*s < rhs, format!("sup nonpositive {s} vs -1 + inf sum = {rhs}"))
        }
        _ => (true, "no nonpositive values or empty family".into()),
    };
    checks.push(HypothesisCheck {
        hypothesis: Hypothesis::NonpositiveGap,
        applies: true,
        pass,
        detail,
    });

    let applies = ell >= 4;
    let sup_all = all_values().max().cloned();
    let inf_pos = all_values().filter(|v| v.is_positive()).min().cloned();
    let (pass, detail) = match (applies, &sup_all, &inf_pos) {
        (false, _, _) => (true, "not required for l < 4".into()),
        (true, Some(s), Some(p)) => {
            let rhs = Rat::int(2) * p + Rat::one();
            (*s < rhs, format!("sup {s} vs 2 inf positive + 1 = {rhs}"))
        }
        // inf over an empty set of positives is +inf
        (true, _, _) => (true, "no positive values".into()),
    };
    checks.push(HypothesisCheck {
        hypothesis: Hypothesis::PositiveSpread,
        applies,
        pass,
        detail,
    });

    let all_pass = checks.iter().all(|c| c.pass);
    HypothesisReport {
        ell,
        checks,
        all_pass,
    }
}
