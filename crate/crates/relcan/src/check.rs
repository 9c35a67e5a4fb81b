//! Closed-form checks shared by the pipeline and by re-validation of stored
//! records.

use std::collections::BTreeMap;

use relcan_core::invariants::{
    beta_rank, brill_noether_rho, bundle_degree, is_balanced, prediction, refined_bound_dual_holds,
    refined_bound_holds, sorted_desc, ConjectureKind,
};

use crate::record::{CheckOutcome, ExperimentRecord, SCHEMA_VERSION};

/// `rank N_i = beta_i` for every bundle and a final line bundle.
pub fn rank_formulas(k: u64, splitting: &[Vec<i64>]) -> bool {
    if splitting.len() + 2 != k as usize {
        return false;
    }
    splitting.iter().enumerate().all(|(idx, tw)| {
        let i = idx as u64 + 1;
        if i + 2 == k {
            tw.len() == 1
        } else {
            beta_rank(k, i).is_ok_and(|b| b == tw.len() as u64)
        }
    })
}

/// Twist sums equal the bundle degrees and the final twist is `f - 2`.
pub fn degree_sums(g: u64, k: u64, splitting: &[Vec<i64>]) -> bool {
    let f = g as i64 - k as i64 + 1;
    splitting.iter().enumerate().all(|(idx, tw)| {
        let i = idx as u64 + 1;
        if i + 2 == k {
            tw == &[f - 2]
        } else {
            bundle_degree(g, k, i).is_ok_and(|d| d == tw.iter().sum::<i64>())
        }
    })
}

/// `N_{k-2-i}` is the reflection `a -> f - 2 - a` of `N_i`.
pub fn duality(g: u64, k: u64, splitting: &[Vec<i64>]) -> bool {
    let f = g as i64 - k as i64 + 1;
    let n = splitting.len();
    if n + 2 != k as usize {
        return false;
    }
    (0..n.saturating_sub(1)).all(|idx| {
        let reflected = sorted_desc(&splitting[idx].iter().map(|a| f - 2 - a).collect::<Vec<_>>());
        sorted_desc(&splitting[n - 2 - idx]) == reflected
    })
}

/// Outcomes of the conjecture predicates on the bundles `N_1, ..., N_{k-3}`.
pub fn conjecture_outcomes(g: u64, k: u64, bundles: &[Vec<i64>]) -> BTreeMap<String, CheckOutcome> {
    use CheckOutcome::*;
    let mut out = BTreeMap::new();
    let complete = k >= 4 && bundles.len() + 3 == k as usize;
    for which in ConjectureKind::ALL {
        let pred = prediction(which, g, k);
        let outcome = if !pred.applicable || !complete {
            NotApplicable
        } else {
            match which {
                ConjectureKind::MuSplitting => {
                    if bundles.iter().all(|t| is_balanced(t)) {
                        Pass
                    } else {
                        CheckOutcome::from_bool(
                            pred.predicted_twists.len() == bundles.len()
                                && pred
                                    .predicted_twists
                                    .iter()
                                    .all(|(j, t)| sorted_desc(&bundles[*j as usize - 1]) == sorted_desc(t)),
                        )
                    }
                }
                ConjectureKind::RefinedBound => {
                    let holds = refined_bound_holds(g, k, bundles);
                    if holds.is_empty() {
                        NotApplicable
                    } else {
                        CheckOutcome::from_bool(holds.iter().all(|(_, ok)| *ok))
                    }
                }
                ConjectureKind::GMinusK2Form => CheckOutcome::from_bool(
                    pred.predicted_twists.len() == bundles.len()
                        && pred
                            .predicted_twists
                            .iter()
                            .all(|(i, t)| sorted_desc(&bundles[*i as usize - 1]) == sorted_desc(t)),
                ),
                ConjectureKind::NegRhoBalanced => CheckOutcome::from_bool(is_balanced(&bundles[0])),
            }
        };
        out.insert(which.name().to_string(), outcome);
    }
    let dual = if complete && brill_noether_rho(g, k) >= 0 {
        let holds = refined_bound_dual_holds(g, k, bundles);
        if holds.is_empty() {
            NotApplicable
        } else {
            CheckOutcome::from_bool(holds.iter().all(|(_, ok)| *ok))
        }
    } else {
        NotApplicable
    };
    out.insert("refinedBoundDual".to_string(), dual);
    out
}

/// Re-derives every invariant a successful record must satisfy from its
/// stored data alone. Returns the list of problems found.
pub fn revalidate(rec: &ExperimentRecord) -> Vec<String> {
    let mut problems = Vec::new();
    if rec.schema_version != SCHEMA_VERSION {
        problems.push(format!("schemaVersion {} (expected {SCHEMA_VERSION})", rec.schema_version));
    }
    if !rec.status.is_success() {
        return problems;
    }
    let (g, k) = (rec.g, rec.k);
    let f = g as i64 - k as i64 + 1;

    match rec.hilbert {
        Some(h) if h.dim == 1 && h.degree == 2 * g as i64 - 2 && h.genus == g as i64 => {}
        other => problems.push(format!("hilbert data {other:?} is not (1, {}, {g})", 2 * g - 2)),
    }
    let scroll_sum: u64 = rec.scroll_type.iter().sum();
    if rec.scroll_type.len() + 1 != k as usize || scroll_sum as i64 != f {
        problems.push(format!("scroll type {:?} is not {} parts summing to {f}", rec.scroll_type, k - 1));
    }
    if !rank_formulas(k, &rec.splitting_types) {
        problems.push("splitting ranks differ from the closed formula".into());
    }
    if !degree_sums(g, k, &rec.splitting_types) {
        problems.push("twist sums differ from the bundle degrees".into());
    }
    if !duality(g, k, &rec.splitting_types) {
        problems.push("splitting types are not self-dual".into());
    }
    let mut expected_ranks = vec![1usize];
    expected_ranks.extend(rec.splitting_types.iter().map(Vec::len));
    if rec.ranks != expected_ranks {
        problems.push(format!("ranks {:?} do not match the splitting types", rec.ranks));
    }
    if rec.betti_table().totals() != rec.ranks {
        problems.push("Betti table totals differ from the ranks".into());
    }
    let flags: Vec<bool> = rec.splitting_types.iter().map(|t| is_balanced(t)).collect();
    if flags != rec.balanced_flags {
        problems.push("balanced flags disagree with the splitting types".into());
    }
    let failed = rec.checks.failures();
    if !failed.is_empty() {
        problems.push(format!("structural checks failed: {}", failed.join(", ")));
    }
    for (name, outcome) in [
        ("compositionZero", rec.checks.composition_zero),
        ("exactness", rec.checks.exactness),
        ("duality", rec.checks.duality),
    ] {
        if outcome != CheckOutcome::Pass {
            problems.push(format!("{name} was not certified"));
        }
    }
    if conjecture_outcomes(g, k, rec.bundles()) != rec.conjecture_checks {
        problems.push("stored conjecture outcomes differ from re-evaluation".into());
    }
    problems
}
