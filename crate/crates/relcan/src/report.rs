//! Conjecture consistency tallies over stored records.

use std::collections::BTreeMap;

use relcan_core::invariants::{is_balanced, mu_quotient};
use relcan_core::relres::SplittingType;

use crate::record::{CheckOutcome, ExperimentRecord};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub applicable: usize,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub counterexamples: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConjectureReport {
    pub records: usize,
    pub successful: usize,
    pub tallies: BTreeMap<String, Tally>,
    /// Records with `k | g - 1` and some unbalanced `N_i`, with every flag.
    pub unbalanced_hits: Vec<String>,
    /// `(g, k, p) -> (unbalanced, successful)` over cells with `k | g - 1`.
    pub hit_rates: BTreeMap<(u64, u64, u64), (usize, usize)>,
}

fn label(r: &ExperimentRecord) -> String {
    let trial = r.trial.map(|t| format!(" trial={t}")).unwrap_or_default();
    format!("g={} k={} p={} seed={}{trial}", r.g, r.k, r.p, r.seed)
}

fn splitting_summary(r: &ExperimentRecord) -> String {
    r.bundles()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let flag = if is_balanced(t) { "balanced" } else { "unbalanced" };
            format!("N_{} = {} ({flag})", i + 1, SplittingType::new(i + 1, t).compact())
        })
        .collect::<Vec<_>>()
        .join("; ")
}

impl ConjectureReport {
    pub fn from_records(records: &[ExperimentRecord]) -> Self {
        let mut rep = ConjectureReport {
            records: records.len(),
            ..Default::default()
        };
        for r in records.iter().filter(|r| r.status.is_success()) {
            rep.successful += 1;
            for (name, outcome) in &r.conjecture_checks {
                let t = rep.tallies.entry(name.clone()).or_default();
                match outcome {
                    CheckOutcome::Pass => {
                        t.applicable += 1;
                        t.pass += 1;
                    }
                    CheckOutcome::Fail => {
                        t.applicable += 1;
                        t.fail += 1;
                        t.counterexamples.push(format!("{}: {}", label(r), splitting_summary(r)));
                    }
                    CheckOutcome::NotApplicable => t.not_applicable += 1,
                }
            }
            if r.k >= 4 && mu_quotient(r.g, r.k).is_some() {
                let entry = rep.hit_rates.entry((r.g, r.k, r.p)).or_insert((0, 0));
                entry.1 += 1;
                if !r.totally_balanced() {
                    entry.0 += 1;
                    rep.unbalanced_hits.push(format!("{}: {}", label(r), splitting_summary(r)));
                }
            }
        }
        rep
    }

    pub fn render_markdown(&self) -> String {
        let mut out = String::from("# Conjecture consistency report\n\n");
        out.push_str(&format!(
            "Records: {} ({} successful). Counts record agreement with each predicate; they are not proofs.\n",
            self.records, self.successful
        ));
        if self.tallies.is_empty() {
            out.push_str("\nNo successful records.\n");
            return out;
        }
        out.push_str("\n| predicate | applicable | pass | fail | n.a. |\n|---|---:|---:|---:|---:|\n");
        for (name, t) in &self.tallies {
            out.push_str(&format!(
                "| {name} | {} | {} | {} | {} |\n",
                t.applicable, t.pass, t.fail, t.not_applicable
            ));
        }
        for (name, t) in &self.tallies {
            if t.counterexamples.is_empty() {
                continue;
            }
            out.push_str(&format!("\n## Counterexamples: {name}\n\n"));
            for c in &t.counterexamples {
                out.push_str(&format!("- {c}\n"));
            }
        }
        if !self.hit_rates.is_empty() {
            out.push_str("\n## Unbalanced covers with k | g - 1\n\n| g | k | p | unbalanced | successful | observed rate | 1/p |\n|---:|---:|---:|---:|---:|---:|---:|\n");
            for (&(g, k, p), &(hits, n)) in &self.hit_rates {
                out.push_str(&format!(
                    "| {g} | {k} | {p} | {hits} | {n} | {:.6} | {:.6} |\n",
                    hits as f64 / n as f64,
                    1.0 / p as f64
                ));
            }
            if !self.unbalanced_hits.is_empty() {
                out.push('\n');
                for h in &self.unbalanced_hits {
                    out.push_str(&format!("- {h}\n"));
                }
            }
        }
        out
    }
}
