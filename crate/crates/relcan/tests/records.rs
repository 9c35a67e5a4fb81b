use std::collections::BTreeMap;

use proptest::prelude::*;
use relcan::check::{conjecture_outcomes, degree_sums, duality, rank_formulas};
use relcan::record::{read_jsonl, write_jsonl, BettiRow, CheckOutcome, ExperimentRecord, Hilbert, Stage, Status};
use relcan_core::invariants::{balanced_splitting, beta_rank, bundle_degree};

fn outcome() -> impl Strategy<Value = CheckOutcome> {
    prop_oneof![Just(CheckOutcome::Pass), Just(CheckOutcome::Fail), Just(CheckOutcome::NotApplicable)]
}

fn status() -> impl Strategy<Value = Status> {
    prop_oneof![
        Just(Status::Ok),
        (1usize..10).prop_map(|retries| Status::Retried { retries }),
        ("[a-z \"\\\\]{0,12}").prop_map(|reason| Status::Failed {
            stage: Stage::Resolve,
            reason
        }),
    ]
}

prop_compose! {
    fn record()(
        g in 4u64..30, k in 3u64..10, p in 100u64..100_000, seed in any::<u64>(), trial in proptest::option::of(0u64..50),
        status in status(),
        scroll in proptest::collection::vec(0u64..5, 0..6),
        splitting in proptest::collection::vec(proptest::collection::vec(-3i64..8, 1..6), 0..5),
        rows in proptest::collection::vec((-2i64..10, proptest::collection::vec(0usize..20, 0..5)), 0..4),
        checks in proptest::collection::vec(outcome(), 11),
        conj in proptest::collection::btree_map("[a-zA-Z]{1,8}", outcome(), 0..5),
        timings in proptest::option::of(proptest::collection::btree_map("[a-z]{1,6}", any::<u64>(), 0..4)),
    ) -> ExperimentRecord {
        let mut r = ExperimentRecord::empty(g, k, p, seed);
        r.trial = trial;
        r.status = status;
        r.scroll_type = scroll;
        r.hilbert = Some(Hilbert { dim: 1, degree: 2 * g as i64 - 2, genus: g as i64 });
        r.ranks = splitting.iter().map(Vec::len).collect();
        r.balanced_flags = splitting.iter().map(|t| relcan_core::invariants::is_balanced(t)).collect();
        r.splitting_types = splitting;
        r.betti = rows.into_iter().map(|(row, entries)| BettiRow { row, entries }).collect();
        r.checks.hilbert = checks[0];
        r.checks.composition_zero = checks[1];
        r.checks.duality = checks[2];
        r.checks.preimage = checks[3];
        r.checks.certified_bidegrees = (seed % 40) as usize;
        r.conjecture_checks = conj;
        r.timings = timings;
        r
    }
}

proptest! {
    #[test]
    fn json_line_round_trip(r in record()) {
        let line = r.to_json_line();
        prop_assert!(!line.contains('\n'));
        let back: ExperimentRecord = serde_json::from_str(&line).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn balanced_splittings_satisfy_formulas(n in 1u64..4, k in 4u64..9) {
        let g = n * k + 1;
        let f = (g - k + 1) as i64;
        let mut s: Vec<Vec<i64>> = (1..=k - 3)
            .map(|i| balanced_splitting(beta_rank(k, i).unwrap(), bundle_degree(g, k, i).unwrap()))
            .collect();
        s.push(vec![f - 2]);
        prop_assert!(rank_formulas(k, &s));
        prop_assert!(degree_sums(g, k, &s));
        prop_assert!(duality(g, k, &s));
        let out = conjecture_outcomes(g, k, &s[..s.len() - 1]);
        prop_assert_eq!(out["muSplitting"], CheckOutcome::Pass);
    }
}

#[test]
fn jsonl_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.jsonl");
    let mut a = ExperimentRecord::empty(9, 6, 10007, 1);
    a.conjecture_checks = BTreeMap::from([("negRhoBalanced".to_string(), CheckOutcome::NotApplicable)]);
    let mut b = ExperimentRecord::empty(10, 5, 10007, 2);
    b.status = Status::Failed {
        stage: Stage::Construct,
        reason: "gave up".into(),
    };
    b.timings = Some(BTreeMap::from([("construct".to_string(), 3)]));
    write_jsonl(&path, &[a.clone(), b.clone()]).unwrap();
    assert_eq!(read_jsonl(&path).unwrap(), vec![a, b]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().next().unwrap().starts_with("{\"schemaVersion\":1,"));
    assert!(text.contains("\"state\":\"failed\""));
    assert!(text.contains("\"n.a.\""));
}
