//! Construction, embedding, resolution and checks for one `(g, k, p, seed)`.

use std::collections::BTreeMap;
use std::time::Instant;

use relcan_core::curvegen::{construct_with_retries, CurveModel, CurveSpec, DEFAULT_ATTEMPTS};
use relcan_core::error::Error;
use relcan_core::invariants::is_balanced;
use relcan_core::relres::{
    check_composition_zero, check_duality, check_minimal, render_betti, resolve_on_scroll, ResolutionResult,
    ResolveOptions,
};
use relcan_core::scroll::{build_embedding, curve_on_scroll, scroll_type_from_curve, verify_preimage, ScrollEmbedding};

use crate::check::{conjecture_outcomes, degree_sums, duality, rank_formulas};
use crate::record::{betti_rows, CheckOutcome, ExperimentRecord, Hilbert, Stage, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Construction attempts on the trial's random stream.
    pub attempts: usize,
    /// Extra twists added on both sides of each resolution window.
    pub extra_window: i64,
    /// Run the scroll-kernel, factorization and preimage Gröbner checks.
    pub groebner_checks: bool,
    /// Store per-stage wall-clock milliseconds. Breaks byte-identical reruns.
    pub record_timings: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            attempts: DEFAULT_ATTEMPTS,
            extra_window: 0,
            groebner_checks: false,
            record_timings: false,
        }
    }
}

/// A record together with the objects it was computed from.
pub struct PipelineRun {
    pub record: ExperimentRecord,
    pub model: Option<CurveModel>,
    pub embedding: Option<ScrollEmbedding>,
    pub resolution: Option<ResolutionResult>,
}

struct Timer {
    enabled: bool,
    start: Instant,
    stages: BTreeMap<String, u64>,
}

impl Timer {
    fn lap(&mut self, stage: &str) {
        if self.enabled {
            let now = Instant::now();
            self.stages.insert(stage.to_string(), (now - self.start).as_millis() as u64);
            self.start = now;
        }
    }
}

fn outcome(r: Result<bool, Error>) -> CheckOutcome {
    match r {
        Ok(ok) => CheckOutcome::from_bool(ok),
        Err(_) => CheckOutcome::Fail,
    }
}

pub fn run_pipeline(g: u64, k: u64, p: u64, seed: u64, opts: &PipelineOptions) -> ExperimentRecord {
    run_pipeline_full(g, k, p, seed, opts, false).record
}

/// Runs every stage; with `construct_only` it stops after the canonical
/// ideal. Stage errors end up in the record's status.
pub fn run_pipeline_full(g: u64, k: u64, p: u64, seed: u64, opts: &PipelineOptions, construct_only: bool) -> PipelineRun {
    let mut rec = ExperimentRecord::empty(g, k, p, seed);
    let mut run = PipelineRun {
        record: rec.clone(),
        model: None,
        embedding: None,
        resolution: None,
    };
    let mut timer = Timer {
        enabled: opts.record_timings,
        start: Instant::now(),
        stages: BTreeMap::new(),
    };
    let fail = |mut rec: ExperimentRecord, stage: Stage, reason: String, timer: &Timer| {
        rec.status = Status::Failed { stage, reason };
        if timer.enabled {
            rec.timings = Some(timer.stages.clone());
        }
        rec
    };

    let spec = match CurveSpec::new(g as usize, k as usize, p, seed) {
        Ok(s) => s,
        Err(e) => {
            run.record = fail(rec, Stage::Spec, e.to_string(), &timer);
            return run;
        }
    };
    let (model, retries) = match construct_with_retries(&spec, opts.attempts) {
        Ok(m) => m,
        Err(e) => {
            run.record = fail(rec, Stage::Construct, e.to_string(), &timer);
            return run;
        }
    };
    timer.lap("construct");
    rec.status = if retries == 0 { Status::Ok } else { Status::Retried { retries } };
    let h = model.hilbert();
    rec.hilbert = Some(Hilbert {
        dim: h.projective_dimension,
        degree: h.degree,
        genus: h.arithmetic_genus,
    });
    rec.checks.hilbert = CheckOutcome::from_bool(h.projective_dimension == 1 && h.degree == 2 * g as i64 - 2 && h.arithmetic_genus == g as i64);
    rec.quadric_count = model.canonical.quadrics.len();
    rec.cubic_count = model.canonical.cubics.len();
    rec.scroll_type = scroll_type_from_curve(&model).e().iter().map(|&e| e as u64).collect();
    if construct_only {
        run.record = rec;
        run.model = Some(model);
        return run;
    }

    let emb = match build_embedding(&model) {
        Ok(e) => e,
        Err(e) => {
            run.record = fail(rec, Stage::Embed, e.to_string(), &timer);
            run.model = Some(model);
            return run;
        }
    };
    if opts.groebner_checks {
        rec.checks.scroll_kernel = outcome(emb.verify_scroll_kernel());
        rec.checks.factorization = outcome(emb.verify_factorization(&model));
    }
    timer.lap("embed");
    let cos = match curve_on_scroll(&model, &emb) {
        Ok(c) => c,
        Err(e) => {
            run.record = fail(rec, Stage::CurveOnScroll, e.to_string(), &timer);
            run.model = Some(model);
            run.embedding = Some(emb);
            return run;
        }
    };
    if opts.groebner_checks {
        rec.checks.preimage = outcome(cos.ideal(&emb).and_then(|j| verify_preimage(&model, &emb, &j)));
    }
    timer.lap("curveOnScroll");
    let res = match resolve_on_scroll(
        &emb,
        &cos,
        ResolveOptions {
            extra_window: opts.extra_window,
            length_limit: None,
        },
    ) {
        Ok(r) => r,
        Err(e) => {
            run.record = fail(rec, Stage::Resolve, e.to_string(), &timer);
            run.model = Some(model);
            run.embedding = Some(emb);
            return run;
        }
    };
    timer.lap("resolve");

    rec.ranks = res.ranks();
    rec.splitting_types = res.steps.iter().map(|s| s.twists.clone()).collect();
    rec.balanced_flags = rec.splitting_types.iter().map(|t| is_balanced(t)).collect();
    rec.betti = betti_rows(&render_betti(&res));
    rec.checks.exactness = CheckOutcome::Pass;
    rec.checks.certified_bidegrees = res.certified_bidegrees;
    rec.checks.composition_zero = outcome(check_composition_zero(&res, &emb));
    rec.checks.minimal = CheckOutcome::from_bool(check_minimal(&res));
    rec.checks.rank_formulas = CheckOutcome::from_bool(rank_formulas(k, &rec.splitting_types));
    rec.checks.degree_sums = CheckOutcome::from_bool(degree_sums(g, k, &rec.splitting_types));
    rec.checks.duality = CheckOutcome::from_bool(check_duality(&res) && duality(g, k, &rec.splitting_types));
    rec.conjecture_checks = conjecture_outcomes(g, k, rec.bundles());
    timer.lap("checks");

    let failed = rec.checks.failures();
    if !failed.is_empty() {
        rec.status = Status::Failed {
            stage: Stage::Validate,
            reason: format!("failed checks: {}", failed.join(", ")),
        };
    }
    if timer.enabled {
        rec.timings = Some(timer.stages.clone());
    }
    run.record = rec;
    run.model = Some(model);
    run.embedding = Some(emb);
    run.resolution = Some(res);
    run
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::revalidate;

    #[test]
    fn invalid_spec_is_recorded() {
        let rec = run_pipeline(5, 5, 10007, 0, &PipelineOptions::default());
        assert!(matches!(rec.status, Status::Failed { stage: Stage::Spec, .. }));
    }

    #[test]
    fn genus_six_record_revalidates() {
        let rec = run_pipeline(6, 4, 10007, 3, &PipelineOptions::default());
        assert!(rec.status.is_success(), "{:?}", rec.status);
        assert_eq!(rec.ranks, vec![1, 2, 1]);
        assert!(revalidate(&rec).is_empty(), "{:?}", revalidate(&rec));
        let line = rec.to_json_line();
        let back: ExperimentRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back, rec);
    }
}
