//! Acceptance criteria 1-6. Prints one PASS/FAIL line per criterion and fails
//! if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use relcan::batch::{run_grid, trial_seed, GridConfig, IntRange};
use relcan::check::revalidate;
use relcan::pipeline::{run_pipeline, run_pipeline_full, PipelineOptions};
use relcan::record::CheckOutcome;
use relcan_core::curvegen::{canonical_ring, construct_with_retries, CurveSpec, DEFAULT_ATTEMPTS};
use relcan_core::field::PrimeField;
use relcan_core::groebner::{macaulay_normal_form, IdealGB};
use relcan_core::invariants::{
    a_coefficient, beta_rank, beta_rank_alt, bundle_degree, check_a_coefficient_identity, conjectured_mu_splitting,
    g_minus_k2_prediction, is_balanced, sorted_desc, Rational,
};
use relcan_core::poly::{monomial_basis, MultiPoly, Ring};
use relcan_core::rng::FieldRng;

const PRIME: u64 = 10007;
const GOLDEN_SEED: u64 = 2024;
const GOLDEN_BUDGET: Duration = Duration::from_secs(120);
const FORMULA_BUDGET: Duration = Duration::from_secs(1);
const STRUCTURAL_BUDGET: Duration = Duration::from_secs(15 * 60);
const STRUCTURAL_MIN_SEEDS: usize = 20;
const ORACLE_POLYNOMIALS: usize = 100;
const SPOT_CHECK_SEEDS: u64 = 40;
const SPOT_CHECK_MIN_FRACTION: f64 = 0.95;
const MASTER_SEED: u64 = 20240;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn multiset(spec: &[(i64, usize)]) -> Vec<i64> {
    sorted_desc(&spec.iter().flat_map(|&(a, n)| std::iter::repeat_n(a, n)).collect::<Vec<_>>())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let opts = PipelineOptions {
        groebner_checks: true,
        ..Default::default()
    };
    let run = run_pipeline_full(9, 6, PRIME, GOLDEN_SEED, &opts, false);
    let rec = &run.record;
    ensure(rec.status.is_success(), format!("pipeline failed: {:?}", rec.status))?;
    let h = rec.hilbert.ok_or("no Hilbert data")?;
    ensure((h.dim, h.degree, h.genus) == (1, 16, 9), format!("Hilbert data {h:?}"))?;
    ensure(rec.quadric_count == 21 && rec.cubic_count == 0, format!("{} quadrics, {} cubics", rec.quadric_count, rec.cubic_count))?;
    let model = run.model.as_ref().ok_or("no model")?;
    let matrix = model.adapted().scroll_matrix();
    ensure(matrix == [vec![0, 2, 4, 6], vec![1, 3, 5, 7]], format!("scroll matrix {matrix:?}"))?;
    ensure(rec.checks.scroll_kernel == CheckOutcome::Pass, "2x2 minors differ from the kernel")?;
    ensure(rec.checks.factorization == CheckOutcome::Pass, "parametrization does not factor")?;
    ensure(rec.checks.preimage == CheckOutcome::Pass, "preimage of J differs from the canonical ideal")?;
    let elapsed = start.elapsed();
    ensure(elapsed < GOLDEN_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("hilbert (1,16,9), 21 quadrics, block scroll matrix, minors = kernel, preimage = I_C in {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let rec = run_pipeline(9, 6, PRIME, GOLDEN_SEED, &PipelineOptions::default());
    ensure(rec.status.is_success(), format!("pipeline failed: {:?}", rec.status))?;
    ensure(rec.ranks == [1, 9, 16, 9, 1], format!("ranks {:?}", rec.ranks))?;
    let s = &rec.splitting_types;
    ensure(s.len() == 4, format!("{} steps", s.len()))?;
    ensure(s[0] == multiset(&[(1, 6), (0, 3)]), format!("N_1 = {:?}", s[0]))?;
    ensure(s[1] == multiset(&[(2, 2), (1, 12), (0, 2)]), format!("N_2 = {:?}", s[1]))?;
    ensure(!is_balanced(&s[1]), "N_2 is balanced")?;
    let reflected = sorted_desc(&s[0].iter().map(|a| 2 - a).collect::<Vec<_>>());
    ensure(s[2] == reflected, format!("N_3 = {:?} is not the reflection of N_1", s[2]))?;
    ensure(s[3] == [2], format!("final twist {:?}", s[3]))?;
    Ok("ranks 1 9 16 9 1; N_1 = 1^6 0^3, N_2 = 2^2 1^12 0^2 unbalanced, N_3 = reflection, final 2".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for k in 4..=20u64 {
        for i in 1..=k - 3 {
            let (a, b) = (beta_rank(k, i).map_err(|e| e.to_string())?, beta_rank_alt(k, i).map_err(|e| e.to_string())?);
            ensure(a == b, format!("beta forms differ at k={k}, i={i}: {a} vs {b}"))?;
            count += 1;
        }
        ensure(check_a_coefficient_identity(k), format!("A_i identity fails at k={k}"))?;
    }
    let quarter = Rational::new(1.into(), 4.into());
    let eight_ninths = Rational::new(8.into(), 9.into());
    ensure(a_coefficient(6, 1).map_err(|e| e.to_string())? == quarter, "A_1 != 1/4 at k=6")?;
    ensure(a_coefficient(6, 2).map_err(|e| e.to_string())? == eight_ninths, "A_2 != 8/9 at k=6")?;
    for n in 1..=4u64 {
        for k in 4..=12u64 {
            let g = n * k + 1;
            for j in 1..=k - 3 {
                let tw = conjectured_mu_splitting(g, k, j).map_err(|e| e.to_string())?;
                let deg = bundle_degree(g, k, j).map_err(|e| e.to_string())?;
                ensure(tw.iter().sum::<i64>() == deg, format!("mu splitting degree at n={n}, k={k}, j={j}"))?;
            }
        }
    }
    for g in 6..=12u64 {
        let pred = g_minus_k2_prediction(g).map_err(|e| e.to_string())?;
        for (idx, tw) in pred.iter().enumerate() {
            let beta = beta_rank(g - 2, idx as u64 + 1).map_err(|e| e.to_string())?;
            ensure(tw.len() as u64 == beta, format!("g-k=2 prediction rank at g={g}, i={}", idx + 1))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < FORMULA_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("{count} beta pairs, A_i identity k=4..20, mu degrees n<=4 k<=12, g-k=2 ranks g=6..12 in {elapsed:.2?}"))
}

fn random_homogeneous(ring: &Ring, d: i64, rng: &mut FieldRng) -> MultiPoly {
    let field = ring.field();
    let mut terms = Vec::new();
    for m in monomial_basis(ring, (d, 0)) {
        if rng.below(3) == 0 {
            terms.push((m, rng.nonzero(field)));
        }
    }
    MultiPoly::from_terms(ring, terms)
}

fn random_poly_up_to_cubic(ring: &Ring, rng: &mut FieldRng) -> MultiPoly {
    let mut f = MultiPoly::constant(ring, rng.element(ring.field()));
    for d in 1..=3 {
        f = &f + &random_homogeneous(ring, d, rng);
    }
    f
}

fn normal_form_oracle() -> Result<usize, String> {
    let spec = CurveSpec::new(7, 4, PRIME, 5).map_err(|e| e.to_string())?;
    let (model, _) = construct_with_retries(&spec, DEFAULT_ATTEMPTS).map_err(|e| e.to_string())?;
    let field = PrimeField::new(PRIME).map_err(|e| e.to_string())?;
    let small = canonical_ring(5, field);
    let mut rng = FieldRng::from_seed(11);
    let ci: Vec<MultiPoly> = (0..3).map(|_| random_homogeneous(&small, 2, &mut rng)).collect();
    let cases = [(model.canonical.ring.clone(), model.canonical.quadrics.clone()), (small, ci)];
    let mut nonzero = 0;
    for (idx, (ring, gens)) in cases.iter().enumerate() {
        let ideal = IdealGB::new(ring, gens.clone()).map_err(|e| e.to_string())?;
        for n in 0..ORACLE_POLYNOMIALS / cases.len() {
            let f = random_poly_up_to_cubic(ring, &mut rng);
            let gb = ideal.normal_form(&f).map_err(|e| e.to_string())?;
            let lin = macaulay_normal_form(ring, gens, &f).map_err(|e| e.to_string())?;
            ensure(gb == lin, format!("normal forms differ (ideal {idx}, polynomial {n})"))?;
            nonzero += usize::from(!gb.is_zero());
        }
    }
    Ok(nonzero)
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let cfg = GridConfig {
        genus_range: IntRange::Span { min: 4, max: 10 },
        gonality_range: IntRange::Span { min: 3, max: 6 },
        primes: IntRange::List(vec![PRIME]),
        trials_per_cell: 2,
        master_seed: MASTER_SEED,
        twist_window_override: None,
        threads: None,
        max_gonality: 6,
        attempts: DEFAULT_ATTEMPTS,
        groebner_checks: false,
        record_timings: false,
    };
    let records = run_grid(&cfg, None).map_err(|e| e.to_string())?;
    let ok: Vec<_> = records.iter().filter(|r| r.status.is_success()).collect();
    ensure(ok.len() >= STRUCTURAL_MIN_SEEDS, format!("only {} ok records", ok.len()))?;
    for r in &ok {
        let tag = format!("g={} k={} seed={}", r.g, r.k, r.seed);
        let c = &r.checks;
        ensure(c.composition_zero == CheckOutcome::Pass, format!("{tag}: composition"))?;
        ensure(c.exactness == CheckOutcome::Pass && c.certified_bidegrees > 0, format!("{tag}: exactness"))?;
        ensure(c.duality == CheckOutcome::Pass, format!("{tag}: duality"))?;
        ensure(c.degree_sums == CheckOutcome::Pass, format!("{tag}: degree sums"))?;
        ensure(c.rank_formulas == CheckOutcome::Pass, format!("{tag}: ranks"))?;
        let problems = revalidate(r);
        ensure(problems.is_empty(), format!("{tag}: {problems:?}"))?;
    }
    let nonzero = normal_form_oracle()?;
    let elapsed = start.elapsed();
    ensure(elapsed < STRUCTURAL_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} of {} records ok and certified; {ORACLE_POLYNOMIALS} normal forms agree ({nonzero} nonzero) in {elapsed:.2?}",
        ok.len(),
        records.len()
    ))
}

fn spot_check(g: u64, k: u64, pred: impl Fn(&relcan::ExperimentRecord) -> bool) -> Result<(usize, Vec<u64>), String> {
    let mut hits = 0;
    let mut misses = Vec::new();
    for trial in 0..SPOT_CHECK_SEEDS {
        let seed = trial_seed(MASTER_SEED, g, k, PRIME, trial);
        let rec = run_pipeline(g, k, PRIME, seed, &PipelineOptions::default());
        if rec.status.is_success() && pred(&rec) {
            hits += 1;
        } else {
            misses.push(seed);
        }
    }
    Ok((hits, misses))
}

fn criterion_5() -> Outcome {
    let need = (SPOT_CHECK_MIN_FRACTION * SPOT_CHECK_SEEDS as f64).ceil() as usize;
    let (tb, tb_miss) = spot_check(9, 4, |r| r.totally_balanced())?;
    let (n1, n1_miss) = spot_check(10, 5, |r| r.bundles().first().is_some_and(|t| is_balanced(t)))?;
    for seed in tb_miss.iter().chain(&n1_miss) {
        println!("  re-examine seed {seed}");
    }
    ensure(tb >= need, format!("(9,4) totally balanced in {tb}/{SPOT_CHECK_SEEDS}"))?;
    ensure(n1 >= need, format!("(10,5) N_1 balanced in {n1}/{SPOT_CHECK_SEEDS}"))?;
    Ok(format!("(9,4) totally balanced {tb}/{SPOT_CHECK_SEEDS}; (10,5) N_1 balanced {n1}/{SPOT_CHECK_SEEDS}"))
}

fn criterion_6() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("grid.toml");
    std::fs::write(
        &cfg,
        "genusRange = [7, 8]\ngonalityRange = [4, 5, 6]\ntrialsPerCell = 3\nmasterSeed = 99\n",
    )
    .map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_relcan");
    let mut outputs = Vec::new();
    for (name, threads) in [("a.jsonl", "1"), ("b.jsonl", "3")] {
        let out = dir.path().join(name);
        let status = Command::new(bin)
            .args(["batch", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .args(["--threads", threads])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), format!("batch exited with {:?}", status.status.code()))?;
        outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], "reruns differ")?;
    let lines = outputs[0].iter().filter(|&&b| b == b'\n').count();
    ensure(lines == 18, format!("{lines} records, expected 18"))?;
    let check = Command::new(bin)
        .args(["check", "--in"])
        .arg(dir.path().join("a.jsonl"))
        .output()
        .map_err(|e| e.to_string())?;
    ensure(check.status.code() == Some(0), format!("check exited with {:?}", check.status.code()))?;
    Ok(format!("two runs (1 and 3 threads) byte-identical over {lines} records; check exits 0"))
}

#[test]
fn acceptance() {
    let criteria: [(u32, fn() -> Outcome); 6] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
    ];
    let mut failed = Vec::new();
    for (n, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {n}: PASS - {detail}"),
            Err(why) => {
                println!("criterion {n}: FAIL - {why}");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
