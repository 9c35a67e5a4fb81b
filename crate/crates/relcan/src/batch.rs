//! Seeded experiment grids run in parallel and written as sorted JSONL.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use relcan_core::curvegen::DEFAULT_ATTEMPTS;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::HarnessError;
use crate::pipeline::{run_pipeline, PipelineOptions};
use crate::record::{write_jsonl, ExperimentRecord, Status};

/// Domain tag prepended to the seed hash input.
pub const SEED_DOMAIN: &[u8] = b"relcan-trial-seed/v1";

/// Either an explicit list or an inclusive `{ min, max }` span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntRange {
    List(Vec<u64>),
    Span { min: u64, max: u64 },
}

impl IntRange {
    pub fn values(&self) -> Vec<u64> {
        let mut v = match self {
            IntRange::List(v) => v.clone(),
            IntRange::Span { min, max } => (*min..=*max).collect(),
        };
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn default_primes() -> IntRange {
    IntRange::List(vec![10007])
}

fn default_max_gonality() -> u64 {
    14
}

fn default_attempts() -> usize {
    DEFAULT_ATTEMPTS
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GridConfig {
    pub genus_range: IntRange,
    pub gonality_range: IntRange,
    /// A span keeps only its primes.
    #[serde(default = "default_primes")]
    pub primes: IntRange,
    pub trials_per_cell: u64,
    #[serde(default)]
    pub master_seed: u64,
    /// Extra twists on both sides of every resolution window.
    #[serde(default)]
    pub twist_window_override: Option<i64>,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default = "default_max_gonality")]
    pub max_gonality: u64,
    #[serde(default = "default_attempts")]
    pub attempts: usize,
    #[serde(default)]
    pub groebner_checks: bool,
    #[serde(default)]
    pub record_timings: bool,
}

impl GridConfig {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        let is_toml = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("toml"));
        let parsed = if is_toml {
            toml::from_str(&text).map_err(|e| e.to_string())
        } else {
            serde_json::from_str(&text).map_err(|e| e.to_string())
        };
        let cfg: GridConfig = parsed.map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials_per_cell == 0 {
            return Err(HarnessError::Config("trialsPerCell must be positive".into()));
        }
        if self.primes().is_empty() {
            return Err(HarnessError::Config("no primes in the configured range".into()));
        }
        if self.threads == Some(0) {
            return Err(HarnessError::Config("threads must be positive".into()));
        }
        Ok(())
    }

    pub fn primes(&self) -> Vec<u64> {
        match &self.primes {
            IntRange::List(_) => self.primes.values(),
            IntRange::Span { .. } => self.primes.values().into_iter().filter(|&p| is_prime(p)).collect(),
        }
    }

    /// `(g, k, p)` cells with `3 <= k <= min(g - 1, maxGonality)`.
    pub fn cells(&self) -> Vec<(u64, u64, u64)> {
        let primes = self.primes();
        let mut out = Vec::new();
        for g in self.genus_range.values() {
            for k in self.gonality_range.values() {
                if k < 3 || k + 1 > g || k > self.max_gonality {
                    continue;
                }
                for &p in &primes {
                    out.push((g, k, p));
                }
            }
        }
        out
    }

    pub fn trials(&self) -> Vec<Trial> {
        let mut out = Vec::new();
        for (g, k, p) in self.cells() {
            for trial in 0..self.trials_per_cell {
                out.push(Trial {
                    g,
                    k,
                    p,
                    trial,
                    seed: trial_seed(self.master_seed, g, k, p, trial),
                });
            }
        }
        out
    }

    pub fn pipeline_options(&self) -> PipelineOptions {
        PipelineOptions {
            attempts: self.attempts,
            extra_window: self.twist_window_override.unwrap_or(0),
            groebner_checks: self.groebner_checks,
            record_timings: self.record_timings,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trial {
    pub g: u64,
    pub k: u64,
    pub p: u64,
    pub trial: u64,
    pub seed: u64,
}

/// First eight bytes, little-endian, of SHA-256 over the domain tag followed
/// by `masterSeed, g, k, p, trialIndex` as little-endian `u64`s.
pub fn trial_seed(master: u64, g: u64, k: u64, p: u64, trial: u64) -> u64 {
    let mut h = Sha256::new();
    h.update(SEED_DOMAIN);
    for x in [master, g, k, p, trial] {
        h.update(x.to_le_bytes());
    }
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CellSummary {
    pub trials: usize,
    pub ok: usize,
    pub retried: usize,
    pub failed: usize,
    pub totally_balanced: usize,
    pub unbalanced: usize,
    pub n1_balanced: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub cells: BTreeMap<String, CellSummary>,
}

impl BatchSummary {
    pub fn from_records(records: &[ExperimentRecord]) -> Self {
        let mut cells: BTreeMap<(u64, u64, u64), CellSummary> = BTreeMap::new();
        for r in records {
            let c = cells.entry((r.g, r.k, r.p)).or_default();
            c.trials += 1;
            match r.status {
                Status::Ok => c.ok += 1,
                Status::Retried { .. } => c.retried += 1,
                Status::Failed { .. } => c.failed += 1,
            }
            if r.status.is_success() {
                if r.totally_balanced() {
                    c.totally_balanced += 1;
                } else {
                    c.unbalanced += 1;
                }
                if r.bundles().first().is_some_and(|t| relcan_core::invariants::is_balanced(t)) {
                    c.n1_balanced += 1;
                }
            }
        }
        BatchSummary {
            cells: cells
                .into_iter()
                .map(|((g, k, p), c)| (format!("g={g:02} k={k:02} p={p}"), c))
                .collect(),
        }
    }

    pub fn total_failed(&self) -> usize {
        self.cells.values().map(|c| c.failed).sum()
    }

    pub fn render(&self) -> String {
        let mut out = String::from("cell                   trials ok retried failed balanced unbalanced rate\n");
        for (name, c) in &self.cells {
            let done = c.ok + c.retried;
            let rate = if done == 0 { 0.0 } else { c.unbalanced as f64 / done as f64 };
            out.push_str(&format!(
                "{name:<22} {:>6} {:>2} {:>7} {:>6} {:>8} {:>10} {rate:.4}\n",
                c.trials, c.ok, c.retried, c.failed, c.totally_balanced, c.unbalanced
            ));
        }
        out
    }
}

/// Runs every trial, sorted by `(g, k, p, trial)`, on `threads` workers.
pub fn run_grid(cfg: &GridConfig, threads: Option<usize>) -> Result<Vec<ExperimentRecord>, HarnessError> {
    cfg.validate()?;
    let opts = cfg.pipeline_options();
    let trials = cfg.trials();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads.or(cfg.threads) {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| HarnessError::Config(e.to_string()))?;
    let mut records: Vec<ExperimentRecord> = pool.install(|| {
        trials
            .par_iter()
            .map(|t| {
                let mut rec = run_pipeline(t.g, t.k, t.p, t.seed, &opts);
                rec.trial = Some(t.trial);
                rec
            })
            .collect()
    });
    records.sort_by_key(ExperimentRecord::key);
    Ok(records)
}

pub fn run_batch(cfg: &GridConfig, out: &Path, threads: Option<usize>) -> Result<BatchSummary, HarnessError> {
    let records = run_grid(cfg, threads)?;
    write_jsonl(out, &records)?;
    Ok(BatchSummary::from_records(&records))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> GridConfig {
        toml::from_str(text).unwrap()
    }

    #[test]
    fn grid_cardinality() {
        let c = cfg("genusRange = [8, 9]\ngonalityRange = [4, 5, 6]\ntrialsPerCell = 3\n");
        assert_eq!(c.trials().len(), 18);
    }

    #[test]
    fn gonality_cap_and_spans() {
        let c = cfg("genusRange = { min = 4, max = 6 }\ngonalityRange = { min = 2, max = 9 }\ntrialsPerCell = 1\nprimes = { min = 100, max = 130 }\n");
        assert_eq!(c.primes(), vec![101, 103, 107, 109, 113, 127]);
        let cells: Vec<(u64, u64)> = c.cells().into_iter().map(|(g, k, _)| (g, k)).collect();
        assert!(cells.iter().all(|&(g, k)| 3 <= k && k < g));
        assert_eq!(cells.len(), (1 + 2 + 3) * 6);
    }

    #[test]
    fn seeds_are_stable_and_distinct() {
        let a = trial_seed(0, 9, 6, 10007, 0);
        assert_eq!(a, trial_seed(0, 9, 6, 10007, 0));
        assert_ne!(a, trial_seed(0, 9, 6, 10007, 1));
        assert_ne!(a, trial_seed(1, 9, 6, 10007, 0));
        assert_ne!(a, trial_seed(0, 9, 5, 10007, 0));
    }

    #[test]
    fn json_config() {
        let c: GridConfig = serde_json::from_str(r#"{"genusRange":[6],"gonalityRange":[4],"trialsPerCell":2,"threads":2}"#).unwrap();
        assert_eq!(c.threads, Some(2));
        assert_eq!(c.primes(), vec![10007]);
        assert!(serde_json::from_str::<GridConfig>(r#"{"genusRange":[6],"gonalityRange":[4],"trialsPerCell":2,"bogus":1}"#).is_err());
    }
}
