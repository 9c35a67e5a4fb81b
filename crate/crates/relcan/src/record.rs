//! The JSONL experiment record.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use relcan_core::relres::BettiTable;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = concat!("relcan/", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckOutcome {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "n.a.")]
    NotApplicable,
}

impl CheckOutcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail
        }
    }

    pub fn is_fail(self) -> bool {
        self == CheckOutcome::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Stage {
    Spec,
    Construct,
    Embed,
    CurveOnScroll,
    Resolve,
    Validate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "camelCase")]
pub enum Status {
    Ok,
    /// Construction succeeded after this many failed draws.
    Retried { retries: usize },
    Failed { stage: Stage, reason: String },
}

impl Status {
    pub fn is_success(&self) -> bool {
        !matches!(self, Status::Failed { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hilbert {
    pub dim: i64,
    pub degree: i64,
    pub genus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiRow {
    pub row: i64,
    pub entries: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StructuralChecks {
    pub hilbert: CheckOutcome,
    pub scroll_kernel: CheckOutcome,
    pub factorization: CheckOutcome,
    pub preimage: CheckOutcome,
    pub composition_zero: CheckOutcome,
    pub exactness: CheckOutcome,
    pub certified_bidegrees: usize,
    pub minimal: CheckOutcome,
    pub rank_formulas: CheckOutcome,
    pub degree_sums: CheckOutcome,
    pub duality: CheckOutcome,
}

impl Default for StructuralChecks {
    fn default() -> Self {
        let na = CheckOutcome::NotApplicable;
        StructuralChecks {
            hilbert: na,
            scroll_kernel: na,
            factorization: na,
            preimage: na,
            composition_zero: na,
            exactness: na,
            certified_bidegrees: 0,
            minimal: na,
            rank_formulas: na,
            degree_sums: na,
            duality: na,
        }
    }
}

impl StructuralChecks {
    /// Names of the checks that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            ("hilbert", self.hilbert),
            ("scrollKernel", self.scroll_kernel),
            ("factorization", self.factorization),
            ("preimage", self.preimage),
            ("compositionZero", self.composition_zero),
            ("exactness", self.exactness),
            ("minimal", self.minimal),
            ("rankFormulas", self.rank_formulas),
            ("degreeSums", self.degree_sums),
            ("duality", self.duality),
        ]
        .into_iter()
        .filter(|(_, o)| o.is_fail())
        .map(|(n, _)| n)
        .collect()
    }
}

/// One trial. Field order is the serialization order, so records with the
/// same inputs and tool version serialize to the same bytes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentRecord {
    pub schema_version: u32,
    pub tool_version: String,
    pub g: u64,
    pub k: u64,
    pub p: u64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    pub status: Status,
    pub scroll_type: Vec<u64>,
    pub hilbert: Option<Hilbert>,
    pub quadric_count: usize,
    pub cubic_count: usize,
    /// Ranks of `F_0, ..., F_{k-2}`.
    pub ranks: Vec<usize>,
    /// Twists of `N_1, ..., N_{k-3}` followed by the final line bundle, descending.
    pub splitting_types: Vec<Vec<i64>>,
    pub balanced_flags: Vec<bool>,
    pub betti: Vec<BettiRow>,
    pub checks: StructuralChecks,
    pub conjecture_checks: BTreeMap<String, CheckOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u64>>,
}

impl ExperimentRecord {
    pub fn empty(g: u64, k: u64, p: u64, seed: u64) -> Self {
        ExperimentRecord {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            g,
            k,
            p,
            seed,
            trial: None,
            status: Status::Ok,
            scroll_type: Vec::new(),
            hilbert: None,
            quadric_count: 0,
            cubic_count: 0,
            ranks: Vec::new(),
            splitting_types: Vec::new(),
            balanced_flags: Vec::new(),
            betti: Vec::new(),
            checks: StructuralChecks::default(),
            conjecture_checks: BTreeMap::new(),
            timings: None,
        }
    }

    /// Sort key of the batch writer.
    pub fn key(&self) -> (u64, u64, u64, u64, u64) {
        (self.g, self.k, self.p, self.trial.unwrap_or(0), self.seed)
    }

    /// `N_1, ..., N_{k-3}`, without the final line bundle.
    pub fn bundles(&self) -> &[Vec<i64>] {
        let n = self.splitting_types.len().min((self.k as usize).saturating_sub(3));
        &self.splitting_types[..n]
    }

    pub fn totally_balanced(&self) -> bool {
        self.bundles().iter().all(|t| relcan_core::invariants::is_balanced(t))
    }

    pub fn betti_table(&self) -> BettiTable {
        betti_from_rows(self.ranks.len(), &self.betti)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

pub fn betti_rows(table: &BettiTable) -> Vec<BettiRow> {
    table
        .rows()
        .into_iter()
        .map(|row| BettiRow {
            row,
            entries: (0..table.columns).map(|c| table.get(c, row)).collect(),
        })
        .collect()
}

pub fn betti_from_rows(columns: usize, rows: &[BettiRow]) -> BettiTable {
    let mut cells = BTreeMap::new();
    for r in rows {
        for (c, &n) in r.entries.iter().enumerate() {
            if n != 0 {
                cells.insert((c, r.row), n);
            }
        }
    }
    BettiTable { columns, cells }
}

pub fn write_jsonl(path: &Path, records: &[ExperimentRecord]) -> Result<(), HarnessError> {
    let file = File::create(path).map_err(|e| HarnessError::io(path, e))?;
    let mut out = BufWriter::new(file);
    for r in records {
        writeln!(out, "{}", r.to_json_line()).map_err(|e| HarnessError::io(path, e))?;
    }
    out.flush().map_err(|e| HarnessError::io(path, e))
}

/// Parses every non-blank line; a malformed line is an error carrying its
/// line number.
pub fn read_jsonl(path: &Path) -> Result<Vec<ExperimentRecord>, HarnessError> {
    let file = File::open(path).map_err(|e| HarnessError::io(path, e))?;
    let mut records = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| HarnessError::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: ExperimentRecord = serde_json::from_str(&line).map_err(|e| HarnessError::Parse {
            path: path.to_path_buf(),
            line: n + 1,
            message: e.to_string(),
        })?;
        records.push(rec);
    }
    Ok(records)
}
