//! Most-frequent Betti table per `(g, k)`, exported as Markdown or CSV.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use relcan_core::relres::BettiTable;

use crate::error::HarnessError;
use crate::record::{betti_from_rows, ExperimentRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Markdown => "md",
            Format::Csv => "csv",
        }
    }
}

type TableKey = (usize, Vec<(i64, Vec<usize>)>);

fn key(r: &ExperimentRecord) -> TableKey {
    (r.ranks.len(), r.betti.iter().map(|b| (b.row, b.entries.clone())).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellTable {
    pub g: u64,
    pub k: u64,
    pub table: BettiTable,
    pub trials: usize,
    pub majority: usize,
    /// Distinct tables observed, the majority one included.
    pub variants: usize,
}

/// Groups successful records by `(g, k)` and picks the most frequent table;
/// ties go to the smallest table in the derived order.
pub fn majority_tables(records: &[ExperimentRecord]) -> Vec<CellTable> {
    let mut groups: BTreeMap<(u64, u64), BTreeMap<TableKey, usize>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.status.is_success()) {
        *groups.entry((r.g, r.k)).or_default().entry(key(r)).or_default() += 1;
    }
    groups
        .into_iter()
        .map(|((g, k), counts)| {
            let trials = counts.values().sum();
            let variants = counts.len();
            let ((columns, rows), majority) = counts
                .into_iter()
                .fold(None::<(TableKey, usize)>, |best, (t, n)| match best {
                    Some((bt, bn)) if bn >= n => Some((bt, bn)),
                    _ => Some((t, n)),
                })
                .expect("group is nonempty");
            let rows: Vec<crate::record::BettiRow> = rows
                .into_iter()
                .map(|(row, entries)| crate::record::BettiRow { row, entries })
                .collect();
            CellTable {
                g,
                k,
                table: betti_from_rows(columns, &rows),
                trials,
                majority,
                variants,
            }
        })
        .collect()
}

pub fn render_markdown(cell: &CellTable) -> String {
    let t = &cell.table;
    let mut out = format!(
        "# Betti table g = {}, k = {}\n\n{} of {} successful trials; {} distinct table(s).\n\n|  |",
        cell.g, cell.k, cell.majority, cell.trials, cell.variants
    );
    for c in 0..t.columns {
        out.push_str(&format!(" {c} |"));
    }
    out.push_str("\n|---|");
    out.push_str(&"---:|".repeat(t.columns));
    out.push_str("\n| total |");
    for n in t.totals() {
        out.push_str(&format!(" {n} |"));
    }
    out.push('\n');
    for r in t.rows() {
        out.push_str(&format!("| {r} |"));
        for c in 0..t.columns {
            match t.get(c, r) {
                0 => out.push_str(" . |"),
                n => out.push_str(&format!(" {n} |")),
            }
        }
        out.push('\n');
    }
    out.push_str("\n```\n");
    out.push_str(&t.render());
    out.push_str("```\n");
    out
}

/// Header `row,0,1,...`, one line per row, then a `total` line.
pub fn render_csv(table: &BettiTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["row".to_string()];
    header.extend((0..table.columns).map(|c| c.to_string()));
    w.write_record(&header).expect("in-memory write");
    for r in table.rows() {
        let mut line = vec![r.to_string()];
        line.extend((0..table.columns).map(|c| table.get(c, r).to_string()));
        w.write_record(&line).expect("in-memory write");
    }
    let mut total = vec!["total".to_string()];
    total.extend(table.totals().iter().map(|n| n.to_string()));
    w.write_record(&total).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
}

pub fn parse_csv(text: &str) -> Result<BettiTable, String> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let columns = rdr.headers().map_err(|e| e.to_string())?.len().saturating_sub(1);
    let mut cells = BTreeMap::new();
    let mut totals = None;
    for rec in rdr.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        let values: Vec<usize> = rec
            .iter()
            .skip(1)
            .map(|s| s.parse().map_err(|_| format!("bad entry {s:?}")))
            .collect::<Result<_, _>>()?;
        if &rec[0] == "total" {
            totals = Some(values);
            continue;
        }
        let row: i64 = rec[0].parse().map_err(|_| format!("bad row label {:?}", &rec[0]))?;
        for (c, n) in values.into_iter().enumerate() {
            if n != 0 {
                cells.insert((c, row), n);
            }
        }
    }
    let table = BettiTable { columns, cells };
    match totals {
        Some(t) if t == table.totals() => Ok(table),
        Some(_) => Err("total line disagrees with the entries".into()),
        None => Err("missing total line".into()),
    }
}

/// Writes one file per `(g, k)` plus an index; returns the written paths.
pub fn export(records: &[ExperimentRecord], format: Format, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let cells = majority_tables(records);
    let mut written = Vec::new();
    let mut index = match format {
        Format::Markdown => String::from("| g | k | trials | majority | variants | totals |\n|---:|---:|---:|---:|---:|---|\n"),
        Format::Csv => String::from("g,k,trials,majority,variants,totals\n"),
    };
    for cell in &cells {
        let name = format!("betti_g{:02}_k{:02}.{}", cell.g, cell.k, format.extension());
        let path = dir.join(&name);
        let body = match format {
            Format::Markdown => render_markdown(cell),
            Format::Csv => render_csv(&cell.table),
        };
        std::fs::write(&path, body).map_err(|e| HarnessError::io(&path, e))?;
        written.push(path);
        let totals = cell.table.totals().iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ");
        index.push_str(&match format {
            Format::Markdown => format!(
                "| {} | {} | {} | {} | {} | {totals} |\n",
                cell.g, cell.k, cell.trials, cell.majority, cell.variants
            ),
            Format::Csv => format!("{},{},{},{},{},{totals}\n", cell.g, cell.k, cell.trials, cell.majority, cell.variants),
        });
    }
    let path = dir.join(format!("index.{}", format.extension()));
    std::fs::write(&path, index).map_err(|e| HarnessError::io(&path, e))?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::BettiRow;

    fn rec(rows: Vec<(i64, Vec<usize>)>) -> ExperimentRecord {
        let mut r = ExperimentRecord::empty(9, 6, 10007, 0);
        r.ranks = vec![0; rows[0].1.len()];
        r.betti = rows.into_iter().map(|(row, entries)| BettiRow { row, entries }).collect();
        r
    }

    #[test]
    fn majority_with_variant_count() {
        let a = rec(vec![(0, vec![1, 0]), (1, vec![0, 2])]);
        let b = rec(vec![(0, vec![1, 1]), (1, vec![0, 1])]);
        let cells = majority_tables(&[a.clone(), b, a]);
        assert_eq!(cells.len(), 1);
        assert_eq!((cells[0].trials, cells[0].majority, cells[0].variants), (3, 2, 2));
        assert_eq!(cells[0].table.totals(), vec![1, 2]);
    }

    #[test]
    fn csv_round_trip() {
        let r = rec(vec![(0, vec![1, 0, 0]), (1, vec![0, 3, 0]), (2, vec![0, 0, 5])]);
        let t = r.betti_table();
        assert_eq!(parse_csv(&render_csv(&t)).unwrap(), t);
    }
}
