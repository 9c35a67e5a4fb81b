//! The bigraded resolution of the curve over the Cox ring of its scroll.
//!
//! Step `i <= k-3` has generators in second degree `i+1`, the last step
//! `k-2` a single generator in second degree `k`. Each step is found by
//! scanning the kernel of the previous differential over a twist window at
//! its second degree; a generator of bidegree `(c, m)` has twist
//! `a = m e_1 - c`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, ResolutionError};
use crate::invariants::{beta_rank, bundle_degree, is_balanced, sorted_desc, twist_gap};
use crate::poly::MultiPoly;
use crate::scroll::{kernel_vanishes, scan_step, CurveOnScroll, ScrollEmbedding, ScrollType, StepFailure};
use crate::syzygy::{rank_at, Differential, ModuleMap};

/// Twists of the syzygy bundle `N_i`, descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplittingType {
    pub index: usize,
    pub twists: Vec<i64>,
}

impl SplittingType {
    pub fn new(index: usize, twists: &[i64]) -> Self {
        SplittingType {
            index,
            twists: sorted_desc(twists),
        }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn degree(&self) -> i64 {
        self.twists.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        is_balanced(&self.twists)
    }

    pub fn gap(&self) -> i64 {
        twist_gap(&self.twists)
    }

    /// Twists for the resolution over the scroll of `E (x) O(2)`: each shifted
    /// by `2(i + 1)`.
    pub fn casnati_ekedahl(&self) -> SplittingType {
        let shift = 2 * (self.index as i64 + 1);
        SplittingType {
            index: self.index,
            twists: self.twists.iter().map(|a| a + shift).collect(),
        }
    }

    /// `{a: multiplicity}` as `a^m` joined by spaces, descending.
    pub fn compact(&self) -> String {
        let mut counts: Vec<(i64, usize)> = Vec::new();
        for &a in &self.twists {
            match counts.last_mut() {
                Some((b, n)) if *b == a => *n += 1,
                _ => counts.push((a, 1)),
            }
        }
        counts
            .iter()
            .map(|(a, n)| if *n == 1 { format!("{a}") } else { format!("{a}^{n}") })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub struct ResolveOptions {
    /// Added on both sides of the default twist window of every step.
    pub extra_window: i64,
    /// Stop after this many steps (counting the curve's ideal as step 1).
    pub length_limit: Option<usize>,
}


#[derive(Debug, Clone)]
pub struct ResolutionResult {
    pub scroll: ScrollType,
    pub genus: usize,
    pub gonality: usize,
    /// Generator bidegrees of `F_0, F_1, ...`.
    pub modules: Vec<Vec<(i64, i64)>>,
    /// `d_1, d_2, ...`; `d_i : F_i -> F_{i-1}`.
    pub maps: Vec<ModuleMap>,
    pub steps: Vec<SplittingType>,
    /// Bidegrees at which `rank d_{i+1} = dim ker d_i` was certified.
    pub certified_bidegrees: usize,
}

impl ResolutionResult {
    pub fn is_complete(&self) -> bool {
        self.steps.len() + 2 == self.gonality
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(Vec::len).collect()
    }

    /// Twists of `N_1, ..., N_{k-3}` (the final step excluded).
    pub fn bundle_twists(&self) -> Vec<Vec<i64>> {
        self.steps
            .iter()
            .filter(|s| s.index + 2 < self.gonality)
            .map(|s| s.twists.clone())
            .collect()
    }
}

fn step_window(i: usize, f: i64, extra: i64) -> (i64, i64) {
    let i = i as i64;
    (-(i + 1) - extra, f - 2 + i + 1 + extra)
}

pub fn resolve_on_scroll(
    emb: &ScrollEmbedding,
    cos: &CurveOnScroll,
    opts: ResolveOptions,
) -> Result<ResolutionResult, Error> {
    let scroll = emb.cox.scroll.clone();
    let k = scroll.rank() + 1;
    let f = scroll.degree() as i64;
    let g = scroll.degree() + k - 1;
    let e1 = scroll.max_e() as i64;
    let ring = &emb.cox.ring;

    let d1 = ModuleMap {
        source: cos.bidegrees.clone(),
        target: vec![(0, 0)],
        columns: cos.generators.iter().map(|p| vec![p.clone()]).collect(),
    };
    let mut certified = 0;
    for &(c, dim) in &cos.kernel_dims {
        if rank_at(Differential::Module(&d1), ring, (c, cos.h_degree)) != dim {
            return Err(ResolutionError::Exactness { step: 1, d1: c, d2: cos.h_degree }.into());
        }
        certified += 1;
    }
    let mut res = ResolutionResult {
        scroll,
        genus: g,
        gonality: k,
        modules: vec![vec![(0, 0)], cos.bidegrees.clone()],
        maps: vec![d1],
        steps: vec![SplittingType::new(1, &cos.twists)],
        certified_bidegrees: 0,
    };
    let limit = opts.length_limit.unwrap_or(usize::MAX);
    let mut prev_m = cos.h_degree;
    for i in 2..=k.saturating_sub(2) {
        if res.steps.len() >= limit {
            break;
        }
        let last = i == k - 2;
        let m = if last { k as i64 } else { i as i64 + 1 };
        let expected = if last { 1 } else { beta_rank(k as u64, i as u64)? as usize };
        let window = step_window(i, f, opts.extra_window);
        let prev = res.maps.last().unwrap();
        let diff = Differential::Module(prev);
        for lower in prev_m..m {
            if !kernel_vanishes(emb, diff, lower, window) {
                let c = emb.c_range(lower, window.0, window.1).0;
                return Err(ResolutionError::Exactness { step: i, d1: c, d2: lower }.into());
            }
        }
        let found = scan_step(emb, diff, m, window, expected).map_err(|e| match e {
            StepFailure::Count(found) => ResolutionError::RankMismatch { step: i, found, expected },
            StepFailure::Window(a) => ResolutionError::WindowExhausted { step: i, degree: a },
        })?;
        let map = ModuleMap {
            source: found.bidegrees.clone(),
            target: res.modules[i - 1].clone(),
            columns: found.columns,
        };
        for &(c, dim) in &found.kernel_dims {
            if rank_at(Differential::Module(&map), ring, (c, m)) != dim {
                return Err(ResolutionError::Exactness { step: i, d1: c, d2: m }.into());
            }
            certified += 1;
        }
        let twists: Vec<i64> = found.bidegrees.iter().map(|&(c, d2)| d2 * e1 - c).collect();
        res.steps.push(SplittingType::new(i, &twists));
        res.modules.push(found.bidegrees);
        res.maps.push(map);
        prev_m = m;
    }
    res.certified_bidegrees = certified;
    Ok(res)
}

/// Checks ranks and degrees of every step against the closed formulas and
/// the final twist `f - 2`.
pub fn validate_splitting(res: &ResolutionResult) -> Result<(), ResolutionError> {
    let (g, k) = (res.genus as u64, res.gonality as u64);
    let f = res.scroll.degree() as i64;
    for s in &res.steps {
        let i = s.index as u64;
        if i + 2 == k {
            if s.twists != [f - 2] {
                return Err(ResolutionError::FormulaMismatch {
                    step: s.index,
                    found: s.twists.first().copied().unwrap_or(i64::MIN),
                    expected: f - 2,
                });
            }
            continue;
        }
        let beta = beta_rank(k, i).map_err(|_| ResolutionError::RankMismatch { step: s.index, found: s.rank(), expected: 0 })?;
        if s.rank() as u64 != beta {
            return Err(ResolutionError::RankMismatch { step: s.index, found: s.rank(), expected: beta as usize });
        }
        let deg = bundle_degree(g, k, i).map_err(|_| ResolutionError::FormulaMismatch { step: s.index, found: s.degree(), expected: 0 })?;
        if s.degree() != deg {
            return Err(ResolutionError::FormulaMismatch { step: s.index, found: s.degree(), expected: deg });
        }
    }
    Ok(())
}

/// `N_{k-2-i}` is the reflection `a -> f - 2 - a` of `N_i`, and the final
/// twist is `f - 2`. Only checked on complete resolutions.
pub fn check_duality(res: &ResolutionResult) -> bool {
    if !res.is_complete() {
        return false;
    }
    let f = res.scroll.degree() as i64;
    let k = res.gonality;
    let by_index: BTreeMap<usize, &SplittingType> = res.steps.iter().map(|s| (s.index, s)).collect();
    res.steps.iter().all(|s| {
        let dual = k - 2 - s.index;
        if dual == 0 {
            return s.twists == [f - 2];
        }
        let reflected = sorted_desc(&s.twists.iter().map(|a| f - 2 - a).collect::<Vec<_>>());
        by_index.get(&dual).is_some_and(|d| d.twists == reflected)
    })
}

/// `cox(d_1) = 0` and `d_i d_{i+1} = 0`, entrywise.
pub fn check_composition_zero(res: &ResolutionResult, emb: &ScrollEmbedding) -> Result<bool, Error> {
    for col in &res.maps[0].columns {
        if !emb.cox_parametrization.apply(&col[0])?.is_zero() {
            return Ok(false);
        }
    }
    for pair in res.maps.windows(2) {
        let (lower, upper) = (&pair[0], &pair[1]);
        for col in &upper.columns {
            for q in 0..lower.target.len() {
                let mut acc = MultiPoly::zero(&emb.cox.ring);
                for (l, entry) in col.iter().enumerate() {
                    if !entry.is_zero() {
                        acc = acc.checked_add(&entry.checked_mul(&lower.columns[l][q])?)?;
                    }
                }
                if !acc.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// No map entry is a nonzero constant.
pub fn check_minimal(res: &ResolutionResult) -> bool {
    res.maps
        .iter()
        .all(|m| m.columns.iter().flatten().all(|p| p.is_zero() || !p.is_constant()))
}

/// Betti numbers keyed by `(column, row)` with `row = d1 + d2 - column`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub columns: usize,
    pub cells: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn from_modules(modules: &[Vec<(i64, i64)>]) -> Self {
        let mut cells = BTreeMap::new();
        for (col, gens) in modules.iter().enumerate() {
            for &(a, b) in gens {
                *cells.entry((col, a + b - col as i64)).or_insert(0) += 1;
            }
        }
        BettiTable {
            columns: modules.len(),
            cells,
        }
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..self.columns)
            .map(|c| self.cells.iter().filter(|((col, _), _)| *col == c).map(|(_, n)| n).sum())
            .collect()
    }

    pub fn rows(&self) -> Vec<i64> {
        let mut rows: Vec<i64> = self.cells.keys().map(|&(_, r)| r).collect();
        rows.sort_unstable();
        rows.dedup();
        if rows.is_empty() {
            return rows;
        }
        (rows[0]..=rows[rows.len() - 1]).collect()
    }

    pub fn get(&self, col: usize, row: i64) -> usize {
        self.cells.get(&(col, row)).copied().unwrap_or(0)
    }

    /// Fixed-width text, `.` for zero entries.
    pub fn render(&self) -> String {
        let rows = self.rows();
        let totals = self.totals();
        let mut table: Vec<(String, Vec<String>)> = Vec::new();
        table.push((String::new(), (0..self.columns).map(|c| format!("{c}")).collect()));
        table.push(("total:".into(), totals.iter().map(|t| format!("{t}")).collect()));
        for &r in &rows {
            let cells = (0..self.columns)
                .map(|c| match self.get(c, r) {
                    0 => ".".into(),
                    n => format!("{n}"),
                })
                .collect();
            table.push((format!("{r}:"), cells));
        }
        let label_w = table.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.columns)
            .map(|c| table.iter().map(|(_, cells)| cells[c].len()).max().unwrap_or(1))
            .collect();
        let mut out = String::new();
        for (label, cells) in &table {
            let mut line = format!("{label:>label_w$}");
            for (cell, w) in cells.iter().zip(&widths) {
                line.push(' ');
                line.push_str(&format!("{cell:>w$}"));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

pub fn render_betti(res: &ResolutionResult) -> BettiTable {
    BettiTable::from_modules(&res.modules)
}
