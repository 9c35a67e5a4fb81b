use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::Monomial;
use crate::field::PrimeField;

/// Monomial orders. All compare the weighted degree first (weights are the
/// ring's positive `weights`), except `Lex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted degree, then reverse lexicographic.
    GRevLex,
    /// Pure lexicographic, `x_0 > x_1 > ...`.
    Lex,
    /// Weighted degree, then weighted degree in the first `block` variables,
    /// then reverse lexicographic. For ideals homogeneous w.r.t. the weights
    /// a Gröbner basis element whose leading monomial avoids the first block
    /// lies in the subring of the remaining variables.
    Elimination { block: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRing {
    names: Vec<String>,
    degrees: Vec<(i64, i64)>,
    weights: Vec<u32>,
    order: MonomialOrder,
    field: PrimeField,
}

pub type Ring = Arc<GradedRing>;

/// `["t_0", "t_1", ...]`.
pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}_{i}")).collect()
}

impl GradedRing {
    pub fn new(
        field: PrimeField,
        names: Vec<String>,
        degrees: Vec<(i64, i64)>,
        weights: Vec<u32>,
        order: MonomialOrder,
    ) -> Ring {
        assert_eq!(names.len(), degrees.len());
        assert_eq!(names.len(), weights.len());
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        if let MonomialOrder::Elimination { block } = order {
            assert!(block <= names.len());
        }
        Arc::new(GradedRing {
            names,
            degrees,
            weights,
            order,
            field,
        })
    }

    /// All variables of degree `(1, 0)` and weight 1.
    pub fn standard(field: PrimeField, names: Vec<String>, order: MonomialOrder) -> Ring {
        let n = names.len();
        Self::new(field, names, vec![(1, 0); n], vec![1; n], order)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[(i64, i64)] {
        &self.degrees
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// True when every variable has weight 1 and degree `(1, 0)`.
    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1) && self.degrees.iter().all(|&d| d == (1, 0))
    }

    pub fn multidegree(&self, m: &Monomial) -> (i64, i64) {
        m.exponents()
            .iter()
            .zip(&self.degrees)
            .fold((0, 0), |(a, b), (&e, &(d1, d2))| {
                (a + e as i64 * d1, b + e as i64 * d2)
            })
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u64 {
        m.exponents()
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    fn block_degree(&self, m: &Monomial, block: usize) -> u64 {
        m.exponents()[..block]
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    /// Compares two monomials in the ring order (`Greater` = bigger).
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::GRevLex => self
                .weighted_degree(a)
                .cmp(&self.weighted_degree(b))
                .then_with(|| revlex(a, b)),
            MonomialOrder::Elimination { block } => self
                .weighted_degree(a)
                .cmp(&self.weighted_degree(b))
                .then_with(|| self.block_degree(a, block).cmp(&self.block_degree(b, block)))
                .then_with(|| revlex(a, b)),
        }
    }
}

fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// All monomials of multidegree `(d1, d2)`, largest first.
///
/// Every variable must have a degree with nonnegative entries that are not
/// both zero; otherwise a graded piece could be infinite.
pub fn monomial_basis(ring: &GradedRing, degree: (i64, i64)) -> Vec<Monomial> {
    assert!(
        ring.degrees
            .iter()
            .all(|&(a, b)| a >= 0 && b >= 0 && a + b > 0),
        "monomial_basis needs a positively graded ring"
    );
    let mut out = Vec::new();
    if degree.0 < 0 || degree.1 < 0 {
        return out;
    }
    let mut exps = vec![0u16; ring.nvars()];
    enumerate(ring, 0, degree, &mut exps, &mut out);
    out.sort_by(|a, b| ring.cmp(b, a));
    out
}

fn enumerate(
    ring: &GradedRing,
    i: usize,
    rem: (i64, i64),
    exps: &mut Vec<u16>,
    out: &mut Vec<Monomial>,
) {
    if i == ring.nvars() {
        if rem == (0, 0) {
            out.push(Monomial::from_exponents(exps.clone()));
        }
        return;
    }
    let (a, b) = ring.degrees[i];
    let mut max = i64::MAX;
    if a > 0 {
        max = max.min(rem.0 / a);
    }
    if b > 0 {
        max = max.min(rem.1 / b);
    }
    for e in 0..=max {
        exps[i] = e as u16;
        enumerate(ring, i + 1, (rem.0 - e * a, rem.1 - e * b), exps, out);
    }
    exps[i] = 0;
}
