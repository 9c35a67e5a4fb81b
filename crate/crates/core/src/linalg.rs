//! Dense exact linear algebra over `GF(p)`.
//!
//! Elimination always pivots on the first nonzero entry of the current column
//! and walks columns left to right, so kernels and echelon forms are
//! reproducible bit for bit.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{FieldElement, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, field: PrimeField) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b != 0 {
                        let cur = out.get(r, c);
                        out.set(r, c, field.add(cur, field.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement], field: PrimeField) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let acc = self
                    .row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % field.modulus() as u64);
                acc as u32
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    ///
    /// Works on a `u64` copy and reduces modulo `p` only when the next row
    /// update could overflow, which for small primes is never.
    pub fn rref(&mut self, field: PrimeField) -> Vec<usize> {
        let p = field.modulus() as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut buf: Vec<u64> = self.data.iter().map(|&x| x as u64).collect();
        let budget = ((u64::MAX - p) / ((p - 1) * (p - 1))).max(1);
        let mut pending = 0u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let mut piv = None;
            for i in r..rows {
                let x = buf[i * cols + c] % p;
                buf[i * cols + c] = x;
                if x != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let Some(piv) = piv else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    buf.swap(piv * cols + j, r * cols + j);
                }
            }
            if pending == budget {
                for x in buf.iter_mut() {
                    *x %= p;
                }
                pending = 0;
            }
            let inv = field.inv(buf[r * cols + c] as u32).expect("pivot is nonzero") as u64;
            for x in &mut buf[r * cols + c..(r + 1) * cols] {
                *x = (*x % p) * inv % p;
            }
            let (head, tail) = buf.split_at_mut(r * cols);
            let (prow, rest) = tail.split_at_mut(cols);
            let prow = &prow[c + 1..];
            for row in head.chunks_exact_mut(cols).chain(rest.chunks_exact_mut(cols)) {
                let factor = row[c] % p;
                row[c] = 0;
                if factor == 0 {
                    continue;
                }
                let neg = p - factor;
                for (x, &b) in row[c + 1..].iter_mut().zip(prow) {
                    *x += neg * b;
                }
            }
            pending += 1;
            pivots.push(c);
            r += 1;
        }
        for (d, x) in self.data.iter_mut().zip(&buf) {
            *d = (x % p) as FieldElement;
        }
        pivots
    }

    pub fn rank(&self, field: PrimeField) -> usize {
        if self.rows <= self.cols {
            self.clone().rref(field).len()
        } else {
            self.transpose().rref(field).len()
        }
    }

    /// Basis of `{v : M v = 0}`, one vector per free column, with a 1 in that
    /// column and zeros in the other free columns.
    pub fn kernel_basis(&self, field: PrimeField) -> Vec<Vec<FieldElement>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }
}

impl Matrix {
    /// Some solution of `M x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[FieldElement], field: PrimeField) -> Option<Vec<FieldElement>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref(field);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// A growing subspace kept in echelon form, used to pick complements
/// (e.g. new minimal generators modulo the span of old ones).
#[derive(Debug, Clone)]
pub struct EchelonSpace {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl EchelonSpace {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        EchelonSpace {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; the result is zero iff `v` lies
    /// in the span.
    pub fn reduce(&self, v: &mut [FieldElement]) {
        let p = self.field.modulus() as u64;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let factor = v[pc];
            if factor == 0 {
                continue;
            }
            let neg = p - factor as u64;
            for (x, &b) in v.iter_mut().zip(row).skip(pc) {
                if b != 0 {
                    *x = ((*x as u64 + neg * b as u64) % p) as u32;
                }
            }
        }
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns `false` if it was already contained.
    pub fn insert(&mut self, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[pc]).expect("nonzero");
        for x in w.iter_mut().skip(pc) {
            *x = self.field.mul(*x, inv);
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::FieldRng;
    use proptest::prelude::*;

    fn f() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = f();
        let m = Matrix::from_rows(vec![vec![1, 2], vec![2, 4], vec![0, 1]], 2);
        let x = m.solve(&[5, 10, 2], f).unwrap();
        assert_eq!(m.mul_vec(&x, f), vec![5, 10, 2]);
        assert!(m.solve(&[5, 11, 2], f).is_none());
    }

    fn random_matrix(rng: &mut FieldRng, rows: usize, cols: usize) -> Matrix {
        let f = f();
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, rng.element(f));
            }
        }
        m
    }

    #[test]
    fn kernel_examples() {
        let f = f();
        assert!(Matrix::identity(2).kernel_basis(f).is_empty());
        let m = Matrix::from_rows(vec![vec![1, 1]], 2);
        assert_eq!(m.kernel_basis(f), vec![vec![10006, 1]]);
    }

    #[test]
    fn rank_examples() {
        let f = f();
        assert_eq!(Matrix::zeros(3, 3).rank(f), 0);
        assert_eq!(Matrix::identity(3).rank(f), 3);
        let u = [3u32, 5, 7];
        let v = [2u32, 11, 13, 1];
        let mut outer = Matrix::zeros(3, 4);
        for i in 0..3 {
            for j in 0..4 {
                outer.set(i, j, f.mul(u[i], v[j]));
            }
        }
        assert_eq!(outer.rank(f), 1);
    }

    #[test]
    fn random_five_by_eight_kernel() {
        let f = f();
        let mut rng = FieldRng::from_seed(7);
        let m = random_matrix(&mut rng, 5, 8);
        assert_eq!(m.rank(f), 5);
        let ker = m.kernel_basis(f);
        assert_eq!(ker.len(), 3);
        for v in &ker {
            assert!(m.mul_vec(v, f).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn echelon_space_membership() {
        let f = f();
        let mut s = EchelonSpace::new(f, 3);
        assert!(s.insert(&[0, 1, 2]));
        assert!(s.insert(&[1, 0, 0]));
        assert!(!s.insert(&[2, 3, 6]));
        assert!(s.contains(&[5, 1, 2]));
        assert!(!s.contains(&[0, 0, 1]));
        assert_eq!(s.rank(), 2);
    }

    proptest! {
        #[test]
        fn rank_nullity(seed in 0u64..1000, rows in 1usize..8, cols in 1usize..8, zero_rows in 0usize..3) {
            let f = f();
            let mut rng = FieldRng::from_seed(seed);
            let mut m = random_matrix(&mut rng, rows, cols);
            // force some dependency
            for r in 0..zero_rows.min(rows) {
                for c in 0..cols {
                    let v = m.get(0, c);
                    m.set(r, c, f.mul(v, (r + 1) as u32));
                }
            }
            let ker = m.kernel_basis(f);
            prop_assert_eq!(m.rank(f) + ker.len(), cols);
            for v in &ker {
                prop_assert!(m.mul_vec(v, f).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn rank_of_product_is_bounded(seed in 0u64..1000, n in 1usize..6, k in 1usize..6, m in 1usize..6) {
            let f = f();
            let mut rng = FieldRng::from_seed(seed);
            let a = random_matrix(&mut rng, n, k);
            let b = random_matrix(&mut rng, k, m);
            let ab = a.mul(&b, f);
            prop_assert!(ab.rank(f) <= a.rank(f).min(b.rank(f)));
        }

        #[test]
        fn full_rank_square_has_trivial_kernel(seed in 0u64..1000, n in 1usize..7) {
            let f = f();
            let mut rng = FieldRng::from_seed(seed);
            let m = random_matrix(&mut rng, n, n);
            if m.rank(f) == n {
                prop_assert!(m.kernel_basis(f).is_empty());
            }
        }
    }
}
