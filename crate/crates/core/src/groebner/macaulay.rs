//! Normal forms from Macaulay matrices, independent of Buchberger.
//!
//! For a homogeneous ideal the degree-`d` piece is spanned by the shifts
//! `m * g`. Row reducing that span with columns in descending monomial order
//! puts the leading monomials of `I_d` at the pivots, so reducing `f_d`
//! against the reduced rows leaves the unique representative supported off
//! the leading monomials, which is the Gröbner normal form.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::PolyError;
use crate::linalg::Matrix;
use crate::poly::{monomial_basis, Monomial, MultiPoly, Ring};

/// Normal form of `f` modulo the ideal of `gens` in a standard graded ring.
pub fn macaulay_normal_form(ring: &Ring, gens: &[MultiPoly], f: &MultiPoly) -> Result<MultiPoly, PolyError> {
    if !ring.is_standard_graded() || gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(PolyError::NotHomogeneous);
    }
    let field = ring.field();
    let top = f.total_degree().unwrap_or(0);
    let mut out = MultiPoly::zero(ring);
    for d in 0..=top {
        let part = f.component_of_degree(d);
        if part.is_zero() {
            continue;
        }
        let d = d as i64;
        let mons = monomial_basis(ring, (d, 0));
        let index: BTreeMap<&Monomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let gd = g.total_degree().unwrap_or(0) as i64;
            if gd > d {
                continue;
            }
            for shift in monomial_basis(ring, (d - gd, 0)) {
                let mut row = vec![0; mons.len()];
                for (mu, c) in g.terms() {
                    row[index[&mu.mul(&shift)]] = *c;
                }
                rows.push(row);
            }
        }
        let mut v = vec![0; mons.len()];
        for (mu, c) in part.terms() {
            v[index[mu]] = *c;
        }
        if !rows.is_empty() {
            let mut mat = Matrix::from_rows(rows, mons.len());
            let pivots = mat.rref(field);
            for (r, &pc) in pivots.iter().enumerate() {
                let factor = v[pc];
                if factor != 0 {
                    for (j, x) in v.iter_mut().enumerate() {
                        *x = field.sub_mul(*x, factor, mat.get(r, j));
                    }
                }
            }
        }
        let terms = mons.iter().zip(&v).filter(|(_, &c)| c != 0).map(|(m, &c)| (m.clone(), c)).collect();
        out = &out + &MultiPoly::from_terms(ring, terms);
    }
    Ok(out)
}
