use alloc::vec::Vec;

use super::IdealGB;
use crate::error::PolyError;
use crate::poly::{GradedRing, Monomial, MonomialOrder, MultiPoly, Ring, RingMap};

/// The ring `target ⊗ source` with target variables first, an elimination
/// order for the target block, and source weights making the graph ideal
/// weighted-homogeneous.
fn graph_ring(map: &RingMap) -> Result<Ring, PolyError> {
    let src = map.source();
    let tgt = map.target();
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    let mut weights = Vec::new();
    for (i, n) in tgt.names().iter().enumerate() {
        names.push(alloc::format!("{n}'"));
        degrees.push(tgt.degrees()[i]);
        weights.push(tgt.weights()[i]);
    }
    for (j, img) in map.images().iter().enumerate() {
        names.push(src.names()[j].clone());
        degrees.push(src.degrees()[j]);
        let w = if img.is_zero() {
            1
        } else {
            img.weighted_degree().ok_or(PolyError::NotHomogeneous)?
        };
        if w == 0 {
            return Err(PolyError::NotHomogeneous);
        }
        weights.push(w as u32);
    }
    Ok(GradedRing::new(
        tgt.field(),
        names,
        degrees,
        weights,
        MonomialOrder::Elimination { block: tgt.nvars() },
    ))
}

fn lift_target(ring: &Ring, f: &MultiPoly, nsrc: usize) -> MultiPoly {
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.extend(std::iter::repeat_n(0, nsrc));
            (Monomial::from_exponents(e), *c)
        })
        .collect();
    MultiPoly::from_terms(ring, terms)
}

fn eliminate(map: &RingMap, extra: &[MultiPoly]) -> Result<IdealGB, PolyError> {
    let ring = graph_ring(map)?;
    let nt = map.target().nvars();
    let ns = map.source().nvars();
    let mut gens = Vec::with_capacity(ns + extra.len());
    for (j, img) in map.images().iter().enumerate() {
        let y = MultiPoly::var(&ring, nt + j);
        gens.push(&y - &lift_target(&ring, img, ns));
    }
    for g in extra {
        if g.weighted_degree().is_none() && !g.is_zero() {
            return Err(PolyError::NotHomogeneous);
        }
        gens.push(lift_target(&ring, g, ns));
    }
    let gb = IdealGB::new(&ring, gens)?;
    let src = map.source();
    let kept = gb
        .basis()
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[..nt].iter().all(|&e| e == 0)))
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| (Monomial::from_exponents(m.exponents()[nt..].to_vec()), *c))
                .collect();
            MultiPoly::from_terms(src, terms)
        })
        .collect();
    IdealGB::new(src, kept)
}

/// `{f : map(f) = 0}` by elimination from the graph ideal. The map must be
/// graded: every image weighted-homogeneous of positive weight.
pub fn kernel_of_ring_map(map: &RingMap) -> Result<IdealGB, PolyError> {
    eliminate(map, &[])
}

/// `{f : map(f) ∈ J}`; `J` must be generated by weighted-homogeneous
/// polynomials of the target ring.
pub fn preimage(map: &RingMap, j: &IdealGB) -> Result<IdealGB, PolyError> {
    if !crate::poly::same_ring(j.ring(), map.target()) {
        return Err(PolyError::RingMismatch);
    }
    eliminate(map, j.basis())
}
