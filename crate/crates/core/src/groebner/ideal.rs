use alloc::vec::Vec;

use super::buchberger::{groebner_basis, reduce_full};
use super::hilbert::{hilbert_numerator, HilbertData};
use crate::error::PolyError;
use crate::poly::{Monomial, MultiPoly, Ring};

/// An ideal together with its reduced Gröbner basis for the ring's order.
#[derive(Debug, Clone)]
pub struct IdealGB {
    ring: Ring,
    generators: Vec<MultiPoly>,
    basis: Vec<MultiPoly>,
    degree_cap: Option<u64>,
}

impl IdealGB {
    pub fn new(ring: &Ring, generators: Vec<MultiPoly>) -> Result<Self, PolyError> {
        Self::build(ring, generators, None)
    }

    /// Gröbner basis only up to weighted degree `cap` (for homogeneous
    /// input); membership answers are exact only in degrees `<= cap`.
    pub fn truncated(ring: &Ring, generators: Vec<MultiPoly>, cap: u64) -> Result<Self, PolyError> {
        Self::build(ring, generators, Some(cap))
    }

    fn build(ring: &Ring, generators: Vec<MultiPoly>, cap: Option<u64>) -> Result<Self, PolyError> {
        for g in &generators {
            if !crate::poly::same_ring(g.ring(), ring) {
                return Err(PolyError::RingMismatch);
            }
        }
        let basis = groebner_basis(ring, &generators, cap);
        Ok(IdealGB {
            ring: ring.clone(),
            generators,
            basis,
            degree_cap: cap,
        })
    }

    pub fn zero(ring: &Ring) -> Self {
        IdealGB {
            ring: ring.clone(),
            generators: Vec::new(),
            basis: Vec::new(),
            degree_cap: None,
        }
    }

    pub fn unit(ring: &Ring) -> Self {
        IdealGB {
            ring: ring.clone(),
            generators: alloc::vec![MultiPoly::one(ring)],
            basis: alloc::vec![MultiPoly::one(ring)],
            degree_cap: None,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn degree_cap(&self) -> Option<u64> {
        self.degree_cap
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    pub fn normal_form(&self, f: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !crate::poly::same_ring(f.ring(), &self.ring) {
            return Err(PolyError::RingMismatch);
        }
        Ok(reduce_full(f, &self.basis))
    }

    pub fn contains(&self, f: &MultiPoly) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &IdealGB) -> Result<bool, PolyError> {
        for g in &other.basis {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals via their reduced Gröbner bases.
    pub fn equals(&self, other: &IdealGB) -> Result<bool, PolyError> {
        if !crate::poly::same_ring(&self.ring, &other.ring) {
            return Err(PolyError::RingMismatch);
        }
        Ok(self.basis == other.basis)
    }

    /// Dimension, degree and arithmetic genus of the projective scheme cut
    /// out by a homogeneous ideal in a standard-graded ring.
    pub fn hilbert_data(&self) -> Result<HilbertData, PolyError> {
        if !self.ring.is_standard_graded() || self.basis.iter().any(|g| !g.is_homogeneous()) {
            return Err(PolyError::NotHomogeneous);
        }
        let num = hilbert_numerator(&self.leading_monomials());
        Ok(HilbertData::from_numerator(&num, self.ring.nvars()))
    }

    /// Hilbert series numerator of `S / I` (over `(1-t)^n`).
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        hilbert_numerator(&self.leading_monomials())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::{indexed_names, parse_poly, GradedRing, MonomialOrder};
    use crate::rng::FieldRng;
    use proptest::prelude::*;

    fn f() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    fn ring(names: &[&str], order: MonomialOrder) -> Ring {
        GradedRing::standard(f(), names.iter().map(|s| (*s).into()).collect(), order)
    }

    fn ideal(r: &Ring, src: &[&str]) -> IdealGB {
        IdealGB::new(r, src.iter().map(|s| parse_poly(r, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y", "z"], MonomialOrder::GRevLex);
        let i = ideal(&r, &["y^2 - x*z"]);
        assert!(i.contains(&parse_poly(&r, "y^2 - x*z").unwrap()).unwrap());
        assert_eq!(i.normal_form(&MultiPoly::one(&r)).unwrap(), MultiPoly::one(&r));
        let h = i.hilbert_data().unwrap();
        assert_eq!(h, HilbertData { projective_dimension: 1, degree: 2, arithmetic_genus: 0 });
    }

    #[test]
    fn equality_examples() {
        let r = ring(&["x", "y"], MonomialOrder::GRevLex);
        assert!(!ideal(&r, &["x"]).equals(&ideal(&r, &["x^2"])).unwrap());
        assert!(ideal(&r, &["x", "y^2"]).equals(&ideal(&r, &["y^2 + x", "x"])).unwrap());
        let other = ring(&["a", "b"], MonomialOrder::GRevLex);
        assert_eq!(ideal(&r, &["x"]).equals(&ideal(&other, &["a"])), Err(PolyError::RingMismatch));
    }

    #[test]
    fn hilbert_data_needs_standard_homogeneous_input() {
        let r = ring(&["x", "y", "z"], MonomialOrder::GRevLex);
        assert_eq!(ideal(&r, &["x^2 - y"]).hilbert_data(), Err(PolyError::NotHomogeneous));
        assert_eq!(IdealGB::unit(&r).hilbert_data().unwrap().projective_dimension, -1);
    }

    #[test]
    fn hilbert_data_is_order_independent() {
        let gens = ["x*z - y^2", "x*w - y*z", "y*w - z^2"];
        let mut seen = Vec::new();
        for order in [MonomialOrder::GRevLex, MonomialOrder::Lex, MonomialOrder::Elimination { block: 1 }] {
            let r = ring(&["x", "y", "z", "w"], order);
            seen.push(ideal(&r, &gens).hilbert_data().unwrap());
        }
        assert!(seen.iter().all(|h| *h == seen[0]));
        assert_eq!(seen[0], HilbertData { projective_dimension: 1, degree: 3, arithmetic_genus: 0 });
    }

    #[test]
    fn scroll_minors_have_minimal_degree() {
        // 2x2 minors of [[t0,t2,t4,t6],[t1,t3,t5,t7]] in P^8
        let r = GradedRing::standard(f(), indexed_names("t", 9), MonomialOrder::GRevLex);
        let mut gens = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                let s = alloc::format!("t_{}*t_{} - t_{}*t_{}", 2 * a, 2 * b + 1, 2 * b, 2 * a + 1);
                gens.push(parse_poly(&r, &s).unwrap());
            }
        }
        let i = IdealGB::new(&r, gens).unwrap();
        let h = i.hilbert_data().unwrap();
        assert_eq!((h.projective_dimension, h.degree), (5, 4));
    }

    fn random_poly(r: &Ring, rng: &mut FieldRng, maxdeg: i64) -> MultiPoly {
        let mut terms = Vec::new();
        for d in 0..=maxdeg {
            for m in crate::poly::monomial_basis(r, (d, 0)) {
                if rng.below(3) == 0 {
                    terms.push((m, rng.element(r.field())));
                }
            }
        }
        MultiPoly::from_terms(r, terms)
    }

    proptest! {
        #[test]
        fn normal_form_is_linear(seed in 0u64..200) {
            let r = ring(&["x", "y", "z", "w"], MonomialOrder::GRevLex);
            let i = ideal(&r, &["x*z - y^2", "x*w - y*z", "y*w - z^2"]);
            let mut rng = FieldRng::from_seed(seed);
            let a = random_poly(&r, &mut rng, 3);
            let b = random_poly(&r, &mut rng, 3);
            let lhs = i.normal_form(&(&a + &b)).unwrap();
            let rhs = i.normal_form(&(&i.normal_form(&a).unwrap() + &i.normal_form(&b).unwrap())).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
