use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::{GradedRing, Monomial, Ring};
use crate::error::PolyError;
use crate::field::FieldElement;

/// A polynomial: nonzero terms sorted decreasingly in the ring order.
#[derive(Clone)]
pub struct MultiPoly {
    ring: Ring,
    terms: Vec<(Monomial, FieldElement)>,
}

/// True if both handles describe the same ring.
pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl MultiPoly {
    pub fn zero(ring: &Ring) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: FieldElement) -> Self {
        let c = c % ring.field().modulus();
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), 1)
    }

    pub fn term(ring: &Ring, m: Monomial, c: FieldElement) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        let terms = if c == 0 { Vec::new() } else { alloc::vec![(m, c)] };
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zero coefficients.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, FieldElement)>) -> Self {
        let field = ring.field();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, FieldElement)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % field.modulus();
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        MultiPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wraps already sorted, merged, nonzero terms.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<(Monomial, FieldElement)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<(Monomial, FieldElement)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<FieldElement> {
        self.terms.first().map(|(_, c)| *c)
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }

    /// The common multidegree of all terms, if the polynomial is homogeneous.
    /// The zero polynomial has none.
    pub fn multidegree(&self) -> Option<(i64, i64)> {
        let first = self.ring.multidegree(&self.terms.first()?.0);
        self.terms
            .iter()
            .all(|(m, _)| self.ring.multidegree(m) == first)
            .then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.multidegree().is_some()
    }

    /// The common weighted degree, if all terms share it.
    pub fn weighted_degree(&self) -> Option<u64> {
        let first = self.ring.weighted_degree(&self.terms.first()?.0);
        self.terms
            .iter()
            .all(|(m, _)| self.ring.weighted_degree(m) == first)
            .then_some(first)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    fn check(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(other)?;
        Ok(self.add_scaled(other, 1, None))
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(other)?;
        Ok(self.add_scaled(other, self.ring.field().neg(1), None))
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + c·m·other`, merging two sorted term lists.
    pub(crate) fn add_scaled(
        &self,
        other: &MultiPoly,
        c: FieldElement,
        m: Option<&Monomial>,
    ) -> MultiPoly {
        let field = self.ring.field();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(mon, coef)| {
                let mon = match m {
                    Some(m) => mon.mul(m),
                    None => mon.clone(),
                };
                (mon, field.mul(*coef, c))
            })
            .peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => ring.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let t = b.next().unwrap();
                    if t.1 != 0 {
                        out.push(t);
                    }
                }
                Ordering::Equal => {
                    let (mon, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = field.add(*x, y);
                    if s != 0 {
                        out.push((mon.clone(), s));
                    }
                }
            }
        }
        MultiPoly {
            ring: ring.clone(),
            terms: out,
        }
    }

    fn mul_unchecked(&self, other: &MultiPoly) -> MultiPoly {
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(&self.ring);
        }
        let field = self.ring.field();
        let mut all = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                all.push((ma.mul(mb), field.mul(*ca, *cb)));
            }
        }
        MultiPoly::from_terms(&self.ring, all)
    }

    pub fn scale(&self, c: FieldElement) -> MultiPoly {
        let field = self.ring.field();
        let c = c % field.modulus();
        if c == 0 {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), field.mul(*x, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: FieldElement) -> MultiPoly {
        let field = self.ring.field();
        if c.is_multiple_of(field.modulus()) {
            return MultiPoly::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, x)| (t.mul(m), field.mul(*x, c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) => self.scale(self.ring.field().inv(c).expect("nonzero")),
        }
    }

    /// The same terms re-sorted for another ring with the same variables.
    pub fn reinterpret(&self, ring: &Ring) -> MultiPoly {
        assert_eq!(ring.nvars(), self.ring.nvars());
        MultiPoly::from_terms(ring, self.terms.clone())
    }

    /// Homogeneous component of total (unweighted) degree `d`.
    pub fn component_of_degree(&self, d: u32) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .cloned()
                .collect(),
        }
    }

    pub(crate) fn ring_ref(&self) -> &GradedRing {
        &self.ring
    }
}

impl core::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl core::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl core::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl core::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(self.ring.field().neg(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::{indexed_names, parse_poly, MonomialOrder};
    use crate::rng::FieldRng;
    use alloc::collections::BTreeMap;
    use alloc::vec;
    use proptest::prelude::*;

    fn field() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    fn st() -> Ring {
        GradedRing::standard(field(), vec!["s".into(), "t".into()], MonomialOrder::GRevLex)
    }

    #[test]
    fn difference_of_squares() {
        let r = st();
        let s = MultiPoly::var(&r, 0);
        let t = MultiPoly::var(&r, 1);
        let prod = &(&s + &t) * &(&s - &t);
        assert_eq!(prod, parse_poly(&r, "s^2 - t^2").unwrap());
        assert!((&prod * &MultiPoly::zero(&r)).is_zero());
        assert_eq!(prod.multidegree(), Some((2, 0)));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = st();
        let b = GradedRing::standard(field(), vec!["x".into(), "y".into()], MonomialOrder::GRevLex);
        let f = MultiPoly::var(&a, 0);
        let g = MultiPoly::var(&b, 0);
        assert_eq!(f.checked_mul(&g), Err(PolyError::RingMismatch));
        assert_eq!(f.checked_add(&g), Err(PolyError::RingMismatch));
    }

    fn random_cubic(ring: &Ring, rng: &mut FieldRng) -> MultiPoly {
        let terms = crate::poly::monomial_basis(ring, (3, 0))
            .into_iter()
            .map(|m| (m, rng.element(ring.field())))
            .collect();
        MultiPoly::from_terms(ring, terms)
    }

    #[test]
    fn product_coefficients_match_convolution() {
        let f = field();
        let r = GradedRing::standard(f, indexed_names("x", 3), MonomialOrder::GRevLex);
        let mut rng = FieldRng::from_seed(11);
        for _ in 0..5 {
            let a = random_cubic(&r, &mut rng);
            let b = random_cubic(&r, &mut rng);
            let prod = &a * &b;
            // oracle: double loop accumulated in a map keyed by exponents
            let mut conv: BTreeMap<Monomial, u32> = BTreeMap::new();
            for (ma, ca) in a.terms() {
                for (mb, cb) in b.terms() {
                    let e = conv.entry(ma.mul(mb)).or_insert(0);
                    *e = f.add(*e, f.mul(*ca, *cb));
                }
            }
            for (m, c) in &conv {
                assert_eq!(prod.coefficient(m), *c);
            }
            assert_eq!(prod.len(), conv.values().filter(|&&c| c != 0).count());
            assert_eq!(prod.multidegree(), Some((6, 0)));
        }
    }

    proptest! {
        #[test]
        fn homogeneous_products_add_degrees(seed in 0u64..500) {
            let r = GradedRing::new(field(), indexed_names("y", 3), vec![(1, 0), (0, 1), (2, 1)], vec![1, 1, 3], MonomialOrder::GRevLex);
            let mut rng = FieldRng::from_seed(seed);
            let mut rand_hom = |d: (i64, i64)| {
                let terms = crate::poly::monomial_basis(&r, d)
                    .into_iter()
                    .map(|m| (m, rng.element(r.field())))
                    .collect();
                MultiPoly::from_terms(&r, terms)
            };
            let a = rand_hom((3, 1));
            let b = rand_hom((2, 2));
            let c = rand_hom((2, 2));
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!((&a * &b).multidegree(), Some((5, 3)));
            let bc = &b + &c;
            prop_assert!(bc.is_homogeneous());
            prop_assert_eq!(&(&a * &bc), &(&(&a * &b) + &(&a * &c)));
        }
    }
}
