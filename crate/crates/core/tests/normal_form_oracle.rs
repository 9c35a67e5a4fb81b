//! Gröbner normal forms against Macaulay-matrix linear algebra.

use relcan_core::curvegen::{canonical_ring, construct_with_retries, CurveSpec, DEFAULT_ATTEMPTS};
use relcan_core::field::PrimeField;
use relcan_core::groebner::{macaulay_normal_form, IdealGB};
use relcan_core::poly::{monomial_basis, MultiPoly, Ring};
use relcan_core::rng::FieldRng;

fn random_homogeneous(ring: &Ring, d: i64, rng: &mut FieldRng) -> MultiPoly {
    let field = ring.field();
    let mut terms = Vec::new();
    for m in monomial_basis(ring, (d, 0)) {
        if rng.below(3) == 0 {
            terms.push((m, rng.nonzero(field)));
        }
    }
    MultiPoly::from_terms(ring, terms)
}

fn random_poly(ring: &Ring, rng: &mut FieldRng) -> MultiPoly {
    let field = ring.field();
    let mut f = MultiPoly::constant(ring, rng.element(field));
    for d in 1..=3 {
        f = &f + &random_homogeneous(ring, d, rng);
    }
    f
}

fn compare(ring: &Ring, gens: Vec<MultiPoly>, seed: u64, count: usize) {
    let ideal = IdealGB::new(ring, gens.clone()).unwrap();
    let mut rng = FieldRng::from_seed(seed);
    for _ in 0..count {
        let f = random_poly(ring, &mut rng);
        assert_eq!(ideal.normal_form(&f).unwrap(), macaulay_normal_form(ring, &gens, &f).unwrap());
    }
}

#[test]
fn canonical_ideal_normal_forms() {
    let spec = CurveSpec::new(6, 4, 10007, 99).unwrap();
    let (model, _) = construct_with_retries(&spec, DEFAULT_ATTEMPTS).unwrap();
    let gens: Vec<MultiPoly> = model.canonical.quadrics.clone();
    compare(&model.canonical.ring, gens, 1, 50);
}

#[test]
fn random_complete_intersection_normal_forms() {
    let field = PrimeField::new(10007).unwrap();
    let ring = canonical_ring(5, field);
    let mut rng = FieldRng::from_seed(5);
    let gens: Vec<MultiPoly> = (0..3).map(|_| random_homogeneous(&ring, 2, &mut rng)).collect();
    compare(&ring, gens, 2, 50);
}
