use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::poly::{GradedRing, Monomial, MultiPoly, Ring};

struct Elem {
    poly: MultiPoly,
    lm: Monomial,
    mask: u64,
    sugar: u64,
    active: bool,
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

fn max_weighted_degree(ring: &GradedRing, f: &MultiPoly) -> u64 {
    f.terms()
        .iter()
        .map(|(m, _)| ring.weighted_degree(m))
        .max()
        .unwrap_or(0)
}

fn find_reducer<'a>(elems: &'a [Elem], m: &Monomial) -> Option<&'a Elem> {
    let mask = m.support_mask();
    elems
        .iter()
        .find(|e| e.active && e.mask & !mask == 0 && e.lm.divides(m))
}

/// Fully reduces `f` by the active elements: no term of the result is
/// divisible by an active leading monomial.
fn reduce_by(elems: &[Elem], f: MultiPoly) -> MultiPoly {
    let ring = f.ring().clone();
    let field = ring.field();
    let mut rest = f;
    let mut done: Vec<(Monomial, u32)> = Vec::new();
    while let Some((m, c)) = rest.terms().first().cloned() {
        match find_reducer(elems, &m) {
            Some(e) => {
                let q = e.lm.quotient_of(&m);
                let lc = e.poly.leading_coefficient().unwrap();
                let factor = field.neg(field.div(c, lc).unwrap());
                rest = rest.add_scaled(&e.poly, factor, Some(&q));
            }
            None => {
                done.push((m, c));
                let mut terms = rest.into_terms();
                terms.remove(0);
                rest = MultiPoly::from_sorted(&ring, terms);
            }
        }
    }
    MultiPoly::from_sorted(&ring, done)
}

/// Reduces `f` modulo a list of polynomials (any list; the result is a
/// normal form only when the list is a Gröbner basis).
pub fn reduce_full(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let elems: Vec<Elem> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let lm = g.leading_monomial().unwrap().clone();
            Elem {
                mask: lm.support_mask(),
                lm,
                poly: g.clone(),
                sugar: 0,
                active: true,
            }
        })
        .collect();
    reduce_by(&elems, f.clone())
}

fn spoly(a: &Elem, b: &Elem, lcm: &Monomial) -> MultiPoly {
    let field = a.poly.ring().field();
    let ua = a.lm.quotient_of(lcm);
    let ub = b.lm.quotient_of(lcm);
    let ca = field.inv(a.poly.leading_coefficient().unwrap()).unwrap();
    let cb = field.inv(b.poly.leading_coefficient().unwrap()).unwrap();
    let left = a.poly.mul_monomial(&ua, ca);
    left.add_scaled(&b.poly, field.neg(cb), Some(&ub))
}

/// Gebauer–Möller update after appending element `h` to `elems`.
fn update(ring: &GradedRing, elems: &mut [Elem], pairs: &mut Vec<Pair>, h: usize) {
    let hlm = elems[h].lm.clone();
    let hsugar = elems[h].sugar;
    let sugar_of = |e: &Elem, lcm: &Monomial| {
        e.sugar + ring.weighted_degree(&e.lm.quotient_of(lcm))
    };
    let candidates: Vec<Pair> = elems[..h]
        .iter()
        .enumerate()
        .filter(|(_, e)| e.active)
        .map(|(i, e)| {
            let lcm = e.lm.lcm(&hlm);
            let sugar = sugar_of(e, &lcm).max(hsugar + ring.weighted_degree(&hlm.quotient_of(&lcm)));
            Pair { i, j: h, lcm, sugar }
        })
        .collect();

    // criterion M/F: drop (i,h) if another new pair's lcm properly divides it,
    // keeping one representative among equal lcms
    let mut kept: Vec<Pair> = Vec::new();
    for (idx, p) in candidates.iter().enumerate() {
        let coprime = elems[p.i].lm.is_coprime(&hlm);
        let dominated = candidates.iter().enumerate().any(|(jdx, q)| {
            jdx != idx
                && q.lcm.divides(&p.lcm)
                && (q.lcm != p.lcm || (jdx < idx && !coprime))
        });
        if coprime || !dominated {
            kept.push(p.clone());
        }
    }
    // product criterion: a coprime pair's lcm kills the whole lcm class
    let mut new_pairs: Vec<Pair> = Vec::new();
    for p in &kept {
        if elems[p.i].lm.is_coprime(&hlm) {
            continue;
        }
        let shadowed = kept
            .iter()
            .any(|q| q.lcm == p.lcm && elems[q.i].lm.is_coprime(&hlm));
        if !shadowed {
            new_pairs.push(p.clone());
        }
    }
    // criterion B on old pairs
    pairs.retain(|p| {
        !(hlm.divides(&p.lcm)
            && elems[p.i].lm.lcm(&hlm) != p.lcm
            && elems[p.j].lm.lcm(&hlm) != p.lcm)
    });
    pairs.extend(new_pairs);
    for e in elems[..h].iter_mut() {
        if e.active && hlm.divides(&e.lm) {
            e.active = false;
        }
    }
}

fn select(ring: &GradedRing, pairs: &[Pair]) -> usize {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k], &pairs[best]);
        let ord = a
            .sugar
            .cmp(&b.sugar)
            .then_with(|| ring.cmp(&a.lcm, &b.lcm))
            .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
        if ord == Ordering::Less {
            best = k;
        }
    }
    best
}

/// Reduced Gröbner basis of the ideal generated by `gens`, monic and sorted
/// by increasing leading monomial.
///
/// With `degree_cap`, S-pairs of sugar degree above the cap are skipped; for
/// weighted-homogeneous input the result is then a Gröbner basis up to that
/// degree only.
pub fn groebner_basis(ring: &Ring, gens: &[MultiPoly], degree_cap: Option<u64>) -> Vec<MultiPoly> {
    let mut elems: Vec<Elem> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    input.sort_by(|a, b| {
        max_weighted_degree(ring, a)
            .cmp(&max_weighted_degree(ring, b))
            .then_with(|| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()))
    });

    let add = |elems: &mut Vec<Elem>, pairs: &mut Vec<Pair>, f: MultiPoly, sugar: u64| {
        let f = f.monic();
        let lm = f.leading_monomial().unwrap().clone();
        elems.push(Elem {
            mask: lm.support_mask(),
            lm,
            poly: f,
            sugar,
            active: true,
        });
        let h = elems.len() - 1;
        update(ring, elems, pairs, h);
    };

    for g in input {
        if degree_cap.is_some_and(|cap| max_weighted_degree(ring, &g) > cap) {
            continue;
        }
        let sugar = max_weighted_degree(ring, &g);
        let r = reduce_by(&elems, g);
        if !r.is_zero() {
            if r.is_constant() {
                return alloc::vec![MultiPoly::one(ring)];
            }
            add(&mut elems, &mut pairs, r, sugar);
        }
    }

    while !pairs.is_empty() {
        let k = select(ring, &pairs);
        let pair = pairs.swap_remove(k);
        if degree_cap.is_some_and(|cap| pair.sugar > cap) {
            continue;
        }
        let s = spoly(&elems[pair.i], &elems[pair.j], &pair.lcm);
        let r = reduce_by(&elems, s);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return alloc::vec![MultiPoly::one(ring)];
        }
        add(&mut elems, &mut pairs, r, pair.sugar);
    }

    // interreduce the minimal basis
    let minimal: Vec<usize> = (0..elems.len()).filter(|&i| elems[i].active).collect();
    let mut out = Vec::with_capacity(minimal.len());
    for &i in &minimal {
        elems[i].active = false;
        let r = reduce_by(&elems, elems[i].poly.clone());
        elems[i].active = true;
        out.push(r.monic());
    }
    out.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    out
}
