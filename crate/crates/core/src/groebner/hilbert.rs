use alloc::vec;
use alloc::vec::Vec;

use crate::poly::Monomial;

/// Invariants of a projective scheme read off its Hilbert polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertData {
    /// `-1` for the empty scheme.
    pub projective_dimension: i64,
    pub degree: i64,
    pub arithmetic_genus: i64,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_sub(a: &mut Vec<i64>, b: &[i64]) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, y) in b.iter().enumerate() {
        a[i + shift] += y;
    }
}

fn trim(mut a: Vec<i64>) -> Vec<i64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Numerator `N(t)` of the Hilbert series `N(t) / (1-t)^n` of `S / I` for
/// the monomial ideal `I` generated by `gens` in `n` standard-graded
/// variables. Coefficients are listed from `t^0` upwards.
pub fn hilbert_numerator(gens: &[Monomial]) -> Vec<i64> {
    trim(numerator(minimalize(gens.to_vec())))
}

fn numerator(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    let n = gens[0].nvars();
    // pure powers in distinct variables: product of (1 - t^d)
    if gens.iter().all(|m| m.exponents().iter().filter(|&&e| e > 0).count() == 1) {
        let mut acc = vec![1i64];
        for m in &gens {
            let d = m.total_degree() as usize;
            let mut next = acc.clone();
            poly_sub(&mut next, &{
                let mut s = vec![0; d];
                s.extend_from_slice(&acc);
                s
            });
            acc = next;
        }
        return acc;
    }
    // pivot on the variable occurring in the most mixed generators
    let mut counts = vec![0usize; n];
    for m in gens.iter().filter(|m| m.exponents().iter().filter(|&&e| e > 0).count() > 1) {
        for (v, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                counts[v] += 1;
            }
        }
    }
    let v = (0..n).max_by_key(|&v| (counts[v], core::cmp::Reverse(v))).unwrap();
    let pivot = Monomial::var(n, v);

    // N(I) = N(I + x) + t * N(I : x)
    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exponents()[v] == 0).cloned().collect();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut e = m.exponents().to_vec();
            e[v] = e[v].saturating_sub(1);
            Monomial::from_exponents(e)
        })
        .collect();
    let mut out = numerator(minimalize(plus));
    poly_add_shifted(&mut out, &numerator(minimalize(colon)), 1);
    out
}

/// Generalized binomial `x (x-1) ... (x-r+1) / r!` for any integer `x`.
fn binom_poly(x: i128, r: i128) -> i128 {
    let mut num = 1i128;
    let mut den = 1i128;
    for i in 0..r {
        num *= x - i;
        den *= i + 1;
    }
    num / den
}

impl HilbertData {
    /// Reads dimension, degree and arithmetic genus from a Hilbert series
    /// numerator over `(1-t)^nvars`.
    pub fn from_numerator(numerator: &[i64], nvars: usize) -> HilbertData {
        let mut q: Vec<i128> = numerator.iter().map(|&c| c as i128).collect();
        while q.last() == Some(&0) {
            q.pop();
        }
        if q.is_empty() {
            return HilbertData {
                projective_dimension: -1,
                degree: 0,
                arithmetic_genus: 0,
            };
        }
        let mut divided = 0usize;
        while q.iter().sum::<i128>() == 0 {
            // synthetic division by (1 - t)
            let mut out = vec![0i128; q.len() - 1];
            let mut acc = 0i128;
            for i in 0..out.len() {
                acc += q[i];
                out[i] = acc;
            }
            q = out;
            divided += 1;
        }
        let krull = nvars as i128 - divided as i128;
        let degree: i128 = q.iter().sum();
        if krull <= 0 {
            return HilbertData {
                projective_dimension: -1,
                degree: 0,
                arithmetic_genus: 0,
            };
        }
        // P(0) = sum_j q_j binom(D - 1 - j, D - 1)
        let p0: i128 = q
            .iter()
            .enumerate()
            .map(|(j, &c)| c * binom_poly(krull - 1 - j as i128, krull - 1))
            .sum();
        let dim = krull - 1;
        let sign = if dim % 2 == 0 { 1 } else { -1 };
        HilbertData {
            projective_dimension: dim as i64,
            degree: degree as i64,
            arithmetic_genus: (sign * (p0 - 1)) as i64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn numerators_of_simple_ideals() {
        assert_eq!(hilbert_numerator(&[mono(&[0, 2, 0])]), vec![1, 0, -1]);
        assert_eq!(hilbert_numerator(&[mono(&[1, 1])]), vec![1, 0, -1]);
        assert_eq!(hilbert_numerator(&[mono(&[0, 0])]), Vec::<i64>::new());
        assert_eq!(hilbert_numerator(&[]), vec![1]);
        // (xy, xz, yz): three points
        let n = hilbert_numerator(&[mono(&[1, 1, 0]), mono(&[1, 0, 1]), mono(&[0, 1, 1])]);
        assert_eq!(n, vec![1, 0, -3, 2]);
        let h = HilbertData::from_numerator(&n, 3);
        assert_eq!((h.projective_dimension, h.degree, h.arithmetic_genus), (0, 3, 2));
    }

    #[test]
    fn conic_and_plane_cubic() {
        let conic = HilbertData::from_numerator(&[1, 0, -1], 3);
        assert_eq!(conic, HilbertData { projective_dimension: 1, degree: 2, arithmetic_genus: 0 });
        let cubic = HilbertData::from_numerator(&[1, 0, 0, -1], 3);
        assert_eq!(cubic, HilbertData { projective_dimension: 1, degree: 3, arithmetic_genus: 1 });
        // complete intersection of a quadric and a cubic in P^3: canonical genus 4 curve
        let ci = HilbertData::from_numerator(&[1, 0, -1, -1, 0, 1], 4);
        assert_eq!(ci, HilbertData { projective_dimension: 1, degree: 6, arithmetic_genus: 4 });
        // quadric surface in P^3
        let q = HilbertData::from_numerator(&[1, 0, -1], 4);
        assert_eq!(q, HilbertData { projective_dimension: 2, degree: 2, arithmetic_genus: 0 });
    }
}
