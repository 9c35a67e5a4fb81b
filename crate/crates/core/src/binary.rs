//! Dense binary forms in `k[s,t]` and their rational roots on `P^1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{FieldElement, PrimeField};
use crate::linalg::Matrix;
use crate::poly::{Monomial, MultiPoly, Ring};
use crate::rng::FieldRng;

/// Largest characteristic for which roots are found by scanning all of
/// `P^1(GF(p))`; above it the Cantor–Zassenhaus route is used.
pub const EXHAUSTIVE_SCAN_LIMIT: u32 = 1 << 17;

/// A point `(x0 : x1)` of `P^1`, normalized to `(a : 1)` or `(1 : 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    pub x0: FieldElement,
    pub x1: FieldElement,
}

impl ProjPoint {
    pub const INFINITY: ProjPoint = ProjPoint { x0: 1, x1: 0 };

    pub fn affine(a: FieldElement) -> Self {
        ProjPoint { x0: a, x1: 1 }
    }

    pub fn normalized(x0: FieldElement, x1: FieldElement, field: PrimeField) -> Option<Self> {
        match (x0, x1) {
            (0, 0) => None,
            (_, 0) => Some(Self::INFINITY),
            _ => Some(ProjPoint::affine(field.div(x0, x1).unwrap())),
        }
    }
}

/// `sum_j c_j s^(d-j) t^j`; the degree is fixed even when coefficients
/// vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    coeffs: Vec<FieldElement>,
}

impl BinaryForm {
    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            coeffs: vec![0; degree + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<FieldElement>) -> Self {
        assert!(!coeffs.is_empty());
        BinaryForm { coeffs }
    }

    pub fn one() -> Self {
        BinaryForm { coeffs: vec![1] }
    }

    /// The linear form `x1*s - x0*t` vanishing at the point.
    pub fn vanishing_at(pt: ProjPoint, field: PrimeField) -> Self {
        BinaryForm {
            coeffs: vec![pt.x1, field.neg(pt.x0)],
        }
    }

    pub fn random(degree: usize, field: PrimeField, rng: &mut FieldRng) -> Self {
        BinaryForm {
            coeffs: (0..=degree).map(|_| rng.element(field)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, pt: ProjPoint, field: PrimeField) -> FieldElement {
        if pt.x1 == 0 {
            return field.mul(self.coeffs[0], field.pow(pt.x0, self.degree() as u64));
        }
        let d = self.degree() as u64;
        if pt.x1 == 1 {
            return self
                .coeffs
                .iter()
                .fold(0, |acc, &c| field.add(field.mul(acc, pt.x0), c));
        }
        let mut acc = 0;
        for (j, &c) in self.coeffs.iter().enumerate() {
            let mono = field.mul(field.pow(pt.x0, d - j as u64), field.pow(pt.x1, j as u64));
            acc = field.add(acc, field.mul(c, mono));
        }
        acc
    }

    pub fn mul(&self, other: &BinaryForm, field: PrimeField) -> BinaryForm {
        let p = field.modulus() as u64;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
            }
        }
        BinaryForm {
            coeffs: out.into_iter().map(|x| x as u32).collect(),
        }
    }

    pub fn pow(&self, e: usize, field: PrimeField) -> BinaryForm {
        (0..e).fold(BinaryForm::one(), |acc, _| acc.mul(self, field))
    }

    pub fn add(&self, other: &BinaryForm, field: PrimeField) -> BinaryForm {
        assert_eq!(self.degree(), other.degree());
        BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: FieldElement, field: PrimeField) -> BinaryForm {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|&a| field.mul(a, c)).collect(),
        }
    }

    /// `sum_j c_j f_j` for forms of one degree.
    pub fn combination(forms: &[BinaryForm], coeffs: &[FieldElement], field: PrimeField) -> BinaryForm {
        assert_eq!(forms.len(), coeffs.len());
        let mut acc = BinaryForm::zero(forms[0].degree());
        for (f, &c) in forms.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(&f.scale(c, field), field);
            }
        }
        acc
    }

    /// As a polynomial in a ring whose variables 0 and 1 are `s` and `t`.
    pub fn to_poly(&self, ring: &Ring) -> MultiPoly {
        let d = self.degree();
        let n = ring.nvars();
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| {
                let mut e = vec![0u16; n];
                e[0] = (d - j) as u16;
                e[1] = j as u16;
                (Monomial::from_exponents(e), c)
            })
            .collect();
        MultiPoly::from_terms(ring, terms)
    }

    /// Reads a form of the given degree from a polynomial in `s, t`.
    pub fn from_poly(f: &MultiPoly, degree: usize) -> Option<BinaryForm> {
        let mut coeffs = vec![0; degree + 1];
        for (m, c) in f.terms() {
            let e = m.exponents();
            if e[0] as usize + e[1] as usize != degree {
                return None;
            }
            coeffs[e[1] as usize] = *c;
        }
        Some(BinaryForm { coeffs })
    }

    /// Distinct `GF(p)`-rational roots, `(1:0)` first if present, then affine
    /// roots in increasing order.
    pub fn rational_roots(&self, field: PrimeField, rng: &mut FieldRng) -> Vec<ProjPoint> {
        assert!(!self.is_zero(), "the zero form vanishes everywhere");
        let mut roots = Vec::new();
        if self.coeffs[0] == 0 {
            roots.push(ProjPoint::INFINITY);
        }
        // affine part: f(x) = F(x, 1) with coefficient of x^(d-j) equal to c_j
        let mut affine: Vec<FieldElement> = self.coeffs.iter().rev().copied().collect();
        while affine.len() > 1 && *affine.last().unwrap() == 0 {
            affine.pop();
        }
        if field.modulus() <= EXHAUSTIVE_SCAN_LIMIT {
            for a in 0..field.modulus() {
                let v = affine
                    .iter()
                    .rev()
                    .fold(0, |acc, &c| field.add(field.mul(acc, a), c));
                if v == 0 {
                    roots.push(ProjPoint::affine(a));
                }
            }
        } else {
            let mut found = univariate::linear_roots(&affine, field, rng);
            found.sort_unstable();
            roots.extend(found.into_iter().map(ProjPoint::affine));
        }
        roots
    }
}

/// True iff the forms share no factor (Sylvester matrix of full rank).
pub fn coprime(f: &BinaryForm, h: &BinaryForm, field: PrimeField) -> bool {
    let (m, n) = (f.degree(), h.degree());
    let size = m + n;
    if size == 0 {
        return !(f.is_zero() || h.is_zero());
    }
    let mut syl = Matrix::zeros(size, size);
    for r in 0..n {
        for (j, &c) in f.coeffs().iter().enumerate() {
            syl.set(r, r + j, c);
        }
    }
    for r in 0..m {
        for (j, &c) in h.coeffs().iter().enumerate() {
            syl.set(n + r, r + j, c);
        }
    }
    syl.rank(field) == size
}

mod univariate {
    //! Dense univariate polynomials, lowest coefficient first.
    use super::*;

    fn trim(a: &mut Vec<FieldElement>) {
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
    }

    fn is_zero(a: &[FieldElement]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn rem(a: &[FieldElement], b: &[FieldElement], field: PrimeField) -> Vec<FieldElement> {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let inv = field.inv(b[db]).unwrap();
        while r.len() > db && !is_zero(&r) {
            let shift = r.len() - 1 - db;
            let c = field.mul(*r.last().unwrap(), inv);
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = field.sub_mul(r[shift + i], c, bc);
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    fn mulmod(a: &[FieldElement], b: &[FieldElement], m: &[FieldElement], field: PrimeField) -> Vec<FieldElement> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(x, y));
            }
        }
        rem(&out, m, field)
    }

    fn powmod(base: &[FieldElement], mut e: u64, m: &[FieldElement], field: PrimeField) -> Vec<FieldElement> {
        let mut acc = vec![1];
        let mut b = rem(base, m, field);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, m, field);
            }
            b = mulmod(&b, &b, m, field);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: &[FieldElement], b: &[FieldElement], field: PrimeField) -> Vec<FieldElement> {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        trim(&mut x);
        trim(&mut y);
        while !is_zero(&y) {
            let r = rem(&x, &y, field);
            x = y;
            y = r;
        }
        let inv = field.inv(*x.last().unwrap()).unwrap();
        x.iter().map(|&c| field.mul(c, inv)).collect()
    }

    fn sub(a: &[FieldElement], b: &[FieldElement], field: PrimeField) -> Vec<FieldElement> {
        let n = a.len().max(b.len());
        let mut out: Vec<FieldElement> = (0..n)
            .map(|i| field.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    /// Distinct roots in `GF(p)` of a nonzero polynomial.
    pub fn linear_roots(f: &[FieldElement], field: PrimeField, rng: &mut FieldRng) -> Vec<FieldElement> {
        let mut f = f.to_vec();
        trim(&mut f);
        if f.len() <= 1 {
            return Vec::new();
        }
        let p = field.modulus() as u64;
        // g = gcd(f, x^p - x): product of the distinct linear factors
        let xp = powmod(&[0, 1], p, &f, field);
        let g = gcd(&f, &sub(&xp, &[0, 1], field), field);
        let mut out = Vec::new();
        split(g, field, rng, &mut out);
        out
    }

    fn split(g: Vec<FieldElement>, field: PrimeField, rng: &mut FieldRng, out: &mut Vec<FieldElement>) {
        let deg = g.len() - 1;
        if deg == 0 {
            return;
        }
        if deg == 1 {
            out.push(field.neg(field.div(g[0], g[1]).unwrap()));
            return;
        }
        let half = (field.modulus() as u64 - 1) / 2;
        loop {
            let delta = rng.element(field);
            let h = powmod(&[delta, 1], half, &g, field);
            let d = gcd(&g, &sub(&h, &[1], field), field);
            let dd = d.len() - 1;
            if dd > 0 && dd < deg {
                let other = divide_exact(&g, &d, field);
                split(d, field, rng, out);
                split(other, field, rng, out);
                return;
            }
        }
    }

    fn divide_exact(a: &[FieldElement], b: &[FieldElement], field: PrimeField) -> Vec<FieldElement> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let inv = field.inv(b[db]).unwrap();
        let mut q = vec![0; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = field.mul(r[k + db], inv);
            q[k] = c;
            for (i, &bc) in b.iter().enumerate() {
                r[k + i] = field.sub_mul(r[k + i], c, bc);
            }
        }
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product_of_linears(points: &[ProjPoint], extra: &BinaryForm, field: PrimeField) -> BinaryForm {
        points
            .iter()
            .fold(extra.clone(), |acc, &p| acc.mul(&BinaryForm::vanishing_at(p, field), field))
    }

    #[test]
    fn roots_small_prime_scan() {
        let field = PrimeField::new(10007).unwrap();
        let mut rng = FieldRng::from_seed(1);
        let pts = [ProjPoint::INFINITY, ProjPoint::affine(5), ProjPoint::affine(9000)];
        // x^2 + 1 has no roots mod 10007 (10007 = 3 mod 4)
        let irreducible = BinaryForm::from_coeffs(vec![1, 0, 1]);
        let f = product_of_linears(&pts, &irreducible, field);
        assert_eq!(f.rational_roots(field, &mut rng), pts.to_vec());
        for p in pts {
            assert_eq!(f.eval(p, field), 0);
        }
    }

    #[test]
    fn roots_large_prime_splitting() {
        let field = PrimeField::new(1_000_003).unwrap();
        assert!(field.modulus() > EXHAUSTIVE_SCAN_LIMIT);
        let mut rng = FieldRng::from_seed(2);
        let pts = [ProjPoint::affine(3), ProjPoint::affine(77), ProjPoint::affine(999_999), ProjPoint::affine(0)];
        let extra = BinaryForm::from_coeffs(vec![1, 0, 1, 0]).mul(&BinaryForm::from_coeffs(vec![1, 1]), field);
        let f = product_of_linears(&pts, &extra, field);
        let mut expected = pts.to_vec();
        // extra = (s^3 + s t^2)(s + t) has roots (0:1) again and (1:-1) -> (-1 : 1)
        expected.push(ProjPoint::affine(field.neg(1)));
        expected.sort();
        expected.dedup();
        assert_eq!(f.rational_roots(field, &mut rng), expected);
    }

    #[test]
    fn coprimality() {
        let field = PrimeField::new(10007).unwrap();
        let l = BinaryForm::vanishing_at(ProjPoint::affine(4), field);
        let a = l.mul(&BinaryForm::from_coeffs(vec![1, 2, 3]), field);
        let b = l.mul(&BinaryForm::from_coeffs(vec![5, 0, 1]), field);
        assert!(!coprime(&a, &b, field));
        assert!(coprime(&BinaryForm::from_coeffs(vec![1, 2, 3]), &BinaryForm::from_coeffs(vec![5, 0, 1]), field));
    }

    #[test]
    fn eval_projective_representatives() {
        let field = PrimeField::new(101).unwrap();
        let f = BinaryForm::from_coeffs(vec![2, 3, 5]); // 2s^2 + 3st + 5t^2
        assert_eq!(f.eval(ProjPoint { x0: 2, x1: 3 }, field), (8 + 18 + 45));
        assert_eq!(f.eval(ProjPoint::affine(2), field), (8 + 6 + 5));
        assert_eq!(f.eval(ProjPoint::INFINITY, field), 2);
    }
}
