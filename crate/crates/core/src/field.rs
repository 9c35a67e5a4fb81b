//! Arithmetic in the prime field `GF(p)`.
//!
//! Elements are plain `u32` residues in `[0, p)`; the modulus is carried by a
//! [`PrimeField`] context. Products are formed in 64-bit intermediates, which
//! is why the modulus is capped below `2^31`.

use crate::error::FieldError;

/// The characteristic used by the reference session.
pub const DEFAULT_PRIME: u32 = 10007;

/// A residue in `[0, p)`.
pub type FieldElement = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !(3..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(FieldError::BadModulus(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer.
    #[inline]
    pub fn from_i64(self, v: i64) -> FieldElement {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn from_u64(self, v: u64) -> FieldElement {
        (v % self.p as u64) as u32
    }

    #[inline]
    pub fn add(self, a: FieldElement, b: FieldElement) -> FieldElement {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: FieldElement) -> FieldElement {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: FieldElement, b: FieldElement) -> FieldElement {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// `a - c·b`, the elimination kernel.
    #[inline]
    pub fn sub_mul(self, a: FieldElement, c: FieldElement, b: FieldElement) -> FieldElement {
        self.sub(a, self.mul(c, b))
    }

    pub fn pow(self, mut a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_multiple_of(self.p) {
            return Err(FieldError::DivisionByZero(self.p));
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.from_i64(t0))
    }

    pub fn div(self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn to_signed(self, a: FieldElement) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// Deterministic trial division; moduli are below `2^31`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `>= n`, as in `n = 10000` giving `10007`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f() -> PrimeField {
        PrimeField::new(10007).unwrap()
    }

    #[test]
    fn inverse_examples() {
        let f = f();
        assert_eq!(f.inv(3).unwrap(), 3336);
        assert_eq!(f.inv(1).unwrap(), 1);
        assert_eq!(f.inv(10006).unwrap(), 10006);
        assert_eq!(f.inv(0), Err(FieldError::DivisionByZero(10007)));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
        assert!(PrimeField::new(2147483647).is_ok());
    }

    #[test]
    fn next_prime_after_session_input() {
        assert_eq!(next_prime(10000), 10007);
        assert_eq!(next_prime(500), 503);
    }

    proptest! {
        #[test]
        fn inverse_multiplies_to_one(a in 1u32..10007) {
            let f = f();
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }

        #[test]
        fn inverse_of_product(a in 1u32..10007, b in 1u32..10007) {
            let f = f();
            let lhs = f.inv(f.mul(a, b)).unwrap();
            let rhs = f.mul(f.inv(b).unwrap(), f.inv(a).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn large_modulus_stays_reduced(a in 0u32..2147483647, b in 0u32..2147483647) {
            let f = PrimeField::new(2147483647).unwrap();
            prop_assert!(f.mul(a, b) < f.modulus());
            prop_assert!(f.add(a, b) < f.modulus());
            prop_assert_eq!(f.add(f.sub(a, b), b), a);
        }
    }
}
