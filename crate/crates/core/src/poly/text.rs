//! Text form of polynomials.
//!
//! Terms are printed largest first, joined by ` + ` / ` - `. A coefficient is
//! printed as its symmetric representative in `(-p/2, p/2]`, omitted when it
//! is `±1` in front of a nonconstant monomial, and joined to the monomial by
//! `*`. Variables are joined by `*`, exponents above 1 follow `^`. The zero
//! polynomial is `0`. Example: `3*t_0^2*t_4 - t_1*t_2 + 5`.
//!
//! The parser accepts this form and any sum of products of integers and
//! variable powers (no parentheses); coefficients are reduced mod `p`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use super::{Monomial, MultiPoly, Ring};
use crate::error::PolyError;

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let ring = self.ring_ref();
        let field = ring.field();
        for (i, (m, c)) in self.terms().iter().enumerate() {
            let sc = field.to_signed(*c);
            let neg = sc < 0;
            let abs = sc.unsigned_abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut first = true;
            if abs != 1 || m.is_one() {
                write!(f, "{abs}")?;
                first = false;
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(&ring.names()[v])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn number(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        core::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number too large"))
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        core::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }
}

pub fn parse_poly(ring: &Ring, s: &str) -> Result<MultiPoly, PolyError> {
    let field = ring.field();
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(Monomial, u32)> = Vec::new();
    let mut sign_neg = false;
    match p.peek() {
        Some(b'-') => {
            sign_neg = true;
            p.pos += 1;
        }
        Some(b'+') => p.pos += 1,
        None => return Err(p.err("empty input")),
        _ => {}
    }
    loop {
        // one term
        let mut coef = 1u32;
        let mut exps = alloc::vec![0u16; ring.nvars()];
        loop {
            match p.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = p.number()?;
                    coef = field.mul(coef, field.from_u64(n));
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let name = p.ident();
                    let v = ring
                        .var_index(name)
                        .ok_or_else(|| p.err(&format!("unknown variable {name}")))?;
                    let mut e = 1u64;
                    if p.peek() == Some(b'^') {
                        p.pos += 1;
                        e = p.number()?;
                    }
                    exps[v] = exps[v]
                        .checked_add(u16::try_from(e).map_err(|_| p.err("exponent too large"))?)
                        .ok_or_else(|| p.err("exponent too large"))?;
                }
                _ => return Err(p.err("expected a number or variable")),
            }
            if p.peek() == Some(b'*') {
                p.pos += 1;
            } else {
                break;
            }
        }
        if sign_neg {
            coef = field.neg(coef);
        }
        terms.push((Monomial::from_exponents(exps), coef));
        match p.peek() {
            None => break,
            Some(b'+') => sign_neg = false,
            Some(b'-') => sign_neg = true,
            Some(_) => return Err(p.err("expected + or -")),
        }
        p.pos += 1;
    }
    Ok(MultiPoly::from_terms(ring, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::{indexed_names, GradedRing, MonomialOrder};
    use crate::rng::FieldRng;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn ring() -> Ring {
        GradedRing::standard(PrimeField::new(10007).unwrap(), indexed_names("t", 5), MonomialOrder::GRevLex)
    }

    #[test]
    fn prints_conventional_syntax() {
        let r = ring();
        let f = parse_poly(&r, "3*t_0^2*t_4 - t_1*t_2 + 10006*t_3^3 + 5").unwrap();
        assert_eq!(f.to_string(), "-t_3^3 + 3*t_0^2*t_4 - t_1*t_2 + 5");
        assert_eq!(MultiPoly::zero(&r).to_string(), "0");
        assert_eq!(parse_poly(&r, "-1").unwrap().to_string(), "-1");
    }

    #[test]
    fn parse_errors() {
        let r = ring();
        assert!(matches!(parse_poly(&r, "t_9"), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_poly(&r, "t_0 +"), Err(PolyError::Parse { .. })));
        assert!(matches!(parse_poly(&r, ""), Err(PolyError::Parse { .. })));
    }

    proptest! {
        #[test]
        fn text_round_trip(seed in 0u64..1000) {
            let r = ring();
            let mut rng = FieldRng::from_seed(seed);
            let terms = (0..6)
                .map(|_| {
                    let e = (0..5).map(|_| rng.below(3) as u16).collect();
                    (Monomial::from_exponents(e), rng.element(r.field()))
                })
                .collect();
            let f = MultiPoly::from_terms(&r, terms);
            prop_assert_eq!(parse_poly(&r, &f.to_string()).unwrap(), f);
        }
    }
}
