//! Multivariate polynomials over `GF(p)` with a `Z^2` degree per variable.
//!
//! One representation serves the standard-graded rings `k[t_0..t_{g-1}]` and
//! `k[s,t]` as well as the bigraded Cox ring of a scroll: a [`GradedRing`]
//! carries the variable names, the bidegree table, positive integer weights
//! used by the monomial order, and the order itself.

mod map;
mod monomial;
mod multipoly;
mod ring;
mod text;

pub use map::RingMap;
pub use monomial::Monomial;
pub use multipoly::MultiPoly;
pub use ring::{indexed_names, monomial_basis, GradedRing, MonomialOrder, Ring};
pub use text::parse_poly;
pub use multipoly::same_ring;
