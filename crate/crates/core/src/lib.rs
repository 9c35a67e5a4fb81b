//! Exact computational algebra over prime fields for relative canonical
//! resolutions.
//!
//! The crate builds random `g`-nodal `k`-gonal canonical curves over `GF(p)`,
//! places them on the rational normal scroll swept out by their pencil,
//! computes the bigraded resolution of the curve inside the Cox ring of the
//! scroll and extracts the splitting types of the syzygy bundles. Closed-form
//! ranks, degrees and conjectural splitting types live in [`invariants`].
//!
//! Everything here is `no_std` (with `alloc`). IO, timing and file formats
//! belong to the `relcan` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod binary;
pub mod curvegen;
pub mod error;
pub mod field;
pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod relres;
pub mod rng;
pub mod scroll;
pub mod syzygy;

pub use error::Error;
pub use field::PrimeField;
