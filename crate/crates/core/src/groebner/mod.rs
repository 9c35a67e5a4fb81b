//! Gröbner bases over `GF(p)`: Buchberger's algorithm, normal forms, ideal
//! equality, kernels and preimages of ring maps by elimination, and Hilbert
//! series invariants read from leading-term ideals.

mod buchberger;
mod elim;
mod hilbert;
mod ideal;
mod macaulay;

pub use buchberger::{groebner_basis, reduce_full};
pub use elim::{kernel_of_ring_map, preimage};
pub use hilbert::{hilbert_numerator, HilbertData};
pub use ideal::IdealGB;
pub use macaulay::macaulay_normal_form;
