use alloc::vec::Vec;

use super::multipoly::same_ring;
use super::{MultiPoly, Ring};
use crate::error::PolyError;

/// A ring homomorphism given by the images of the source variables.
#[derive(Debug, Clone, PartialEq)]
pub struct RingMap {
    source: Ring,
    target: Ring,
    images: Vec<MultiPoly>,
}

impl RingMap {
    pub fn new(source: &Ring, target: &Ring, images: Vec<MultiPoly>) -> Result<Self, PolyError> {
        if images.len() != source.nvars() {
            return Err(PolyError::MapArity {
                expected: source.nvars(),
                found: images.len(),
            });
        }
        if images.iter().any(|f| !same_ring(f.ring(), target)) {
            return Err(PolyError::RingMismatch);
        }
        Ok(RingMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(ring: &Ring) -> Self {
        let images = (0..ring.nvars()).map(|i| MultiPoly::var(ring, i)).collect();
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    /// Substitutes the images into `f`.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly, PolyError> {
        if !same_ring(f.ring(), &self.source) {
            return Err(PolyError::RingMismatch);
        }
        // powers[v][e] = images[v]^e, filled on demand
        let mut powers: Vec<Vec<MultiPoly>> = self
            .images
            .iter()
            .map(|_| alloc::vec![MultiPoly::one(&self.target)])
            .collect();
        let mut acc = MultiPoly::zero(&self.target);
        for (m, c) in f.terms() {
            let mut t = MultiPoly::constant(&self.target, *c);
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = &powers[v][powers[v].len() - 1] * &self.images[v];
                    powers[v].push(next);
                }
                t = &t * &powers[v][e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingMap) -> Result<RingMap, PolyError> {
        if !same_ring(&self.target, &other.source) {
            return Err(PolyError::RingMismatch);
        }
        let images = self
            .images
            .iter()
            .map(|f| other.apply(f))
            .collect::<Result<Vec<_>, _>>()?;
        RingMap::new(&self.source, &other.target, images)
    }
}
