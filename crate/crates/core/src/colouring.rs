//! Modular colourings: the point `m ∈ Z^d` gets colour `(Σ mᵢ) mod n`.
//!
//! Each colour class is a translate of the class of colour 0 by a basis
//! vector, so all classes are congruent and have equal density. Classes are
//! infinite and only ever exposed through predicates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::rotrep::RotationRep;
use crate::IntVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColourLattice {
    dim: usize,
    modulus: u64,
}

impl ColourLattice {
    pub fn new(dim: usize, modulus: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("lattice dimension must be >= 1".into()));
        }
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(ColourLattice { dim, modulus })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Residue of the coordinate sum in `0..n`, also for negative coordinates.
    pub fn colour_of(&self, m: &IntVector) -> Result<u64> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: m.dim(),
            });
        }
        let residue = m.sum().mod_floor(&BigInt::from(self.modulus));
        Ok(residue.to_u64().expect("residue is below the modulus"))
    }

    pub fn in_sublattice(&self, q: u64, m: &IntVector) -> Result<bool> {
        if q >= self.modulus {
            return Err(Error::ColourOutOfRange { q, n: self.modulus });
        }
        Ok(self.colour_of(m)? == q)
    }

    /// Colours along the orbit `m, Rm, …, R^{k−1}m`.
    pub fn orbit_colours(&self, rep: &RotationRep, m: &IntVector) -> Result<Vec<u64>> {
        if rep.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rep.dim(),
            });
        }
        let mut point = m.clone();
        let mut colours = Vec::with_capacity(rep.k() as usize);
        for _ in 0..rep.k() {
            colours.push(self.colour_of(&point)?);
            point = rep.matrix().apply(&point)?;
        }
        Ok(colours)
    }

    /// True iff the whole orbit of `m` carries a single colour.
    pub fn orbit_is_monochrome(&self, rep: &RotationRep, m: &IntVector) -> Result<bool> {
        let colours = self.orbit_colours(rep, m)?;
        Ok(colours.windows(2).all(|w| w[0] == w[1]))
    }
}
