//! Crystallographic restrictions for colour lattices with modular sublattices.
//!
//! A point `m ∈ Z^d` of a modular `n`-colour lattice has colour
//! `(Σ mᵢ) mod n`. This crate builds exact integer representations of the
//! `k`-fold rotation `C_k`, derives the congruences that rotation invariance
//! of the colouring imposes, and computes the largest admissible colour
//! count: `p` when `k = p^r`, `1` when `k` has two or more distinct prime
//! factors, unbounded for `k = 1`. An independent brute-force [`oracle`]
//! checks the same answers point by point.
//!
//! ```
//! use chroma::{rep, restriction_number, ColourBound};
//!
//! let r9 = rep(9).unwrap();
//! assert_eq!(r9.dim(), 6);
//! assert_eq!(restriction_number(&r9).n_max, ColourBound::from(3));
//! ```
//!
//! Matrix arithmetic is generic over the integer [`Scalar`]; the aliases
//! below fix it to arbitrary precision, which is what the public API uses.

pub mod colouring;
pub mod error;
pub mod exactmat;
pub mod oracle;
pub mod restriction;
pub mod rotrep;

pub use colouring::ColourLattice;
pub use error::{Error, Result};
pub use exactmat::{Matrix, Scalar, Vector};
pub use oracle::{BoxSpec, Oracle};
pub use restriction::{
    closed_form_n, derive_system, min_dimension, render_equations, restriction_number,
    restriction_table, ColourBound, ModularSystem, RestrictionResult, TableRow,
};
pub use rotrep::{
    companion_prime_power, factorize, hermann_allowed, rep, rep_2d, totient, Factorization,
    RepKind, RotationRep,
};

/// Arbitrary-precision integer matrix.
pub type IntMatrix = Matrix<num_bigint::BigInt>;
/// Arbitrary-precision integer vector.
pub type IntVector = Vector<num_bigint::BigInt>;
