//! Lie-group arithmetic for relativistic spinning particles.
//!
//! The crate provides exact-convention arithmetic on SL(2,C), its Lie algebra
//! and finite-dimensional representations ([`group`]), spin generators
//! realized as directional derivatives on the group ([`operators`]),
//! classical spin transport in electromagnetic fields ([`bmt`]),
//! Lie-Poisson Hamiltonian dynamics on the cotangent bundle of
//! R^4 x SL(2,C) x U(1) ([`hamiltonian`]), and SU(2) harmonic analysis
//! ([`harmonic`]).
//!
//! Conventions used throughout:
//!
//! * Minkowski metric `eta = diag(+1, -1, -1, -1)`.
//! * Antisymmetric rank-2 objects are stored on the six ordered index pairs
//!   `(0,1), (0,2), (0,3), (1,2), (1,3), (2,3)`; contractions that are written
//!   as unrestricted double sums carry an explicit factor 2 so the formulas
//!   hold verbatim.
//! * The covering map SL(2,C) -> SO(1,3) uses `X(p) = p^0 I + p^i sigma_i`
//!   with `X -> A X A^dagger`.

pub mod bmt;
pub mod error;
pub mod four_vector;
pub mod group;
pub mod hamiltonian;
pub mod harmonic;
pub mod operators;
pub mod sample;
pub mod spin_tensor;

pub use error::Error;
pub use four_vector::FourVector;
pub use group::algebra::AlgebraCoefficients;
pub use group::element::GroupElement;
pub use spin_tensor::SpinTensor;

/// Complex scalar type used by the whole crate.
pub type C64 = nalgebra::Complex<f64>;
