//! SL(2,C), its Lie algebra, finite-dimensional representations, Clifford
//! algebra, spinor maps, and the boost/little-group decomposition.

pub mod algebra;
pub mod boost;
pub mod clifford;
pub mod element;
pub mod representation;

pub use algebra::{pair_index, AlgebraCoefficients, PAIRS};
pub use boost::{boost_from_momentum, little_group_decompose, momentum_from_boost, LowerBoost};
pub use clifford::{dirac_gammas, DiracSpinor};
pub use element::{poincare_act, GroupElement};
pub use representation::{exp_map, generators, rep_matrix, RepLabel, Representation};
