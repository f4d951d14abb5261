//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Principal matrix logarithm is undefined: tr A is at the branch point -2.
    #[error("matrix logarithm branch cut: tr A = {trace_re} + {trace_im}i is too close to -2")]
    BranchCut { trace_re: f64, trace_im: f64 },

    /// Momentum does not satisfy p.p = m^2 with p^0 > 0.
    #[error("momentum off the mass shell: p.p - m^2 = {residual}, p^0 = {p0}")]
    OffShell { residual: f64, p0: f64 },

    /// A verification sweep exceeded its tolerance.
    #[error("tolerance exceeded: {check}: worst error {worst} > {tolerance} at {location}")]
    ToleranceExceeded {
        check: String,
        worst: f64,
        tolerance: f64,
        location: String,
    },

    /// A state component left the finite floating-point range.
    #[error("non-finite state component at step {step}")]
    NonFinite { step: usize },

    /// The squared Hamiltonian is not positive.
    #[error("squared Hamiltonian is not positive: H^2 = {h_squared}")]
    ImaginaryMass { h_squared: f64 },

    /// The tetrad field is not invertible.
    #[error("singular tetrad: |det e| = {det}")]
    SingularTetrad { det: f64 },

    /// The matrix is not unitary within tolerance.
    #[error("matrix is not unitary: |U^dagger U - I| = {defect}")]
    NotUnitary { defect: f64 },

    /// The quadrature grid cannot resolve the requested band limit.
    #[error("grid too coarse: {got} points per angle, need at least {needed}")]
    GridTooCoarse { needed: usize, got: usize },

    /// A scalar argument is outside its admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Unknown representation label.
    #[error("unknown representation label: {0}")]
    UnknownLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
