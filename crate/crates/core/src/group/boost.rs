//! Lower-triangular boosts, the momentum chart on the mass shell, and the
//! little-group decomposition.

use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::four_vector::FourVector;
use crate::group::element::GroupElement;
use crate::C64;

/// Lower-triangular boost `[[lambda, 0], [zeta, 1/lambda]]` with
/// `lambda > 0`; transforms the apex `(m, 0, 0, 0)` into a given momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBoost {
    pub lambda: f64,
    pub zeta: C64,
}

impl LowerBoost {
    pub fn identity() -> Self {
        LowerBoost {
            lambda: 1.0,
            zeta: C64::new(0.0, 0.0),
        }
    }

    pub fn matrix(&self) -> GroupElement {
        GroupElement::from_matrix_unchecked(Matrix2::new(
            C64::new(self.lambda, 0.0),
            C64::new(0.0, 0.0),
            self.zeta,
            C64::new(1.0 / self.lambda, 0.0),
        ))
    }
}

/// Momentum reached from the apex: reads `p` off `m A A^dagger` through the
/// sigma-map, which gives
/// `p^0 = m (lambda^2 + lambda^-2 + |zeta|^2) / 2`,
/// `p^3 = m (lambda^2 - lambda^-2 - |zeta|^2) / 2`,
/// `p^1 = m lambda Re zeta`, `p^2 = m lambda Im zeta`.
/// The mass shell `p.p = m^2` holds by construction.
pub fn momentum_from_boost(b: &LowerBoost, m: f64) -> FourVector {
    let l2 = b.lambda * b.lambda;
    let z2 = b.zeta.norm_sqr();
    FourVector::new(
        0.5 * m * (l2 + 1.0 / l2 + z2),
        m * b.lambda * b.zeta.re,
        m * b.lambda * b.zeta.im,
        0.5 * m * (l2 - 1.0 / l2 - z2),
    )
}

/// Unique lower-triangular boost with `lambda > 0` carrying the apex to `p`.
pub fn boost_from_momentum(p: &FourVector, m: f64) -> Result<LowerBoost> {
    let residual = p.minkowski_square() - m * m;
    if residual.abs() > 1e-8 * m.max(1.0) * m.max(1.0) || p[0] <= 0.0 {
        return Err(Error::OffShell { residual, p0: p[0] });
    }
    // p^0 + p^3 > 0 strictly on the forward shell.
    let lambda = ((p[0] + p[3]) / m).sqrt();
    let zeta = C64::new(p[1] / (m * lambda), p[2] / (m * lambda));
    Ok(LowerBoost { lambda, zeta })
}

/// Factors `Lambda = B(p) U B(p')^-1` with `p' = vector_rep(Lambda)^-1 p` and
/// `U` in SU(2); `U` is polar-projected once so it is unitary to round-off.
pub fn little_group_decompose(
    lambda: &GroupElement,
    p: &FourVector,
    m: f64,
) -> Result<(LowerBoost, GroupElement, LowerBoost)> {
    let b = boost_from_momentum(p, m)?;
    let p_prime = p.transformed(&lambda.inverse().vector_rep());
    let b_prime = boost_from_momentum(&p_prime, m)?;
    let u_raw = b
        .matrix()
        .inverse()
        .compose(lambda)
        .compose(&b_prime.matrix());
    // One Newton polar step: U <- (U + (U^dagger)^-1) / 2.
    let ud_inv = GroupElement::from_matrix_unchecked(u_raw.matrix().adjoint()).inverse();
    let u = GroupElement::from_matrix_unchecked(
        (u_raw.matrix() + ud_inv.matrix()) * C64::new(0.5, 0.0),
    )
    .renormalized();
    Ok((b, u, b_prime))
}
