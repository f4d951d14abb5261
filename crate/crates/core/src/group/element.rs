//! SL(2,C) group elements and the covering map to the Lorentz group.

use nalgebra::{Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::four_vector::FourVector;
use crate::group::algebra::AlgebraCoefficients;
use crate::C64;

/// Tolerance on `|det A - 1|` for SL(2,C) membership.
pub const UNIMODULAR_TOL: f64 = 1e-12;

/// A 2x2 complex unimodular matrix.
///
/// Unimodularity is restored after every composition by dividing by the
/// principal square root of the determinant, so long products do not drift
/// off the group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement(Matrix2<C64>);

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement(Matrix2::identity())
    }

    /// Wraps a matrix, renormalizing the determinant to 1. Fails if the
    /// matrix is singular or far from unimodular.
    pub fn from_matrix(m: Matrix2<C64>) -> Result<Self> {
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        if det.norm() < 1e-6 || (det - C64::new(1.0, 0.0)).norm() > 1e-6 {
            return Err(Error::Domain(format!(
                "matrix is not unimodular: det = {} + {}i",
                det.re, det.im
            )));
        }
        Ok(GroupElement(m).renormalized())
    }

    /// Wraps a matrix without checking; used internally where the
    /// determinant is known.
    pub(crate) fn from_matrix_unchecked(m: Matrix2<C64>) -> Self {
        GroupElement(m)
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.0
    }

    pub fn det(&self) -> C64 {
        self.0[(0, 0)] * self.0[(1, 1)] - self.0[(0, 1)] * self.0[(1, 0)]
    }

    pub fn trace(&self) -> C64 {
        self.0[(0, 0)] + self.0[(1, 1)]
    }

    pub fn is_unimodular(&self) -> bool {
        (self.det() - C64::new(1.0, 0.0)).norm() <= UNIMODULAR_TOL
    }

    /// Divides by the principal square root of the determinant.
    pub fn renormalized(&self) -> Self {
        let s = self.det().sqrt();
        GroupElement(self.0 / s)
    }

    /// Exact inverse through the adjugate; uses det = 1.
    pub fn inverse(&self) -> Self {
        let m = &self.0;
        GroupElement(Matrix2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]))
    }

    pub fn dagger(&self) -> Matrix2<C64> {
        self.0.adjoint()
    }

    /// Group product with determinant renormalization.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement(self.0 * other.0).renormalized()
    }

    /// Closed-form exponential of the traceless matrix attached to `omega`.
    ///
    /// For traceless M with mu^2 = -det M, `exp(M) = cosh(mu) I + sinhc(mu) M`.
    pub fn exp(omega: &AlgebraCoefficients) -> GroupElement {
        let m = omega.to_sl2c();
        GroupElement(exp_traceless(&m))
    }

    /// Principal logarithm as algebra coefficients.
    ///
    /// Uses the spectral closed form `log A = (mu / s)(A - aI)` with
    /// `a = tr A / 2`, `s = sqrt(a^2 - 1)`, `mu = Log(a + s)`, and a series
    /// fallback near `a = 1`. The branch point sits at `tr A = -2`.
    pub fn log(&self) -> Result<AlgebraCoefficients> {
        let tr = self.trace();
        if (tr + C64::new(2.0, 0.0)).norm() < 1e-8 {
            return Err(Error::BranchCut {
                trace_re: tr.re,
                trace_im: tr.im,
            });
        }
        let a = tr * 0.5;
        let one = C64::new(1.0, 0.0);
        let m = if (a - one).norm() < 1e-3 {
            // Mercator series on N = A - I; N is close to nilpotent here.
            let n = self.0 - Matrix2::identity();
            let mut term = n;
            let mut sum = n;
            for k in 2..60 {
                term *= n;
                let contrib = term * C64::new(if k % 2 == 0 { -1.0 } else { 1.0 } / k as f64, 0.0);
                sum += contrib;
                if contrib.norm() < 1e-18 {
                    break;
                }
            }
            // Exactly traceless projection; det = 1 already forces tr ~ 0.
            let half_tr = (sum[(0, 0)] + sum[(1, 1)]) * 0.5;
            sum - Matrix2::identity() * half_tr
        } else {
            let s = (a * a - one).sqrt();
            let mu = (a + s).ln();
            (self.0 - Matrix2::identity() * a) * (mu / s)
        };
        Ok(AlgebraCoefficients::from_sl2c(&m))
    }

    /// The 2-to-1 covering map to the proper orthochronous Lorentz group:
    /// `X(p) = p^0 I + p^i sigma_i` transforms as `X -> A X A^dagger`, and the
    /// returned matrix acts on upper-index components, `p' = Lambda p`.
    pub fn vector_rep(&self) -> Matrix4<f64> {
        let sig = pauli_with_identity();
        let a = &self.0;
        let ad = a.adjoint();
        let mut l = Matrix4::zeros();
        for b in 0..4 {
            let x = a * sig[b] * ad;
            // Read p' off X' = p'^0 I + p'^i sigma_i.
            l[(0, b)] = 0.5 * (x[(0, 0)] + x[(1, 1)]).re;
            l[(1, b)] = 0.5 * (x[(0, 1)] + x[(1, 0)]).re;
            l[(2, b)] = 0.5 * (x[(1, 0)] - x[(0, 1)]).im;
            l[(3, b)] = 0.5 * (x[(0, 0)] - x[(1, 1)]).re;
        }
        l
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Frobenius distance to another element.
    pub fn distance(&self, other: &GroupElement) -> f64 {
        (self.0 - other.0).norm()
    }
}

/// `sigma_0 = I` together with the three Pauli matrices.
pub fn pauli_with_identity() -> [Matrix2<C64>; 4] {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    [
        Matrix2::new(one, z, z, one),
        Matrix2::new(z, one, one, z),
        Matrix2::new(z, -i, i, z),
        Matrix2::new(one, z, z, -one),
    ]
}

/// Exponential of a traceless 2x2 matrix via the Cayley-Hamilton closed form.
pub(crate) fn exp_traceless(m: &Matrix2<C64>) -> Matrix2<C64> {
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let mu2 = -det;
    let mu = mu2.sqrt();
    let (cosh, sinhc) = if mu.norm() < 1e-4 {
        // Even series in mu; branch of the square root is irrelevant.
        let c = C64::new(1.0, 0.0) + mu2 * 0.5 + mu2 * mu2 / 24.0 + mu2 * mu2 * mu2 / 720.0;
        let s = C64::new(1.0, 0.0) + mu2 / 6.0 + mu2 * mu2 / 120.0 + mu2 * mu2 * mu2 / 5040.0;
        (c, s)
    } else {
        (mu.cosh(), mu.sinh() / mu)
    };
    Matrix2::identity() * cosh + m * sinhc
}

/// Left action of the Poincare group on itself:
/// `(a, L0) o (x, L) = (vector_rep(L0) x + a, L0 L)`.
pub fn poincare_act(
    a: &FourVector,
    l0: &GroupElement,
    x: &FourVector,
    l: &GroupElement,
) -> (FourVector, GroupElement) {
    (x.transformed(&l0.vector_rep()) + *a, l0.compose(l))
}
