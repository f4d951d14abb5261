//! Minkowski four-vectors with signature (+, -, -, -).

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::{Matrix4, Vector4};

/// Diagonal entries of the Minkowski metric `eta = diag(+1, -1, -1, -1)`.
pub const METRIC_DIAG: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Metric as a 4x4 matrix.
pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

/// A real four-vector in natural units (c = 1 unless stated otherwise).
///
/// Whether the components are upper- or lower-index is the caller's
/// bookkeeping; [`FourVector::lowered`] flips between the two.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);

    pub fn new(c0: f64, c1: f64, c2: f64, c3: f64) -> Self {
        FourVector([c0, c1, c2, c3])
    }

    /// Minkowski square `v.v = eta_ab v^a v^b`.
    pub fn minkowski_square(&self) -> f64 {
        self.minkowski_dot(self)
    }

    /// Minkowski inner product `eta_ab u^a v^b`.
    pub fn minkowski_dot(&self, other: &FourVector) -> f64 {
        self.0[0] * other.0[0]
            - self.0[1] * other.0[1]
            - self.0[2] * other.0[2]
            - self.0[3] * other.0[3]
    }

    /// Componentwise index flip `v_a = eta_ab v^b` (and conversely).
    pub fn lowered(&self) -> FourVector {
        FourVector([self.0[0], -self.0[1], -self.0[2], -self.0[3]])
    }

    /// Euclidean norm of the components (used for residual reporting).
    pub fn euclidean_norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn as_vector(&self) -> Vector4<f64> {
        Vector4::new(self.0[0], self.0[1], self.0[2], self.0[3])
    }

    pub fn from_vector(v: &Vector4<f64>) -> Self {
        FourVector([v[0], v[1], v[2], v[3]])
    }

    /// Applies a 4x4 matrix to the components.
    pub fn transformed(&self, m: &Matrix4<f64>) -> FourVector {
        FourVector::from_vector(&(m * self.as_vector()))
    }
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for FourVector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
            self.0[3] + rhs.0[3],
        ])
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector([
            self.0[0] - rhs.0[0],
            self.0[1] - rhs.0[1],
            self.0[2] - rhs.0[2],
            self.0[3] - rhs.0[3],
        ])
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: f64) -> FourVector {
        FourVector([self.0[0] * s, self.0[1] * s, self.0[2] * s, self.0[3] * s])
    }
}

impl Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        self * -1.0
    }
}

impl From<[f64; 4]> for FourVector {
    fn from(c: [f64; 4]) -> Self {
        FourVector(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minkowski_square_uses_plus_minus_minus_minus() {
        let v = FourVector::new(2.0, 1.0, 1.0, 1.0);
        assert_eq!(v.minkowski_square(), 1.0);
        assert_eq!(FourVector::new(1.0, 0.0, 0.0, 0.0).minkowski_square(), 1.0);
        assert_eq!(FourVector::new(0.0, 1.0, 0.0, 0.0).minkowski_square(), -1.0);
    }

    #[test]
    fn lowering_flips_spatial_signs() {
        let v = FourVector::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(v.lowered(), FourVector::new(1.0, -2.0, -3.0, -4.0));
        assert_eq!(v.lowered().lowered(), v);
    }
}
