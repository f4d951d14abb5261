//! Antisymmetric rank-2 spin tensor `S_ab`.

use std::ops::{Add, Mul, Sub};

use nalgebra::Matrix4;

use crate::four_vector::{FourVector, METRIC_DIAG};
use crate::group::algebra::{pair_index, PAIRS};

/// Real antisymmetric 4x4 tensor with lower indices, stored on the six
/// ordered pairs `(0,1), (0,2), (0,3), (1,2), (1,3), (2,3)`.
///
/// Antisymmetry is exact by construction: only the `a < b` slots exist.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpinTensor(pub [f64; 6]);

impl SpinTensor {
    pub const ZERO: SpinTensor = SpinTensor([0.0; 6]);

    pub fn from_pairs(s: [f64; 6]) -> Self {
        SpinTensor(s)
    }

    /// Component `S_ab` with the antisymmetry sign applied.
    pub fn get(&self, a: usize, b: usize) -> f64 {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.0[pair_index(a, b)],
            std::cmp::Ordering::Greater => -self.0[pair_index(b, a)],
            std::cmp::Ordering::Equal => 0.0,
        }
    }

    pub fn set_pair(&mut self, a: usize, b: usize, value: f64) {
        assert!(a < b, "set_pair takes an ordered index pair");
        self.0[pair_index(a, b)] = value;
    }

    /// Full antisymmetric matrix `S_ab`.
    pub fn to_matrix(&self) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        for (k, &(a, b)) in PAIRS.iter().enumerate() {
            m[(a, b)] = self.0[k];
            m[(b, a)] = -self.0[k];
        }
        m
    }

    /// Builds the tensor from the `a < b` entries of an antisymmetric matrix.
    pub fn from_matrix(m: &Matrix4<f64>) -> Self {
        let mut s = [0.0; 6];
        for (k, &(a, b)) in PAIRS.iter().enumerate() {
            s[k] = m[(a, b)];
        }
        SpinTensor(s)
    }

    /// Raised component `S^ab = eta^ac eta^bd S_cd`.
    pub fn get_raised(&self, a: usize, b: usize) -> f64 {
        METRIC_DIAG[a] * METRIC_DIAG[b] * self.get(a, b)
    }

    /// Total spin `S_ab S^ab` as an unrestricted double sum, equal to
    /// `2 sum_{i<j} S_ij^2 - 2 sum_i S_0i^2`.
    pub fn total_spin(&self) -> f64 {
        let mut total = 0.0;
        for (k, &(a, b)) in PAIRS.iter().enumerate() {
            total += 2.0 * METRIC_DIAG[a] * METRIC_DIAG[b] * self.0[k] * self.0[k];
        }
        total
    }

    /// Contraction `(S u)_a = S_ab u^b`.
    pub fn contract(&self, u: &FourVector) -> FourVector {
        let mut out = [0.0; 4];
        for a in 0..4 {
            for b in 0..4 {
                out[a] += self.get(a, b) * u[b];
            }
        }
        FourVector(out)
    }

    /// Transforms both lower indices: `S'_ab = (L^-1)^c_a (L^-1)^d_b S_cd`
    /// for the upper-index transformation matrix `L`.
    pub fn transformed(&self, l: &Matrix4<f64>) -> SpinTensor {
        let li = l
            .try_inverse()
            .expect("transformation matrix must be invertible");
        SpinTensor::from_matrix(&(li.transpose() * self.to_matrix() * li))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl Add for SpinTensor {
    type Output = SpinTensor;
    fn add(self, rhs: SpinTensor) -> SpinTensor {
        let mut s = [0.0; 6];
        for k in 0..6 {
            s[k] = self.0[k] + rhs.0[k];
        }
        SpinTensor(s)
    }
}

impl Sub for SpinTensor {
    type Output = SpinTensor;
    fn sub(self, rhs: SpinTensor) -> SpinTensor {
        let mut s = [0.0; 6];
        for k in 0..6 {
            s[k] = self.0[k] - rhs.0[k];
        }
        SpinTensor(s)
    }
}

impl Mul<f64> for SpinTensor {
    type Output = SpinTensor;
    fn mul(self, f: f64) -> SpinTensor {
        let mut s = self.0;
        for v in &mut s {
            *v *= f;
        }
        SpinTensor(s)
    }
}
