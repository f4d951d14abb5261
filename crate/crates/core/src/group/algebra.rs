//! Lie-algebra coefficients on the six ordered index pairs.

use std::ops::{Add, Mul};

use nalgebra::Matrix2;

use crate::four_vector::METRIC_DIAG;
use crate::C64;

/// The six ordered index pairs `(a, b)` with `a < b` that label antisymmetric
/// rank-2 objects and Lorentz generators.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Slot of the ordered pair `(a, b)`, `a < b`, in [`PAIRS`].
pub fn pair_index(a: usize, b: usize) -> usize {
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an ordered index pair: ({a}, {b})"),
    }
}

/// Real antisymmetric coefficient array `omega^ab`, stored on ordered pairs.
///
/// Exponentials contract these with generators as `sum_{a<b} 2 omega^ab
/// Sigma_ab`, so formulas written with unrestricted double sums hold verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AlgebraCoefficients(pub [f64; 6]);

impl AlgebraCoefficients {
    pub const ZERO: AlgebraCoefficients = AlgebraCoefficients([0.0; 6]);

    pub fn from_pairs(w: [f64; 6]) -> Self {
        AlgebraCoefficients(w)
    }

    /// Coefficient `omega^ab` with the antisymmetry sign applied.
    pub fn get(&self, a: usize, b: usize) -> f64 {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.0[pair_index(a, b)],
            std::cmp::Ordering::Greater => -self.0[pair_index(b, a)],
            std::cmp::Ordering::Equal => 0.0,
        }
    }

    /// Unit direction for pair `(a, b)`: the stored slot holds 1/2 so that the
    /// unrestricted double-sum contraction with generators is exactly one
    /// `Sigma_ab`.
    pub fn unit_pair(k: usize) -> Self {
        let mut w = [0.0; 6];
        w[k] = 0.5;
        AlgebraCoefficients(w)
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// The sl(2,C) matrix `sum_{a<b} 2 omega^ab sigma_ab` in the fundamental
    /// generator basis.
    pub fn to_sl2c(&self) -> Matrix2<C64> {
        let mut m = Matrix2::zeros();
        let gens = super::representation::fundamental_generators();
        for k in 0..6 {
            m += gens[k] * C64::new(2.0 * self.0[k], 0.0);
        }
        m
    }

    /// Inverse of [`AlgebraCoefficients::to_sl2c`] for traceless matrices.
    ///
    /// Decomposes `M = sum_i c_i sigma_i` with complex `c_i = tr(sigma_i M)/2`;
    /// the boost slots carry `Re c_i` and the rotation slots `-Im c_i` with the
    /// orientation fixed by the fundamental generator basis.
    pub fn from_sl2c(m: &Matrix2<C64>) -> Self {
        let c1 = (m[(0, 1)] + m[(1, 0)]) * 0.5;
        let c2 = (m[(0, 1)] - m[(1, 0)]) * C64::new(0.0, 0.5);
        let c3 = (m[(0, 0)] - m[(1, 1)]) * 0.5;
        let mut w = [0.0; 6];
        w[pair_index(0, 1)] = c1.re;
        w[pair_index(0, 2)] = c2.re;
        w[pair_index(0, 3)] = c3.re;
        w[pair_index(2, 3)] = -c1.im;
        w[pair_index(1, 3)] = c2.im;
        w[pair_index(1, 2)] = -c3.im;
        AlgebraCoefficients(w)
    }

    /// Lie bracket of two coefficient arrays, computed through sl(2,C).
    pub fn bracket(&self, other: &AlgebraCoefficients) -> AlgebraCoefficients {
        let a = self.to_sl2c();
        let b = other.to_sl2c();
        AlgebraCoefficients::from_sl2c(&(a * b - b * a))
    }
}

impl Add for AlgebraCoefficients {
    type Output = AlgebraCoefficients;
    fn add(self, rhs: AlgebraCoefficients) -> AlgebraCoefficients {
        let mut w = [0.0; 6];
        for k in 0..6 {
            w[k] = self.0[k] + rhs.0[k];
        }
        AlgebraCoefficients(w)
    }
}

impl Mul<f64> for AlgebraCoefficients {
    type Output = AlgebraCoefficients;
    fn mul(self, s: f64) -> AlgebraCoefficients {
        let mut w = self.0;
        for v in &mut w {
            *v *= s;
        }
        AlgebraCoefficients(w)
    }
}

/// Coefficients of the Lorentz bracket relations
/// `{S_ab, S_cd} = eta_ac S_bd - eta_bc S_ad + eta_bd S_ac - eta_ad S_bc`
/// expanded over the six stored pairs: returns `kappa` with
/// `{S_ab, S_cd} = sum_k kappa[k] S_k`.
pub fn structure_coefficients(ab: usize, cd: usize) -> [f64; 6] {
    let (a, b) = PAIRS[ab];
    let (c, d) = PAIRS[cd];
    let mut kappa = [0.0; 6];
    let push = (|kappa: &mut [f64; 6], factor: f64, x: usize, y: usize| {
        if x == y {
            return;
        }
        if x < y {
            kappa[pair_index(x, y)] += factor;
        } else {
            kappa[pair_index(y, x)] -= factor;
        }
    }) as fn(&mut [f64; 6], f64, usize, usize);
    // eta is diagonal, so each term survives only when its indices coincide.
    if a == c {
        push(&mut kappa, METRIC_DIAG[a], b, d);
    }
    if b == c {
        push(&mut kappa, -METRIC_DIAG[b], a, d);
    }
    if b == d {
        push(&mut kappa, METRIC_DIAG[b], a, c);
    }
    if a == d {
        push(&mut kappa, -METRIC_DIAG[a], b, c);
    }
    kappa
}
