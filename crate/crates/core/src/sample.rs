//! Seeded random sampling of domain objects, shared by tests and the
//! verification suites.

use rand::Rng;

use crate::four_vector::FourVector;
use crate::group::algebra::AlgebraCoefficients;
use crate::group::boost::LowerBoost;
use crate::group::element::GroupElement;
use crate::spin_tensor::SpinTensor;
use crate::C64;

/// Uniform coefficients with `|omega^ab| <= scale / sqrt(6)`, so the array
/// norm stays at or below `scale`.
pub fn algebra_coefficients<R: Rng>(rng: &mut R, scale: f64) -> AlgebraCoefficients {
    let bound = scale / 6.0f64.sqrt();
    let mut w = [0.0; 6];
    for v in &mut w {
        *v = rng.random_range(-bound..bound);
    }
    AlgebraCoefficients(w)
}

/// Random group element `exp(omega)` with `|omega| <= scale`.
pub fn group_element<R: Rng>(rng: &mut R, scale: f64) -> GroupElement {
    GroupElement::exp(&algebra_coefficients(rng, scale))
}

/// Random SU(2) element from a uniform unit quaternion.
pub fn su2_element<R: Rng>(rng: &mut R) -> GroupElement {
    loop {
        let q: [f64; 4] = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(1e-3..=1.0).contains(&n) {
            continue;
        }
        let [w, x, y, z] = q.map(|c| c / n);
        // U = w I - i (x sigma_1 + y sigma_2 + z sigma_3)
        let m = nalgebra::Matrix2::new(
            C64::new(w, -z),
            C64::new(-y, -x),
            C64::new(y, -x),
            C64::new(w, z),
        );
        return GroupElement::from_matrix_unchecked(m);
    }
}

pub fn four_vector<R: Rng>(rng: &mut R, scale: f64) -> FourVector {
    FourVector([
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
    ])
}

pub fn spin_tensor<R: Rng>(rng: &mut R, scale: f64) -> SpinTensor {
    let mut s = [0.0; 6];
    for v in &mut s {
        *v = rng.random_range(-scale..scale);
    }
    SpinTensor(s)
}

/// Random lower-triangular boost parameters with `lambda` log-uniform in
/// `[1/lambda_max, lambda_max]`.
pub fn lower_boost<R: Rng>(rng: &mut R, lambda_max: f64, zeta_max: f64) -> LowerBoost {
    let chi = rng.random_range(-lambda_max.ln()..lambda_max.ln());
    LowerBoost {
        lambda: chi.exp(),
        zeta: C64::new(
            rng.random_range(-zeta_max..zeta_max),
            rng.random_range(-zeta_max..zeta_max),
        ),
    }
}

/// Random on-shell momentum with mass `m` and bounded boost.
pub fn on_shell_momentum<R: Rng>(rng: &mut R, m: f64) -> FourVector {
    let b = lower_boost(rng, 2.0, 1.0);
    crate::group::boost::momentum_from_boost(&b, m)
}

pub fn complex<R: Rng>(rng: &mut R, scale: f64) -> C64 {
    C64::new(
        rng.random_range(-scale..scale),
        rng.random_range(-scale..scale),
    )
}
