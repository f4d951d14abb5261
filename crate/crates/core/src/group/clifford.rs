//! Gamma matrices and the classical-spinor map into SL(2,C).

use nalgebra::{Matrix2, Matrix4};

use crate::C64;

/// The four gamma matrices and the chirality matrix `gamma^5` in the crate's
/// fixed basis.
///
/// The basis has `gamma^0 = diag(1, 1, -1, -1)` and is chosen so that
/// `det G(z) = zbar z - zbar gamma^5 z` holds identically for the spinor
/// arrangement [`DiracSpinor::spinor_matrix`]; it is the standard diagonal
/// basis conjugated by `diag(-1, 1, 1, 1)`. All entries are exact, and
/// `{gamma_a, gamma_b} = 2 eta_ab` holds exactly; `gamma^5 = i gamma^0
/// gamma^1 gamma^2 gamma^3` anticommutes with every `gamma_a`.
pub fn dirac_gammas() -> ([Matrix4<C64>; 4], Matrix4<C64>) {
    let z = C64::new(0.0, 0.0);
    let o = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let g0 = Matrix4::from_diagonal(&nalgebra::Vector4::new(o, o, -o, -o));
    let g1 = Matrix4::new(
        z, z, z, -o, //
        z, z, o, z, //
        z, -o, z, z, //
        o, z, z, z,
    );
    let g2 = Matrix4::new(
        z, z, z, i, //
        z, z, i, z, //
        z, i, z, z, //
        i, z, z, z,
    );
    let g3 = Matrix4::new(
        z, z, -o, z, //
        z, z, z, -o, //
        o, z, z, z, //
        z, o, z, z,
    );
    let g5 = Matrix4::new(
        z, z, -o, z, //
        z, z, z, o, //
        -o, z, z, z, //
        z, o, z, z,
    );
    ([g0, g1, g2, g3], g5)
}

/// A classical spinor of four complex variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracSpinor(pub [C64; 4]);

impl DiracSpinor {
    pub fn new(z: [C64; 4]) -> Self {
        DiracSpinor(z)
    }

    /// Arranges the four components into the 2x2 matrix
    /// `[[z1 + z3, z2 - z4], [-z2* - z4*, z1* - z3*]]`.
    pub fn spinor_matrix(&self) -> Matrix2<C64> {
        let [z1, z2, z3, z4] = self.0;
        Matrix2::new(
            z1 + z3,
            z2 - z4,
            -z2.conj() - z4.conj(),
            z1.conj() - z3.conj(),
        )
    }

    /// Inverse of [`DiracSpinor::spinor_matrix`]; the arrangement is a
    /// real-linear bijection of C^4 onto the 2x2 complex matrices.
    pub fn from_spinor_matrix(g: &Matrix2<C64>) -> Self {
        let z1 = (g[(0, 0)] + g[(1, 1)].conj()) * 0.5;
        let z3 = (g[(0, 0)] - g[(1, 1)].conj()) * 0.5;
        let z2 = (g[(0, 1)] - g[(1, 0)].conj()) * 0.5;
        let z4 = (-g[(0, 1)] - g[(1, 0)].conj()) * 0.5;
        DiracSpinor([z1, z2, z3, z4])
    }

    /// The bilinears `(zbar z, zbar gamma^5 z)` with `zbar = z^dagger gamma^0`.
    ///
    /// The spinor parametrizes an SL(2,C) element iff `zbar z = 1` and
    /// `zbar gamma^5 z = 0` (then `det spinor_matrix = 1`).
    pub fn constraints(&self) -> (C64, C64) {
        let (gamma, g5) = dirac_gammas();
        let zv = nalgebra::Vector4::from_row_slice(&self.0);
        let zbar = zv.adjoint() * gamma[0];
        let zbar_z = (zbar * zv)[(0, 0)];
        let zbar_g5_z = (zbar * g5 * zv)[(0, 0)];
        (zbar_z, zbar_g5_z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::four_vector::METRIC_DIAG;
    use crate::sample;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn clifford_relations_hold_exactly() {
        let (g, g5) = dirac_gammas();
        for a in 0..4 {
            for b in 0..4 {
                let anti = g[a] * g[b] + g[b] * g[a];
                let expected = if a == b {
                    Matrix4::identity() * C64::new(2.0 * METRIC_DIAG[a], 0.0)
                } else {
                    Matrix4::zeros()
                };
                assert_eq!(anti, expected, "anticommutator ({a}, {b})");
            }
            assert_eq!(g5 * g[a], -(g[a] * g5), "gamma5 anticommutation {a}");
        }
        assert_eq!(g5 * g5, Matrix4::identity());
    }

    #[test]
    fn gamma5_is_i_times_gamma_product() {
        let (g, g5) = dirac_gammas();
        let prod = g[0] * g[1] * g[2] * g[3] * C64::new(0.0, 1.0);
        assert_eq!(prod, g5);
    }

    #[test]
    fn trace_table_is_four_eta() {
        let (g, _) = dirac_gammas();
        for a in 0..4 {
            for b in 0..4 {
                let tr = (g[a] * g[b]).trace();
                let expected = if a == b { 4.0 * METRIC_DIAG[a] } else { 0.0 };
                assert_eq!(tr, C64::new(expected, 0.0), "trace ({a}, {b})");
            }
        }
    }

    #[test]
    fn spinor_matrix_basis_examples() {
        let o = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        let e1 = DiracSpinor([o, z, z, z]);
        assert_eq!(e1.spinor_matrix(), Matrix2::identity());
        let e2 = DiracSpinor([z, o, z, z]);
        assert_eq!(e2.spinor_matrix(), Matrix2::new(z, o, -o, z));
    }

    #[test]
    fn constraint_basis_examples() {
        let o = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        let (n, chi) = DiracSpinor([o, z, z, z]).constraints();
        assert_eq!(n, o);
        assert_eq!(chi, z);
        let (n, chi) = DiracSpinor([z, z, o, z]).constraints();
        assert_eq!(n, -o);
        assert_eq!(chi, z);
    }

    #[test]
    fn determinant_identity_on_random_spinors() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..1000 {
            let zc: [C64; 4] = std::array::from_fn(|_| sample::complex(&mut rng, 1.0));
            let sp = DiracSpinor(zc);
            let det = sp.spinor_matrix().determinant();
            let (zbar_z, zbar_g5_z) = sp.constraints();
            assert!((det - (zbar_z - zbar_g5_z)).norm() < 1e-12);
        }
    }

    #[test]
    fn unimodular_spinors_have_unit_bilinear_combination() {
        let mut rng = StdRng::seed_from_u64(32);
        for _ in 0..1000 {
            let a = sample::group_element(&mut rng, 1.5);
            let sp = DiracSpinor::from_spinor_matrix(a.matrix());
            assert!((sp.spinor_matrix() - a.matrix()).norm() < 1e-14);
            let (zbar_z, zbar_g5_z) = sp.constraints();
            assert!(((zbar_z - zbar_g5_z) - C64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }
}
