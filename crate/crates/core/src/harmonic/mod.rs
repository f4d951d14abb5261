//! SU(2) harmonic analysis: Wigner matrices, Peter-Weyl decomposition,
//! the momentum-chart volume identity, and the internal complex coordinates
//! with their hypercharge action.

use nalgebra::{DMatrix, Matrix2};

use crate::error::{Error, Result};
use crate::group::boost::{momentum_from_boost, LowerBoost};
use crate::group::element::GroupElement;
use crate::group::representation::sym_power;
use crate::operators::DerivativeStencil;
use crate::C64;

/// One irreducible block `D^s` with `s = two_s / 2`.
#[derive(Debug, Clone)]
pub struct WignerBlock {
    pub two_s: u32,
    pub matrix: DMatrix<C64>,
}

impl WignerBlock {
    pub fn dimension(&self) -> usize {
        self.two_s as usize + 1
    }
}

/// Spin-s representation matrix of an SU(2) element, built by symmetrized
/// tensor powers; exactly homomorphic, unitary for unitary input.
pub fn wigner_d(two_s: u32, u: &GroupElement) -> Result<WignerBlock> {
    let defect = (u.matrix().adjoint() * u.matrix() - Matrix2::identity()).norm();
    if defect > 1e-10 {
        return Err(Error::NotUnitary { defect });
    }
    let det_defect = (u.det() - C64::new(1.0, 0.0)).norm();
    if det_defect > 1e-10 {
        return Err(Error::NotUnitary { defect: det_defect });
    }
    Ok(WignerBlock {
        two_s,
        matrix: sym_power(u.matrix(), two_s as usize),
    })
}

/// SU(2) element from z-y-z Euler angles:
/// `u = exp(-i alpha sigma_3/2) exp(-i beta sigma_2/2) exp(-i gamma sigma_3/2)`
/// with `alpha in [0, 2pi)`, `beta in [0, pi]`, `gamma in [0, 4pi)`.
pub fn su2_from_euler(alpha: f64, beta: f64, gamma: f64) -> GroupElement {
    let (cb, sb) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let ea = C64::new(0.0, -(alpha / 2.0)).exp();
    let eg = C64::new(0.0, -(gamma / 2.0)).exp();
    GroupElement::from_matrix_unchecked(Matrix2::new(
        ea * eg * cb,
        -ea * eg.conj() * sb,
        ea.conj() * eg * sb,
        ea.conj() * eg.conj() * cb,
    ))
}

/// Euler angles of an SU(2) element, inverse of [`su2_from_euler`].
pub fn euler_from_su2(u: &GroupElement) -> (f64, f64, f64) {
    let m = u.matrix();
    let beta = 2.0 * f64::atan2(m[(1, 0)].norm(), m[(1, 1)].norm());
    let (sum, diff) = if m[(1, 1)].norm() > 1e-9 && m[(1, 0)].norm() > 1e-9 {
        (-2.0 * m[(0, 0)].arg(), 2.0 * m[(1, 0)].arg())
    } else if m[(1, 1)].norm() > 1e-9 {
        (-2.0 * m[(0, 0)].arg(), 0.0)
    } else {
        (0.0, 2.0 * m[(1, 0)].arg())
    };
    let mut alpha = 0.5 * (sum + diff);
    let mut gamma = 0.5 * (sum - diff);
    if alpha < 0.0 {
        alpha += std::f64::consts::TAU;
        gamma += std::f64::consts::TAU;
    }
    gamma = gamma.rem_euclid(2.0 * std::f64::consts::TAU);
    (alpha, beta, gamma)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev initial guess plus Newton iteration on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Product quadrature over SU(2) in Euler angles: uniform in the outer
/// angles, Gauss-Legendre in `cos beta`, normalized Haar weight.
///
/// The `gamma` angle has period `4 pi`, so its default point count is twice
/// the per-angle count to resolve the half-integer frequencies.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    pub n_alpha: usize,
    pub n_beta: usize,
    pub n_gamma: usize,
}

impl QuadratureGrid {
    /// Default grid for band limit `s_max = two_s_max / 2`.
    pub fn for_band_limit(two_s_max: u32) -> Self {
        let per_angle = two_s_max as usize + 2;
        QuadratureGrid {
            n_alpha: per_angle,
            n_beta: per_angle,
            n_gamma: 2 * per_angle,
        }
    }

    pub fn min_points(&self) -> usize {
        self.n_alpha.min(self.n_beta).min(self.n_gamma)
    }

    /// Nodes `(U, weight)` with weights summing to 1.
    pub fn nodes(&self) -> Vec<(GroupElement, f64)> {
        let (t_nodes, t_weights) = gauss_legendre(self.n_beta);
        let mut out = Vec::with_capacity(self.n_alpha * self.n_beta * self.n_gamma);
        let wa = 1.0 / self.n_alpha as f64;
        let wg = 1.0 / self.n_gamma as f64;
        for ia in 0..self.n_alpha {
            let alpha = std::f64::consts::TAU * ia as f64 / self.n_alpha as f64;
            for (t, wt) in t_nodes.iter().zip(t_weights.iter()) {
                let beta = t.acos();
                for ig in 0..self.n_gamma {
                    let gamma = 2.0 * std::f64::consts::TAU * ig as f64 / self.n_gamma as f64;
                    out.push((su2_from_euler(alpha, beta, gamma), 0.5 * wt * wa * wg));
                }
            }
        }
        out
    }
}

/// Coefficient table of a Peter-Weyl decomposition: one `(2s+1) x (2s+1)`
/// block per spin, the column being the multiplicity label.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub blocks: Vec<WignerBlock>,
}

impl CoefficientTable {
    /// Synthesis `sum_s sum_ab c^s_ab D^s_ab(U)`.
    pub fn reconstruct(&self, u: &GroupElement) -> Result<C64> {
        let mut total = C64::new(0.0, 0.0);
        for block in &self.blocks {
            let d = wigner_d(block.two_s, u)?;
            for r in 0..block.dimension() {
                for c in 0..block.dimension() {
                    total += block.matrix[(r, c)] * d.matrix[(r, c)];
                }
            }
        }
        Ok(total)
    }

    pub fn block(&self, two_s: u32) -> Option<&WignerBlock> {
        self.blocks.iter().find(|b| b.two_s == two_s)
    }
}

/// Analysis through Haar orthogonality:
/// `c^s_ab = (2s+1) integral f(U) conj(D^s_ab(U)) dU`.
///
/// The caller guarantees `f` is band-limited at or below `s_max`.
pub fn peter_weyl_decompose(
    f: &dyn Fn(&GroupElement) -> C64,
    two_s_max: u32,
    grid: &QuadratureGrid,
) -> Result<CoefficientTable> {
    let needed = two_s_max as usize + 1;
    if grid.min_points() < needed {
        return Err(Error::GridTooCoarse {
            needed,
            got: grid.min_points(),
        });
    }
    let nodes = grid.nodes();
    let mut blocks: Vec<WignerBlock> = (0..=two_s_max)
        .map(|two_s| WignerBlock {
            two_s,
            matrix: DMatrix::zeros(two_s as usize + 1, two_s as usize + 1),
        })
        .collect();
    for (u, w) in &nodes {
        let fv = f(u);
        for block in blocks.iter_mut() {
            let d = sym_power(u.matrix(), block.two_s as usize);
            let dim = block.two_s as usize + 1;
            let scale = C64::new((block.two_s as f64 + 1.0) * w, 0.0);
            for r in 0..dim {
                for c in 0..dim {
                    block.matrix[(r, c)] += fv * d[(r, c)].conj() * scale;
                }
            }
        }
    }
    Ok(CoefficientTable { blocks })
}

/// One row of the multiplicity bookkeeping: every spin-s representation
/// enters the decomposition with the multiplicity of its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicityRow {
    pub two_s: u32,
    pub dimension: u32,
    pub multiplicity: u32,
}

pub fn multiplicity_report(two_s_max: u32) -> Vec<MultiplicityRow> {
    (0..=two_s_max)
        .map(|two_s| MultiplicityRow {
            two_s,
            dimension: two_s + 1,
            multiplicity: two_s + 1,
        })
        .collect()
}

/// The two internal complex coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InternalCoords {
    pub zeta1: C64,
    pub zeta2: C64,
}

/// `zeta_1 = m zeta'`, `zeta_2 = m lambda' e^{i phi}`; requires
/// `lambda' > 0` (the apex chart does not reach `lambda' = 0`).
pub fn internal_coords(
    lambda_prime: f64,
    zeta_prime: C64,
    phi: f64,
    m: f64,
) -> Result<InternalCoords> {
    if lambda_prime <= 0.0 {
        return Err(Error::Domain(format!(
            "lambda' must be positive, got {lambda_prime}"
        )));
    }
    if m <= 0.0 {
        return Err(Error::Domain(format!("mass must be positive, got {m}")));
    }
    Ok(InternalCoords {
        zeta1: zeta_prime * m,
        zeta2: C64::new(0.0, phi).exp() * m * lambda_prime,
    })
}

/// Compares the stencil Jacobian of the momentum chart against the analytic
/// volume factor: returns `(numeric, analytic)` with
/// `numeric = |det d(p^1,p^2,p^3)/d(lambda, Re zeta, Im zeta)| / p^0` and
/// `analytic = m^2 lambda`. Their ratio is a single chart constant.
pub fn volume_jacobian_check(
    lambda: f64,
    zeta: C64,
    m: f64,
    stencil: &DerivativeStencil,
) -> (f64, f64) {
    let spatial = |l: f64, zr: f64, zi: f64, i: usize| -> f64 {
        momentum_from_boost(
            &LowerBoost {
                lambda: l,
                zeta: C64::new(zr, zi),
            },
            m,
        )[i]
    };
    let mut j = nalgebra::Matrix3::<f64>::zeros();
    for (row, i) in [1usize, 2, 3].iter().enumerate() {
        j[(row, 0)] = stencil
            .differentiate(|t| C64::new(spatial(lambda + t, zeta.re, zeta.im, *i), 0.0))
            .re;
        j[(row, 1)] = stencil
            .differentiate(|t| C64::new(spatial(lambda, zeta.re + t, zeta.im, *i), 0.0))
            .re;
        j[(row, 2)] = stencil
            .differentiate(|t| C64::new(spatial(lambda, zeta.re, zeta.im + t, *i), 0.0))
            .re;
    }
    let p0 = momentum_from_boost(&LowerBoost { lambda, zeta }, m)[0];
    (j.determinant().abs() / p0, m * m * lambda)
}

/// Outcome of the hypercharge verification.
#[derive(Debug, Clone, Copy)]
pub struct HyperchargeReport {
    /// Worst su(2) commutator defect of the tau matrices (exact arithmetic).
    pub commutator_defect: f64,
    /// Worst deviation of the numeric `d/dphi` action from
    /// `i (1 - tau_3)/2` applied to `(zeta_1, zeta_2)`.
    pub phi_action_defect: f64,
    /// `(1 - tau_3)/2 = diag(0, 1)` holds entrywise.
    pub projector_exact: bool,
}

impl HyperchargeReport {
    pub fn pass(&self) -> bool {
        self.commutator_defect == 0.0 && self.phi_action_defect < 1e-8 && self.projector_exact
    }
}

/// Verifies that the phase action on the internal coordinates is generated
/// by `(1 - tau_3)/2` and that the tau matrices close into su(2).
pub fn hypercharge_check(stencil: &DerivativeStencil) -> HyperchargeReport {
    let sig = crate::group::element::pauli_with_identity();
    // [tau_i, tau_j] = 2 i eps_ijk tau_k, exact for Pauli matrices.
    let mut comm_defect = 0.0f64;
    for i in 1..4 {
        for j in 1..4 {
            let lhs = sig[i] * sig[j] - sig[j] * sig[i];
            let mut rhs = Matrix2::zeros();
            for k in 1..4 {
                let eps = levi_civita(i - 1, j - 1, k - 1);
                if eps != 0.0 {
                    rhs += sig[k] * C64::new(0.0, 2.0 * eps);
                }
            }
            comm_defect = comm_defect.max((lhs - rhs).norm());
        }
    }
    let projector = (Matrix2::identity() - sig[3]) * C64::new(0.5, 0.0);
    let projector_exact = projector
        == Matrix2::new(
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        );
    // d/dphi of (zeta1, zeta2) against i diag(0, 1) (zeta1, zeta2).
    let (lambda_prime, zeta_prime, phi, m) = (1.3, C64::new(0.4, -0.7), 0.9, 1.2);
    let base = internal_coords(lambda_prime, zeta_prime, phi, m).unwrap();
    let d1 = stencil.differentiate(|t| {
        internal_coords(lambda_prime, zeta_prime, phi + t, m)
            .unwrap()
            .zeta1
    });
    let d2 = stencil.differentiate(|t| {
        internal_coords(lambda_prime, zeta_prime, phi + t, m)
            .unwrap()
            .zeta2
    });
    let i = C64::new(0.0, 1.0);
    let phi_action_defect = d1.norm().max((d2 - i * base.zeta2).norm());
    HyperchargeReport {
        commutator_defect: comm_defect,
        phi_action_defect,
        projector_exact,
    }
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn wigner_half_is_the_element_itself_and_zero_is_scalar() {
        let mut rng = StdRng::seed_from_u64(91);
        for _ in 0..20 {
            let u = sample::su2_element(&mut rng);
            let d = wigner_d(1, &u).unwrap();
            for r in 0..2 {
                for c in 0..2 {
                    assert!((d.matrix[(r, c)] - u.matrix()[(r, c)]).norm() < 1e-15);
                }
            }
            let d0 = wigner_d(0, &u).unwrap();
            assert_eq!(d0.matrix[(0, 0)], C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn wigner_spin_one_rotation_is_diagonal_phase() {
        let theta: f64 = 1.1;
        let u = su2_from_euler(theta, 0.0, 0.0);
        let d = wigner_d(2, &u).unwrap();
        assert!((d.matrix[(0, 0)] - C64::new(theta.cos(), -theta.sin())).norm() < 1e-14);
        assert!((d.matrix[(1, 1)] - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((d.matrix[(2, 2)] - C64::new(theta.cos(), theta.sin())).norm() < 1e-14);
    }

    #[test]
    fn wigner_rejects_non_unitary_input() {
        let boosted = GroupElement::exp(&crate::AlgebraCoefficients::from_pairs([
            0.3, 0.0, 0.0, 0.0, 0.0, 0.0,
        ]));
        match wigner_d(2, &boosted) {
            Err(Error::NotUnitary { .. }) => {}
            other => panic!("expected NotUnitary, got {other:?}"),
        }
    }

    #[test]
    fn wigner_homomorphism_and_unitarity() {
        let mut rng = StdRng::seed_from_u64(92);
        for _ in 0..50 {
            let u = sample::su2_element(&mut rng);
            let v = sample::su2_element(&mut rng);
            for two_s in 1..=4u32 {
                let duv = wigner_d(two_s, &u.compose(&v)).unwrap().matrix;
                let du = wigner_d(two_s, &u).unwrap().matrix;
                let dv = wigner_d(two_s, &v).unwrap().matrix;
                assert!((duv.clone() - &du * &dv).norm() < 1e-12);
                let dim = two_s as usize + 1;
                assert!((du.adjoint() * &du - DMatrix::<C64>::identity(dim, dim)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn euler_round_trip() {
        let mut rng = StdRng::seed_from_u64(93);
        for _ in 0..200 {
            let u = sample::su2_element(&mut rng);
            let (a, b, g) = euler_from_su2(&u);
            assert!((0.0..std::f64::consts::TAU).contains(&a));
            assert!((0.0..=std::f64::consts::PI).contains(&b));
            assert!((0.0..2.0 * std::f64::consts::TAU).contains(&g));
            let back = su2_from_euler(a, b, g);
            assert!(
                back.distance(&u) < 1e-12,
                "euler defect {}",
                back.distance(&u)
            );
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (nodes, weights) = gauss_legendre(6);
        // Degree-11 monomials are exact with 6 nodes.
        for k in 0..=11usize {
            let quad: f64 = nodes
                .iter()
                .zip(weights.iter())
                .map(|(x, w)| w * x.powi(k as i32))
                .sum();
            let exact = if k % 2 == 0 {
                2.0 / (k as f64 + 1.0)
            } else {
                0.0
            };
            assert!(
                (quad - exact).abs() < 1e-14,
                "degree {k}: {quad} vs {exact}"
            );
        }
    }

    #[test]
    fn haar_orthogonality_up_to_spin_two() {
        let grid = QuadratureGrid::for_band_limit(4);
        let nodes = grid.nodes();
        for two_s in 0..=4u32 {
            for two_sp in two_s..=4u32 {
                let dim_s = two_s as usize + 1;
                let dim_sp = two_sp as usize + 1;
                for a in 0..dim_s {
                    for b in 0..dim_s {
                        for ap in 0..dim_sp {
                            for bp in 0..dim_sp {
                                let mut total = C64::new(0.0, 0.0);
                                for (u, w) in &nodes {
                                    let ds = sym_power(u.matrix(), two_s as usize);
                                    let dsp = sym_power(u.matrix(), two_sp as usize);
                                    total += ds[(a, b)] * dsp[(ap, bp)].conj() * C64::new(*w, 0.0);
                                }
                                let expected = if two_s == two_sp && a == ap && b == bp {
                                    1.0 / dim_s as f64
                                } else {
                                    0.0
                                };
                                assert!(
                                    (total - C64::new(expected, 0.0)).norm() < 1e-10,
                                    "orthogonality ({two_s},{two_sp},{a},{b},{ap},{bp}): {total}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn decompose_constant_and_single_matrix_element() {
        let grid = QuadratureGrid::for_band_limit(4);
        let table = peter_weyl_decompose(&|_| C64::new(1.0, 0.0), 4, &grid).unwrap();
        assert!((table.block(0).unwrap().matrix[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-12);
        for two_s in 1..=4u32 {
            assert!(table.block(two_s).unwrap().matrix.norm() < 1e-12);
        }
        // A single matrix element of the defining representation.
        let f = |u: &GroupElement| u.matrix()[(0, 0)];
        let table = peter_weyl_decompose(&f, 4, &grid).unwrap();
        let b1 = table.block(1).unwrap();
        assert!((b1.matrix[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-12);
        let mut rest: f64 = 0.0;
        for block in &table.blocks {
            for r in 0..block.dimension() {
                for c in 0..block.dimension() {
                    if !(block.two_s == 1 && r == 0 && c == 0) {
                        rest = rest.max(block.matrix[(r, c)].norm());
                    }
                }
            }
        }
        assert!(rest < 1e-12, "stray coefficients {rest}");
    }

    #[test]
    fn band_limited_round_trip() {
        let mut rng = StdRng::seed_from_u64(94);
        let grid = QuadratureGrid::for_band_limit(4);
        // Random band-limited function with spins <= 2.
        let mut coeffs = Vec::new();
        for two_s in 0..=4u32 {
            let dim = two_s as usize + 1;
            let block = DMatrix::from_fn(dim, dim, |_, _| sample::complex(&mut rng, 1.0));
            coeffs.push(WignerBlock {
                two_s,
                matrix: block,
            });
        }
        let reference = CoefficientTable { blocks: coeffs };
        let f = |u: &GroupElement| reference.reconstruct(u).unwrap();
        let table = peter_weyl_decompose(&f, 4, &grid).unwrap();
        // Coefficients recovered...
        for (orig, got) in reference.blocks.iter().zip(table.blocks.iter()) {
            assert!((orig.matrix.clone() - got.matrix.clone()).norm() < 1e-11);
        }
        // ...and synthesis matches at off-grid probe points.
        let mut sup: f64 = 0.0;
        for _ in 0..50 {
            let u = sample::su2_element(&mut rng);
            sup = sup.max((table.reconstruct(&u).unwrap() - f(&u)).norm());
        }
        assert!(sup < 1e-9, "round-trip sup error {sup}");
    }

    #[test]
    fn coarse_grids_are_rejected() {
        let grid = QuadratureGrid {
            n_alpha: 4,
            n_beta: 4,
            n_gamma: 8,
        };
        match peter_weyl_decompose(&|_| C64::new(1.0, 0.0), 4, &grid) {
            Err(Error::GridTooCoarse { needed: 5, got: 4 }) => {}
            other => panic!("expected GridTooCoarse, got {other:?}"),
        }
    }

    #[test]
    fn multiplicity_equals_dimension() {
        let rows = multiplicity_report(4);
        assert_eq!(rows.len(), 5);
        for row in &rows {
            assert_eq!(row.dimension, row.two_s + 1);
            assert_eq!(row.multiplicity, row.dimension);
        }
        // Doublets at spin one half.
        assert_eq!(rows[1].dimension, 2);
        assert_eq!(rows[1].multiplicity, 2);
        // Table shapes of a decomposition agree with the bookkeeping.
        let grid = QuadratureGrid::for_band_limit(2);
        let table = peter_weyl_decompose(&|_| C64::new(1.0, 0.0), 2, &grid).unwrap();
        for (row, block) in multiplicity_report(2).iter().zip(table.blocks.iter()) {
            assert_eq!(block.matrix.nrows(), row.dimension as usize);
            assert_eq!(block.matrix.ncols(), row.multiplicity as usize);
        }
    }

    #[test]
    fn internal_coordinate_chart() {
        let m = 1.7;
        let coords = internal_coords(1.0, C64::new(0.0, 0.0), 0.0, m).unwrap();
        assert_eq!(coords.zeta1, C64::new(0.0, 0.0));
        assert!((coords.zeta2 - C64::new(m, 0.0)).norm() < 1e-15);
        // Periodicity in phi.
        let a = internal_coords(0.8, C64::new(0.3, 0.4), 1.1, m).unwrap();
        let b = internal_coords(0.8, C64::new(0.3, 0.4), 1.1 + std::f64::consts::TAU, m).unwrap();
        assert!((a.zeta2 - b.zeta2).norm() < 1e-12);
        // Modulus of zeta2.
        let mut rng = StdRng::seed_from_u64(95);
        for _ in 0..50 {
            let lp = rng.random_range(0.2..2.0);
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            let zp = sample::complex(&mut rng, 1.0);
            let c = internal_coords(lp, zp, phi, m).unwrap();
            assert!((c.zeta2.norm() - m * lp).abs() < 1e-12);
        }
        assert!(internal_coords(0.0, C64::new(0.0, 0.0), 0.0, m).is_err());
        assert!(internal_coords(-1.0, C64::new(0.0, 0.0), 0.0, m).is_err());
    }

    #[test]
    fn volume_jacobian_ratio_is_a_chart_constant() {
        let st = DerivativeStencil::default();
        let m = 1.4;
        // Apex point.
        let (num, ana) = volume_jacobian_check(1.0, C64::new(0.0, 0.0), m, &st);
        let constant = num / ana;
        assert!((constant - 2.0).abs() < 1e-8, "chart constant {constant}");
        // Sweep in lambda at zeta = 0.
        for k in 0..=10 {
            let lambda = 0.5 + 1.5 * k as f64 / 10.0;
            let (num, ana) = volume_jacobian_check(lambda, C64::new(0.0, 0.0), m, &st);
            assert!((num / ana - constant).abs() < 1e-8);
        }
        // Random cloud.
        let mut rng = StdRng::seed_from_u64(96);
        let mut ratios = Vec::new();
        for _ in 0..200 {
            let lambda = rng.random_range(0.5..2.0);
            let zeta = sample::complex(&mut rng, 1.0);
            let (num, ana) = volume_jacobian_check(lambda, zeta, m, &st);
            ratios.push(num / ana);
        }
        let mean: f64 = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let sd = (ratios.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>()
            / ratios.len() as f64)
            .sqrt();
        assert!(sd / mean.abs() < 1e-8, "ratio spread {sd}");
    }

    #[test]
    fn hypercharge_action_on_the_doublet() {
        let report = hypercharge_check(&DerivativeStencil::default());
        assert_eq!(report.commutator_defect, 0.0);
        assert!(report.projector_exact);
        assert!(report.phi_action_defect < 1e-8);
        assert!(report.pass());
    }
}
