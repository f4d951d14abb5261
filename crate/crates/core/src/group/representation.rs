//! Finite-dimensional representations of SL(2,C) and their generators.
//!
//! Normalization is anchored on the vector representation, whose generators
//! act on field components exactly as
//! `(Sigma_ab B)_c = eta_ac B_b - eta_bc B_a`. Every other representation is
//! normalized by the covering-map consistency condition
//! `vector_rep(exp_map(omega, fundamental)) = exp_map(omega, vector)`,
//! i.e. all generators are pushforwards of the same fundamental basis.

use nalgebra::{DMatrix, Matrix2, Matrix4};

use crate::error::{Error, Result};
use crate::four_vector::METRIC_DIAG;
use crate::group::algebra::{structure_coefficients, AlgebraCoefficients, PAIRS};
use crate::group::element::GroupElement;
use crate::C64;

/// Sign with which matrix generators realize the bracket relations:
/// `[Sigma_ab, Sigma_cd] = MATRIX_BRACKET_SIGN * (eta_ac Sigma_bd
/// - eta_bc Sigma_ad + eta_bd Sigma_ac - eta_ad Sigma_bc)`.
///
/// The minus sign is forced by the entrywise vector-rep anchor; the
/// left-derivative operators realize the same relations with a plus sign.
pub const MATRIX_BRACKET_SIGN: f64 = -1.0;

/// Representation labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepLabel {
    Fundamental,
    Antifundamental,
    Dirac,
    Vector,
    /// Symmetric-power representation of spin `s = two_s / 2`; restricts to
    /// the spin-s representation of the SU(2) subgroup.
    Su2Spin {
        two_s: u32,
    },
}

impl RepLabel {
    pub fn dimension(&self) -> usize {
        match self {
            RepLabel::Fundamental | RepLabel::Antifundamental => 2,
            RepLabel::Dirac | RepLabel::Vector => 4,
            RepLabel::Su2Spin { two_s } => (*two_s as usize) + 1,
        }
    }

    /// Parses labels like `fundamental`, `dirac`, `vector`, `su2spin(3/2)`.
    pub fn parse(s: &str) -> Result<RepLabel> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "fundamental" => return Ok(RepLabel::Fundamental),
            "antifundamental" => return Ok(RepLabel::Antifundamental),
            "dirac" => return Ok(RepLabel::Dirac),
            "vector" => return Ok(RepLabel::Vector),
            _ => {}
        }
        if let Some(arg) = t.strip_prefix("su2spin(").and_then(|r| r.strip_suffix(')')) {
            let two_s = if let Some(num) = arg.strip_suffix("/2") {
                num.trim().parse::<u32>().ok()
            } else {
                arg.trim().parse::<u32>().ok().map(|s| 2 * s)
            };
            if let Some(two_s) = two_s {
                return Ok(RepLabel::Su2Spin { two_s });
            }
        }
        Err(Error::UnknownLabel(s.to_string()))
    }
}

impl std::fmt::Display for RepLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RepLabel::Fundamental => write!(f, "fundamental"),
            RepLabel::Antifundamental => write!(f, "antifundamental"),
            RepLabel::Dirac => write!(f, "dirac"),
            RepLabel::Vector => write!(f, "vector"),
            RepLabel::Su2Spin { two_s } => {
                if two_s % 2 == 0 {
                    write!(f, "su2spin({})", two_s / 2)
                } else {
                    write!(f, "su2spin({two_s}/2)")
                }
            }
        }
    }
}

/// A labeled set of six generator matrices, indexed by [`PAIRS`].
#[derive(Debug, Clone)]
pub struct Representation {
    pub label: RepLabel,
    pub dimension: usize,
    pub generators: [DMatrix<C64>; 6],
}

impl Representation {
    /// Generator for an arbitrary index pair, with the antisymmetry sign.
    pub fn generator(&self, a: usize, b: usize) -> DMatrix<C64> {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Less => self.generators[super::algebra::pair_index(a, b)].clone(),
            Greater => -&self.generators[super::algebra::pair_index(b, a)],
            Equal => DMatrix::zeros(self.dimension, self.dimension),
        }
    }

    /// The bracket combination `eta_ac Sigma_bd - eta_bc Sigma_ad
    /// + eta_bd Sigma_ac - eta_ad Sigma_bc` for stored pair slots.
    pub fn structure_combination(&self, ab: usize, cd: usize) -> DMatrix<C64> {
        let kappa = structure_coefficients(ab, cd);
        let mut m = DMatrix::zeros(self.dimension, self.dimension);
        for k in 0..6 {
            if kappa[k] != 0.0 {
                m += &self.generators[k] * C64::new(kappa[k], 0.0);
            }
        }
        m
    }

    /// Quadratic Casimir `eta^ac eta^bd Sigma_ab Sigma_cd` as an unrestricted
    /// double sum.
    pub fn casimir_matrix(&self) -> DMatrix<C64> {
        let mut m = DMatrix::zeros(self.dimension, self.dimension);
        for (k, &(a, b)) in PAIRS.iter().enumerate() {
            let weight = 2.0 * METRIC_DIAG[a] * METRIC_DIAG[b];
            m += &self.generators[k] * &self.generators[k] * C64::new(weight, 0.0);
        }
        m
    }
}

/// Fundamental generators by pair slot: boosts `(0,i) -> sigma_i / 2`,
/// rotations `(2,3) -> -i sigma_1 / 2`, `(1,3) -> +i sigma_2 / 2`,
/// `(1,2) -> -i sigma_3 / 2`.
pub fn fundamental_generators() -> [Matrix2<C64>; 6] {
    let sig = super::element::pauli_with_identity();
    let half = C64::new(0.5, 0.0);
    let mih = C64::new(0.0, -0.5);
    [
        sig[1] * half,
        sig[2] * half,
        sig[3] * half,
        sig[3] * mih,
        -sig[2] * mih,
        sig[1] * mih,
    ]
}

/// Vector-representation generator entries
/// `(Sigma_ab)_{cd} = eta_ac delta_bd - eta_bc delta_ad`.
fn vector_generator(a: usize, b: usize) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(4, 4);
    m[(a, b)] = C64::new(METRIC_DIAG[a], 0.0);
    m[(b, a)] = C64::new(-METRIC_DIAG[b], 0.0);
    m
}

/// Builds the labeled generator set.
pub fn generators(label: RepLabel) -> Representation {
    let dim = label.dimension();
    let gens: [DMatrix<C64>; 6] = match label {
        RepLabel::Fundamental => {
            fundamental_generators().map(|g| DMatrix::from_fn(2, 2, |r, c| g[(r, c)]))
        }
        RepLabel::Antifundamental => {
            fundamental_generators().map(|g| DMatrix::from_fn(2, 2, |r, c| g[(r, c)].conj()))
        }
        RepLabel::Vector => {
            let mut out: [DMatrix<C64>; 6] = std::array::from_fn(|_| DMatrix::zeros(4, 4));
            for (k, &(a, b)) in PAIRS.iter().enumerate() {
                out[k] = vector_generator(a, b);
            }
            out
        }
        RepLabel::Dirac => {
            let (gamma, _) = super::clifford::dirac_gammas();
            let mut out: [DMatrix<C64>; 6] = std::array::from_fn(|_| DMatrix::zeros(4, 4));
            for (k, &(a, b)) in PAIRS.iter().enumerate() {
                let comm = gamma[a] * gamma[b] - gamma[b] * gamma[a];
                let quarter = comm * C64::new(0.25, 0.0);
                out[k] = DMatrix::from_fn(4, 4, |r, c| quarter[(r, c)]);
            }
            out
        }
        RepLabel::Su2Spin { two_s } => {
            let fund = fundamental_generators();
            std::array::from_fn(|k| sym_power_generator(&fund[k], two_s as usize))
        }
    };
    Representation {
        label,
        dimension: dim,
        generators: gens,
    }
}

/// Exponential `exp(sum_{a<b} 2 omega^ab Sigma_ab)` in the given
/// representation.
pub fn exp_map(omega: &AlgebraCoefficients, rep: &Representation) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(rep.dimension, rep.dimension);
    for k in 0..6 {
        if omega.0[k] != 0.0 {
            m += &rep.generators[k] * C64::new(2.0 * omega.0[k], 0.0);
        }
    }
    m.exp()
}

/// The representation matrix `D(A)` of a group element.
pub fn rep_matrix(label: RepLabel, a: &GroupElement) -> DMatrix<C64> {
    match label {
        RepLabel::Fundamental => DMatrix::from_fn(2, 2, |r, c| a.matrix()[(r, c)]),
        RepLabel::Antifundamental => DMatrix::from_fn(2, 2, |r, c| a.matrix()[(r, c)].conj()),
        RepLabel::Vector => {
            let l = a.vector_rep();
            DMatrix::from_fn(4, 4, |r, c| C64::new(l[(r, c)], 0.0))
        }
        RepLabel::Dirac => {
            let v = chiral_to_gamma_basis();
            let vi = v.try_inverse().expect("basis change is invertible");
            let inv_dag = a.inverse().matrix().adjoint();
            let mut block = Matrix4::zeros();
            for r in 0..2 {
                for c in 0..2 {
                    block[(r, c)] = inv_dag[(r, c)];
                    block[(r + 2, c + 2)] = a.matrix()[(r, c)];
                }
            }
            let d = v * block * vi;
            DMatrix::from_fn(4, 4, |r, c| d[(r, c)])
        }
        RepLabel::Su2Spin { two_s } => sym_power(a.matrix(), two_s as usize),
    }
}

/// Similarity transform from the chiral block basis to the crate's gamma
/// basis: the standard chiral-to-diagonal rotation followed by a sign flip of
/// the first spinor component.
fn chiral_to_gamma_basis() -> Matrix4<C64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = Matrix4::zeros();
    // (1/sqrt2) [[I, I], [-I, I]] with the first row negated.
    for k in 0..2 {
        v[(k, k)] = C64::new(s, 0.0);
        v[(k, k + 2)] = C64::new(s, 0.0);
        v[(k + 2, k)] = C64::new(-s, 0.0);
        v[(k + 2, k + 2)] = C64::new(s, 0.0);
    }
    for c in 0..4 {
        v[(0, c)] = -v[(0, c)];
    }
    v
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut b = 1.0;
    for j in 0..k {
        b = b * (n - j) as f64 / (j + 1) as f64;
    }
    b
}

/// Symmetric tensor power of a 2x2 matrix in the orthonormal monomial basis
/// `|k> ~ x^(n-k) y^k sqrt(C(n,k))`; exactly homomorphic by construction and
/// unitary for unitary input.
pub fn sym_power(m: &Matrix2<C64>, n: usize) -> DMatrix<C64> {
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let dim = n + 1;
    let mut out = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        // (a x + c y)^(n-k) (b x + d y)^k, collected by powers of y.
        let mut coeffs = vec![C64::new(0.0, 0.0); dim];
        for i in 0..=(n - k) {
            let left = binomial(n - k, i);
            let ap = a.powu((n - k - i) as u32);
            let cp = c.powu(i as u32);
            for j2 in 0..=k {
                let right = binomial(k, j2);
                let bp = b.powu((k - j2) as u32);
                let dp = d.powu(j2 as u32);
                coeffs[i + j2] += ap * cp * bp * dp * C64::new(left * right, 0.0);
            }
        }
        for j in 0..dim {
            out[(j, k)] = coeffs[j] * C64::new((binomial(n, k) / binomial(n, j)).sqrt(), 0.0);
        }
    }
    out
}

/// Derivative of [`sym_power`] at the identity: the derivation extension of a
/// 2x2 generator.
pub fn sym_power_generator(g: &Matrix2<C64>, n: usize) -> DMatrix<C64> {
    let dim = n + 1;
    let mut out = DMatrix::zeros(dim, dim);
    for k in 0..dim {
        let nk = (n - k) as f64;
        let kf = k as f64;
        out[(k, k)] = g[(0, 0)] * nk + g[(1, 1)] * kf;
        if k + 1 < dim {
            let norm = (binomial(n, k) / binomial(n, k + 1)).sqrt();
            out[(k + 1, k)] = g[(1, 0)] * C64::new(nk * norm, 0.0);
        }
        if k >= 1 {
            let norm = (binomial(n, k) / binomial(n, k - 1)).sqrt();
            out[(k - 1, k)] = g[(0, 1)] * C64::new(kf * norm, 0.0);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    const ALL_LABELS: [RepLabel; 6] = [
        RepLabel::Fundamental,
        RepLabel::Antifundamental,
        RepLabel::Dirac,
        RepLabel::Vector,
        RepLabel::Su2Spin { two_s: 2 },
        RepLabel::Su2Spin { two_s: 3 },
    ];

    #[test]
    fn vector_generator_entries_from_metric_contractions() {
        let rep = generators(RepLabel::Vector);
        let s01 = &rep.generators[0];
        for r in 0..4 {
            for c in 0..4 {
                let expected = match (r, c) {
                    (0, 1) => 1.0,
                    (1, 0) => 1.0,
                    _ => 0.0,
                };
                assert_eq!(s01[(r, c)], C64::new(expected, 0.0));
            }
        }
        // (Sigma_12): eta_11 delta_22 at (1,2), -eta_22 delta_11 at (2,1).
        let s12 = &rep.generators[3];
        assert_eq!(s12[(1, 2)], C64::new(-1.0, 0.0));
        assert_eq!(s12[(2, 1)], C64::new(1.0, 0.0));
    }

    #[test]
    fn commutator_tables_match_bracket_relations() {
        for label in ALL_LABELS {
            let rep = generators(label);
            for ab in 0..6 {
                for cd in 0..6 {
                    let lhs = &rep.generators[ab] * &rep.generators[cd]
                        - &rep.generators[cd] * &rep.generators[ab];
                    let rhs =
                        rep.structure_combination(ab, cd) * C64::new(MATRIX_BRACKET_SIGN, 0.0);
                    assert!(
                        (lhs.clone() - rhs.clone()).norm() < 1e-12,
                        "{label}: pair {ab},{cd} defect {}",
                        (lhs - rhs).norm()
                    );
                }
            }
        }
    }

    #[test]
    fn exp_map_of_zero_is_identity() {
        for label in ALL_LABELS {
            let rep = generators(label);
            let m = exp_map(&AlgebraCoefficients::ZERO, &rep);
            assert!((m - DMatrix::<C64>::identity(rep.dimension, rep.dimension)).norm() < 1e-15);
        }
    }

    #[test]
    fn exp_map_rotation_matches_half_angle_form() {
        // omega^12 = theta/2 exponentiates to exp(-i theta sigma_3 / 2).
        let theta: f64 = 0.92;
        let mut w = [0.0; 6];
        w[3] = theta / 2.0;
        let rep = generators(RepLabel::Fundamental);
        let m = exp_map(&AlgebraCoefficients(w), &rep);
        let half = theta / 2.0;
        assert!((m[(0, 0)] - C64::new(half.cos(), -half.sin())).norm() < 1e-14);
        assert!((m[(1, 1)] - C64::new(half.cos(), half.sin())).norm() < 1e-14);
        assert!(m[(0, 1)].norm() < 1e-14);
        assert!(m[(1, 0)].norm() < 1e-14);
    }

    #[test]
    fn covering_consistency_between_fundamental_and_vector() {
        let mut rng = StdRng::seed_from_u64(21);
        let vec_rep = generators(RepLabel::Vector);
        for _ in 0..200 {
            let w = sample::algebra_coefficients(&mut rng, 2.0);
            let via_cover = GroupElement::exp(&w).vector_rep();
            let direct = exp_map(&w, &vec_rep);
            let mut defect: f64 = 0.0;
            for r in 0..4 {
                for c in 0..4 {
                    defect = defect.max((direct[(r, c)] - C64::new(via_cover[(r, c)], 0.0)).norm());
                }
            }
            assert!(defect < 1e-12, "covering defect {defect}");
        }
    }

    #[test]
    fn rep_matrix_is_homomorphic_and_consistent_with_exp_map() {
        let mut rng = StdRng::seed_from_u64(22);
        for label in ALL_LABELS {
            let rep = generators(label);
            for _ in 0..20 {
                let w = sample::algebra_coefficients(&mut rng, 1.0);
                let a = GroupElement::exp(&w);
                let b = sample::group_element(&mut rng, 1.0);
                let dir = rep_matrix(label, &a.compose(&b));
                let prod = rep_matrix(label, &a) * rep_matrix(label, &b);
                assert!((dir - prod).norm() < 1e-11, "{label} homomorphism");
                let via_exp = exp_map(&w, &rep);
                let via_rep = rep_matrix(label, &a);
                assert!(
                    (via_exp - via_rep).norm() < 1e-11,
                    "{label} exp consistency"
                );
            }
        }
    }

    #[test]
    fn dirac_rotation_generator_is_block_diagonal_pauli() {
        let rep = generators(RepLabel::Dirac);
        let s12 = &rep.generators[3];
        let expected = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::new(0.0, -0.5),
            C64::new(0.0, 0.5),
            C64::new(0.0, -0.5),
            C64::new(0.0, 0.5),
        ]));
        assert!((s12.clone() - expected).norm() < 1e-15);
    }

    #[test]
    fn sym_power_unitary_on_su2_and_spin_one_diagonal() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..50 {
            let u = sample::su2_element(&mut rng);
            for n in 1..=4 {
                let d = sym_power(u.matrix(), n);
                let defect = (&d * d.adjoint() - DMatrix::<C64>::identity(n + 1, n + 1)).norm();
                assert!(defect < 1e-13, "sym power unitarity {defect}");
            }
        }
        // Spin-1 matrix of a rotation about axis 3 is diag(e^-i t, 1, e^i t).
        let theta: f64 = 0.7;
        let half = theta / 2.0;
        let u = Matrix2::new(
            C64::new(half.cos(), -half.sin()),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(half.cos(), half.sin()),
        );
        let d = sym_power(&u, 2);
        assert!((d[(0, 0)] - C64::new(theta.cos(), -theta.sin())).norm() < 1e-14);
        assert!((d[(1, 1)] - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((d[(2, 2)] - C64::new(theta.cos(), theta.sin())).norm() < 1e-14);
    }

    #[test]
    fn casimir_matrices_are_scalar() {
        for (label, expected) in [
            (RepLabel::Fundamental, -3.0),
            (RepLabel::Dirac, -3.0),
            (RepLabel::Vector, -6.0),
        ] {
            let rep = generators(label);
            let c = rep.casimir_matrix();
            let scalar =
                DMatrix::<C64>::identity(rep.dimension, rep.dimension) * C64::new(expected, 0.0);
            assert!(
                (c.clone() - scalar).norm() < 1e-12,
                "{label}: casimir {:?}",
                c[(0, 0)]
            );
        }
    }

    #[test]
    fn label_parsing() {
        assert_eq!(RepLabel::parse("dirac").unwrap(), RepLabel::Dirac);
        assert_eq!(
            RepLabel::parse("su2spin(3/2)").unwrap(),
            RepLabel::Su2Spin { two_s: 3 }
        );
        assert_eq!(
            RepLabel::parse("su2spin(2)").unwrap(),
            RepLabel::Su2Spin { two_s: 4 }
        );
        assert!(RepLabel::parse("spinor").is_err());
    }
}
