//! Classical spin transport in external electromagnetic fields.
//!
//! Integrates the coupled velocity/spin-tensor equations
//! `du/dtau = (e/m) F u` and
//! `dS_ab/dtau = (g e / 2m) [F_a^c S_cb + S_ac F^cd u_d u_b]
//! - S_ac du^c/dtau u_b - (a <-> b)`
//! and monitors the constraints `u.u = c^2`, `S_ab u^b = 0` and the total
//! spin `S_ab S^ab`.
//!
//! All indices here are flat and raised with the Minkowski metric.

use nalgebra::{DMatrix, Matrix4};

use crate::error::{Error, Result};
use crate::four_vector::{metric, FourVector};
use crate::group::algebra::PAIRS;
use crate::spin_tensor::SpinTensor;

/// Charge, mass, gyromagnetic factor, and speed of light.
#[derive(Debug, Clone, Copy)]
pub struct BMTParams {
    pub e: f64,
    pub m: f64,
    pub g: f64,
    pub c: f64,
}

impl BMTParams {
    pub fn new(e: f64, m: f64, g: f64) -> Self {
        BMTParams { e, m, g, c: 1.0 }
    }
}

/// Position, four-velocity, spin tensor, and the invariant parameter.
#[derive(Debug, Clone, Copy)]
pub struct BMTState {
    pub x: FourVector,
    pub u: FourVector,
    pub s: SpinTensor,
    pub tau: f64,
}

impl BMTState {
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.u.is_finite() && self.s.is_finite() && self.tau.is_finite()
    }
}

pub type FieldStrengthFn = Box<dyn Fn(&FourVector) -> Matrix4<f64> + Send + Sync>;

/// External field-strength provider; evaluates the antisymmetric `F_ab(x)`.
pub enum EMField {
    /// Constant field strength.
    Uniform { f: SpinTensor },
    /// Constant amplitude modulated by `cos(k.x)` with a null wave vector.
    PlaneWave { f: SpinTensor, k: FourVector },
    /// Arbitrary provider; must return an antisymmetric matrix.
    Custom(FieldStrengthFn),
}

impl EMField {
    /// Uniform field from electric and magnetic three-vectors:
    /// `F_0i = E_i`, `F_ij = -eps_ijk B_k`.
    pub fn uniform(e_field: [f64; 3], b_field: [f64; 3]) -> EMField {
        let mut f = SpinTensor::ZERO;
        f.set_pair(0, 1, e_field[0]);
        f.set_pair(0, 2, e_field[1]);
        f.set_pair(0, 3, e_field[2]);
        f.set_pair(1, 2, -b_field[2]);
        f.set_pair(1, 3, b_field[1]);
        f.set_pair(2, 3, -b_field[0]);
        EMField::Uniform { f }
    }

    /// Crossed fields: uniform with `E.B = 0` enforced.
    pub fn crossed(e_field: [f64; 3], b_field: [f64; 3]) -> Result<EMField> {
        let dot: f64 = (0..3).map(|i| e_field[i] * b_field[i]).sum();
        if dot.abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "crossed fields require E.B = 0, got {dot}"
            )));
        }
        Ok(EMField::uniform(e_field, b_field))
    }

    /// Uniform field from an explicit antisymmetric tensor.
    pub fn constant_tensor(f: SpinTensor) -> EMField {
        EMField::Uniform { f }
    }

    /// Plane wave `F_ab(x) = f_ab cos(k.x)`; `k` must be null.
    pub fn plane_wave(f: SpinTensor, k: FourVector) -> Result<EMField> {
        let kk = k.minkowski_square();
        if kk.abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "plane-wave vector must be null, got k.k = {kk}"
            )));
        }
        Ok(EMField::PlaneWave { f, k })
    }

    /// Field strength with two lower indices at `x`.
    pub fn eval(&self, x: &FourVector) -> Matrix4<f64> {
        match self {
            EMField::Uniform { f } => f.to_matrix(),
            EMField::PlaneWave { f, k } => f.to_matrix() * k.minkowski_dot(x).cos(),
            EMField::Custom(func) => {
                let m = func(x);
                // Enforce exact antisymmetry of custom providers.
                (m - m.transpose()) * 0.5
            }
        }
    }
}

/// Time derivative of a state.
#[derive(Debug, Clone, Copy)]
pub struct BMTDerivative {
    pub dx: FourVector,
    pub du: FourVector,
    pub ds: SpinTensor,
}

/// Right-hand side of the equations of motion.
pub fn bmt_rhs(state: &BMTState, field: &EMField, params: &BMTParams) -> BMTDerivative {
    let eta = metric();
    let f = field.eval(&state.x);
    let u = state.u.as_vector();
    let s = state.s.to_matrix();
    // w^a = F^a_b u^b; the same contraction feeds du and the spin terms.
    let w = eta * f * u;
    let du = w * (params.e / params.m);
    let a1 = params.g * params.e / (2.0 * params.m);
    let a2 = a1 - params.e / params.m;
    let u_low = eta * u;
    let t = (f * eta * s) * a1 + (s * w) * a2 * u_low.transpose();
    let ds = t - t.transpose();
    BMTDerivative {
        dx: state.u,
        du: FourVector::from_vector(&du),
        ds: SpinTensor::from_matrix(&ds),
    }
}

/// Residuals of the admissibility constraints:
/// `r1 = u.u - c^2` and `r2 = |S_ab u^b|`.
pub fn constraint_residuals(state: &BMTState, params: &BMTParams) -> (f64, f64) {
    let r1 = state.u.minkowski_square() - params.c * params.c;
    let r2 = state.s.contract(&state.u).euclidean_norm();
    (r1, r2)
}

/// Integration method for the flat state variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BMTMethod {
    Rk4,
    /// RK4 with the four-velocity rescaled to the mass shell after each step.
    Rk4Projected,
}

/// Per-step monitor values.
#[derive(Debug, Clone, Copy)]
pub struct BMTMonitor {
    pub tau: f64,
    pub constraint_shell: f64,
    pub constraint_spin: f64,
    pub total_spin: f64,
}

/// Integrated trajectory with per-step monitors.
pub struct BMTTrajectory {
    pub states: Vec<BMTState>,
    pub monitors: Vec<BMTMonitor>,
}

fn scale_add(s: &BMTState, d: &BMTDerivative, dt: f64) -> BMTState {
    BMTState {
        x: s.x + d.dx * dt,
        u: s.u + d.du * dt,
        s: s.s + d.ds * dt,
        tau: s.tau + dt,
    }
}

/// Classical RK4 over the trajectory, with optional mass-shell projection.
pub fn integrate(
    s0: &BMTState,
    field: &EMField,
    params: &BMTParams,
    dt: f64,
    nsteps: usize,
    method: BMTMethod,
) -> Result<BMTTrajectory> {
    if dt <= 0.0 {
        return Err(Error::Domain(format!("dt must be positive, got {dt}")));
    }
    let mut states = Vec::with_capacity(nsteps + 1);
    let mut monitors = Vec::with_capacity(nsteps + 1);
    let mut state = *s0;
    let record = |state: &BMTState, monitors: &mut Vec<BMTMonitor>, states: &mut Vec<BMTState>| {
        let (r1, r2) = constraint_residuals(state, params);
        monitors.push(BMTMonitor {
            tau: state.tau,
            constraint_shell: r1,
            constraint_spin: r2,
            total_spin: state.s.total_spin(),
        });
        states.push(*state);
    };
    record(&state, &mut monitors, &mut states);
    for step in 0..nsteps {
        let k1 = bmt_rhs(&state, field, params);
        let k2 = bmt_rhs(&scale_add(&state, &k1, dt / 2.0), field, params);
        let k3 = bmt_rhs(&scale_add(&state, &k2, dt / 2.0), field, params);
        let k4 = bmt_rhs(&scale_add(&state, &k3, dt), field, params);
        state = BMTState {
            x: state.x + (k1.dx + k2.dx * 2.0 + k3.dx * 2.0 + k4.dx) * (dt / 6.0),
            u: state.u + (k1.du + k2.du * 2.0 + k3.du * 2.0 + k4.du) * (dt / 6.0),
            s: state.s + (k1.ds + k2.ds * 2.0 + k3.ds * 2.0 + k4.ds) * (dt / 6.0),
            tau: state.tau + dt,
        };
        if method == BMTMethod::Rk4Projected {
            let uu = state.u.minkowski_square();
            if uu <= 0.0 {
                return Err(Error::NonFinite { step });
            }
            state.u = state.u * (params.c / uu.sqrt());
        }
        if !state.is_finite() {
            return Err(Error::NonFinite { step });
        }
        record(&state, &mut monitors, &mut states);
    }
    Ok(BMTTrajectory { states, monitors })
}

/// Closed-form solution for a constant field at `g = 2`: the velocity and the
/// spin tensor are transported by the one-parameter Lorentz flow
/// `exp(tau (e/m) eta F)`, and the position by its integral.
pub fn closed_form_uniform(
    s0: &BMTState,
    f: &SpinTensor,
    params: &BMTParams,
    tau: f64,
) -> Result<BMTState> {
    if (params.g - 2.0).abs() > 1e-14 {
        return Err(Error::Domain(
            "closed-form transport requires g = 2".to_string(),
        ));
    }
    let k = metric() * f.to_matrix() * (params.e / params.m) * tau;
    // Augmented exponential: exp([[K, I], [0, 0]]) = [[e^K, integral], [0, I]].
    let mut aug = DMatrix::<f64>::zeros(8, 8);
    for r in 0..4 {
        for c in 0..4 {
            aug[(r, c)] = k[(r, c)];
        }
        aug[(r, r + 4)] = 1.0;
    }
    let e = aug.exp();
    let mut flow = Matrix4::<f64>::zeros();
    let mut integral = Matrix4::<f64>::zeros();
    for r in 0..4 {
        for c in 0..4 {
            flow[(r, c)] = e[(r, c)];
            integral[(r, c)] = e[(r, c + 4)];
        }
    }
    Ok(BMTState {
        x: s0.x + s0.u.transformed(&(integral * tau)),
        u: s0.u.transformed(&flow),
        s: s0.s.transformed(&flow),
        tau: s0.tau + tau,
    })
}

/// Drift of a monitor series: `max |m(tau) - m(0)|`.
pub fn drift(series: impl Iterator<Item = f64>) -> f64 {
    let mut first = None;
    let mut worst = 0.0f64;
    for v in series {
        let f = *first.get_or_insert(v);
        worst = worst.max((v - f).abs());
    }
    worst
}

/// In-plane spin phase for a magnetic field along axis 3: the angle of the
/// spatial spin vector components `(s^1, s^2) = (S_23, -S_13)`.
pub fn in_plane_spin_angle(s: &SpinTensor) -> f64 {
    f64::atan2(
        -s.0[PAIRS.iter().position(|&p| p == (1, 3)).unwrap()],
        s.0[PAIRS.iter().position(|&p| p == (2, 3)).unwrap()],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn rest_state(spin: [f64; 6]) -> BMTState {
        BMTState {
            x: FourVector::ZERO,
            u: FourVector::new(1.0, 0.0, 0.0, 0.0),
            s: SpinTensor::from_pairs(spin),
            tau: 0.0,
        }
    }

    #[test]
    fn free_drift_is_linear_with_constant_spin() {
        let params = BMTParams::new(1.0, 1.0, 2.0);
        let field = EMField::uniform([0.0; 3], [0.0; 3]);
        let s0 = BMTState {
            x: FourVector::new(0.0, 1.0, 2.0, 3.0),
            u: FourVector::new(1.25, 0.5, 0.25, 0.5),
            s: SpinTensor::from_pairs([0.1, 0.2, 0.3, 0.4, 0.5, 0.6]),
            tau: 0.0,
        };
        let d = bmt_rhs(&s0, &field, &params);
        assert_eq!(d.du.euclidean_norm(), 0.0);
        assert_eq!(d.ds.0, [0.0; 6]);
        let traj = integrate(&s0, &field, &params, 0.01, 100, BMTMethod::Rk4).unwrap();
        let last = traj.states.last().unwrap();
        let expect = s0.x + s0.u * 1.0;
        assert!((last.x - expect).euclidean_norm() < 1e-13);
        for (k, v) in last.s.0.iter().enumerate() {
            assert!((v - s0.s.0[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn cyclotron_force_matches_hand_oracle() {
        // B along axis 3, velocity in the 1-2 plane:
        // du^1 = (e/m) b u^2, du^2 = -(e/m) b u^1, du^0 = du^3 = 0.
        let b = 0.8;
        let params = BMTParams::new(1.5, 0.5, 2.0);
        let field = EMField::uniform([0.0; 3], [0.0, 0.0, b]);
        let u = FourVector::new(1.3, 0.6, -0.4, 0.0);
        let state = BMTState {
            x: FourVector::ZERO,
            u,
            s: SpinTensor::ZERO,
            tau: 0.0,
        };
        let d = bmt_rhs(&state, &field, &params);
        let om = params.e / params.m * b;
        assert!((d.du[0]).abs() < 1e-15);
        assert!((d.du[1] - om * u[2]).abs() < 1e-14);
        assert!((d.du[2] + om * u[1]).abs() < 1e-14);
        assert!((d.du[3]).abs() < 1e-15);
    }

    #[test]
    fn rest_frame_spin_precesses_at_larmor_rate() {
        // g = 2, uniform B along 3, particle at rest: the in-plane pairs
        // (S_23, S_13) rotate at omega = e b / m.
        let b = 1.1;
        let params = BMTParams::new(0.7, 1.3, 2.0);
        let field = EMField::uniform([0.0; 3], [0.0, 0.0, b]);
        let mut spin = [0.0; 6];
        spin[5] = 0.9; // S_23
        spin[4] = -0.2; // S_13
        spin[3] = 0.5; // S_12 stays fixed
        let state = rest_state(spin);
        let d = bmt_rhs(&state, &field, &params);
        let om = params.g * params.e * b / (2.0 * params.m);
        assert!((d.ds.get(2, 3) + om * state.s.get(1, 3)).abs() < 1e-14);
        assert!((d.ds.get(1, 3) - om * state.s.get(2, 3)).abs() < 1e-14);
        assert!(d.ds.get(1, 2).abs() < 1e-15);
        assert!((d.ds.get(0, 1)).abs() < 1e-15);
    }

    #[test]
    fn corrupted_spin_reports_direct_contraction() {
        let params = BMTParams::new(1.0, 1.0, 2.0);
        let mut state = rest_state([0.0; 6]);
        state.s.set_pair(1, 2, 0.4);
        let (r1, r2) = constraint_residuals(&state, &params);
        assert_eq!(r1, 0.0);
        assert_eq!(r2, 0.0);
        state.s.set_pair(0, 1, 0.1);
        let (_, r2) = constraint_residuals(&state, &params);
        assert!((r2 - 0.1 * params.c).abs() < 1e-15);
    }

    #[test]
    fn boosted_admissible_state_stays_admissible() {
        let mut rng = StdRng::seed_from_u64(71);
        let params = BMTParams::new(1.0, 1.0, 2.0);
        for _ in 0..50 {
            let state = rest_state([0.0, 0.0, 0.0, 0.3, -0.8, 0.5]);
            let l = sample::group_element(&mut rng, 1.0).vector_rep();
            let boosted = BMTState {
                x: state.x.transformed(&l),
                u: state.u.transformed(&l),
                s: state.s.transformed(&l),
                tau: 0.0,
            };
            let (r1, r2) = constraint_residuals(&boosted, &params);
            assert!(r1.abs() < 1e-12);
            assert!(r2.abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_field_matches_closed_form_and_conserves_spin() {
        let b = 1.0;
        let params = BMTParams::new(1.0, 1.0, 2.0);
        let field = EMField::uniform([0.0; 3], [0.0, 0.0, b]);
        // Admissible data: boost rest-frame spatial spin and rest velocity
        // with the same transformation, so S_ab u^b = 0 exactly.
        let boost = crate::group::boost::LowerBoost {
            lambda: 1.25,
            zeta: crate::C64::new(0.2, -0.1),
        }
        .matrix()
        .vector_rep();
        let s0 = BMTState {
            x: FourVector::ZERO,
            u: FourVector::new(1.0, 0.0, 0.0, 0.0).transformed(&boost),
            s: SpinTensor::from_pairs([0.0, 0.0, 0.0, 0.2, 0.7, -0.4]).transformed(&boost),
            tau: 0.0,
        };
        let period = 2.0 * std::f64::consts::PI * params.m / (params.e * b);
        let n = 2000;
        let traj = integrate(
            &s0,
            &field,
            &params,
            2.0 * period / n as f64,
            n,
            BMTMethod::Rk4,
        )
        .unwrap();
        let f = match &field {
            EMField::Uniform { f } => *f,
            _ => unreachable!(),
        };
        let exact = closed_form_uniform(&s0, &f, &params, 2.0 * period).unwrap();
        let last = traj.states.last().unwrap();
        assert!((last.u - exact.u).euclidean_norm() < 1e-9);
        assert!((last.x - exact.x).euclidean_norm() < 1e-8);
        for k in 0..6 {
            assert!((last.s.0[k] - exact.s.0[k]).abs() < 1e-9);
        }
        // Spin magnitude and constraints hold along the way.
        let spin_drift = drift(traj.monitors.iter().map(|m| m.total_spin));
        assert!(spin_drift < 1e-10, "total spin drift {spin_drift}");
        let worst_r2 = traj
            .monitors
            .iter()
            .map(|m| m.constraint_spin.abs())
            .fold(0.0f64, f64::max);
        assert!(worst_r2 < 1e-9, "spin constraint residual {worst_r2}");
    }

    #[test]
    fn lorentz_covariance_of_trajectories() {
        let mut rng = StdRng::seed_from_u64(72);
        let params = BMTParams::new(1.0, 1.0, 2.0);
        let f = SpinTensor::from_pairs([0.2, 0.0, -0.1, 0.4, 0.0, 0.3]);
        let s0 = BMTState {
            x: FourVector::ZERO,
            u: FourVector::new((1.0f64 + 0.25).sqrt(), 0.5, 0.0, 0.0),
            s: SpinTensor::from_pairs([0.0, 0.0, 0.0, 0.1, 0.6, -0.2]),
            tau: 0.0,
        };
        let a = sample::group_element(&mut rng, 0.6);
        let l = a.vector_rep();
        let boosted0 = BMTState {
            x: s0.x.transformed(&l),
            u: s0.u.transformed(&l),
            s: s0.s.transformed(&l),
            tau: 0.0,
        };
        let f_boosted = f.transformed(&l);
        let plain = integrate(
            &s0,
            &EMField::constant_tensor(f),
            &params,
            0.01,
            400,
            BMTMethod::Rk4,
        )
        .unwrap();
        let boosted = integrate(
            &boosted0,
            &EMField::constant_tensor(f_boosted),
            &params,
            0.01,
            400,
            BMTMethod::Rk4,
        )
        .unwrap();
        for (a_state, b_state) in plain.states.iter().zip(boosted.states.iter()).step_by(40) {
            let mapped_u = a_state.u.transformed(&l);
            let mapped_x = a_state.x.transformed(&l);
            let mapped_s = a_state.s.transformed(&l);
            assert!((mapped_u - b_state.u).euclidean_norm() < 1e-8);
            assert!((mapped_x - b_state.x).euclidean_norm() < 1e-8);
            for k in 0..6 {
                assert!((mapped_s.0[k] - b_state.s.0[k]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn plane_wave_transport_conserves_total_spin() {
        let params = BMTParams::new(1.0, 1.0, 2.0);
        let f = SpinTensor::from_pairs([0.3, 0.0, 0.0, 0.0, 0.2, 0.0]);
        let k = FourVector::new(1.0, 0.0, 0.0, 1.0);
        let field = EMField::plane_wave(f, k).unwrap();
        let boost = crate::group::boost::LowerBoost {
            lambda: 1.1,
            zeta: crate::C64::new(0.1, 0.2),
        }
        .matrix()
        .vector_rep();
        let s0 = BMTState {
            x: FourVector::ZERO,
            u: FourVector::new(1.0, 0.0, 0.0, 0.0).transformed(&boost),
            s: SpinTensor::from_pairs([0.0, 0.0, 0.0, 0.5, -0.3, 0.7]).transformed(&boost),
            tau: 0.0,
        };
        let traj = integrate(&s0, &field, &params, 1e-3, 5000, BMTMethod::Rk4).unwrap();
        let spin_drift = drift(traj.monitors.iter().map(|m| m.total_spin));
        assert!(spin_drift < 1e-10, "total spin drift {spin_drift}");
        let worst_r2 = traj
            .monitors
            .iter()
            .map(|m| m.constraint_spin.abs())
            .fold(0.0f64, f64::max);
        assert!(worst_r2 < 1e-8, "constraint residual {worst_r2}");
    }

    #[test]
    fn plane_wave_requires_null_wave_vector() {
        let f = SpinTensor::from_pairs([0.1, 0.0, 0.0, 0.0, 0.0, 0.2]);
        assert!(EMField::plane_wave(f, FourVector::new(1.0, 0.0, 0.0, 1.0)).is_ok());
        assert!(EMField::plane_wave(f, FourVector::new(1.0, 0.0, 0.0, 0.9)).is_err());
        let field = EMField::plane_wave(f, FourVector::new(1.0, 0.0, 0.0, 1.0)).unwrap();
        let x = FourVector::new(0.3, 0.0, 0.0, 0.7);
        let phase = x.minkowski_dot(&FourVector::new(1.0, 0.0, 0.0, 1.0)).cos();
        let expected = f.to_matrix() * phase;
        assert!((field.eval(&x) - expected).norm() < 1e-15);
    }

    #[test]
    fn projected_method_restores_mass_shell() {
        let params = BMTParams::new(1.0, 1.0, 2.3);
        let field = EMField::uniform([0.4, 0.0, 0.0], [0.0, 0.0, 1.0]);
        let s0 = BMTState {
            x: FourVector::ZERO,
            u: FourVector::new((2.0f64).sqrt(), 1.0, 0.0, 0.0),
            s: SpinTensor::ZERO,
            tau: 0.0,
        };
        let traj = integrate(&s0, &field, &params, 0.05, 200, BMTMethod::Rk4Projected).unwrap();
        for m in &traj.monitors {
            assert!(m.constraint_shell.abs() < 1e-13);
        }
    }

    #[test]
    fn non_finite_states_are_reported() {
        let params = BMTParams::new(1.0, 1e-300, 2.0);
        let field = EMField::uniform([1e300, 0.0, 0.0], [0.0; 3]);
        let s0 = rest_state([0.0; 6]);
        match integrate(&s0, &field, &params, 1e3, 10, BMTMethod::Rk4) {
            Err(Error::NonFinite { .. }) => {}
            other => panic!(
                "expected NonFinite, got {:?}",
                other.map(|t| t.states.len())
            ),
        }
    }
}
