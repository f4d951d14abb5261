//! External-field providers: tetrad, gauge potential, and spin connection.
//!
//! Built-in providers carry analytic directional derivatives; custom
//! providers fall back to central-difference stencils.

use nalgebra::Matrix4;

use crate::error::{Error, Result};
use crate::four_vector::{metric, FourVector};
use crate::group::algebra::AlgebraCoefficients;
use crate::group::element::GroupElement;
use crate::operators::DerivativeStencil;
use crate::spin_tensor::SpinTensor;

/// Spin-connection values `Omega_a^bc`, antisymmetric in `(b, c)` and stored
/// on ordered pairs: `values[a][pair]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpinConnection(pub [[f64; 6]; 4]);

impl SpinConnection {
    pub const ZERO: SpinConnection = SpinConnection([[0.0; 6]; 4]);

    /// Full contraction `Omega_a^bc S_bc` as an unrestricted double sum.
    pub fn contract(&self, a: usize, s: &SpinTensor) -> f64 {
        let mut total = 0.0;
        for k in 0..6 {
            total += 2.0 * self.0[a][k] * s.0[k];
        }
        total
    }
}

type TetradFn = dyn Fn(&FourVector) -> Matrix4<f64> + Send + Sync;
type GaugeFn = dyn Fn(&FourVector, &GroupElement, f64) -> [f64; 4] + Send + Sync;
type OmegaFn = dyn Fn(&FourVector, &GroupElement) -> SpinConnection + Send + Sync;

/// Tetrad `e_a^mu(x)`; rows are flat indices, columns coordinate indices.
pub enum TetradField {
    Flat,
    /// Constant diagonal tetrad with the given scale factors.
    Diagonal([f64; 4]),
    Custom(Box<TetradFn>),
}

/// Gauge potential `A_a(x, Lambda, phi)`.
pub enum GaugeField {
    Zero,
    Constant([f64; 4]),
    /// `A_a = -1/2 F_ab x^b` for a constant field strength `F`.
    Linear {
        f: SpinTensor,
    },
    Custom(Box<GaugeFn>),
}

/// Spin connection `Omega_a^bc(x, Lambda)`.
pub enum SpinConnectionField {
    Zero,
    Constant(SpinConnection),
    Custom(Box<OmegaFn>),
}

impl TetradField {
    pub fn value(&self, x: &FourVector) -> Matrix4<f64> {
        match self {
            TetradField::Flat => Matrix4::identity(),
            TetradField::Diagonal(d) => {
                Matrix4::from_diagonal(&nalgebra::Vector4::new(d[0], d[1], d[2], d[3]))
            }
            TetradField::Custom(f) => f(x),
        }
    }

    /// `de_a^mu / dx^nu` for fixed `nu`.
    pub fn x_partial(
        &self,
        x: &FourVector,
        nu: usize,
        stencil: &DerivativeStencil,
    ) -> Matrix4<f64> {
        match self {
            TetradField::Flat | TetradField::Diagonal(_) => Matrix4::zeros(),
            TetradField::Custom(f) => {
                let mut out = Matrix4::zeros();
                for a in 0..4 {
                    for mu in 0..4 {
                        out[(a, mu)] = stencil
                            .differentiate(|t| {
                                let mut xt = *x;
                                xt[nu] += t;
                                crate::C64::new(f(&xt)[(a, mu)], 0.0)
                            })
                            .re;
                    }
                }
                out
            }
        }
    }

    pub fn is_builtin(&self) -> bool {
        !matches!(self, TetradField::Custom(_))
    }
}

impl GaugeField {
    pub fn value(&self, x: &FourVector, lambda: &GroupElement, phi: f64) -> [f64; 4] {
        match self {
            GaugeField::Zero => [0.0; 4],
            GaugeField::Constant(a) => *a,
            GaugeField::Linear { f } => {
                let fm = f.to_matrix();
                let mut out = [0.0; 4];
                for a in 0..4 {
                    for b in 0..4 {
                        out[a] -= 0.5 * fm[(a, b)] * x[b];
                    }
                }
                out
            }
            GaugeField::Custom(g) => g(x, lambda, phi),
        }
    }

    /// `dA_a / dx^nu` for fixed `nu`.
    pub fn x_partial(
        &self,
        x: &FourVector,
        lambda: &GroupElement,
        phi: f64,
        nu: usize,
        stencil: &DerivativeStencil,
    ) -> [f64; 4] {
        match self {
            GaugeField::Zero | GaugeField::Constant(_) => [0.0; 4],
            GaugeField::Linear { f } => {
                let fm = f.to_matrix();
                let mut out = [0.0; 4];
                for a in 0..4 {
                    out[a] = -0.5 * fm[(a, nu)];
                }
                out
            }
            GaugeField::Custom(g) => {
                let mut out = [0.0; 4];
                for (a, slot) in out.iter_mut().enumerate() {
                    *slot = stencil
                        .differentiate(|t| {
                            let mut xt = *x;
                            xt[nu] += t;
                            crate::C64::new(g(&xt, lambda, phi)[a], 0.0)
                        })
                        .re;
                }
                out
            }
        }
    }

    pub fn phi_partial(
        &self,
        x: &FourVector,
        lambda: &GroupElement,
        phi: f64,
        stencil: &DerivativeStencil,
    ) -> [f64; 4] {
        match self {
            GaugeField::Custom(g) => {
                let mut out = [0.0; 4];
                for (a, slot) in out.iter_mut().enumerate() {
                    *slot = stencil
                        .differentiate(|t| crate::C64::new(g(x, lambda, phi + t)[a], 0.0))
                        .re;
                }
                out
            }
            _ => [0.0; 4],
        }
    }

    /// Left directional derivative in the group slot along pair `k`.
    pub fn lambda_partial(
        &self,
        x: &FourVector,
        lambda: &GroupElement,
        phi: f64,
        k: usize,
        stencil: &DerivativeStencil,
    ) -> [f64; 4] {
        match self {
            GaugeField::Custom(g) => {
                let unit = AlgebraCoefficients::unit_pair(k);
                let mut out = [0.0; 4];
                for (a, slot) in out.iter_mut().enumerate() {
                    *slot = stencil
                        .differentiate(|t| {
                            let shifted = GroupElement::exp(&(unit * t)).compose(lambda);
                            crate::C64::new(g(x, &shifted, phi)[a], 0.0)
                        })
                        .re;
                }
                out
            }
            _ => [0.0; 4],
        }
    }

    pub fn is_builtin(&self) -> bool {
        !matches!(self, GaugeField::Custom(_))
    }
}

impl SpinConnectionField {
    pub fn value(&self, x: &FourVector, lambda: &GroupElement) -> SpinConnection {
        match self {
            SpinConnectionField::Zero => SpinConnection::ZERO,
            SpinConnectionField::Constant(w) => *w,
            SpinConnectionField::Custom(f) => f(x, lambda),
        }
    }

    pub fn x_partial(
        &self,
        x: &FourVector,
        lambda: &GroupElement,
        nu: usize,
        stencil: &DerivativeStencil,
    ) -> SpinConnection {
        match self {
            SpinConnectionField::Zero | SpinConnectionField::Constant(_) => SpinConnection::ZERO,
            SpinConnectionField::Custom(f) => {
                let mut out = SpinConnection::ZERO;
                for a in 0..4 {
                    for k in 0..6 {
                        out.0[a][k] = stencil
                            .differentiate(|t| {
                                let mut xt = *x;
                                xt[nu] += t;
                                crate::C64::new(f(&xt, lambda).0[a][k], 0.0)
                            })
                            .re;
                    }
                }
                out
            }
        }
    }

    pub fn lambda_partial(
        &self,
        x: &FourVector,
        lambda: &GroupElement,
        pair: usize,
        stencil: &DerivativeStencil,
    ) -> SpinConnection {
        match self {
            SpinConnectionField::Custom(f) => {
                let unit = AlgebraCoefficients::unit_pair(pair);
                let mut out = SpinConnection::ZERO;
                for a in 0..4 {
                    for k in 0..6 {
                        out.0[a][k] = stencil
                            .differentiate(|t| {
                                let shifted = GroupElement::exp(&(unit * t)).compose(lambda);
                                crate::C64::new(f(x, &shifted).0[a][k], 0.0)
                            })
                            .re;
                    }
                }
                out
            }
            _ => SpinConnection::ZERO,
        }
    }

    pub fn is_builtin(&self) -> bool {
        !matches!(self, SpinConnectionField::Custom(_))
    }
}

/// The complete external-field configuration.
pub struct ExternalFields {
    pub tetrad: TetradField,
    pub gauge: GaugeField,
    pub spin_connection: SpinConnectionField,
}

impl ExternalFields {
    pub fn flat() -> Self {
        ExternalFields {
            tetrad: TetradField::Flat,
            gauge: GaugeField::Zero,
            spin_connection: SpinConnectionField::Zero,
        }
    }

    /// All parts carry analytic derivatives.
    pub fn is_builtin(&self) -> bool {
        self.tetrad.is_builtin() && self.gauge.is_builtin() && self.spin_connection.is_builtin()
    }

    /// Inverse metric `g^{mu nu} = eta^{ab} e_a^mu e_b^nu`.
    pub fn metric_upper(&self, x: &FourVector) -> Matrix4<f64> {
        let e = self.tetrad.value(x);
        e.transpose() * metric() * e
    }
}

/// Built-in field configurations.
#[derive(Debug, Clone)]
pub enum FieldSpec {
    Flat,
    ConstantA([f64; 4]),
    /// `A_a = -1/2 F_ab x^b`.
    LinearA(SpinTensor),
    DiagonalTetrad([f64; 4]),
    ConstantOmega(SpinConnection),
}

/// Builds the provider set for a built-in specification.
pub fn make_fields(spec: &FieldSpec) -> Result<ExternalFields> {
    let mut fields = ExternalFields::flat();
    match spec {
        FieldSpec::Flat => {}
        FieldSpec::ConstantA(a) => fields.gauge = GaugeField::Constant(*a),
        FieldSpec::LinearA(f) => fields.gauge = GaugeField::Linear { f: *f },
        FieldSpec::DiagonalTetrad(d) => {
            let det: f64 = d.iter().product();
            if det.abs() < 1e-12 {
                return Err(Error::SingularTetrad { det: det.abs() });
            }
            fields.tetrad = TetradField::Diagonal(*d);
        }
        FieldSpec::ConstantOmega(w) => fields.spin_connection = SpinConnectionField::Constant(*w),
    }
    Ok(fields)
}
