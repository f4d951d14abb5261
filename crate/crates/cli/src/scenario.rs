//! Scenario file schema and validation.
//!
//! A scenario is a single JSON document; every physical quantity must be
//! explicit (no defaults for masses, charges, or gyromagnetic factors).

use serde::Deserialize;
use std::collections::BTreeMap;

use poincare_spin::bmt::{BMTMethod, BMTParams, BMTState, EMField};
use poincare_spin::four_vector::FourVector;
use poincare_spin::hamiltonian::{
    make_fields, ExternalFields, FieldSpec, PhaseState, SpinConnection,
};
use poincare_spin::spin_tensor::SpinTensor;
use poincare_spin::{AlgebraCoefficients, GroupElement};

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum Scenario {
    #[serde(rename = "bmt")]
    Bmt(BmtScenario),
    #[serde(rename = "hamiltonian")]
    Hamiltonian(HamScenario),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BmtScenario {
    pub params: ParamsSpec,
    pub initial: BmtInitial,
    pub field: BmtFieldSpec,
    pub dt: f64,
    pub nsteps: usize,
    pub method: String,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    pub e: f64,
    pub m: f64,
    pub g: f64,
    #[serde(default = "default_c")]
    pub c: f64,
}

fn default_c() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BmtInitial {
    pub x: [f64; 4],
    pub u: [f64; 4],
    /// Ordered pairs `(01, 02, 03, 12, 13, 23)`.
    pub spin: [f64; 6],
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum BmtFieldSpec {
    #[serde(rename = "uniform")]
    Uniform {
        e_field: [f64; 3],
        b_field: [f64; 3],
    },
    #[serde(rename = "crossed")]
    Crossed {
        e_field: [f64; 3],
        b_field: [f64; 3],
    },
    #[serde(rename = "constant_tensor")]
    ConstantTensor { f: [f64; 6] },
    #[serde(rename = "plane_wave")]
    PlaneWave { f: [f64; 6], k: [f64; 4] },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamScenario {
    pub initial: HamInitial,
    pub field: HamFieldSpec,
    pub dt: f64,
    pub nsteps: usize,
    pub method: String,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamInitial {
    pub x: [f64; 4],
    /// Canonical momenta `p_mu` (lower index).
    pub p: [f64; 4],
    pub spin: [f64; 6],
    /// Group configuration as exponential coordinates; identity when zero.
    #[serde(default)]
    pub omega: [f64; 6],
    pub phi: f64,
    pub q: f64,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum HamFieldSpec {
    #[serde(rename = "flat")]
    Flat,
    #[serde(rename = "constant_a")]
    ConstantA { a: [f64; 4] },
    #[serde(rename = "linear_a")]
    LinearA { f: [f64; 6] },
    #[serde(rename = "diagonal_tetrad")]
    DiagonalTetrad { scales: [f64; 4] },
    #[serde(rename = "constant_omega")]
    ConstantOmega { omega: [[f64; 6]; 4] },
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Keep every `stride`-th step in the trajectory file (the first and
    /// last steps are always kept). Zero means every step.
    #[serde(default)]
    pub stride: usize,
    /// Monitor columns to write; empty means all available monitors.
    #[serde(default)]
    pub monitors: Vec<String>,
}

pub const BMT_MONITORS: [&str; 3] = ["constraint_shell", "constraint_spin", "total_spin"];
pub const HAM_MONITORS: [&str; 4] = ["h", "total_spin", "q", "det_drift"];

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario, String> {
        let scenario: Scenario =
            serde_json::from_str(text).map_err(|e| format!("scenario: {e}"))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<(), String> {
        let (dt, nsteps, method, output) = match self {
            Scenario::Bmt(s) => {
                if s.params.m <= 0.0 {
                    return Err(format!("params.m: must be positive, got {}", s.params.m));
                }
                if s.params.c <= 0.0 {
                    return Err(format!("params.c: must be positive, got {}", s.params.c));
                }
                if !["rk4", "rk4-projected"].contains(&s.method.as_str()) {
                    return Err(format!(
                        "method: expected \"rk4\" or \"rk4-projected\", got \"{}\"",
                        s.method
                    ));
                }
                for name in &s.output.monitors {
                    if !BMT_MONITORS.contains(&name.as_str()) {
                        return Err(format!(
                            "output.monitors: unknown monitor \"{name}\" (available: {})",
                            BMT_MONITORS.join(", ")
                        ));
                    }
                }
                (s.dt, s.nsteps, &s.method, &s.output)
            }
            Scenario::Hamiltonian(s) => {
                if s.method != "rk4-group" {
                    return Err(format!(
                        "method: expected \"rk4-group\", got \"{}\"",
                        s.method
                    ));
                }
                for name in &s.output.monitors {
                    if !HAM_MONITORS.contains(&name.as_str()) {
                        return Err(format!(
                            "output.monitors: unknown monitor \"{name}\" (available: {})",
                            HAM_MONITORS.join(", ")
                        ));
                    }
                }
                (s.dt, s.nsteps, &s.method, &s.output)
            }
        };
        let _ = (method, output);
        if dt <= 0.0 || !dt.is_finite() {
            return Err(format!("dt: must be positive and finite, got {dt}"));
        }
        if nsteps == 0 {
            return Err("nsteps: must be at least 1".to_string());
        }
        Ok(())
    }
}

impl BmtScenario {
    pub fn params(&self) -> BMTParams {
        BMTParams {
            e: self.params.e,
            m: self.params.m,
            g: self.params.g,
            c: self.params.c,
        }
    }

    pub fn initial_state(&self) -> BMTState {
        BMTState {
            x: FourVector(self.initial.x),
            u: FourVector(self.initial.u),
            s: SpinTensor(self.initial.spin),
            tau: 0.0,
        }
    }

    pub fn field(&self) -> Result<EMField, String> {
        match &self.field {
            BmtFieldSpec::Uniform { e_field, b_field } => Ok(EMField::uniform(*e_field, *b_field)),
            BmtFieldSpec::Crossed { e_field, b_field } => {
                EMField::crossed(*e_field, *b_field).map_err(|e| format!("field: {e}"))
            }
            BmtFieldSpec::ConstantTensor { f } => Ok(EMField::constant_tensor(SpinTensor(*f))),
            BmtFieldSpec::PlaneWave { f, k } => EMField::plane_wave(SpinTensor(*f), FourVector(*k))
                .map_err(|e| format!("field.k: {e}")),
        }
    }

    pub fn method(&self) -> BMTMethod {
        match self.method.as_str() {
            "rk4-projected" => BMTMethod::Rk4Projected,
            _ => BMTMethod::Rk4,
        }
    }
}


impl HamScenario {
    pub fn initial_state(&self) -> PhaseState {
        let mut state = PhaseState::new(
            FourVector(self.initial.x),
            FourVector(self.initial.p),
            SpinTensor(self.initial.spin),
            self.initial.q,
        );
        state.phi = self.initial.phi;
        state.lambda = GroupElement::exp(&AlgebraCoefficients(self.initial.omega));
        state
    }

    pub fn fields(&self) -> Result<ExternalFields, String> {
        let spec = match &self.field {
            HamFieldSpec::Flat => FieldSpec::Flat,
            HamFieldSpec::ConstantA { a } => FieldSpec::ConstantA(*a),
            HamFieldSpec::LinearA { f } => FieldSpec::LinearA(SpinTensor(*f)),
            HamFieldSpec::DiagonalTetrad { scales } => FieldSpec::DiagonalTetrad(*scales),
            HamFieldSpec::ConstantOmega { omega } => {
                FieldSpec::ConstantOmega(SpinConnection(*omega))
            }
        };
        make_fields(&spec).map_err(|e| format!("field: {e}"))
    }
}
