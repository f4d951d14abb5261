//! Spin generators realized as first-order differential operators on the
//! group, via finite-difference directional derivatives along left and right
//! group actions.
//!
//! The operators are realized by differencing along group curves
//! `t -> exp(t Sigma_ab) Lambda` rather than through symbolic coefficient
//! functions. With the crate's conventions the left-derivative operators
//! satisfy the bracket relations
//! `[S_ab, S_cd] = eta_ac S_bd - eta_bc S_ad + eta_bd S_ac - eta_ad S_bc`
//! with a plus sign (the matrix generators carry the opposite sign, see
//! [`crate::group::representation::MATRIX_BRACKET_SIGN`]).

use rand::Rng;

use crate::error::{Error, Result};
use crate::four_vector::{FourVector, METRIC_DIAG};
use crate::group::algebra::{AlgebraCoefficients, PAIRS};
use crate::group::element::GroupElement;
use crate::group::representation::{rep_matrix, RepLabel, Representation};
use crate::{sample, C64};

/// Central-difference stencil with Richardson extrapolation.
#[derive(Debug, Clone, Copy)]
pub struct DerivativeStencil {
    h: f64,
    levels: usize,
}

impl DerivativeStencil {
    /// Base step must lie in `[1e-6, 1e-1]`; extrapolation levels in `1..=4`.
    pub fn new(h: f64, levels: usize) -> Result<Self> {
        if !(1e-6..=1e-1).contains(&h) {
            return Err(Error::Domain(format!(
                "stencil step {h} outside [1e-6, 1e-1]"
            )));
        }
        if !(1..=4).contains(&levels) {
            return Err(Error::Domain(format!(
                "stencil levels {levels} outside 1..=4"
            )));
        }
        Ok(DerivativeStencil { h, levels })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    /// Richardson-extrapolated central difference of a complex curve at 0.
    pub fn differentiate<F: Fn(f64) -> C64>(&self, f: F) -> C64 {
        let mut table = [C64::new(0.0, 0.0); 4];
        for (i, slot) in table.iter_mut().enumerate().take(self.levels) {
            let h = self.h / 2f64.powi(i as i32);
            *slot = (f(h) - f(-h)) / C64::new(2.0 * h, 0.0);
        }
        for j in 1..self.levels {
            let factor = 4f64.powi(j as i32);
            for i in 0..(self.levels - j) {
                table[i] = (table[i + 1] * factor - table[i]) / C64::new(factor - 1.0, 0.0);
            }
        }
        table[0]
    }
}

impl Default for DerivativeStencil {
    fn default() -> Self {
        DerivativeStencil { h: 1e-3, levels: 2 }
    }
}

/// A scalar function on the group with a human-readable tag.
pub struct GroupScalarFunction {
    tag: String,
    eval: Box<dyn Fn(&GroupElement) -> C64 + Send + Sync>,
}

impl GroupScalarFunction {
    pub fn new(
        tag: impl Into<String>,
        eval: impl Fn(&GroupElement) -> C64 + Send + Sync + 'static,
    ) -> Self {
        GroupScalarFunction {
            tag: tag.into(),
            eval: Box::new(eval),
        }
    }

    pub fn constant(c: C64) -> Self {
        GroupScalarFunction::new("constant", move |_| c)
    }

    /// The matrix element `D(Lambda)_(r, s)` of a representation.
    pub fn matrix_element(label: RepLabel, r: usize, s: usize) -> Self {
        GroupScalarFunction::new(format!("{label}[{r},{s}]"), move |g| {
            rep_matrix(label, g)[(r, s)]
        })
    }

    pub fn eval(&self, g: &GroupElement) -> C64 {
        (self.eval)(g)
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }
}

impl std::fmt::Debug for GroupScalarFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupScalarFunction({})", self.tag)
    }
}

/// Which side the group acts on along the differentiation curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

fn directional<F: Fn(&GroupElement) -> C64>(
    func: &F,
    lambda: &GroupElement,
    pair: usize,
    stencil: &DerivativeStencil,
    side: Side,
) -> C64 {
    let unit = AlgebraCoefficients::unit_pair(pair);
    stencil.differentiate(|t| {
        let step = GroupElement::exp(&(unit * t));
        let point = match side {
            Side::Left => step.compose(lambda),
            Side::Right => lambda.compose(&step),
        };
        func(&point)
    })
}

/// Left action derivative: `d/dt f(exp(t Sigma_ab) Lambda) at t = 0`.
///
/// On matrix elements of a representation this is multiplication by the
/// generator from the left: `S_ab psi_rs = (Sigma_ab D(Lambda))_rs`.
pub fn left_derivative(
    f: &GroupScalarFunction,
    lambda: &GroupElement,
    pair: usize,
    stencil: &DerivativeStencil,
) -> C64 {
    directional(&|g| f.eval(g), lambda, pair, stencil, Side::Left)
}

/// Right action derivative: `d/dt f(Lambda exp(t Sigma_ab)) at t = 0`; acts
/// on the column index, `(D(Lambda) Sigma_ab)_rs`.
pub fn right_derivative(
    f: &GroupScalarFunction,
    lambda: &GroupElement,
    pair: usize,
    stencil: &DerivativeStencil,
) -> C64 {
    directional(&|g| f.eval(g), lambda, pair, stencil, Side::Right)
}

/// Report of a generator-action sweep.
#[derive(Debug, Clone)]
pub struct GeneratorActionReport {
    pub label: RepLabel,
    pub samples: usize,
    pub worst_error: f64,
    pub tolerance: f64,
    /// `(pair, row, column, sample)` of the worst offender.
    pub worst_location: (usize, usize, usize, usize),
}

/// Sweeps random group points and checks that the left derivative of every
/// matrix element equals the generator action of the supplied representation,
/// to `1e-6` relative error (relative to `max(1, |exact|)`).
pub fn verify_generator_action<R: Rng>(
    rep: &Representation,
    samples: usize,
    rng: &mut R,
    stencil: &DerivativeStencil,
) -> Result<GeneratorActionReport> {
    let tolerance = 1e-6;
    let dim = rep.dimension;
    let mut worst = 0.0f64;
    let mut worst_location = (0, 0, 0, 0);
    for n in 0..samples {
        let lambda = sample::group_element(rng, 1.0);
        let d = rep_matrix(rep.label, &lambda);
        for k in 0..6 {
            let expected = &rep.generators[k] * &d;
            for r in 0..dim {
                for s in 0..dim {
                    let f = GroupScalarFunction::matrix_element(rep.label, r, s);
                    let num = left_derivative(&f, &lambda, k, stencil);
                    let exact = expected[(r, s)];
                    let err = (num - exact).norm() / exact.norm().max(1.0);
                    if err > worst {
                        worst = err;
                        worst_location = (k, r, s, n);
                    }
                }
            }
        }
    }
    if worst > tolerance {
        return Err(Error::ToleranceExceeded {
            check: format!("generator action, {} representation", rep.label),
            worst,
            tolerance,
            location: format!(
                "pair {:?}, element ({}, {}), sample {}",
                PAIRS[worst_location.0], worst_location.1, worst_location.2, worst_location.3
            ),
        });
    }
    Ok(GeneratorActionReport {
        label: rep.label,
        samples,
        worst_error: worst,
        tolerance,
        worst_location,
    })
}

/// Operator commutator `(S_ab S_cd - S_cd S_ab) f(Lambda)` via nested
/// directional derivatives.
pub fn numeric_commutator(
    f: &GroupScalarFunction,
    lambda: &GroupElement,
    ab: usize,
    cd: usize,
    stencil: &DerivativeStencil,
) -> C64 {
    let apply_after = |outer: usize, inner: usize, g: &GroupElement| {
        directional(
            &|h| directional(&|x| f.eval(x), h, inner, stencil, Side::Left),
            g,
            outer,
            stencil,
            Side::Left,
        )
    };
    apply_after(ab, cd, lambda) - apply_after(cd, ab, lambda)
}

/// The bracket combination `eta_ac S_bd - eta_bc S_ad + eta_bd S_ac
/// - eta_ad S_bc` applied to `f` through single left derivatives.
pub fn bracket_combination_applied(
    f: &GroupScalarFunction,
    lambda: &GroupElement,
    ab: usize,
    cd: usize,
    stencil: &DerivativeStencil,
) -> C64 {
    let kappa = crate::group::algebra::structure_coefficients(ab, cd);
    let mut total = C64::new(0.0, 0.0);
    for (k, &coeff) in kappa.iter().enumerate() {
        if coeff != 0.0 {
            total += left_derivative(f, lambda, k, stencil) * coeff;
        }
    }
    total
}

/// Spin block of the Laplace-Beltrami operator:
/// `eta^ac eta^bd S_ab S_cd f(Lambda)` as an unrestricted double sum,
/// evaluated with nested stencils.
pub fn casimir_apply(
    f: &GroupScalarFunction,
    lambda: &GroupElement,
    stencil: &DerivativeStencil,
) -> C64 {
    let mut total = C64::new(0.0, 0.0);
    for (k, &(a, b)) in PAIRS.iter().enumerate() {
        let weight = 2.0 * METRIC_DIAG[a] * METRIC_DIAG[b];
        let nested = directional(
            &|h| directional(&|x| f.eval(x), h, k, stencil, Side::Left),
            lambda,
            k,
            stencil,
            Side::Left,
        );
        total += nested * weight;
    }
    total
}

/// Report of the covariant field transformation sweep.
#[derive(Debug, Clone)]
pub struct FieldCheckReport {
    pub samples: usize,
    pub worst_error: f64,
    pub tolerance: f64,
    /// Components are assembled as `B_c(x, Lambda) = vector_rep(Lambda)_cd
    /// b_d(x)`; the inverse placement does not satisfy the transformation law.
    pub direct_placement: bool,
}

/// Checks that field components assembled from the vector representation
/// transform under the left derivative as
/// `S_ab B_c = eta_ac B_b - eta_bc B_a`.
pub fn covariant_field_check<R: Rng>(
    b: &(dyn Fn(&FourVector) -> FourVector + Sync),
    samples: usize,
    rng: &mut R,
    stencil: &DerivativeStencil,
) -> Result<FieldCheckReport> {
    let tolerance = 1e-6;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let x = sample::four_vector(rng, 1.0);
        let lambda = sample::group_element(rng, 1.0);
        let bx = b(&x);
        let field = |g: &GroupElement, c: usize| -> C64 {
            let l = g.vector_rep();
            let mut total = 0.0;
            for d in 0..4 {
                total += l[(c, d)] * bx[d];
            }
            C64::new(total, 0.0)
        };
        let current: Vec<f64> = (0..4).map(|c| field(&lambda, c).re).collect();
        for (k, &(a, bb)) in PAIRS.iter().enumerate() {
            for c in 0..4 {
                let lhs = directional(&|g| field(g, c), &lambda, k, stencil, Side::Left).re;
                let mut rhs = 0.0;
                if a == c {
                    rhs += METRIC_DIAG[a] * current[bb];
                }
                if bb == c {
                    rhs -= METRIC_DIAG[bb] * current[a];
                }
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    if worst > tolerance {
        return Err(Error::ToleranceExceeded {
            check: "covariant field transformation".into(),
            worst,
            tolerance,
            location: "vector-rep field components".into(),
        });
    }
    Ok(FieldCheckReport {
        samples,
        worst_error: worst,
        tolerance,
        direct_placement: true,
    })
}
