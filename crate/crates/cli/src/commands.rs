//! simulate / convergence / decompose implementations.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use poincare_spin::bmt::{integrate, BMTState, BMTTrajectory};
use poincare_spin::four_vector::FourVector;
use poincare_spin::group::boost::{boost_from_momentum, little_group_decompose};
use poincare_spin::hamiltonian::{integrate_hamiltonian, HamMethod, HamTrajectory, PhaseState};
use poincare_spin::harmonic::{euler_from_su2, internal_coords};
use poincare_spin::operators::DerivativeStencil;
use poincare_spin::{GroupElement, C64};

use crate::report::{fmt_f64, MonitorStats, RunReport, ToleranceOutcome};
use crate::scenario::{BmtScenario, HamScenario, Scenario, BMT_MONITORS, HAM_MONITORS};

/// Exit status used across the binary: 0 pass, 1 usage or input error,
/// 2 numerical or tolerance failure.
pub enum CmdError {
    Input(String),
    Numerical(String),
}

pub type CmdResult<T> = Result<T, CmdError>;

impl CmdError {
    pub fn code(&self) -> u8 {
        match self {
            CmdError::Input(_) => 1,
            CmdError::Numerical(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CmdError::Input(m) | CmdError::Numerical(m) => m,
        }
    }
}

pub fn load_scenario(path: &Path) -> CmdResult<Scenario> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::Input(format!("cannot read scenario {}: {e}", path.display())))?;
    Scenario::from_json(&text).map_err(CmdError::Input)
}

fn selected_monitors<'a>(requested: &'a [String], available: &'a [&'a str]) -> Vec<&'a str> {
    if requested.is_empty() {
        available.to_vec()
    } else {
        requested.iter().map(|s| s.as_str()).collect()
    }
}

fn stride_rows(total: usize, stride: usize) -> Vec<usize> {
    let step = stride.max(1);
    let mut rows: Vec<usize> = (0..total).step_by(step).collect();
    if *rows.last().unwrap() != total - 1 {
        rows.push(total - 1);
    }
    rows
}

struct TrajectoryTable {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
    monitor_series: BTreeMap<String, Vec<f64>>,
    steps: usize,
}

fn bmt_table(traj: &BMTTrajectory, monitors: &[&str], stride: usize) -> TrajectoryTable {
    let mut header = vec!["tau".into()];
    for name in ["x0", "x1", "x2", "x3", "u0", "u1", "u2", "u3"] {
        header.push(name.into());
    }
    for name in ["s01", "s02", "s03", "s12", "s13", "s23"] {
        header.push(name.into());
    }
    for m in monitors {
        header.push((*m).into());
    }
    let monitor_value = |state_idx: usize, name: &str| -> f64 {
        let m = &traj.monitors[state_idx];
        match name {
            "constraint_shell" => m.constraint_shell,
            "constraint_spin" => m.constraint_spin,
            "total_spin" => m.total_spin,
            _ => unreachable!("validated monitor name"),
        }
    };
    let mut rows = Vec::new();
    for idx in stride_rows(traj.states.len(), stride) {
        let s: &BMTState = &traj.states[idx];
        let mut row = vec![s.tau];
        row.extend_from_slice(&s.x.0);
        row.extend_from_slice(&s.u.0);
        row.extend_from_slice(&s.s.0);
        for m in monitors {
            row.push(monitor_value(idx, m));
        }
        rows.push(row);
    }
    let mut monitor_series = BTreeMap::new();
    for m in monitors {
        monitor_series.insert(
            m.to_string(),
            (0..traj.states.len())
                .map(|i| monitor_value(i, m))
                .collect(),
        );
    }
    TrajectoryTable {
        header,
        rows,
        monitor_series,
        steps: traj.states.len() - 1,
    }
}

fn ham_table(traj: &HamTrajectory, monitors: &[&str], stride: usize) -> TrajectoryTable {
    let mut header = vec!["tau".into()];
    for name in ["x0", "x1", "x2", "x3", "p0", "p1", "p2", "p3"] {
        header.push(name.into());
    }
    for name in ["s01", "s02", "s03", "s12", "s13", "s23"] {
        header.push(name.into());
    }
    header.push("phi".into());
    header.push("q".into());
    for m in monitors {
        header.push((*m).into());
    }
    let monitor_value = |state_idx: usize, name: &str| -> f64 {
        let m = &traj.monitors[state_idx];
        match name {
            "h" => m.h,
            "total_spin" => m.total_spin,
            "q" => m.q,
            "det_drift" => m.det_drift,
            _ => unreachable!("validated monitor name"),
        }
    };
    let mut rows = Vec::new();
    for idx in stride_rows(traj.states.len(), stride) {
        let s: &PhaseState = &traj.states[idx];
        let mut row = vec![s.tau];
        row.extend_from_slice(&s.x.0);
        row.extend_from_slice(&s.p.0);
        row.extend_from_slice(&s.s.0);
        row.push(s.phi);
        row.push(s.q);
        for m in monitors {
            row.push(monitor_value(idx, m));
        }
        rows.push(row);
    }
    let mut monitor_series = BTreeMap::new();
    for m in monitors {
        monitor_series.insert(
            m.to_string(),
            (0..traj.states.len())
                .map(|i| monitor_value(i, m))
                .collect(),
        );
    }
    TrajectoryTable {
        header,
        rows,
        monitor_series,
        steps: traj.states.len() - 1,
    }
}

fn write_csv(path: &Path, table: &TrajectoryTable) -> CmdResult<()> {
    let mut out = String::new();
    out.push_str(&table.header.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    std::fs::write(path, out)
        .map_err(|e| CmdError::Input(format!("cannot write {}: {e}", path.display())))
}

/// Tolerance keys are `<monitor>_drift` (bound on `max |m - m(0)|`) or
/// `<monitor>_max` (bound on `max |m|`).
fn evaluate_tolerances(
    tolerances: &BTreeMap<String, f64>,
    series: &BTreeMap<String, Vec<f64>>,
) -> CmdResult<BTreeMap<String, ToleranceOutcome>> {
    let mut out = BTreeMap::new();
    for (key, &limit) in tolerances {
        let (monitor, mode) = if let Some(m) = key.strip_suffix("_drift") {
            (m, "drift")
        } else if let Some(m) = key.strip_suffix("_max") {
            (m, "max")
        } else {
            return Err(CmdError::Input(format!(
                "tolerances.{key}: expected a key ending in _drift or _max"
            )));
        };
        let values = series.get(monitor).ok_or_else(|| {
            CmdError::Input(format!(
                "tolerances.{key}: monitor \"{monitor}\" is not recorded (available: {})",
                series.keys().cloned().collect::<Vec<_>>().join(", ")
            ))
        })?;
        let actual = match mode {
            "drift" => {
                let first = values[0];
                values.iter().map(|v| (v - first).abs()).fold(0.0, f64::max)
            }
            _ => values.iter().map(|v| v.abs()).fold(0.0, f64::max),
        };
        out.insert(
            key.clone(),
            ToleranceOutcome {
                limit,
                actual,
                pass: actual <= limit,
            },
        );
    }
    Ok(out)
}

pub fn cmd_simulate(
    scenario_path: &Path,
    output: &Path,
    report_path: Option<&Path>,
    strict_constraints: bool,
) -> CmdResult<RunReport> {
    let scenario = load_scenario(scenario_path)?;
    let started = Instant::now();
    let (kind, table, tolerances) = match &scenario {
        Scenario::Bmt(s) => {
            let (table, tol) = run_bmt(s, strict_constraints)?;
            ("bmt", table, tol)
        }
        Scenario::Hamiltonian(s) => {
            let (table, tol) = run_ham(s)?;
            ("hamiltonian", table, tol)
        }
    };
    write_csv(output, &table)?;
    let mut monitor_stats = BTreeMap::new();
    for (name, values) in &table.monitor_series {
        if let Some(stats) = MonitorStats::from_series(values.iter().copied()) {
            monitor_stats.insert(name.clone(), stats);
        }
    }
    let pass = tolerances.values().all(|t| t.pass);
    let report = RunReport {
        kind: kind.to_string(),
        steps: table.steps,
        stored_rows: table.rows.len(),
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
        monitors: monitor_stats,
        tolerances,
        pass,
    };
    if let Some(path) = report_path {
        let json = serde_json::to_string_pretty(&report)
            .map_err(|e| CmdError::Input(format!("report serialization: {e}")))?;
        std::fs::write(path, json + "\n")
            .map_err(|e| CmdError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(report)
}

fn run_bmt(
    s: &BmtScenario,
    strict: bool,
) -> CmdResult<(TrajectoryTable, BTreeMap<String, ToleranceOutcome>)> {
    let params = s.params();
    let state = s.initial_state();
    if strict {
        let (r1, r2) = poincare_spin::bmt::constraint_residuals(&state, &params);
        if r1.abs() > 1e-10 {
            return Err(CmdError::Input(format!(
                "initial.u: velocity off the mass shell, u.u - c^2 = {r1:e} (strict constraints)"
            )));
        }
        if r2 > 1e-10 {
            return Err(CmdError::Input(format!(
                "initial.spin: spin-velocity contraction |S_ab u^b| = {r2:e} (strict constraints)"
            )));
        }
    }
    let field = s.field().map_err(CmdError::Input)?;
    let traj = integrate(&state, &field, &params, s.dt, s.nsteps, s.method())
        .map_err(|e| CmdError::Numerical(format!("integration failed: {e}")))?;
    let monitors = selected_monitors(&s.output.monitors, &BMT_MONITORS);
    let table = bmt_table(&traj, &monitors, s.output.stride);
    let tol = evaluate_tolerances(&s.tolerances, &table.monitor_series)?;
    Ok((table, tol))
}

fn run_ham(s: &HamScenario) -> CmdResult<(TrajectoryTable, BTreeMap<String, ToleranceOutcome>)> {
    let state = s.initial_state();
    let fields = s.fields().map_err(CmdError::Input)?;
    let stencil = DerivativeStencil::default();
    let traj = integrate_hamiltonian(
        &state,
        &fields,
        s.dt,
        s.nsteps,
        HamMethod::Rk4Group,
        &stencil,
    )
    .map_err(|e| CmdError::Numerical(format!("integration failed: {e}")))?;
    let monitors = selected_monitors(&s.output.monitors, &HAM_MONITORS);
    let table = ham_table(&traj, &monitors, s.output.stride);
    let tol = evaluate_tolerances(&s.tolerances, &table.monitor_series)?;
    Ok((table, tol))
}

#[derive(Debug, Serialize)]
pub struct ConvergenceRung {
    pub dt: f64,
    pub nsteps: usize,
    pub error: f64,
    /// Pairwise order estimate `log2(err_k / err_{k+1})`; absent on the last
    /// comparable rung or at the round-off floor.
    pub order: Option<f64>,
    pub exact: bool,
}

#[derive(Debug, Serialize)]
pub struct ConvergenceReport {
    pub rungs: Vec<ConvergenceRung>,
    /// Least-squares slope over rungs above the round-off floor.
    pub fitted_order: Option<f64>,
    pub exact: bool,
}

const ROUND_OFF_FLOOR: f64 = 1e-11;

pub fn cmd_convergence(scenario_path: &Path, rungs: usize) -> CmdResult<ConvergenceReport> {
    if rungs < 4 {
        return Err(CmdError::Input(format!(
            "rungs: need at least 4 halving dt values, got {rungs}"
        )));
    }
    let scenario = load_scenario(scenario_path)?;
    let finals: Vec<(f64, usize, Vec<f64>)> = match &scenario {
        Scenario::Bmt(s) => {
            let params = s.params();
            let state = s.initial_state();
            let field = s.field().map_err(CmdError::Input)?;
            (0..=rungs)
                .map(|k| {
                    let dt = s.dt / (1 << k) as f64;
                    let n = s.nsteps * (1 << k);
                    let traj = integrate(&state, &field, &params, dt, n, s.method())
                        .map_err(|e| CmdError::Numerical(format!("rung {k}: {e}")))?;
                    let last = traj.states.last().unwrap();
                    let mut v = vec![];
                    v.extend_from_slice(&last.x.0);
                    v.extend_from_slice(&last.u.0);
                    v.extend_from_slice(&last.s.0);
                    Ok((dt, n, v))
                })
                .collect::<CmdResult<Vec<_>>>()?
        }
        Scenario::Hamiltonian(s) => {
            let state = s.initial_state();
            let fields = s.fields().map_err(CmdError::Input)?;
            let stencil = DerivativeStencil::default();
            (0..=rungs)
                .map(|k| {
                    let dt = s.dt / (1 << k) as f64;
                    let n = s.nsteps * (1 << k);
                    let traj = integrate_hamiltonian(
                        &state,
                        &fields,
                        dt,
                        n,
                        HamMethod::Rk4Group,
                        &stencil,
                    )
                    .map_err(|e| CmdError::Numerical(format!("rung {k}: {e}")))?;
                    let last = traj.states.last().unwrap();
                    let mut v = vec![];
                    v.extend_from_slice(&last.x.0);
                    v.extend_from_slice(&last.p.0);
                    v.extend_from_slice(&last.s.0);
                    v.push(last.phi);
                    v.push(last.q);
                    for r in 0..2 {
                        for c in 0..2 {
                            v.push(last.lambda.matrix()[(r, c)].re);
                            v.push(last.lambda.matrix()[(r, c)].im);
                        }
                    }
                    Ok((dt, n, v))
                })
                .collect::<CmdResult<Vec<_>>>()?
        }
    };
    // Error per rung against the finest rung as reference.
    let reference = &finals[rungs].2;
    let mut out = Vec::new();
    for k in 0..rungs {
        let (dt, n, v) = &finals[k];
        let error = v
            .iter()
            .zip(reference.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        out.push(ConvergenceRung {
            dt: *dt,
            nsteps: *n,
            error,
            order: None,
            exact: error <= ROUND_OFF_FLOOR,
        });
    }
    for k in 0..rungs - 1 {
        if !out[k].exact && !out[k + 1].exact {
            out[k].order = Some((out[k].error / out[k + 1].error).log2());
        }
    }
    let fit: Vec<(f64, f64)> = out
        .iter()
        .filter(|r| !r.exact)
        .map(|r| (r.dt.ln(), r.error.ln()))
        .collect();
    let fitted_order = if fit.len() >= 2 {
        let n = fit.len() as f64;
        let mx = fit.iter().map(|p| p.0).sum::<f64>() / n;
        let my = fit.iter().map(|p| p.1).sum::<f64>() / n;
        let num: f64 = fit.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let den: f64 = fit.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        Some(num / den)
    } else {
        None
    };
    let exact = out.iter().all(|r| r.exact);
    Ok(ConvergenceReport {
        rungs: out,
        fitted_order,
        exact,
    })
}

pub fn write_convergence_csv(path: &Path, report: &ConvergenceReport) -> CmdResult<()> {
    let mut out = String::from("rung,dt,nsteps,error,order,exact\n");
    for (k, r) in report.rungs.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            k,
            fmt_f64(r.dt),
            r.nsteps,
            fmt_f64(r.error),
            r.order.map(fmt_f64).unwrap_or_else(|| "exact".into()),
            r.exact
        ));
    }
    std::fs::write(path, out)
        .map_err(|e| CmdError::Input(format!("cannot write {}: {e}", path.display())))
}

#[derive(Debug, Serialize)]
pub struct DecomposeReport {
    pub lambda: f64,
    pub zeta: [f64; 2],
    pub euler_angles: [f64; 3],
    pub lambda_prime: f64,
    pub zeta_prime: [f64; 2],
    pub zeta1: [f64; 2],
    pub zeta2: [f64; 2],
    pub reassembly_residual: f64,
}

pub fn cmd_decompose(entries: &str, p_str: &str, m: f64, phi: f64) -> CmdResult<DecomposeReport> {
    let nums = parse_floats(entries, 8, "entries")?;
    let p_nums = parse_floats(p_str, 4, "p")?;
    if m <= 0.0 {
        return Err(CmdError::Input(format!(
            "m: mass must be positive, got {m}"
        )));
    }
    let mat = nalgebra::Matrix2::new(
        C64::new(nums[0], nums[1]),
        C64::new(nums[2], nums[3]),
        C64::new(nums[4], nums[5]),
        C64::new(nums[6], nums[7]),
    );
    let lam =
        GroupElement::from_matrix(mat).map_err(|e| CmdError::Input(format!("entries: {e}")))?;
    let p = FourVector([p_nums[0], p_nums[1], p_nums[2], p_nums[3]]);
    boost_from_momentum(&p, m).map_err(|e| CmdError::Input(format!("p: {e}")))?;
    let (b, u, bp) = little_group_decompose(&lam, &p, m)
        .map_err(|e| CmdError::Numerical(format!("decomposition failed: {e}")))?;
    let euler = euler_from_su2(&u);
    let rebuilt = b.matrix().compose(&u).compose(&bp.matrix().inverse());
    let coords = internal_coords(bp.lambda, bp.zeta, phi, m)
        .map_err(|e| CmdError::Numerical(format!("internal coordinates: {e}")))?;
    Ok(DecomposeReport {
        lambda: b.lambda,
        zeta: [b.zeta.re, b.zeta.im],
        euler_angles: [euler.0, euler.1, euler.2],
        lambda_prime: bp.lambda,
        zeta_prime: [bp.zeta.re, bp.zeta.im],
        zeta1: [coords.zeta1.re, coords.zeta1.im],
        zeta2: [coords.zeta2.re, coords.zeta2.im],
        reassembly_residual: rebuilt.distance(&lam),
    })
}

fn parse_floats(s: &str, expected: usize, field: &str) -> CmdResult<Vec<f64>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != expected {
        return Err(CmdError::Input(format!(
            "{field}: expected {expected} comma-separated numbers, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|e| CmdError::Input(format!("{field}: \"{p}\" is not a number ({e})")))
        })
        .collect()
}
