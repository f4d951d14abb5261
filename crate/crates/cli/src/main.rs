//! Command-line front end: scenario-driven simulations, verification suites,
//! convergence studies, and the boost/little-group decomposition utility.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 numerical or tolerance
//! failure.

mod commands;
mod report;
mod scenario;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{cmd_convergence, cmd_decompose, cmd_simulate, write_convergence_csv, CmdError};
use report::VerifyReport;

#[derive(Parser)]
#[command(
    name = "pspin",
    about = "Relativistic spin dynamics: simulations, verification suites, and group decompositions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a scenario file and write a trajectory CSV plus a run report.
    Simulate {
        /// Scenario JSON file.
        #[arg(long)]
        scenario: PathBuf,
        /// Trajectory CSV output path.
        #[arg(long)]
        output: PathBuf,
        /// Run-report JSON path (defaults to <output>.report.json).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Reject initial data violating the admissibility constraints.
        #[arg(long)]
        strict_constraints: bool,
        /// Accepted for interface uniformity; simulations are deterministic.
        #[arg(long)]
        seed: Option<u64>,
        /// Print the run report as JSON on stdout.
        #[arg(long)]
        json: bool,
    },
    /// Run a property suite (group, operators, bmt, hamiltonian, harmonic, all).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Sample count for randomized properties.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Print the report as JSON on stdout.
        #[arg(long)]
        json: bool,
        /// Also write the JSON report to a file.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Inject a corrupted-generator property that must be detected
        /// (demonstrates the failure path; forces exit code 2).
        #[arg(long)]
        negative_control: bool,
    },
    /// Run a dt-halving ladder on a scenario and fit the observed order.
    Convergence {
        #[arg(long)]
        scenario: PathBuf,
        /// Number of ladder rungs (each halving dt); at least 4.
        #[arg(long, default_value_t = 5)]
        rungs: usize,
        /// CSV output path for the ladder table.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Factor an SL(2,C) element through boosts and the little group.
    Decompose {
        /// Eight comma-separated numbers: re,im of the four entries, row-major.
        #[arg(long, allow_hyphen_values = true)]
        entries: String,
        /// Four comma-separated momentum components p0,p1,p2,p3.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Mass (positive).
        #[arg(long)]
        m: f64,
        /// Phase coordinate used for the internal coordinates.
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CmdError> {
    match cli.command {
        Command::Simulate {
            scenario,
            output,
            report,
            strict_constraints,
            seed: _,
            json,
        } => {
            let report_path = report.unwrap_or_else(|| {
                let mut p = output.clone();
                let name = p
                    .file_name()
                    .map(|n| n.to_string_lossy().to_string())
                    .unwrap_or_else(|| "trajectory.csv".into());
                p.set_file_name(format!("{name}.report.json"));
                p
            });
            let run_report =
                cmd_simulate(&scenario, &output, Some(&report_path), strict_constraints)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&run_report)
                        .map_err(|e| CmdError::Input(e.to_string()))?
                );
            } else {
                println!(
                    "simulate: {} steps, {} rows -> {}",
                    run_report.steps,
                    run_report.stored_rows,
                    output.display()
                );
                for (name, outcome) in &run_report.tolerances {
                    println!(
                        "  [{}] {}: {:.3e} (limit {:.3e})",
                        if outcome.pass { "PASS" } else { "FAIL" },
                        name,
                        outcome.actual,
                        outcome.limit
                    );
                }
            }
            if run_report.pass {
                Ok(0)
            } else {
                eprintln!("error: declared tolerances violated");
                Ok(2)
            }
        }
        Command::Verify {
            suite,
            seed,
            samples,
            json,
            output,
            negative_control,
        } => {
            let suites: Vec<String> = if suite == "all" {
                verify::SUITES.iter().map(|s| s.to_string()).collect()
            } else {
                vec![suite]
            };
            let mut reports = Vec::new();
            for name in &suites {
                let props = verify::run_suite(name, seed, samples, negative_control)
                    .map_err(CmdError::Input)?;
                reports.push(VerifyReport::new(name, seed, samples, props));
            }
            let all_pass = reports.iter().all(|r| r.pass);
            let payload = if reports.len() == 1 {
                serde_json::to_value(&reports[0])
            } else {
                serde_json::to_value(serde_json::json!({
                    "suites": reports,
                    "pass": all_pass,
                }))
            }
            .map_err(|e| CmdError::Input(e.to_string()))?;
            let text = serde_json::to_string_pretty(&payload)
                .map_err(|e| CmdError::Input(e.to_string()))?
                + "\n";
            if let Some(path) = output {
                std::fs::write(&path, &text).map_err(|e| {
                    CmdError::Input(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            if json {
                print!("{text}");
            } else {
                for r in &reports {
                    println!("suite {} (seed {}):", r.suite, r.seed);
                    for p in &r.properties {
                        println!(
                            "  [{}] {}: worst {:.3e} vs {:.3e} ({} samples)",
                            if p.pass { "PASS" } else { "FAIL" },
                            p.name,
                            p.worst_error,
                            p.tolerance,
                            p.samples
                        );
                    }
                }
            }
            Ok(if all_pass { 0 } else { 2 })
        }
        Command::Convergence {
            scenario,
            rungs,
            output,
            json,
        } => {
            let report = cmd_convergence(&scenario, rungs)?;
            if let Some(path) = output {
                write_convergence_csv(&path, &report)?;
            }
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report)
                        .map_err(|e| CmdError::Input(e.to_string()))?
                );
            } else {
                println!("rung        dt           error     order");
                for (k, r) in report.rungs.iter().enumerate() {
                    println!(
                        "{k:4}  {:.4e}  {:.4e}  {}",
                        r.dt,
                        r.error,
                        if r.exact {
                            "exact".to_string()
                        } else {
                            r.order.map(|o| format!("{o:.2}")).unwrap_or_default()
                        }
                    );
                }
                match (report.exact, report.fitted_order) {
                    (true, _) => println!("all rungs at the round-off floor: exact"),
                    (false, Some(order)) => println!("fitted order: {order:.3}"),
                    _ => println!("not enough resolvable rungs for a fit"),
                }
            }
            Ok(0)
        }
        Command::Decompose {
            entries,
            p,
            m,
            phi,
            json,
        } => {
            let report = cmd_decompose(&entries, &p, m, phi)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report)
                        .map_err(|e| CmdError::Input(e.to_string()))?
                );
            } else {
                println!(
                    "left boost:   lambda = {:.12}, zeta = {:.12} + {:.12}i",
                    report.lambda, report.zeta[0], report.zeta[1]
                );
                println!(
                    "little group: euler angles = ({:.12}, {:.12}, {:.12})",
                    report.euler_angles[0], report.euler_angles[1], report.euler_angles[2]
                );
                println!(
                    "right boost:  lambda' = {:.12}, zeta' = {:.12} + {:.12}i",
                    report.lambda_prime, report.zeta_prime[0], report.zeta_prime[1]
                );
                println!(
                    "internal:     zeta1 = {:.12} + {:.12}i, zeta2 = {:.12} + {:.12}i",
                    report.zeta1[0], report.zeta1[1], report.zeta2[0], report.zeta2[1]
                );
                println!("reassembly residual: {:.3e}", report.reassembly_residual);
            }
            Ok(0)
        }
    }
}
