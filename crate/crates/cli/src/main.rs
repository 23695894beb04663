//! `cpb`: traces, figure bundles, and validation for the charge-qubit /
//! cavity skew-information dynamics.
//!
//! Exit codes: 0 success, 1 validation failure, 2 bad arguments or
//! config, 3 I/O error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cpb_sim::sweep::{
    emit_outputs, reproduce_figures, run_traces, ConfigOverrides, SweepConfig,
};
use cpb_sim::{validation, Error};

#[derive(Parser)]
#[command(
    name = "cpb",
    version,
    about = "Skew-information dynamics of a charge qubit coupled to a cavity mode"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate measure traces over a (delta, gamma, n) grid and write CSVs.
    Trace {
        /// Scaled detuning values, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "0.0")]
        delta: Vec<f64>,
        /// Capacitance ratios gamma = C_j/C_g, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "0.25")]
        gamma: Vec<f64>,
        /// Initial photon numbers, comma-separated.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        n: Vec<usize>,
        /// Upper end of the scaled-time window.
        #[arg(long, default_value_t = cpb_sim::sweep::DEFAULT_T_MAX)]
        tmax: f64,
        /// Number of uniform samples on [0, tmax].
        #[arg(long, default_value_t = cpb_sim::sweep::DEFAULT_T_STEPS)]
        steps: usize,
        /// Output directory for the CSV files.
        #[arg(long, default_value = "traces")]
        out: PathBuf,
        /// Also write a gnuplot script covering the emitted traces.
        #[arg(long)]
        plots: bool,
        /// `key = value` config file; its values override the flags.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Reproduce the five reference figure bundles and write the report.
    Figures {
        /// Output directory for the bundles and report.
        #[arg(long, default_value = "figures")]
        out: PathBuf,
    },
    /// Run the oracle-equivalence and invariant suites.
    Validate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn run(cli: Cli) -> cpb_sim::Result<ExitCode> {
    match cli.command {
        Command::Trace {
            delta,
            gamma,
            n,
            tmax,
            steps,
            out,
            plots,
            config,
        } => {
            let mut sweep = SweepConfig {
                delta_values: delta,
                gamma_values: gamma,
                n_values: n,
                t_max: tmax,
                t_steps: steps,
                output_dir: out,
                emit_plots: plots,
            };
            if let Some(path) = config {
                let text = fs::read_to_string(&path).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
                ConfigOverrides::parse(&text)?.apply(&mut sweep);
            }
            sweep.validate()?;
            let traces = run_traces(&sweep.points(), sweep.t_max, sweep.t_steps)?;
            let summary = emit_outputs(&traces, &sweep)?;
            if let Some(warning) = summary.warning {
                eprintln!("warning: {warning}");
            }
            for file in &summary.files {
                println!("wrote {}", file.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Figures { out } => {
            let report = reproduce_figures(&out)?;
            print!("{}", report.render());
            println!("\n{} files under {}", report.files.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate => {
            let checks = validation::run_all()?;
            let mut all_passed = true;
            for check in &checks {
                let tag = if check.passed { "pass" } else { "FAIL" };
                println!("[{tag}] {}: {}", check.name, check.detail);
                all_passed &= check.passed;
            }
            if all_passed {
                println!("validation passed ({} checks)", checks.len());
                Ok(ExitCode::SUCCESS)
            } else {
                println!("validation FAILED");
                Ok(ExitCode::from(1))
            }
        }
    }
}

/// 2 for bad arguments/config, 3 for I/O, 1 for anything else.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Io { .. } => 3,
        Error::Config(_)
        | Error::InvalidParameter(_)
        | Error::InvalidDimension(_)
        | Error::SweepTooLarge { .. }
        | Error::CutoffTooSmall { .. }
        | Error::SeriesTooShort(_) => 2,
        Error::Evaluation { source, .. } => exit_code_for(source),
        _ => 1,
    }
}
