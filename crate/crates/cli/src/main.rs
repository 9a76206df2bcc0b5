use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use slater_hf::report::{compare, run, verify, Format, RunOptions, RunReport, ALL_Z};
use slater_hf::{OptimizerOptions, PShellModel};

/// Single-determinant Hartree-Fock energies for He through Ne with
/// single-zeta Slater orbitals.
#[derive(Parser)]
#[command(name = "slater-hf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize orbital exponents and report energies.
    Run {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check every closed-form integral against numerical quadrature.
    Verify {
        /// Number of random exponent tuples.
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// text or json.
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare computed energies with the published and reference columns.
    Compare {
        /// JSON report from a previous `run --format json`; a fresh run otherwise.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Emit Z, E_calc, E_bestHF, E_exact as CSV for plotting.
    PlotData {
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Atomic number, repeatable. All of 2..=10 when omitted.
    #[arg(long = "z", value_parser = clap::value_parser!(u32).range(2..=10))]
    z: Vec<u32>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Simplex convergence threshold on the energy spread.
    #[arg(long, default_value_t = 1e-10)]
    energy_tol: f64,
    /// Simplex convergence threshold on the log-exponent spread.
    #[arg(long, default_value_t = 1e-8)]
    param_tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_evals: usize,
    /// Perturbed restarts in addition to the primary start.
    #[arg(long, default_value_t = 3)]
    restarts: usize,
    /// p-p repulsion model: exact or monopole.
    #[arg(long, default_value = "exact")]
    p_shell: PShellModel,
    /// Record per-atom wall time (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct OutputArgs {
    /// text, csv or json.
    #[arg(long, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

impl RunArgs {
    fn options(&self) -> RunOptions {
        RunOptions {
            optimizer: OptimizerOptions {
                energy_tolerance: self.energy_tol,
                parameter_tolerance: self.param_tol,
                max_evaluations: self.max_evals,
                restarts: self.restarts,
                seed: self.seed,
                p_shell: self.p_shell,
            },
            record_timing: self.timing,
        }
    }

    fn execute(&self) -> Result<RunReport> {
        let zs = if self.z.is_empty() { ALL_Z.to_vec() } else { self.z.clone() };
        Ok(run(&zs, &self.options())?)
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_or_run(input: Option<&Path>, run: &RunArgs) -> Result<RunReport> {
    match input {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            Ok(RunReport::from_json(&text).with_context(|| format!("malformed report {}", path.display()))?)
        }
        None => run.execute(),
    }
}

fn converged_status(report: &RunReport) -> ExitCode {
    if report.all_converged() {
        ExitCode::SUCCESS
    } else {
        let missed: Vec<String> = report.rows.iter().filter(|r| !r.converged).map(|r| r.symbol.clone()).collect();
        eprintln!("optimization did not converge for: {}", missed.join(", "));
        ExitCode::FAILURE
    }
}

fn execute(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run { run, out } => {
            let report = run.execute()?;
            let text = match out.format {
                Format::Text => report.summary_text(),
                Format::Csv => report.to_csv(),
                Format::Json => report.to_json(),
            };
            emit(&text, out.output.as_deref())?;
            Ok(converged_status(&report))
        }
        Command::Verify { samples, seed, format, output } => {
            let report = verify(samples as usize, seed)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Text => report.to_string(),
                Format::Csv => anyhow::bail!("verify supports text and json output"),
            };
            emit(&text, output.as_deref())?;
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Compare { input, run, out } => {
            let report = load_or_run(input.as_deref(), &run)?;
            emit(&compare(&report, out.format), out.output.as_deref())?;
            Ok(converged_status(&report))
        }
        Command::PlotData { input, run, output } => {
            let report = load_or_run(input.as_deref(), &run)?;
            emit(&report.plot_data(), output.as_deref())?;
            Ok(converged_status(&report))
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
