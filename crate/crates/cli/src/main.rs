//! Command-line driver: single runs, convergence studies and shock tubes,
//! all written as CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand, ValueEnum};

use cweno::harness::{convergence_study, run_problem, shock_report, write_convergence_csv, write_profile_csv, RunConfig};
use cweno::{builtin_problem, BoundaryCondition, CwenoParams, PROBLEM_NAMES};

#[derive(Parser, Debug)]
#[command(name = "cweno", version, about = "Compact third-order CWENO central scheme")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one problem and write the final profile.
    Run {
        #[command(flatten)]
        common: Common,
        /// Cells per axis.
        #[arg(long)]
        n: usize,
    },
    /// Run a sequence of resolutions and write error norms with observed orders.
    Converge {
        #[command(flatten)]
        common: Common,
        /// Cells per axis, one study row each.
        #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    /// Run a shock tube and write the final profile.
    Shock {
        #[command(flatten)]
        common: Common,
        /// Number of cells.
        #[arg(long, default_value_t = 400)]
        n: usize,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Built-in problem.
    #[arg(long, value_parser = PossibleValuesParser::new(PROBLEM_NAMES))]
    problem: String,
    /// Mesh ratio; the problem's own value when omitted.
    #[arg(long)]
    lambda: Option<f64>,
    /// Regularisation of the nonlinear weights.
    #[arg(long, default_value_t = 1e-2, conflicts_with = "ideal_weights")]
    eps: f64,
    /// Exponent of the nonlinear weights.
    #[arg(long, default_value_t = 2, conflicts_with = "ideal_weights")]
    p: u32,
    /// Final time; the problem's own value when omitted.
    #[arg(long)]
    t_final: Option<f64>,
    /// Boundary condition; the problem's own choice when omitted.
    #[arg(long, value_enum)]
    bc: Option<Bc>,
    /// Use the constant ideal weights instead of the nonlinear ones.
    #[arg(long)]
    ideal_weights: bool,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Bc {
    Periodic,
    Outflow,
}

impl Common {
    fn config(&self) -> Result<RunConfig, String> {
        let params = if self.ideal_weights {
            CwenoParams::ideal()
        } else {
            CwenoParams::new(self.eps, self.p).map_err(|e| e.to_string())?
        };
        Ok(RunConfig {
            params,
            lambda: self.lambda,
            t_final: self.t_final,
            bc: self.bc.map(|b| match b {
                Bc::Periodic => BoundaryCondition::Periodic,
                Bc::Outflow => BoundaryCondition::Outflow,
            }),
        })
    }

    fn output(&self) -> Result<Box<dyn Write>, String> {
        match &self.out {
            Some(path) => File::create(path)
                .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
                .map_err(|e| format!("cannot create {}: {e}", path.display())),
            None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        }
    }
}

fn execute(command: &Command) -> Result<(), String> {
    let io_err = |e: io::Error| format!("write failed: {e}");
    match command {
        Command::Run { common, n } => {
            let config = common.config()?;
            let problem = builtin_problem(&common.problem, *n).map_err(|e| e.to_string())?;
            let report = run_problem(&problem, &config).map_err(|e| e.to_string())?;
            if report.diagnostics.courant_exceeded {
                eprintln!("warning: Courant number {:.4} exceeds the stability bound", report.diagnostics.courant);
            }
            let mut out = common.output()?;
            write_profile_csv(
                &mut out,
                &report.field,
                problem.law.component_names(),
                &report.diagnostics.central_weights,
            )
            .and_then(|_| out.flush())
            .map_err(io_err)?;
            eprintln!("{}: {} steps, dt = {:.6e}", problem.name, report.steps, report.dt);
        }
        Command::Converge { common, n } => {
            let config = common.config()?;
            let rows = convergence_study(&common.problem, n, &config).map_err(|e| e.to_string())?;
            let mut out = common.output()?;
            write_convergence_csv(&mut out, &rows).and_then(|_| out.flush()).map_err(io_err)?;
        }
        Command::Shock { common, n } => {
            let config = common.config()?;
            let report = shock_report(&common.problem, *n, &config).map_err(|e| e.to_string())?;
            let mut out = common.output()?;
            write_profile_csv(
                &mut out,
                &report.run.field,
                report.component_names,
                &report.run.diagnostics.central_weights,
            )
            .and_then(|_| out.flush())
            .map_err(io_err)?;
            eprintln!("{}: L1(rho) = {:.6e}", common.problem, report.density_l1);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
