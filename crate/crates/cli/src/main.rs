//! Experiment harness for spectral-abscissa polynomial approximation:
//! convergence sweeps, quadrature studies and PC statistics over the
//! benchmark problems, driven by a key=value config file with mirroring
//! command-line flags.

mod config;
mod study;

use clap::{Args, Parser, Subcommand};
use config::{Overrides, RawConfig, Study, StudySpec};
use specabs_core::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "specabs",
    version,
    about = "Spectral abscissa approximation studies"
)]
struct Cli {
    #[command(subcommand)]
    study: StudyCmd,
}

#[derive(Subcommand)]
enum StudyCmd {
    /// Convergence of the approximation error over a degree sweep
    Converge(CommonArgs),
    /// Error of the first expansion coefficient over a rule-size sweep
    QuadStudy(CommonArgs),
    /// Mean, variance, Sobol and total-order indices of one build
    Stats(CommonArgs),
    /// Field-vs-approximation table on the error grid
    Eval(CommonArgs),
    /// Coefficient dump of one build
    Approx(CommonArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// key=value config file; flags below override file values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Benchmark problem (SAE1, MSSAE1, MNSSAE1, OSC_SAE, OSC_MSSAE, OSC_MNSSAE)
    #[arg(long)]
    problem: Option<String>,
    /// galerkin | collocation | oracle
    #[arg(long)]
    method: Option<String>,
    /// total | maximal
    #[arg(long)]
    basis_norm: Option<String>,
    #[arg(long)]
    degree_start: Option<u32>,
    #[arg(long)]
    degree_stop: Option<u32>,
    #[arg(long)]
    degree_step: Option<u32>,
    /// all | odd | even
    #[arg(long)]
    parity: Option<String>,
    /// trapezoid | simpson | clenshaw-curtis | gauss | padua | tensor
    #[arg(long)]
    rule: Option<String>,
    #[arg(long)]
    rule_size: Option<u32>,
    /// Error-grid points per dimension (default 10001 for 1-D, 201 for 2-D)
    #[arg(long)]
    grid: Option<usize>,
    /// DDE discretization size for the oscillator benchmarks
    #[arg(long)]
    dde_n: Option<u32>,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            problem: self.problem.clone(),
            method: self.method.clone(),
            basis_norm: self.basis_norm.clone(),
            degree_start: self.degree_start,
            degree_stop: self.degree_stop,
            degree_step: self.degree_step,
            parity: self.parity.clone(),
            rule: self.rule.clone(),
            rule_size: self.rule_size,
            grid: self.grid,
            dde_n: self.dde_n,
            out: self.out.clone(),
        }
    }
}

fn resolve_spec(study: Study, args: &CommonArgs) -> Result<StudySpec, Error> {
    let raw = match &args.config {
        Some(path) => RawConfig::load(path)?,
        None => RawConfig::default(),
    };
    config::resolve(study, &raw, &args.overrides())
}

fn emit(spec: &StudySpec, csv: String) -> Result<(), Error> {
    match &spec.out {
        Some(path) => std::fs::write(path, csv)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn run() -> Result<(), Error> {
    let cli = Cli::parse();
    let (study, args) = match &cli.study {
        StudyCmd::Converge(a) => (Study::Converge, a),
        StudyCmd::QuadStudy(a) => (Study::QuadStudy, a),
        StudyCmd::Stats(a) => (Study::Stats, a),
        StudyCmd::Eval(a) => (Study::Eval, a),
        StudyCmd::Approx(a) => (Study::Approx, a),
    };
    let spec = resolve_spec(study, args)?;
    match study {
        Study::Converge => emit(&spec, study::run_converge(&spec)?),
        Study::QuadStudy => emit(&spec, study::run_quad_study(&spec)?),
        Study::Stats => {
            let (text, csv) = study::run_stats(&spec)?;
            print!("{text}");
            if spec.out.is_some() {
                emit(&spec, csv)
            } else {
                Ok(())
            }
        }
        Study::Eval => emit(&spec, study::run_eval(&spec)?),
        Study::Approx => emit(&spec, study::run_approx(&spec)?),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("specabs: {e}");
            match e {
                Error::Config(_) | Error::Domain(_) => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}
