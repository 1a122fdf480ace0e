use clap::{Parser, Subcommand, ValueEnum};
use cloakwave::mie::TuningVariant;
use cloakwave_cli::{CliError, Experiment, Overrides, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cloakwave", version, about = "Approximate-cloaking experiments for the Helmholtz equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration; built-in defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Fixed highest angular mode.
    #[arg(long, global = true)]
    truncation: Option<usize>,

    /// Instability tuning: leading-order small-argument equation or exact root.
    #[arg(long, global = true, value_enum)]
    tuning: Option<Tuning>,

    /// Space dimension, 2 or 3.
    #[arg(long, global = true)]
    dim: Option<u32>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Run the experiment named in the config file.
    Run,
    /// Visibility and interior deviation over eps_list, with a rate fit.
    Sweep,
    /// Resonance-tuned cloaks with alpha_0 = -1 and an untuned control arm.
    Instability,
    /// Field of a resonant interior eigenfunction source.
    Blowup,
    /// Resonant frequencies of the interior in the scan window.
    Resonances,
    /// Smallest resonance determinant on a frequency grid.
    ScanK,
    /// Field values on a grid, for plotting.
    Field,
    /// Per-mode incident and scattering coefficients.
    Modes,
}

#[derive(ValueEnum, Clone, Copy)]
enum Tuning {
    Paper,
    Exact,
}

fn experiment(c: Command) -> Option<Experiment> {
    Some(match c {
        Command::Run => return None,
        Command::Sweep => Experiment::Sweep,
        Command::Instability => Experiment::Instability,
        Command::Blowup => Experiment::Blowup,
        Command::Resonances => Experiment::Resonances,
        Command::ScanK => Experiment::ScanK,
        Command::Field => Experiment::Field,
        Command::Modes => Experiment::Modes,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| -> Result<(), CliError> {
        let mut cfg = match &cli.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        cfg.apply(&Overrides {
            experiment: experiment(cli.command),
            out: cli.out.clone(),
            truncation: cli.truncation,
            tuning: cli.tuning.map(|t| match t {
                Tuning::Paper => TuningVariant::Paper,
                Tuning::Exact => TuningVariant::Exact,
            }),
            dimension: cli.dim,
        });
        let report = cloakwave_cli::run(&cfg, cli.threads)?;
        let dir = cfg.output.dir.display();
        eprintln!("wrote {dir}/{} and {dir}/{}", report.table_name, report.summary_name);
        Ok(())
    })();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cloakwave: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
