use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use srspec_cli::commands::{cmd_curves, cmd_mc_study, cmd_spectrometer, cmd_verify};
use srspec_cli::error::exit;
use srspec_cli::output::OutputDir;
use srspec_cli::scenario::{CurvesPayload, McStudyPayload, Payload, Scenario, SpectrometerPayload};
use srspec_cli::CliError;

/// Superresolution spectrometer studies: correlation curves, scan and beat
/// traces, Monte-Carlo phase estimation and the closed-form audit.
#[derive(Debug, Parser)]
#[command(name = "srspec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// TOML scenario file; without it the subcommand's default payload is used.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Overrides the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the scenario output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for Monte-Carlo trials (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Overrides `curves.grid` or `spectrometer.samples_per_fringe`.
    #[arg(long, global = true)]
    grid: Option<usize>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Correlation curves over one 2π cycle, one CSV per (kind, K).
    Curves,
    /// Reference and target scan traces, beat trace and fringe report.
    Spectrometer,
    /// Monte-Carlo MLE variance against the Cramér-Rao bounds.
    McStudy,
    /// Audit published closed forms against independent oracles.
    Verify,
}

impl Command {
    fn default_payload(self) -> Option<Payload> {
        match self {
            Command::Curves => Some(Payload::Curves(CurvesPayload::default())),
            Command::Spectrometer => Some(Payload::Spectrometer(SpectrometerPayload::default())),
            Command::McStudy => Some(Payload::McStudy(McStudyPayload::default())),
            Command::Verify => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Command::Curves => "curves",
            Command::Spectrometer => "spectrometer",
            Command::McStudy => "mc-study",
            Command::Verify => "verify",
        }
    }
}

fn resolve(command: Command, common: &Common) -> Result<Option<Scenario>, CliError> {
    let mut scenario = match (&common.scenario, command.default_payload()) {
        (_, None) => return Ok(None),
        (Some(path), Some(_)) => Scenario::load(path)?,
        (None, Some(payload)) => Scenario::with_payload(command.name(), payload),
    };
    if let Some(seed) = common.seed {
        scenario.seed = seed;
    }
    if let Some(grid) = common.grid {
        match &mut scenario.payload {
            Payload::Curves(p) => p.grid = grid,
            Payload::Spectrometer(p) => {
                p.samples_per_fringe = u32::try_from(grid).map_err(|_| CliError::config("--grid is too large"))?
            }
            Payload::McStudy(_) => {}
        }
    }
    scenario.validate()?;
    Ok(Some(scenario))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(n) = cli.common.threads {
        if n == 0 {
            return Err(CliError::config("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::config(format!("--threads: {e}")))?;
    }
    let scenario = resolve(cli.command, &cli.common)?;
    let root = cli
        .common
        .out
        .clone()
        .or_else(|| scenario.as_ref().map(|s| s.output_dir.clone()))
        .unwrap_or_else(|| PathBuf::from("out"));
    let mut out = OutputDir::create(&root)?;

    match (cli.command, scenario) {
        (Command::Verify, _) => {
            let report = cmd_verify(&mut out)?;
            print!("{}", report.render());
            if !report.oracle_ok() {
                return Err(CliError::OracleFailure);
            }
        }
        (command, Some(scenario)) => match (command, &scenario.payload) {
            (Command::Curves, Payload::Curves(p)) => {
                let index = cmd_curves(p, &mut out)?;
                for c in &index.curves {
                    let maxima = c.maxima.map_or_else(|| "unresolved".to_string(), |m| m.to_string());
                    println!("{}: {maxima} maxima per 2π", c.file);
                }
            }
            (Command::Spectrometer, Payload::Spectrometer(p)) => {
                let s = cmd_spectrometer(p, &mut out)?;
                println!(
                    "M = {}, N = {}, f_estimate = {}, delta_f_min = {}",
                    s.fringes.m_count, s.fringes.n_count, s.fringes.f_estimate, s.fringes.delta_f_min
                );
                match s.beat.beat_period {
                    Some(p) => println!("beat period = {p} ({} nulls)", s.beat.nulls.len()),
                    None => println!("beat period: none resolved"),
                }
            }
            (Command::McStudy, Payload::McStudy(p)) => {
                let summary = cmd_mc_study(p, scenario.seed, &mut out)?;
                println!("k,sigma,var_emp,crlb_paper,crlb_oracle");
                for r in &summary.rows {
                    println!(
                        "{},{},{:.6e},{:.6e},{:.6e}",
                        r.k, r.sigma, r.var_emp, r.crlb_paper, r.crlb_oracle
                    );
                }
            }
            (command, payload) => {
                return Err(CliError::config(format!(
                    "subcommand `{}` cannot run a [{}] scenario",
                    command.name(),
                    payload.table_name()
                )))
            }
        },
        (_, None) => unreachable!("every study subcommand has a default payload"),
    }
    eprintln!("wrote {} file(s) to {}", out.written().len(), root.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
