//! `gemination`: measure annotated tokens, run statistics and classifiers, and
//! generate synthetic corpora. Outputs are CSV/JSON files under `--out`; every
//! failure is reported as one JSON line on stderr.

mod commands;
mod config;
mod error;
mod output;
mod stats;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gemination::classify::GenderSel;

use config::{parse_cues, RunConfig};
use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "gemination", version, about = "Durational analysis of singleton and geminate consonants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args, Debug, Default)]
struct Shared {
    /// Annotation CSV (token ids, speakers and reference times).
    #[arg(long, global = true, value_name = "PATH")]
    annotations: Option<PathBuf>,
    /// Directory holding `<token_id>.wav` files.
    #[arg(long, global = true, value_name = "PATH")]
    audio_dir: Option<PathBuf>,
    /// Measurement CSV to analyse.
    #[arg(long, global = true, value_name = "PATH")]
    measurements: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Flat `key = value` configuration file; flags override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Random seed for `synth`
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Significance level for ANOVA flags.
    #[arg(long, global = true, value_name = "X")]
    alpha: Option<f64>,
    /// Consonant class or group label to restrict the analysis to.
    #[arg(long, global = true, value_name = "NAME")]
    class: Option<String>,
    /// Speaker subset; all three are analysed when omitted
    #[arg(long, global = true, value_name = "male|female|combined")]
    gender: Option<GenderSel>,
    /// Cue names separated by `;` or spaces, e.g. "Cd/V1d;V2d".
    #[arg(long, global = true, value_name = "LIST")]
    cues: Option<String>,
    /// Built-in statistics table for `synth`.
    #[arg(long, global = true, value_name = "ID")]
    table: Option<String>,
    /// Tokens per cell for `synth`.
    #[arg(long = "n", global = true, value_name = "N")]
    n_per_cell: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Measure annotated tokens into measurements.csv.
    Measure,
    /// ANOVA and correlation tables from a measurement CSV.
    Stats,
    /// Resubstitution classifier grid and threshold error curves.
    Classify,
    /// Sample a synthetic corpus from a built-in statistics table.
    Synth,
    /// Statistics, classification and a JSON summary in one pass.
    Report,
}

fn resolve(shared: &Shared) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(p) = &shared.config {
        cfg.load_file(p)?;
    }
    let s = shared;
    if let Some(v) = &s.annotations {
        cfg.annotations = Some(v.clone());
    }
    if let Some(v) = &s.audio_dir {
        cfg.audio_dir = Some(v.clone());
    }
    if let Some(v) = &s.measurements {
        cfg.measurements = Some(v.clone());
    }
    if let Some(v) = &s.out {
        cfg.out = v.clone();
    }
    if let Some(v) = s.seed {
        cfg.seed = Some(v);
    }
    if let Some(v) = s.alpha {
        cfg.alpha = v;
    }
    if let Some(v) = &s.class {
        cfg.class = Some(v.clone());
    }
    if let Some(v) = s.gender {
        cfg.gender = Some(v);
    }
    if let Some(v) = &s.cues {
        cfg.cues = Some(parse_cues(v)?);
    }
    if let Some(v) = &s.table {
        cfg.table = Some(v.clone());
    }
    if let Some(v) = s.n_per_cell {
        cfg.n_per_cell = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), Vec<CliError>> {
    let cfg = resolve(&cli.shared).map_err(|e| vec![e])?;
    let one = |e: CliError| vec![e];
    match cli.command {
        Command::Measure => commands::measure(&cfg)?,
        Command::Stats => commands::stats(&cfg).map_err(one)?,
        Command::Classify => commands::classify(&cfg).map_err(one)?,
        Command::Synth => commands::synth(&cfg).map_err(one)?,
        Command::Report => commands::report(&cfg).map_err(one)?,
    };
    Ok(())
}

/// Writes one diagnostic line; a closed stderr must not turn a failure into a panic.
fn report_error(e: &CliError) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "{}", e.diagnostic());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                use std::io::Write;
                let _ = write!(std::io::stdout(), "{e}");
                return ExitCode::SUCCESS;
            }
            let err = CliError::Usage(e.render().to_string().trim().replace('\n', " "));
            report_error(&err);
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(errors) => {
            for e in &errors {
                report_error(e);
            }
            ExitCode::from(errors.iter().map(CliError::exit_code).max().unwrap_or(1) as u8)
        }
    }
}
