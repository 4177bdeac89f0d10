mod commands;
mod config;
mod error;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::FileConfig;
use crate::error::CliError;

/// Count target-sum sign assignments and integrate sine/cosine products exactly.
#[derive(Parser, Debug)]
#[command(name = "signsum", version)]
struct Cli {
    /// Print a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// key = value configuration file (falls back to $SIGNSUM_CONFIG).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Seed for randomized commands.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Largest n enumerated by brute force.
    #[arg(long, global = true, value_name = "N")]
    enumeration_cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of sign choices with ±b1 ± ... ± bn = b0.
    Count {
        /// Instance as "b0; b1,b2,...,bn".
        #[arg(allow_hyphen_values = true)]
        instance: String,
        #[arg(long, value_enum, default_value_t = CountEngine::All)]
        engine: CountEngine,
    },
    /// Solutions with an even number of + signs among b1..bm.
    ParityCount {
        #[arg(allow_hyphen_values = true)]
        instance: String,
        #[arg(short, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, value_enum, default_value_t = ParityEngine::All)]
        engine: ParityEngine,
    },
    /// Exact expansion of sin(b0 x)..sin(bm x) cos(b(m+1) x)..cos(bn x).
    Expand {
        #[arg(allow_hyphen_values = true)]
        instance: String,
        #[arg(short, allow_negative_numbers = true, default_value_t = -1)]
        m: i64,
        #[arg(long, value_enum, default_value_t = ExpandFormat::Latex)]
        format: ExpandFormat,
    },
    /// Integral of the product over [-q*pi, p*pi].
    Integrate {
        #[arg(allow_hyphen_values = true)]
        instance: String,
        #[arg(short, allow_negative_numbers = true, default_value_t = -1)]
        m: i64,
        #[arg(short, allow_negative_numbers = true, default_value_t = 1)]
        p: i64,
        #[arg(short, allow_negative_numbers = true, default_value_t = 0)]
        q: i64,
        #[arg(long, value_enum, default_value_t = IntegrateEngine::Exact)]
        engine: IntegrateEngine,
    },
    /// Randomized cross-engine property battery.
    Verify {
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_abs: Option<i64>,
        /// Flip the sign convention in the enumerated expansion.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Time the counting engines over n = 1..=max-n.
    Bench {
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        reps: Option<usize>,
        #[arg(long)]
        max_abs: Option<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountEngine {
    Brute,
    Dp,
    Integral,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParityEngine {
    Brute,
    Dp,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExpandFormat {
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IntegrateEngine {
    Exact,
    #[value(alias = "theorem5")]
    ClosedForm,
    Quadrature,
    All,
}

fn run(cli: Cli) -> Result<output::Report, CliError> {
    let file = FileConfig::load(cli.config.as_deref())?;
    let settings = commands::Settings::resolve(&file, cli.seed, cli.enumeration_cap);
    match cli.command {
        Command::Count { instance, engine } => commands::count(&settings, &instance, engine),
        Command::ParityCount {
            instance,
            m,
            engine,
        } => commands::parity_count(&settings, &instance, m, engine),
        Command::Expand {
            instance,
            m,
            format,
        } => commands::expand(&settings, &instance, m, format),
        Command::Integrate {
            instance,
            m,
            p,
            q,
            engine,
        } => commands::integrate(&settings, &instance, m, p, q, engine),
        Command::Verify {
            trials,
            max_n,
            max_abs,
            inject_fault,
        } => commands::verify(&settings, &file, trials, max_n, max_abs, inject_fault),
        Command::Bench {
            max_n,
            reps,
            max_abs,
        } => Ok(commands::bench(&settings, &file, max_n, reps, max_abs)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            let body = if json {
                report.envelope.to_json()
            } else {
                report.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            match report.failure {
                Some(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
