use std::path::PathBuf;
use std::process::ExitCode;

use aperylab::cache::{Cache, CACHE_ENV};
use aperylab::commands::{
    cmd_constants, cmd_export, cmd_grassmann, cmd_limit, cmd_modular, cmd_monodromy,
    parse_parameter, parse_varieties, DEFAULT_ORDER,
};
use aperylab::config::{Output, RunConfig, DEFAULT_DIGITS, DEFAULT_SEED};
use aperylab::selftest::cmd_selftest;
use aperylab::{CliError, Report, Result};
use aperylab_core::holonomic::Variety;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "aperylab",
    version,
    about = "Apery limits of quantum recurrences and their checks"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Target decimal digits (at least 10).
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS)]
    digits: u32,
    /// Number of sequence terms (at least 10).
    #[arg(long, global = true)]
    terms: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Apery constants against their L-value oracles.
    Constants {
        /// A label such as V12, a comma-separated list, or `all`.
        #[arg(long, default_value = "all")]
        variety: String,
    },
    /// Apery limit of a recurrence given as JSON.
    Limit { file: PathBuf },
    /// The G(2,N) constant and its resonance limit.
    Grassmann {
        #[arg(long)]
        n: usize,
    },
    /// Coefficientwise modular identities and L(F,3).
    Modular {
        #[arg(long, default_value = "all")]
        variety: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Monodromy at infinity and the wedge coefficient identity.
    Monodromy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: String,
        #[arg(long)]
        u: String,
    },
    /// Runs the acceptance suite.
    Selftest,
    /// Writes a Mukai recurrence in the format `limit` reads.
    Export {
        #[arg(long)]
        variety: String,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<Report> {
    let c = cli.common;
    let cfg = RunConfig {
        digits: c.digits,
        terms: c.terms,
        cache_dir: c.cache_dir,
        output: if c.json { Output::Json } else { Output::Text },
        seed: c.seed,
    };
    cfg.validate()?;
    let cache = match &cfg.cache_dir {
        Some(d) => Some(Cache::open(d)?),
        None => None,
    };
    let report = match cli.command {
        Command::Constants { variety } => cmd_constants(
            &parse_varieties(&variety, &Variety::ALL)?,
            &cfg,
            cache.as_ref(),
        )?,
        Command::Limit { file } => cmd_limit(&file, &cfg)?,
        Command::Grassmann { n } => cmd_grassmann(n, &cfg)?,
        Command::Modular { variety, order } => {
            cmd_modular(&parse_varieties(&variety, &Variety::RATIONAL)?, order, &cfg)?
        }
        Command::Monodromy { n, e, u } => {
            cmd_monodromy(n, &parse_parameter(&e)?, &parse_parameter(&u)?, &cfg)?
        }
        Command::Selftest => cmd_selftest(&cfg, cache.as_ref()),
        Command::Export { variety, out } => {
            let v: Variety = variety.parse().map_err(CliError::from)?;
            let r = cmd_export(v)?;
            if let Some(path) = out {
                std::fs::write(&path, &r.text).map_err(|e| CliError::io(&path, e))?;
                Report {
                    text: format!("wrote {}\n", path.display()),
                    ..r
                }
            } else {
                r
            }
        }
    };
    print!("{}", terminate(report.render(&cfg)));
    Ok(report)
}

fn terminate(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(r) if r.passed => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("aperylab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
