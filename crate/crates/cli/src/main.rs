//! `diffeo`: tree amplitudes, Bell polynomials and series identities for
//! field diffeomorphisms, computed exactly.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diffeo_core::Suite;

use crate::config::{RunConfig, Settings};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or input files; exit code 2.
    Usage(String),
    /// A requested verification did not hold; exit code 1.
    Failed(String),
}

#[derive(Parser, Debug)]
#[command(
    name = "diffeo",
    version,
    about = "Exact tree-level computations for field diffeomorphisms"
)]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// JSON file with default order, trials, seed, coefficients, output and suite.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// Fix coefficients, e.g. `a1=2,a2=-1/3,l3=1`; the rest stay symbolic.
    #[arg(long, value_delimiter = ',', value_name = "NAME=VALUE")]
    coeffs: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute b_n, the tree sum with one off-shell leg.
    Bn {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Kinematic points for the tree-based methods.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a partial Bell polynomial B_{n,k}, or verify Bell identities.
    #[command(args_conflicts_with_subcommands = true)]
    Bell {
        #[command(subcommand)]
        verify: Option<BellCommand>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// `stirling`, `closed`, `smatrix`, or a list `x1=<poly>,x2=<poly>`.
        #[arg(long, value_delimiter = ',')]
        subst: Vec<String>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long)]
        suite: Option<Suite>,
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Legendre transform of the action of F, checked against b_{n-1}.
    Legendre {
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Tree sums W_n^(s) of the interacting theory, checked against λ_s [n = s].
    Smatrix {
        #[arg(long)]
        order: Option<u32>,
        /// Vertex degrees to include.
        #[arg(long, value_delimiter = ',', default_values_t = [3u32, 4, 5])]
        s: Vec<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Compositional inverse of F, as b_n = n! [t^n] F^{-1}.
    Inverse {
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Write a series as JSON.
    Export {
        #[arg(long, value_enum)]
        what: Export,
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum BellCommand {
    /// Verify one of the Bell polynomial identity suites.
    Verify {
        #[arg(long, value_parser = bell_suite)]
        suite: Suite,
        #[arg(long)]
        nmax: Option<u32>,
    },
}

fn bell_suite(s: &str) -> Result<Suite, String> {
    let suite: Suite = s.parse()?;
    if suite.is_bell() {
        Ok(suite)
    } else {
        Err(format!(
            "`{s}` is not a Bell suite (genfunc, localization, starter, cvijovic, oracle)"
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Recurrence,
    Closed,
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Export {
    Diffeo,
    Inverse,
    P,
    Q,
    Legendre,
    Action,
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("DIFFEO_THREADS") {
        let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Usage(format!(
                "DIFFEO_THREADS must be a positive integer, got `{v}`"
            ))
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<String, CliError> {
    configure_threads()?;
    let config = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let settings = |order, trials, seed, common: &Common| {
        Settings::resolve(&config, order, trials, seed, &common.coeffs, cli.json)
    };
    match cli.command {
        Command::Bn {
            n,
            method,
            trials,
            seed,
            common,
        } => commands::bn(n, method, &settings(None, trials, seed, &common)?),
        Command::Bell {
            verify: Some(BellCommand::Verify { suite, nmax }),
            ..
        } => commands::verify(suite, &settings(nmax, None, None, &Common::default())?),
        Command::Bell {
            verify: None,
            n,
            k,
            subst,
        } => {
            let (n, k) = match (n, k) {
                (Some(n), Some(k)) => (n, k),
                _ => {
                    return Err(CliError::Usage(
                        "bell needs --n and --k (or the verify subcommand)".into(),
                    ))
                }
            };
            commands::bell(
                n,
                k,
                &subst,
                &settings(None, None, None, &Common::default())?,
            )
        }
        Command::Verify {
            suite,
            order,
            trials,
            seed,
            common,
        } => {
            let suite = suite.or(config.suite).unwrap_or(Suite::All);
            commands::verify(suite, &settings(order, trials, seed, &common)?)
        }
        Command::Legendre { order, common } => {
            commands::legendre(&settings(order, None, None, &common)?)
        }
        Command::Smatrix { order, s, common } => {
            commands::smatrix(&s, &settings(order, None, None, &common)?)
        }
        Command::Inverse { order, common } => {
            commands::inverse(&settings(order, None, None, &common)?)
        }
        Command::Export {
            what,
            order,
            common,
        } => commands::export(what, &settings(order, None, None, &common)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli);
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
    }
}
