//! The `eqcoh` command line: argument parsing, dispatch and reports.

mod report;
mod schemas;

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::rings::Theory;
use crate::root_system::{RootSystemSpec, Weight};
use crate::Error;

pub use schemas::{schema, SCHEMA_NAMES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoryArg {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "MU", alias = "mu")]
    Mu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "eqcoh", version, about = "Equivariant cohomology of torus varieties from fixed-point data")]
pub struct Cli {
    /// Cohomology theory.
    #[arg(long, global = true, value_enum, default_value = "H")]
    pub theory: TheoryArg,
    /// Chern-degree truncation for MU (even, positive).
    #[arg(long = "mu-truncation", global = true, default_value_t = 6)]
    pub mu_truncation: u32,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub output: OutputFormat,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print a JSON schema (or all of them) and exit.
    #[arg(long, num_args = 0..=1, default_missing_value = "all", value_name = "NAME")]
    pub schema: Option<String>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weyl group order, elements and optional coset representatives.
    Weyl {
        #[arg(long = "type")]
        ty: String,
        /// 1-based simple roots of the parabolic, e.g. `1,2`.
        #[arg(long)]
        parabolic: Option<String>,
    },
    /// Module structure of a partial flag variety G/P.
    Flag {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        parabolic: Option<String>,
    },
    /// Module structure of a variety model or stratum poset read from JSON.
    Model {
        #[arg(long)]
        file: PathBuf,
    },
    /// Fixed points of one level of the affine Grassmannian.
    Gr {
        #[arg(long = "type")]
        ty: String,
        /// Highest weight in fundamental-weight coordinates, e.g. `1,0`.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        level: u32,
    },
    /// The inverse system of levels `0..=levels`.
    GrLimit {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        levels: u32,
    },
    /// Euler class of a weight multiset.
    Euler {
        #[arg(long = "type")]
        ty: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        /// Weights separated by `;`, coordinates by `,`, e.g. `1,0;-1,2`.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// Also test the Whitney formula on this many random pairs.
        #[arg(long = "whitney-trials")]
        whitney_trials: Option<usize>,
    },
}

/// Exit code and the two output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: error_json("usage", &message.into()),
        }
    }

    fn computation(err: &Error) -> Self {
        Outcome {
            code: 1,
            stdout: String::new(),
            stderr: error_json("computation", &err.to_string()),
        }
    }
}

fn error_json(kind: &str, message: &str) -> String {
    let mut s = serde_json::to_string(&json!({ "error": kind, "message": message })).expect("plain JSON");
    s.push('\n');
    s
}

/// Problems with the arguments, reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

pub(crate) struct Settings {
    pub theory: Theory,
    pub output: OutputFormat,
    pub seed: u64,
}

/// Runs the command line on `argv` (including the program name).
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(e.render().to_string())
                }
                _ => Outcome::usage(e.render().to_string()),
            }
        }
    };
    if let Some(name) = &cli.schema {
        return match schemas::render(name) {
            Some(text) => Outcome::ok(text),
            None => Outcome::usage(format!("unknown schema {name}; known: all, {}", SCHEMA_NAMES.join(", "))),
        };
    }
    let settings = match settings(&cli) {
        Ok(s) => s,
        Err(UsageError(m)) => return Outcome::usage(m),
    };
    let Some(command) = &cli.command else {
        return Outcome::usage("a subcommand is required");
    };
    let request = match parse_command(command) {
        Ok(r) => r,
        Err(UsageError(m)) => return Outcome::usage(m),
    };
    match report::execute(&request, &settings) {
        Ok(report) => Outcome::ok(match settings.output {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&report.json).expect("reports serialize");
                s.push('\n');
                s
            }
            OutputFormat::Text => report.text,
        }),
        Err(e) => Outcome::computation(&e),
    }
}

fn settings(cli: &Cli) -> Result<Settings, UsageError> {
    if cli.mu_truncation == 0 || !cli.mu_truncation.is_multiple_of(2) {
        return Err(UsageError(format!(
            "--mu-truncation must be even and positive, got {}",
            cli.mu_truncation
        )));
    }
    let theory = match cli.theory {
        TheoryArg::H => Theory::H,
        TheoryArg::K => Theory::K,
        TheoryArg::Mu => Theory::MU {
            truncation: cli.mu_truncation,
        },
    };
    Ok(Settings {
        theory,
        output: cli.output,
        seed: cli.seed,
    })
}

/// A validated command.
pub(crate) enum Request {
    Weyl {
        spec: RootSystemSpec,
        parabolic: Option<BTreeSet<usize>>,
    },
    Flag {
        spec: RootSystemSpec,
        parabolic: BTreeSet<usize>,
    },
    Model {
        document: Value,
    },
    Gr {
        spec: RootSystemSpec,
        alpha: Weight,
        level: u32,
    },
    GrLimit {
        spec: RootSystemSpec,
        alpha: Weight,
        levels: u32,
    },
    Euler {
        rank: usize,
        weights: Vec<Weight>,
        whitney_trials: Option<usize>,
    },
}

fn parse_command(command: &Command) -> Result<Request, UsageError> {
    Ok(match command {
        Command::Weyl { ty, parabolic } => {
            let spec: RootSystemSpec = ty.parse()?;
            Request::Weyl {
                spec,
                parabolic: parabolic.as_deref().map(|p| parse_parabolic(p, spec.rank)).transpose()?,
            }
        }
        Command::Flag { ty, parabolic } => {
            let spec: RootSystemSpec = ty.parse()?;
            Request::Flag {
                spec,
                parabolic: parabolic
                    .as_deref()
                    .map(|p| parse_parabolic(p, spec.rank))
                    .transpose()?
                    .unwrap_or_default(),
            }
        }
        Command::Model { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", file.display())))?;
            let document: Value =
                serde_json::from_str(&text).map_err(|e| UsageError(format!("{} is not JSON: {e}", file.display())))?;
            Request::Model { document }
        }
        Command::Gr { ty, alpha, level } => {
            let spec: RootSystemSpec = ty.parse()?;
            Request::Gr {
                spec,
                alpha: parse_alpha(alpha.as_deref(), spec)?,
                level: *level,
            }
        }
        Command::GrLimit { ty, alpha, levels } => {
            let spec: RootSystemSpec = ty.parse()?;
            Request::GrLimit {
                spec,
                alpha: parse_alpha(alpha.as_deref(), spec)?,
                levels: *levels,
            }
        }
        Command::Euler {
            ty,
            rank,
            weights,
            whitney_trials,
        } => {
            let rank = match (ty, rank) {
                (Some(ty), None) => ty.parse::<RootSystemSpec>()?.rank,
                (None, Some(r)) => *r,
                (Some(ty), Some(r)) => {
                    let spec: RootSystemSpec = ty.parse()?;
                    if spec.rank != *r {
                        return Err(UsageError(format!("--rank {r} disagrees with --type {spec}")));
                    }
                    *r
                }
                (None, None) => return Err(UsageError("euler needs --type or --rank".into())),
            };
            let weights = parse_weight_list(weights)?;
            if let Some(w) = weights.iter().find(|w| w.rank() != rank) {
                return Err(UsageError(format!("weight {w} does not have rank {rank}")));
            }
            Request::Euler {
                rank,
                weights,
                whitney_trials: *whitney_trials,
            }
        }
    })
}

fn parse_ints(text: &str) -> Result<Vec<i64>, UsageError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| UsageError(format!("not an integer: {t:?}")))
        })
        .collect()
}

fn parse_parabolic(text: &str, rank: usize) -> Result<BTreeSet<usize>, UsageError> {
    if text.trim().is_empty() {
        return Ok(BTreeSet::new());
    }
    parse_ints(text)?
        .into_iter()
        .map(|i| {
            if i >= 1 && (i as usize) <= rank {
                Ok(i as usize - 1)
            } else {
                Err(UsageError(format!("parabolic index {i} outside 1..={rank}")))
            }
        })
        .collect()
}

fn parse_alpha(text: Option<&str>, spec: RootSystemSpec) -> Result<Weight, UsageError> {
    match text {
        Some(t) => {
            let w = Weight::new(parse_ints(t)?);
            if w.rank() != spec.rank {
                return Err(UsageError(format!("--alpha needs {} coordinates", spec.rank)));
            }
            Ok(w)
        }
        None => crate::grassmannian::default_alpha(spec)
            .ok_or_else(|| UsageError(format!("--alpha is required for type {spec}"))),
    }
}

fn parse_weight_list(text: &str) -> Result<Vec<Weight>, UsageError> {
    text.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| Ok(Weight::new(parse_ints(t)?)))
        .collect()
}
