//! `fgm-mld`: simulate, fit and analyse FGM bivariate exponential data.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad arguments or malformed data,
//! 3 statistical degeneracy (no usable observations), 4 verification
//! failures.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use fgm_core::campaign::{run_campaign, CampaignConfig, Pattern};
use fgm_core::mldegree::{report_approx, report_exact, EqualityPolicy};
use fgm_core::model::{sample, Dataset, Theta};
use fgm_core::{io, mle, CShiftList, Error};

#[derive(Parser)]
#[command(
    name = "fgm-mld",
    version,
    about = "ML-degree and MLE for the FGM bivariate exponential model"
)]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a dataset and write it as `x,y` CSV.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Maximum-likelihood estimate of theta from a CSV dataset.
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// ML-degree report for explicit shifts or a dataset.
    Mldegree(MldegreeArgs),
    /// Randomized exact verification of the ML-degree results.
    Verify {
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// `random`, `n` (all equal), or repeated-group sizes such as `2,2`.
        #[arg(long, default_value = "random")]
        pattern: String,
    },
}

#[derive(Args)]
struct MldegreeArgs {
    /// Exact shifts as `p/q` or integer literals; consumes every remaining
    /// argument, so give it last.
    #[arg(
        long = "c",
        num_args = 1..,
        allow_hyphen_values = true,
        required_unless_present = "input",
        conflicts_with = "input"
    )]
    c: Vec<String>,
    /// Dataset whose shifts are used in floating point.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Relative tolerance for equal float shifts.
    #[arg(long, default_value_t = fgm_core::mldegree::DEFAULT_REL_TOL, requires = "input")]
    tol: f64,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    fn from_core(e: Error, context: Option<&Path>) -> Self {
        let code = match &e {
            Error::NoData { .. } => 3,
            Error::Io(_) => 1,
            _ => 2,
        };
        let message = match context {
            Some(p) => format!("{}: {e}", p.display()),
            None => e.to_string(),
        };
        Self { code, message }
    }
}

fn emit<T: Serialize>(value: &T, pretty: bool) -> Result<(), Failure> {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .map_err(|e| Failure::new(1, e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn load(path: &Path) -> Result<Dataset, Failure> {
    let file = File::open(path).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))?;
    let obs = io::read_observations(BufReader::new(file))
        .map_err(|e| Failure::from_core(e, Some(path)))?;
    if obs.is_empty() {
        return Err(Failure::from_core(
            Error::NoData { n: 0, dropped: 0 },
            Some(path),
        ));
    }
    Dataset::new(obs).map_err(|e| Failure::from_core(e, Some(path)))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Sample {
            n,
            theta,
            seed,
            out,
        } => {
            let theta = Theta::new(theta).map_err(|e| Failure::from_core(e, None))?;
            let data = sample(n, theta, seed).map_err(|e| Failure::from_core(e, None))?;
            let file = File::create(&out)
                .map_err(|e| Failure::new(1, format!("{}: {e}", out.display())))?;
            let mut writer = BufWriter::new(file);
            io::write_dataset(&data, &mut writer)
                .and_then(|_| writer.flush().map_err(Error::from))
                .map_err(|e| Failure::new(1, format!("{}: {e}", out.display())))
        }
        Command::Fit { input } => {
            let data = load(&input)?;
            let result = mle::fit(&data).map_err(|e| Failure::from_core(e, Some(&input)))?;
            emit(&result, cli.pretty)
        }
        Command::Mldegree(args) => {
            if let Some(path) = args.input {
                let data = load(&path)?;
                let shift = data.c_shift();
                if shift.values.is_empty() {
                    return Err(Failure::from_core(
                        Error::NoData {
                            n: data.n(),
                            dropped: shift.degenerate.len(),
                        },
                        Some(&path),
                    ));
                }
                let c = CShiftList::new(shift.values).map_err(|e| Failure::from_core(e, None))?;
                let report = report_approx(&c, EqualityPolicy::Tolerance(args.tol));
                #[derive(Serialize)]
                struct WithDropped<T> {
                    #[serde(flatten)]
                    report: T,
                    dropped: usize,
                }
                emit(
                    &WithDropped {
                        report,
                        dropped: shift.degenerate.len(),
                    },
                    cli.pretty,
                )
            } else {
                let c = CShiftList::parse(&args.c).map_err(|e| Failure::from_core(e, None))?;
                emit(&report_exact(&c), cli.pretty)
            }
        }
        Command::Verify {
            trials,
            n_max,
            seed,
            pattern,
        } => {
            let pattern: Pattern = pattern.parse().map_err(|e| Failure::from_core(e, None))?;
            let report = run_campaign(&CampaignConfig {
                trials,
                n_max,
                seed,
                pattern,
            })
            .map_err(|e| Failure::from_core(e, None))?;
            emit(&report, cli.pretty)?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::new(
                    4,
                    format!("{} verification failure(s)", report.failures.len()),
                ))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
