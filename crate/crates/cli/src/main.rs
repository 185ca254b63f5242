//! `diffpow`: symbolic, differential and mixed powers of primes from the
//! command line.

mod commands;
mod session;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use diffpow_core::groebner::DEFAULT_BUDGET;
use diffpow_core::powers::suites::{suite_names, Expectations, SuiteOptions};
use diffpow_core::powers::DEFAULT_DEGREE_BOUND;

use commands::{EquivKind, Failure, MemberKind, Report, Selection};
use session::{parse_session, Session};

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "diffpow", version, about = "Symbolic, differential and mixed powers of primes")]
struct Cli {
    /// Session file declaring the ring, ideals and lifts (`-` for stdin).
    #[arg(long, global = true, value_name = "PATH")]
    input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the random part of corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Steps allowed per Groebner basis computation; a reduction on wide
    /// coefficients counts as several steps.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Debug)]
struct Names {
    /// Ideal to use when the session declares several.
    #[arg(long, value_name = "NAME")]
    ideal: Option<String>,

    /// Lift of Frobenius to use; repeat for delta-independence.
    #[arg(long, value_name = "NAME")]
    lift: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Membership of one polynomial in a power of the ideal.
    Member {
        #[arg(value_enum)]
        kind: MemberArg,
        #[arg(long)]
        n: u32,
        #[arg(long, value_name = "POLY")]
        f: String,
        /// Relations ideal; symbolic membership is then taken in the quotient ring.
        #[arg(long, value_name = "NAME")]
        relations: Option<String>,
        /// Fail (exit 1) unless the verdict is this.
        #[arg(long)]
        expect: Option<bool>,
        #[command(flatten)]
        names: Names,
    },
    /// Groebner basis of the ideal (strong over Z).
    Gb {
        #[arg(long, default_value = "grevlex", value_parser = ["grevlex", "grlex", "lex"])]
        order: String,
        #[command(flatten)]
        names: Names,
    },
    /// The colon ideal (I : f).
    Colon {
        #[arg(long, value_name = "POLY")]
        f: String,
        #[command(flatten)]
        names: Names,
    },
    /// Compares membership tests over a generated corpus.
    Equiv {
        #[arg(value_enum)]
        kind: EquivArg,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: u32,
        #[command(flatten)]
        names: Names,
    },
    /// Runs the bundled regression suites.
    VerifyPaper {
        /// File of `suite/check = value` lines replacing expected values.
        #[arg(long, value_name = "PATH")]
        expected: Option<PathBuf>,
        /// Run only these suites.
        #[arg(long, value_name = "NAME")]
        suite: Vec<String>,
        /// List suite names and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MemberArg {
    Symbolic,
    Diff,
    Pder,
    Mixed,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EquivArg {
    Diff,
    Mixed,
    DeltaIndependence,
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| format!("stdin: {e}"))
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn load_session(cli: &Cli) -> Result<Session, Failure> {
    let Some(path) = &cli.input else {
        return Err(Failure::Input("missing required flag --input".into()));
    };
    let text = read_input(path).map_err(Failure::Input)?;
    parse_session(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let selection = |names: &Names, relations: Option<&String>| Selection {
        ideal: names.ideal.clone(),
        lifts: names.lift.clone(),
        relations: relations.cloned(),
    };
    match &cli.command {
        Command::Member {
            kind,
            n,
            f,
            relations,
            expect,
            names,
        } => {
            let kind = match kind {
                MemberArg::Symbolic => MemberKind::Symbolic,
                MemberArg::Diff => MemberKind::Diff,
                MemberArg::Pder => MemberKind::Pder,
                MemberArg::Mixed => MemberKind::Mixed,
            };
            let sel = selection(names, relations.as_ref());
            commands::member(&load_session(cli)?, kind, &sel, *n, f, *expect, cli.budget)
        }
        Command::Gb { order, names } => commands::gb(&load_session(cli)?, &selection(names, None), order, cli.budget),
        Command::Colon { f, names } => commands::colon(&load_session(cli)?, &selection(names, None), f, cli.budget),
        Command::Equiv {
            kind,
            n,
            degree_bound,
            names,
        } => {
            let kind = match kind {
                EquivArg::Diff => EquivKind::Diff,
                EquivArg::Mixed => EquivKind::Mixed,
                EquivArg::DeltaIndependence => EquivKind::DeltaIndependence,
            };
            let sel = selection(names, None);
            commands::equiv(&load_session(cli)?, kind, &sel, *n, *degree_bound, cli.seed, cli.budget)
        }
        Command::VerifyPaper { expected, suite, list } => {
            if *list {
                let names = suite_names();
                return Ok(Report {
                    passed: true,
                    json: json!({ "command": "verify-paper", "suites": names }),
                    text: names.iter().map(|n| format!("{n}\n")).collect(),
                });
            }
            let expectations = match expected {
                Some(path) => {
                    let text = read_input(path).map_err(Failure::Input)?;
                    Expectations::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
                }
                None => Expectations::default(),
            };
            let opts = SuiteOptions {
                seed: cli.seed,
                budget: cli.budget,
            };
            commands::verify_paper(&expectations, suite, opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    let runtime_ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(mut report) => {
            match cli.format {
                Format::Json => {
                    report.json["runtime_ms"] = json!(runtime_ms);
                    report.json["passed"] = json!(report.passed);
                    println!("{}", serde_json::to_string_pretty(&report.json).expect("json"));
                }
                Format::Text => print!("{}", report.text),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Budget(budget)) => {
            eprintln!("error: step budget of {budget} exceeded");
            ExitCode::from(EXIT_BUDGET)
        }
    }
}
