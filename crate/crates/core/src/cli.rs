//! Command-line front end. [`run`] is pure with respect to its output: it
//! returns the exit code and both streams instead of printing, so identical
//! arguments give byte-identical results.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use num_traits::{One, ToPrimitive};
use serde_json::json;

use crate::dedekind::{dedekind_sum_fast, rademacher_sum, reciprocity_defect};
use crate::error::Error;
use crate::exact::{Int, Rat};
use crate::markov::{
    enumerate_markov, is_markov, markov_condition, pairwise_coprime, verify_equivalence_with,
    Triple, VerifyOptions, DEFAULT_SAMPLE, DEFAULT_SEED,
};
use crate::poly::{parse, Polynomial};
use crate::solver::{solve, solve_bruteforce};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "markov-dedekind",
    version,
    about = "Exact Dedekind sums, Markov triples, and a^2+b^2+c^2 = abc*f(a,b,c)"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dedekind sum s(a;b) with modulus a.
    #[command(allow_negative_numbers = true)]
    Dsum { a: Int, b: Int },
    /// Dedekind-Rademacher sum D(a;b,c) with modulus a.
    #[command(allow_negative_numbers = true)]
    Rsum { a: Int, b: Int, c: Int },
    /// D(a;b,c) + D(b;c,a) + D(c;a,b) - ((a^2+b^2+c^2)/(3abc) - 1).
    #[command(allow_negative_numbers = true)]
    Defect { a: Int, b: Int, c: Int },
    /// Markov triples.
    Markov {
        #[command(subcommand)]
        command: MarkovCommand,
    },
    /// Exhaustive verification sweeps.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// Solve a^2+b^2+c^2 = abc*f(a,b,c) through Markov triples.
    Solve(SolveArgs),
    /// Solve by scanning the whole cube (bound at most 500).
    Oracle(SolveArgs),
}

#[derive(Debug, Subcommand)]
enum MarkovCommand {
    /// Normalized Markov triples with largest entry at most --max.
    List {
        #[arg(long)]
        max: Int,
    },
    /// Check the Markov equation and the modular condition for one triple.
    #[command(allow_negative_numbers = true)]
    Check { a: Int, b: Int, c: Int },
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Markov equation vs. modular condition vs. vanishing Rademacher sums.
    Equivalence {
        #[arg(long)]
        max: Int,
        /// Number of other triples whose sums are also evaluated.
        #[arg(long, default_value_t = DEFAULT_SAMPLE)]
        sample: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Polynomial f in a, b, c, e.g. "3 + a*b".
    #[arg(long = "f", allow_hyphen_values = true)]
    f: String,
    #[arg(long)]
    max: Int,
}

enum Failure {
    Domain(String),
    Usage(String),
    /// A sweep that ran to completion but found counterexamples.
    Report(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type CmdResult = std::result::Result<String, Failure>;

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stderr: text,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    ..Outcome::default()
                }
            };
        }
    };
    match dispatch(cli) {
        Ok(stdout) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Report(stdout)) => Outcome {
            code: EXIT_DOMAIN,
            stdout,
            stderr: "error: verification failed\n".to_owned(),
        },
        Err(Failure::Domain(msg)) => Outcome {
            code: EXIT_DOMAIN,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn bound_arg(max: &Int) -> Result<u64, Failure> {
    if *max < Int::one() {
        return Err(Error::OutOfRange {
            name: "--max",
            min: Int::one(),
            value: max.clone(),
        }
        .into());
    }
    max.to_u64()
        .ok_or_else(|| Failure::Domain(format!("--max {max} does not fit in 64 bits")))
}

fn poly_arg(text: &str) -> Result<Polynomial, Failure> {
    parse(text).map_err(|e| {
        let pos = match &e {
            Error::Syntax { pos, .. } | Error::Exponent { pos, .. } => *pos,
            _ => 0,
        };
        Failure::Usage(format!("{e}\n  {text}\n  {}^", " ".repeat(pos)))
    })
}

fn value_out(v: &Rat, as_json: bool) -> String {
    if as_json {
        format!("{}\n", json!({ "value": v }))
    } else {
        format!("{v}\n")
    }
}

fn lines(triples: &[Triple]) -> String {
    triples.iter().map(|t| format!("{t}\n")).collect()
}

fn dispatch(cli: Cli) -> CmdResult {
    let as_json = cli.json;
    match cli.command {
        Command::Dsum { a, b } => Ok(value_out(&dedekind_sum_fast(&a, &b)?, as_json)),
        Command::Rsum { a, b, c } => Ok(value_out(&rademacher_sum(&a, &b, &c)?, as_json)),
        Command::Defect { a, b, c } => Ok(value_out(&reciprocity_defect(&a, &b, &c)?, as_json)),
        Command::Markov {
            command: MarkovCommand::List { max },
        } => {
            let bound = bound_arg(&max)?;
            let triples: Vec<Triple> = enumerate_markov(&max).into_iter().collect();
            Ok(if as_json {
                format!("{}\n", json!({ "bound": bound, "count": triples.len(), "triples": triples }))
            } else {
                lines(&triples)
            })
        }
        Command::Markov {
            command: MarkovCommand::Check { a, b, c },
        } => {
            let t = Triple::new(a, b, c)?;
            let (eq, cond, cop) = (is_markov(&t), markov_condition(&t), pairwise_coprime(&t));
            Ok(if as_json {
                format!(
                    "{}\n",
                    json!({
                        "triple": t,
                        "is_markov": eq,
                        "markov_condition": cond,
                        "pairwise_coprime": cop,
                    })
                )
            } else {
                format!(
                    "{t}\nmarkov equation: {eq}\nmarkov condition: {cond}\npairwise coprime: {cop}\n"
                )
            })
        }
        Command::Verify {
            command: VerifyCommand::Equivalence { max, sample, seed },
        } => {
            let bound = bound_arg(&max)?;
            let report = verify_equivalence_with(bound, VerifyOptions { sample, seed });
            let triples: Vec<&Triple> = report.eq1_set.iter().collect();
            let out = if as_json {
                format!(
                    "{}\n",
                    json!({
                        "bound": bound,
                        "counts": {
                            "eq1": report.eq1_set.len(),
                            "cond2": report.cond2_set.len(),
                            "dzero": report.dzero_set.len(),
                        },
                        "triples": triples,
                        "counterexamples": report.counterexamples,
                        "evaluated": report.evaluated,
                        "passed": report.passed(),
                    })
                )
            } else {
                let mut s = String::new();
                writeln!(s, "bound: {bound}").unwrap();
                writeln!(
                    s,
                    "eq1: {}  cond2: {}  dzero: {}  (sums evaluated on {} triples)",
                    report.eq1_set.len(),
                    report.cond2_set.len(),
                    report.dzero_set.len(),
                    report.evaluated
                )
                .unwrap();
                for t in &triples {
                    writeln!(s, "{t}").unwrap();
                }
                writeln!(s, "counterexamples: {}", report.counterexamples.len()).unwrap();
                for ce in &report.counterexamples {
                    writeln!(s, "  {} {:?}", ce.triple, ce.direction).unwrap();
                }
                writeln!(s, "result: {}", if report.passed() { "PASS" } else { "FAIL" }).unwrap();
                s
            };
            if report.passed() {
                Ok(out)
            } else {
                Err(Failure::Report(out))
            }
        }
        Command::Solve(args) => {
            let f = poly_arg(&args.f)?;
            let bound = bound_arg(&args.max)?;
            let r = solve(&f, bound);
            Ok(if as_json {
                format!(
                    "{}\n",
                    json!({
                        "f": f.to_string(),
                        "bound": bound,
                        "verdict": r.precheck_verdict,
                        "solutions": r.solutions,
                        "branches": { "k1": r.branch_k1, "k3": r.branch_k3 },
                    })
                )
            } else {
                format!(
                    "f = {f}\nbound: {bound}\nverdict: {:?}\nsolutions: {}\n{}",
                    r.precheck_verdict,
                    r.solutions.len(),
                    lines(&r.solutions)
                )
            })
        }
        Command::Oracle(args) => {
            let f = poly_arg(&args.f)?;
            let bound = bound_arg(&args.max)?;
            let solutions = solve_bruteforce(&f, bound)?;
            Ok(if as_json {
                format!(
                    "{}\n",
                    json!({ "f": f.to_string(), "bound": bound, "solutions": solutions })
                )
            } else {
                format!(
                    "f = {f}\nbound: {bound}\nsolutions: {}\n{}",
                    solutions.len(),
                    lines(&solutions)
                )
            })
        }
    }
}
