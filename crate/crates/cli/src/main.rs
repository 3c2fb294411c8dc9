//! `gw`: command-line front end for the group workbench.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gw_core::{Guards, GwError};
use num_bigint::BigUint;

#[derive(Parser, Debug)]
#[command(
    name = "gw",
    version,
    about = "Exact cyclic-quotient counts and checks on permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalFlags,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalFlags {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest group order (decimal or `2^k`).
    #[arg(long, global = true, value_parser = parse_big)]
    guard_order: Option<BigUint>,
    /// Largest permutation degree.
    #[arg(long, global = true)]
    guard_degree: Option<usize>,
    /// Largest order for element enumeration.
    #[arg(long, global = true)]
    oracle_bound: Option<u64>,
    /// Largest index for the low-index subgroup search.
    #[arg(long, global = true)]
    low_index_bound: Option<usize>,
}

impl GlobalFlags {
    fn guards(&self) -> Guards {
        let mut g = Guards::default();
        if let Some(o) = &self.guard_order {
            g.order = o.clone();
        }
        if let Some(d) = self.guard_degree {
            g.degree = d;
        }
        if let Some(b) = self.oracle_bound {
            g.oracle_order = b;
        }
        if let Some(m) = self.low_index_bound {
            g.low_index = m;
        }
        g
    }
}

fn parse_big(text: &str) -> Result<BigUint, String> {
    let text = text.trim();
    if let Some(e) = text.strip_prefix("2^") {
        let e: u32 = e.parse().map_err(|e| format!("bad exponent: {e}"))?;
        return Ok(BigUint::from(1u32) << e);
    }
    text.parse().map_err(|e| format!("bad integer: {e}"))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a group and report its order, degree and perfectness.
    Eval { expr: String },
    /// Abelian invariants of G/G' and p-ranks.
    Invariants {
        expr: String,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// I_G(n), or I_G(n, m) with -m.
    Count {
        expr: String,
        #[arg(short)]
        n: u64,
        #[arg(short)]
        m: Option<u64>,
        /// Subgroup expression certifying a lower bound for I_G(n, m).
        #[arg(long)]
        witness: Option<String>,
        /// Count through the normal-subgroup oracle instead of the formula.
        #[arg(long, conflicts_with_all = ["m", "witness"])]
        brute_force: bool,
    },
    /// Subgroups of index at most m.
    Subgroups {
        expr: String,
        #[arg(short)]
        m: usize,
    },
    /// Run a named check.
    Verify(Box<commands::VerifyArgs>),
    /// Series operations.
    Hensel {
        #[command(subcommand)]
        op: HenselOp,
    },
    /// Power-class decomposition of Q((t))^x modulo n-th powers.
    Classes {
        #[arg(short)]
        n: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        reps: Vec<String>,
        /// One series literal per line; `#` starts a comment.
        #[arg(long)]
        samples: std::path::PathBuf,
        #[arg(long)]
        prec: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum HenselOp {
    /// n-th root of a unit series by Newton iteration.
    Root {
        #[arg(allow_hyphen_values = true)]
        series: String,
        #[arg(short)]
        n: u64,
        #[arg(long)]
        prec: Option<usize>,
    },
}

/// Outcome of a command: a JSON value plus its text rendering.
pub struct Outcome {
    pub json: serde_json::Value,
    pub text: String,
    pub pass: bool,
}

fn run(cli: &Cli) -> Result<Outcome, GwError> {
    let guards = cli.global.guards();
    match &cli.command {
        Command::Eval { expr } => commands::eval(expr, &guards),
        Command::Invariants { expr, primes } => commands::invariants(expr, primes, &guards),
        Command::Count {
            expr,
            n,
            m,
            witness,
            brute_force,
        } => commands::count(expr, *n, *m, witness.as_deref(), *brute_force, &guards),
        Command::Subgroups { expr, m } => commands::subgroups(expr, *m, &guards),
        Command::Verify(args) => commands::verify(args, &guards),
        Command::Hensel {
            op: HenselOp::Root { series, n, prec },
        } => commands::hensel_root(series, *n, *prec),
        Command::Classes {
            n,
            reps,
            samples,
            prec,
        } => commands::classes(*n, reps, samples, *prec),
    }
}

fn verb(command: &Command) -> &'static str {
    match command {
        Command::Eval { .. } => "eval",
        Command::Invariants { .. } => "invariants",
        Command::Count { .. } => "count",
        Command::Subgroups { .. } => "subgroups",
        Command::Verify(_) => "verify",
        Command::Hensel { .. } => "hensel",
        Command::Classes { .. } => "classes",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verb = verb(&cli.command);
    match run(&cli) {
        Ok(out) => {
            if cli.global.json {
                let doc = serde_json::json!({
                    "command": verb,
                    "status": if out.pass { "pass" } else { "fail" },
                    "result": out.json,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializable")
                );
            } else {
                print!("{}", out.text);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.global.json {
                let doc = serde_json::json!({
                    "command": verb,
                    "status": "error",
                    "message": e.to_string(),
                    "error": e,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializable")
                );
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
