mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ramify::Error;

#[derive(Parser, Debug)]
#[command(name = "ramify", version, about = "Witt-vector conductors, ray class groups and tame symbols in characteristic p")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Field order q = p^n
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Characteristic p
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Working precision for local expansions
    #[arg(long, global = true)]
    pub prec: Option<i64>,
    /// Seed for every randomized sweep
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of randomized trials
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Witt vector arithmetic, filtrations and best forms
    Witt(commands::WittArgs),
    /// Global Artin conductor of an Artin-Schreier-Witt character of P^1
    Conductor(commands::ConductorArgs),
    /// Refined Artin conductor, or a Witt vector with a given one
    Rsw(commands::RswArgs),
    /// Ray class group C(P^1, D)^0
    Rayclass(commands::RayclassArgs),
    /// Does a character factor through C(P^1, D)?
    Reciprocity(commands::ReciprocityArgs),
    /// Local Schmid symbols Tr Res(a db/b) and their sum
    Schmid(commands::SchmidArgs),
    /// Symbols on the plane
    K2 {
        #[command(subcommand)]
        cmd: commands::K2Command,
    },
    /// Run the seeded invariant suite
    Selftest(commands::SelftestArgs),
}

/// What a subcommand hands back: the report and whether its checks held.
pub struct Outcome {
    pub json: serde_json::Value,
    pub text: String,
    pub ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::dispatch(&cli) {
        Ok(out) => {
            match cli.global.format {
                Format::Json => {
                    let mut v = serde_json::json!({ "schema": 1 });
                    if let (Some(m), serde_json::Value::Object(rest)) = (v.as_object_mut(), out.json) {
                        m.extend(rest);
                    }
                    println!("{}", serde_json::to_string(&v).expect("report serializes"));
                }
                Format::Text => println!("{}", out.text),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}

/// Errors caused by the invocation itself rather than by the mathematics.
fn is_usage(e: &Error) -> bool {
    matches!(e, Error::Parse { .. } | Error::UnsupportedField(_) | Error::PreconditionViolated(_))
}
