mod commands;
mod request;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use frobcalc_core::nafield::default_precision;
use frobcalc_core::ErrorClass;
use serde_json::{json, Value};

use commands::Failure;
use request::{Command, Request};

const SCHEMA_VERSION: u32 = 1;

/// Frobenius roots, Fedder-type purity tests and splittings of Tate algebras.
#[derive(Debug, Parser)]
#[command(name = "frobcalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// Re-run a request (or the request echoed in a report) from JSON.
    #[arg(long, global = true)]
    request: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Core(e) => match e.class() {
            ErrorClass::Domain | ErrorClass::Internal => 1,
            ErrorClass::Precision => 2,
            ErrorClass::Parse => 3,
        },
        Failure::BadRequest(_) => 3,
        Failure::Io(_) => 1,
    }
}

fn describe(f: &Failure) -> String {
    match f {
        Failure::Core(e) => e.to_string(),
        Failure::BadRequest(m) => format!("bad request: {m}"),
        Failure::Io(m) => format!("i/o error: {m}"),
    }
}

fn load_request(path: &PathBuf) -> Result<Request, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::BadRequest(format!("{}: {e}", path.display())))?;
    // A whole report is accepted too; its echoed request is re-run.
    let value = match value.get("request") {
        Some(inner) if value.get("schema_version").is_some() => inner.clone(),
        _ => value,
    };
    serde_json::from_value(value)
        .map_err(|e| Failure::BadRequest(format!("{}: {e}", path.display())))
}

fn execute(cli: Cli) -> Result<Value, Failure> {
    let req = match (cli.command, &cli.request) {
        (Some(cmd), None) => cmd.into_request(cli.seed, default_precision()),
        (None, Some(path)) => load_request(path)?,
        (Some(_), Some(_)) => {
            return Err(Failure::BadRequest(
                "give either a subcommand or --request, not both".into(),
            ))
        }
        (None, None) => return Err(Failure::BadRequest("no subcommand given".into())),
    };
    if let Some(n) = req.precision {
        if n <= 0 {
            return Err(Failure::BadRequest(format!(
                "precision {n} must be positive"
            )));
        }
        // The library reads its default precision from the environment.
        std::env::set_var("FROBCALC_PRECISION", n.to_string());
    }
    let result = commands::run(&req)?;
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "request": req,
        "result": result,
    }))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    let output = cli.output.clone();
    let report = match execute(cli) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("frobcalc: {}", describe(&f));
            return ExitCode::from(exit_code(&f));
        }
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    let written = match &output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(f) = written {
        eprintln!("frobcalc: {}", describe(&f));
        return ExitCode::from(exit_code(&f));
    }
    if report["result"]["all_pass"] == json!(false) {
        eprintln!("frobcalc: self-check failures, see report");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
