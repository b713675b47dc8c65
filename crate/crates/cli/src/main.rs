mod commands;
mod input;
mod report;
mod show;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

/// Exact computations for K3-type Hodge structures with real multiplication.
///
/// Every command prints a JSON report with `inputs`, `results` and `checks`.
/// Exit status is 0 when all checks pass, 1 when one fails and 2 when the
/// input is rejected. `--json FILE` reads flags from a JSON object; flags
/// given on the command line take precedence.
#[derive(Parser, Debug)]
#[command(name = "k3rm", version)]
struct Cli {
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: commands::Command,
}

fn main() -> ExitCode {
    let args = match input::expand_json_args(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => return fail(false, &e),
    };
    let cli = Cli::parse_from(args);
    match commands::run(&cli.command) {
        Ok(rep) => {
            emit(&rep.render(cli.pretty));
            if rep.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(cli.pretty, &e),
    }
}

fn fail(pretty: bool, e: &anyhow::Error) -> ExitCode {
    let msg = format!("{e:#}");
    if pretty {
        eprintln!("error: {msg}");
    } else {
        emit(&serde_json::to_string_pretty(&json!({ "error": msg })).expect("serializes"));
    }
    ExitCode::from(2)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}
