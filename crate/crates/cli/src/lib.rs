pub mod args;
pub mod commands;
pub mod moduli;
pub mod output;
pub mod verify;

use std::ffi::OsString;

use clap::Parser;
use serde_json::json;

use crate::args::Cli;
use crate::commands::Ctx;
use crate::output::{config_hash, Emitter};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(failures) if failures.is_empty() => EXIT_OK,
        Ok(_) => EXIT_FAILED,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<ffstat::Error>() {
        Some(ffstat::Error::BudgetExceeded { .. }) => EXIT_BUDGET,
        _ => EXIT_CONFIG,
    }
}

fn execute(cli: &Cli) -> anyhow::Result<Vec<String>> {
    if cli.workers > 0 {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global();
    }
    let hash = config_hash(&serde_json::to_value(cli)?);
    let mut out = Emitter::new(cli.out.as_deref(), cli.format, hash, cli.seed)?;
    let budget = ffstat::Budget { max_polys: cli.budget, max_characters: cli.char_budget };
    let failures = {
        let mut ctx = Ctx { cli, budget, out: &mut out };
        commands::dispatch(&mut ctx)?
    };
    out.emit("summary", &json!({ "pass": failures.is_empty(), "failures": failures }))?;
    out.finish()?;
    Ok(failures)
}
