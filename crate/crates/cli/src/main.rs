mod args;
mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use config::FileConfig;

const USAGE_ERROR: u8 = 2;

fn run(cli: &Cli) -> Result<u8, String> {
    if let Some(path) = &cli.replay {
        return commands::replay_cmd(path);
    }
    let cfg = FileConfig::load(cli.config.as_deref())?;
    let outcome = match cli.command.as_ref().ok_or("no command given (see --help)")? {
        Command::Construct(a) => {
            let poly = commands::construct_cmd(a, &cfg)?;
            let text = poly.to_json_pretty() + "\n";
            print!("{text}");
            if let Some(path) = &cli.out {
                std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            return Ok(0);
        }
        Command::Roots(a) => commands::roots_cmd(a, &cfg)?,
        Command::Audit(a) => commands::audit_cmd(a, &cfg)?,
        Command::Search(a) => commands::search_cmd(a, &cfg)?,
        Command::Replay(a) => return commands::replay_cmd(&a.file),
    };
    output::emit(&outcome, cli)?;
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}
