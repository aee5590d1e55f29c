//! `bodylink` command-line front end.

mod args;
mod commands;
mod output;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::Cli;

fn error_line(kind: &str, message: &str) {
    let line = json!({"error": kind, "message": message.trim_end()});
    eprintln!("{line}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or_default();
            error_line("usage", first.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };

    let text = match commands::run(&cli) {
        Ok(text) => text,
        Err(e) => {
            error_line(e.kind(), &e.to_string());
            return ExitCode::from(e.exit_code());
        }
    };

    let written = match &cli.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            error_line("io", &message);
            ExitCode::from(1)
        }
    }
}
