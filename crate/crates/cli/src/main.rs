//! `tdl`: weight spectra of ternary trace codes, their shortened and
//! punctured codes, and verification of the designs they support.

mod commands;
mod config;
mod report;

use std::process::ExitCode;

use clap::Parser;

use config::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(passed) => ExitCode::from(if passed { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let config = cli.config()?;
    let report = commands::run(&config).map_err(|e| e.to_string())?;
    let rendered = report.render(config.format);
    match &config.out {
        Some(path) => std::fs::write(path, rendered).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{rendered}"),
    }
    let failing = report.failing();
    if !failing.is_empty() {
        eprintln!("failed checks: {}", failing.join(", "));
    }
    Ok(failing.is_empty())
}
