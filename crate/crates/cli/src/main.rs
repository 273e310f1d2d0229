//! `eda`: command-line front end for `eda-core`.
//!
//! Exit status: 0 success, 2 usage or input error, 3 a churn-report
//! finding failed.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;

const EXIT_INPUT: u8 = 2;
const EXIT_FINDINGS: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Describe(a) => commands::describe(a),
        Command::Clean(a) => commands::clean(a),
        Command::Corr(a) => commands::corr(a),
        Command::Cluster(a) => commands::cluster(a, cli.seed),
        Command::Pca(a) => commands::pca(a),
        Command::Timeseries(a) => commands::timeseries(a),
        Command::Plot(a) => commands::plot(a),
        Command::ChurnReport(a) => commands::churn_report(a),
    };
    match result {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::FindingsFailed) => ExitCode::from(EXIT_FINDINGS),
        Err(e) => {
            eprintln!("error: {}", error_chain(&e));
            ExitCode::from(EXIT_INPUT)
        }
    }
}

/// Joins the causes, skipping any already quoted by an outer message.
fn error_chain(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain().map(|c| c.to_string()) {
        if !out.contains(&cause) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&cause);
        }
    }
    out
}
