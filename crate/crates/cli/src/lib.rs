//! Command-line front end. [`run`] parses arguments, runs one subcommand and
//! returns the exit code with everything that would be printed, so the
//! binary and the tests share one code path.

mod args;
mod cert;
mod commands;
mod input;

pub use args::{Cli, Command, DecomposeKind, Global};
pub use cert::{check_decomposition, Certificate, HfQuery};

use clap::Parser;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub seed: u64,
    pub trials: usize,
    pub height_bound: u64,
    /// Echoed only: every computation here is exact.
    pub precision: u32,
}

/// Everything a run emits in machine form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Arguments after the program name.
    pub command: Vec<String>,
    pub config: Config,
    pub result: serde_json::Value,
    pub certificates: Vec<Certificate>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

/// Runs the CLI on `argv`, whose first element is the program name.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr, report: None };
        }
    };
    let g = cli.global.clone();
    let out = match commands::dispatch(cli.command, &g) {
        Ok(o) => o,
        Err(e) => {
            return Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
                report: None,
            }
        }
    };
    let report = Report {
        command: argv.iter().skip(1).cloned().collect(),
        config: Config { seed: g.seed, trials: g.trials, height_bound: g.height_bound, precision: g.precision },
        result: out.result,
        certificates: out.certificates,
    };
    let json = serde_json::to_string_pretty(&report).expect("serializable");
    if let Some(path) = &g.out {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: cannot write {path}: {e}\n"),
                report: Some(report),
            };
        }
    }
    let mut stdout = String::new();
    if !g.json_only {
        for line in &out.summary {
            stdout.push_str(line);
            stdout.push('\n');
        }
        stdout.push('\n');
    }
    stdout.push_str(&json);
    stdout.push('\n');
    Outcome { code: 0, stdout, stderr: String::new(), report: Some(report) }
}
