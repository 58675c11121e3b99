//! `advrisk`: exit code 0 on success, 1 on input errors, 2 when an internal
//! invariant fails (including any `verify` violation).

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use advrisk::oracles::CheckOutcome;
use advrisk::report::RiskReport;
use clap::Parser;

use args::{Cli, Command, Format, OutputArgs};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        Self::Input(msg.into())
    }
}

impl From<advrisk::Error> for CliError {
    fn from(e: advrisk::Error) -> Self {
        Self::Input(e.to_string())
    }
}

/// Methods whose `risk` column is a balanced 0-1 risk or a bound on one.
const ZERO_ONE: [&str; 4] = ["exact-empirical", "mixture-bound", "wp-bound", "classifier-risk"];

fn check_ranges(report: &RiskReport) -> Result<(), CliError> {
    for r in &report.rows {
        let zero_one = ZERO_ONE.contains(&r.method.as_str()) || r.method.starts_with("analytic-");
        if let (true, Some(risk)) = (zero_one, r.risk) {
            if !(-1e-9..=0.5 + 1e-9).contains(&risk) {
                return Err(CliError::Internal(format!("{} at eps {}: risk {risk} outside [0, 1/2]", r.method, r.eps)));
            }
        }
    }
    Ok(())
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Input(format!("cannot write output: {e}"));
    match out {
        Some(path) => std::fs::write(path, text).map_err(io),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(io),
    }
}

fn write_report(report: &RiskReport, output: &OutputArgs) -> Result<(), CliError> {
    check_ranges(report)?;
    let text = match output.format {
        Format::Csv => report.to_csv()?,
        Format::Json => report.to_json()? + "\n",
    };
    emit(&text, output.out.as_deref())
}

fn write_checks(checks: &[CheckOutcome], format: Format) -> Result<(), CliError> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(checks).map_err(|e| CliError::Internal(e.to_string()))? + "\n",
        Format::Csv => {
            let mut s = String::from("check,instances,failures,max_error,tolerance,status\n");
            for c in checks {
                let status = if c.passed() { "pass" } else { "FAIL" };
                s += &format!(
                    "\"{}\",{},{},{:e},{:e},{status}\n",
                    c.name, c.instances, c.failures, c.max_error, c.tolerance
                );
            }
            s
        }
    };
    emit(&text, None)?;
    let failed: Vec<&CheckOutcome> = checks.iter().filter(|c| !c.passed()).collect();
    if failed.is_empty() {
        return Ok(());
    }
    let first = failed.iter().filter_map(|c| c.first_failure.as_deref()).next().unwrap_or("");
    Err(CliError::Internal(format!("{} check(s) failed; first: {first}", failed.len())))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Exact(a) => write_report(&commands::exact(a, cli.jobs)?, &a.output),
        Command::Analytic(a) => {
            let (report, output) = commands::analytic(&a.family, cli.jobs)?;
            write_report(&report, output)
        }
        Command::Mixture(a) => write_report(&commands::mixture(a, cli.jobs)?, &a.output),
        Command::Wp(a) => write_report(&commands::wp(a)?, &a.output),
        Command::Lossbounds(a) => write_report(&commands::lossbounds(a)?, &a.output),
        Command::Riskof(a) => write_report(&commands::riskof(a)?, &a.output),
        Command::Verify(a) => write_checks(&commands::verify(a)?, a.format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
