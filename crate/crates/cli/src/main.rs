//! `slopestab` command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or output
//! cannot be written, 2 for usage errors.

mod cone;
mod encode;
mod params;
mod reports;
mod suites;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use params::{Params, UsageError};

#[derive(Parser, Debug)]
#[command(name = "slopestab", version, about = "Exact slope-stability checks for CxC and Kodaira fibrations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite and report each check.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        params: Params,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
    /// Compute an instability window.
    Window {
        #[arg(value_enum)]
        target: WindowTarget,
        #[command(flatten)]
        params: Params,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Write the ample cone section of CxC as CSV.
    Cone {
        #[command(flatten)]
        params: Params,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump intersection numbers, slopes, bounds and verdicts.
    Report {
        #[arg(value_enum, default_value_t = ReportTarget::Product)]
        target: ReportTarget,
        #[command(flatten)]
        params: Params,
        #[arg(long, value_enum, default_value_t = DocFormat::Json)]
        format: DocFormat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Product,
    Kodaira,
    Jflow,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WindowTarget {
    #[value(name = "product_c")]
    ProductC,
    #[value(name = "product_s")]
    ProductS,
    #[value(name = "x2_c")]
    X2C,
}

impl WindowTarget {
    fn name(self) -> &'static str {
        match self {
            WindowTarget::ProductC => "product_c",
            WindowTarget::ProductS => "product_s",
            WindowTarget::X2C => "x2_c",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportTarget {
    Product,
    Kodaira,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DocFormat {
    Json,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

fn write_out(text: &str) -> anyhow::Result<()> {
    let mut stdout = io::stdout().lock();
    stdout.write_all(text.as_bytes()).context("writing to standard output")?;
    stdout.flush().context("writing to standard output")
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Verify { suite, params, format } => {
            let results = suites::run(suite, &params)?;
            let pass = results.iter().all(|r| r.pass());
            let text = match format {
                DocFormat::Json => encode::pretty(&suites::to_json(&results)),
                DocFormat::Markdown => suites::to_markdown(&results),
            };
            write_out(&text)?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Window { target, params, format } => {
            let window = reports::window(target, &params)?;
            let text = match format {
                TableFormat::Json => encode::pretty(&encode::window_document(target.name(), &window)),
                TableFormat::Csv => encode::window_csv(&window)?,
            };
            write_out(&text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Cone { params, out } => {
            let section = cone::section(&params)?;
            match out {
                Some(path) => {
                    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                    cone::write_csv(&section, file).with_context(|| format!("writing {}", path.display()))?;
                }
                None => cone::write_csv(&section, io::stdout().lock()).context("writing to standard output")?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { target, params, format } => {
            let doc = match target {
                ReportTarget::Product => reports::product(&params)?,
                ReportTarget::Kodaira => reports::kodaira(&params)?,
            };
            let text = match format {
                DocFormat::Json => encode::pretty(&doc),
                DocFormat::Markdown => reports::to_markdown(&doc),
            };
            write_out(&text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
