//! Command-line front end: run scenario files, or run the built-in
//! randomized self-checks.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use wallcross::report::{render_reports, Report};
use wallcross::scenario::run_scenario_str;
use wallcross::verify;
use wallcross::Error;

#[derive(Parser)]
#[command(
    name = "wallcross",
    about = "Exact generating-series calculus for curve-counting invariants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Tab-separated rows with one header line per report.
    Tsv,
    /// Structured JSON documents.
    Doc,
}

#[derive(Subcommand)]
enum Command {
    /// Execute every command in a scenario file.
    Run {
        /// Path to the scenario file.
        file: PathBuf,
        /// Write one report file per command into this directory instead of
        /// standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Run the randomized property and oracle suites.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest truncation degree used by the randomized suites.
        #[arg(long, default_value_t = 6)]
        max_d: u64,
    },
}

fn write_reports(reports: &[Report], dir: &PathBuf, format: Format) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (index, report) in reports.iter().enumerate() {
        let (ext, body) = match format {
            Format::Tsv => ("tsv", report.to_tsv()),
            Format::Doc => (
                "json",
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report.to_doc()).expect("serializable")
                ),
            ),
        };
        let name = format!("{:02}-{}.{}", index + 1, report.command, ext);
        std::fs::write(dir.join(name), body)?;
    }
    Ok(())
}

fn run_file(file: &PathBuf, out: Option<&PathBuf>, format: Format) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", file.display());
            return ExitCode::from(2);
        }
    };
    let reports = match run_scenario_str(&text) {
        Ok(reports) => reports,
        Err(Error::Parse(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    match out {
        Some(dir) => {
            if let Err(err) = write_reports(&reports, dir, format) {
                eprintln!("error: cannot write reports: {err}");
                return ExitCode::from(2);
            }
        }
        None => {
            print!("{}", render_reports(&reports, format == Format::Doc));
        }
    }
    if reports.iter().all(|r| r.ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_verify(seed: u64, max_d: u64) -> ExitCode {
    let outcomes = verify::run_all(seed, max_d);
    let mut ok = true;
    for outcome in &outcomes {
        let status = if outcome.passed { "ok" } else { "FAIL" };
        println!("{status}\t{}\t{}", outcome.name, outcome.detail);
        ok &= outcome.passed;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { file, out, format } => run_file(&file, out.as_ref(), format),
        Command::Verify { seed, max_d } => run_verify(seed, max_d),
    }
}
