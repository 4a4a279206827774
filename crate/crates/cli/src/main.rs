use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use learnability_cli::{report_dir, run_command, Command};

/// Dimensions, online learners, stability and private learning over finite
/// classes. Exits 0 iff every verdict passes.
#[derive(Debug, Parser)]
#[command(name = "learnability", version)]
struct Cli {
    /// Report directory; overrides $LEARNABILITY_REPORT_DIR.
    #[arg(long, global = true)]
    report_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run_command(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let dir = report_dir(cli.report_dir.as_deref());
    match report.write(&dir) {
        Ok(path) => eprintln!("report: {}", path.display()),
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    }
    print!("{}", report.summary());
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
