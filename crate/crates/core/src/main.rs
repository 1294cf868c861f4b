use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use pimsner_lab::cli::{run_text, Command, Overrides};

/// Reduce, classify and verify finite-dimensional C*-dynamical systems.
#[derive(Parser)]
#[command(name = "pimsner-lab", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    specfile: PathBuf,
    /// Tolerance for the residual checks.
    #[arg(long)]
    tol: Option<f64>,
    /// Fock truncation level N.
    #[arg(long)]
    levels: Option<usize>,
    /// Amplification width L.
    #[arg(long)]
    amp: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the machine-readable report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let text = match std::fs::read_to_string(&args.specfile) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.specfile.display());
            return ExitCode::from(2);
        }
    };
    if args.tol.is_some_and(|t| !(t > 0.0 && t.is_finite())) {
        eprintln!("error: --tol must be a positive number");
        return ExitCode::from(2);
    }
    if args.levels == Some(0) {
        eprintln!("error: --levels must be at least 1");
        return ExitCode::from(2);
    }
    let over = Overrides {
        tol: args.tol,
        levels: args.levels,
        amp: args.amp,
        seed: args.seed,
    };
    let outcome = run_text(args.command, &text, &over);
    print!("{}", outcome.report.human());
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, outcome.report.machine()) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.report.machine()),
    }
    ExitCode::from(outcome.exit_code as u8)
}
