use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use nlie_cli::commands::{cmd_cohomology, cmd_deform, cmd_lift, cmd_verify, DeformAction, Target};
use nlie_cli::problem::ProblemFile;
use nlie_cli::report::Report;

#[derive(Parser)]
#[command(name = "nlie", version, about = "Exact checks for n-Lie algebras, representations and Rota-Baxter operators")]
struct Cli {
    /// Print the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every structure present in the problem file.
    Verify { file: PathBuf },
    /// Cohomology dimensions up to degree K.
    Cohomology {
        file: PathBuf,
        #[arg(long = "max-m", default_value_t = 2)]
        max_m: usize,
        #[arg(long, value_enum, default_value_t = TargetArg::Pair)]
        target: TargetArg,
    },
    /// Formal deformations of the operator T.
    Deform {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ActionArg::Check)]
        action: ActionArg,
    },
    /// Lift to arity n+1 along the functional f.
    Lift {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Pair,
    Operator,
}

#[derive(Clone, Copy, ValueEnum)]
enum ActionArg {
    Check,
    Extend,
    Equivalence,
}

fn run(cli: &Cli) -> nlie_core::Result<Report> {
    let start = Instant::now();
    let file_path = match &cli.command {
        Command::Verify { file } | Command::Cohomology { file, .. } | Command::Deform { file, .. } | Command::Lift { file, .. } => file,
    };
    let file = ProblemFile::read(file_path).map_err(|e| match e {
        nlie_core::Error::Io(io) => nlie_core::Error::Io(std::io::Error::new(io.kind(), format!("{}: {io}", file_path.display()))),
        other => other,
    })?;
    let parsed = start.elapsed();
    let mut report = match &cli.command {
        Command::Verify { .. } => cmd_verify(&file)?,
        Command::Cohomology { max_m, target, .. } => {
            let target = match target {
                TargetArg::Pair => Target::Pair,
                TargetArg::Operator => Target::Operator,
            };
            cmd_cohomology(&file, *max_m, target)?
        }
        Command::Deform { action, .. } => {
            let action = match action {
                ActionArg::Check => DeformAction::Check,
                ActionArg::Extend => DeformAction::Extend,
                ActionArg::Equivalence => DeformAction::Equivalence,
            };
            cmd_deform(&file, action)?
        }
        Command::Lift { out, .. } => {
            let (mut report, lifted) = cmd_lift(&file)?;
            if let (Some(path), Some(lifted)) = (out, lifted) {
                std::fs::write(path, lifted.to_json())?;
                report.set("written", path.display().to_string());
            }
            report
        }
    };
    if cli.timings {
        let mut t = BTreeMap::new();
        t.insert("parse".to_string(), parsed.as_millis() as u64);
        t.insert("total".to_string(), start.elapsed().as_millis() as u64);
        report.timings_ms = Some(t);
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
