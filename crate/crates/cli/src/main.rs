use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use compliant_cli::{load_config, solve_to_dir, CaseArg, ConfigError, Format};

#[derive(Parser)]
#[command(
    name = "compliant",
    version,
    about = "Equilibrium poses of a spring-supported platform in contact with a surface"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one configuration and write the reports.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        case: Option<CaseArg>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, value_delimiter = ',')]
        format: Option<Vec<Format>>,
        #[arg(long)]
        tol_acc: Option<f64>,
    },
}

const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

fn main() -> ExitCode {
    let Command::Solve { config, case, out, format, tol_acc } = Cli::parse().command;
    let mut cfg = match load_config(&config) {
        Ok(c) => c,
        Err(e @ ConfigError::Io { .. }) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    if let Some(c) = case {
        cfg.case = c;
    }
    if let Some(dir) = out {
        cfg.output_dir = dir;
    }
    if let Some(f) = format {
        cfg.formats = f;
    }
    if tol_acc.is_some() {
        cfg.tol_acc = tol_acc;
    }
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_VALIDATION);
    }

    let dir = cfg.output_dir.clone();
    match solve_to_dir(&cfg, &dir) {
        Ok((report, written)) => {
            let c = report.counts;
            match report.case {
                Some(case) => println!(
                    "{case:?}: {} candidates, {} accepted, {} real ({} real accepted) in {:.3} s",
                    c.total,
                    c.accepted,
                    c.real,
                    c.real_accepted,
                    report.elapsed.as_secs_f64()
                ),
                None => println!("no contact: the free pose stays clear of the surface"),
            }
            if let Some(d) = &report.case_ii {
                if let Some(w) = &d.resultant.degree_warning {
                    eprintln!("warning: {w}");
                }
            }
            for p in written {
                println!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<compliant_core::Error>() {
                Some(core) if core.is_validation() => ExitCode::from(EXIT_VALIDATION),
                Some(_) => ExitCode::from(EXIT_NUMERICAL),
                None => ExitCode::FAILURE,
            }
        }
    }
}
