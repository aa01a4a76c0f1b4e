use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qnsch::bench::{self, RunConfig};
use qnsch::scheme::SchemeKind;
use qnsch::Result;

/// Quasi-incompressible Navier-Stokes-Cahn-Hilliard benchmark driver.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configured benchmark and write its time series.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Override the configured scheme (primitive or projection).
        #[arg(long)]
        scheme: Option<SchemeKind>,
        /// Override the configured output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cauchy convergence study over `levels` refinements.
    Converge {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[arg(long)]
        scheme: Option<SchemeKind>,
    },
    /// Operator identity suite.
    Selftest {
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

fn load(path: &PathBuf, scheme: Option<SchemeKind>) -> Result<RunConfig> {
    let mut cfg = RunConfig::load(path)?;
    if let Some(s) = scheme {
        cfg.scheme = s;
        cfg.validate()?;
    }
    Ok(cfg)
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { config, scheme, out } => {
            let cfg = load(&config, scheme)?;
            let s = bench::run(&cfg, out.as_deref())?;
            let last = s.reports.last().expect("at least the initial row");
            println!(
                "t={} steps={} max_cycles={} energy={:.6e} mass={:.12e} wall={:.1}s csv={}",
                last.time,
                s.reports.len() - 1,
                s.max_cycles,
                last.energy,
                last.mass_rho,
                s.wall_seconds,
                s.csv.display()
            );
            Ok(true)
        }
        Command::Converge { config, levels, scheme } => {
            let cfg = load(&config, scheme)?;
            print!("{}", bench::converge(&cfg, levels)?);
            Ok(true)
        }
        Command::Selftest { tol } => {
            let r = bench::selftest();
            for (name, v) in r.by_identity() {
                let flag = if v <= tol { "ok" } else { "FAIL" };
                println!("{name:<26} {v:.3e} {flag}");
            }
            println!("max violation {:.3e}", r.max_violation());
            Ok(r.passed(tol))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
