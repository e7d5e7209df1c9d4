//! Command-line front end: singularity constants, limit-law tables,
//! seeded simulations and the verification checks.
//!
//! Exit codes: 0 success, 1 verification or cross-check failure, 2 usage
//! error, 3 numeric failure.

pub mod args;
pub mod commands;
pub mod dist;
pub mod report;
pub mod verify;

use std::io::Write;

use args::{Cli, Command};
use report::Cell;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(tridiag_spectra::Error),
    #[error("cross-check failed: {0}")]
    Inconsistent(String),
    #[error("{0} verification check(s) failed")]
    VerifyFailed(usize),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl From<tridiag_spectra::Error> for CliError {
    fn from(e: tridiag_spectra::Error) -> Self {
        use tridiag_spectra::Error as E;
        match e {
            E::InvalidConfig(_) | E::InvalidOrder(_) | E::OrderTooLarge { .. } | E::InvalidTolerance(_) => {
                CliError::Usage(e.to_string())
            }
            E::InternalInconsistency(msg) => CliError::Inconsistent(msg),
            other => CliError::Numeric(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Inconsistent(_) | CliError::VerifyFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 3,
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Constants(a) => commands::constants(&a)?.emit(a.output.format, a.output.out.as_deref()),
        Command::LimitCdf(a) => {
            let report = commands::limit_cdf(&a)?;
            report.emit(a.output.format, a.output.out.as_deref())?;
            let failed = report
                .table
                .column("status")
                .into_iter()
                .flatten()
                .find_map(|c| match c {
                    Cell::Text(s) if s.starts_with("error") => Some(s.clone()),
                    _ => None,
                });
            match failed {
                Some(msg) => Err(CliError::Numeric(tridiag_spectra::Error::Domain(msg))),
                None => Ok(()),
            }
        }
        Command::Simulate(a) => commands::simulate(&a)?.emit(a.output.format, a.output.out.as_deref()),
        Command::Verify(a) => {
            let mut stdout = std::io::stdout();
            let outcomes = verify::run_level(a.level, a.threads, |o| {
                let _ = writeln!(stdout, "{}", o.line());
            });
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            writeln!(stdout, "{} check(s), {failed} failed", outcomes.len())?;
            if failed > 0 {
                Err(CliError::VerifyFailed(failed))
            } else {
                Ok(())
            }
        }
    }
}
