//! Campaign orchestration for external SAT solver runs.
//!
//! A campaign is a family of (hull template, sub-cube) jobs over one
//! parameter pair. Jobs run as external solver processes honoring the
//! SAT-competition contract (DIMACS file argument, exit 10 = SAT with a
//! model on stdout, exit 20 = UNSAT); outcomes land in an append-only,
//! crash-tolerant ledger keyed by a job digest, so an interrupted campaign
//! resumes without re-running finished work.

pub mod config;
pub mod job;
pub mod ledger;
pub mod runner;
pub mod status;

pub use config::CampaignConfig;
pub use job::{enumerate_subcubes, Job};
pub use ledger::{append_entry, load_entries, LedgerEntry, Outcome};
pub use runner::{run_campaign, run_job, RunnerOptions};
pub use status::{status, StatusReport};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("ledger error: {0}")]
    Ledger(String),

    #[error("solver error: {0}")]
    Solver(String),

    #[error(transparent)]
    Core(#[from] kgon_core::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
