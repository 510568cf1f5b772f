//! Job execution: CNF generation, solver subprocess control, resumable
//! campaign loop with a bounded worker pool.

use std::collections::HashSet;
use std::fs::File;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use kgon_core::assembly::{assign_variables, emit, Manifest};
use kgon_core::geometry::{decode_and_verify, Model, Verdict};

use crate::job::Job;
use crate::ledger::{append_entry, load_entries, LedgerEntry, Outcome};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct RunnerOptions {
    /// Solver argv prefix; the CNF path (and optionally a proof path) are
    /// appended.
    pub solver: Vec<String>,
    pub time_limit: Duration,
    pub workers: usize,
    pub cnf_dir: PathBuf,
    pub proof_dir: Option<PathBuf>,
}

fn job_stem(job: &Job) -> String {
    format!("job-{}", &job.digest()[..16])
}

/// Generate the job's CNF (and manifest) if not already on disk; returns the
/// CNF path and manifest. Generation goes through a temp file and a rename
/// so a crash never leaves a plausible-looking partial CNF behind.
pub fn ensure_cnf(job: &Job, cnf_dir: &Path) -> Result<(PathBuf, Manifest)> {
    std::fs::create_dir_all(cnf_dir)?;
    let stem = job_stem(job);
    let cnf_path = cnf_dir.join(format!("{stem}.cnf"));
    let manifest_path = cnf_dir.join(format!("{stem}.manifest.json"));
    if cnf_path.exists() && manifest_path.exists() {
        let manifest = Manifest::from_json(&std::fs::read_to_string(&manifest_path)?)?;
        return Ok((cnf_path, manifest));
    }
    let tmp_path = cnf_dir.join(format!("{stem}.cnf.tmp"));
    let file = File::create(&tmp_path)?;
    let manifest = emit(
        &job.params,
        job.mode,
        job.template.as_ref(),
        job.subcube.as_ref(),
        file,
    )
    .inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp_path);
    })?;
    std::fs::rename(&tmp_path, &cnf_path)?;
    std::fs::write(&manifest_path, manifest.to_json())?;
    Ok((cnf_path, manifest))
}

fn tail_of_file(path: &Path, max: usize) -> String {
    match std::fs::read_to_string(path) {
        Ok(s) => {
            let t = s.trim();
            if t.len() > max {
                format!("...{}", &t[t.len() - max..])
            } else {
                t.to_string()
            }
        }
        Err(_) => String::new(),
    }
}

/// Run one job to a terminal ledger entry: spawn the solver on the job's
/// DIMACS file, interpret SAT-competition exit codes (10 = SAT, 20 = UNSAT),
/// verify any SAT model, and classify everything else as timeout or error.
pub fn run_job(job: &Job, opts: &RunnerOptions) -> Result<LedgerEntry> {
    let (cnf_path, manifest) = ensure_cnf(job, &opts.cnf_dir)?;
    let stem = job_stem(job);
    let stdout_path = opts.cnf_dir.join(format!("{stem}.out"));
    let stderr_path = opts.cnf_dir.join(format!("{stem}.err"));
    let proof_path = match &opts.proof_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            Some(dir.join(format!("{stem}.drat")))
        }
        None => None,
    };

    let mut command = Command::new(&opts.solver[0]);
    command.args(&opts.solver[1..]).arg(&cnf_path);
    if let Some(p) = &proof_path {
        command.arg(p);
    }
    command
        .stdin(Stdio::null())
        .stdout(File::create(&stdout_path)?)
        .stderr(File::create(&stderr_path)?);

    let started = Instant::now();
    let mut timed_out = false;
    let status = match command.spawn() {
        Ok(mut child) => loop {
            match child.try_wait()? {
                Some(status) => break Some(status),
                None => {
                    if started.elapsed() >= opts.time_limit {
                        timed_out = true;
                        let _ = child.kill();
                        let _ = child.wait();
                        break None;
                    }
                    std::thread::sleep(Duration::from_millis(25));
                }
            }
        },
        Err(e) => {
            return Err(Error::Solver(format!(
                "failed to spawn {:?}: {e}",
                opts.solver[0]
            )))
        }
    };
    let seconds = started.elapsed().as_secs_f64();

    let (outcome, detail) = if timed_out {
        (Outcome::Timeout, None)
    } else {
        match status.and_then(|s| s.code()) {
            Some(10) => match verify_sat_model(job, &stdout_path) {
                Ok(Verdict::Pass) => (Outcome::Sat, Some("witness verified".to_string())),
                Ok(Verdict::Fail(v)) => (
                    Outcome::Error,
                    Some(format!("SAT claimed but witness rejected: {v}")),
                ),
                Err(e) => (
                    Outcome::Error,
                    Some(format!("SAT claimed but model unreadable: {e}")),
                ),
            },
            Some(20) => (Outcome::Unsat, None),
            Some(code) => (
                Outcome::Error,
                Some(format!(
                    "nonstandard exit code {code}: {}",
                    tail_of_file(&stderr_path, 300)
                )),
            ),
            None => (
                Outcome::Error,
                Some(format!(
                    "solver killed by signal: {}",
                    tail_of_file(&stderr_path, 300)
                )),
            ),
        }
    };

    let proof = match (&outcome, &proof_path) {
        (Outcome::Unsat, Some(p)) if p.exists() => Some(p.display().to_string()),
        _ => None,
    };

    Ok(LedgerEntry {
        job: job.digest(),
        n: job.params.n(),
        k: job.params.k(),
        cc5: job.mode.as_str().to_string(),
        layers: job.template.as_ref().map(|t| t.sizes().to_vec()),
        w: job.subcube.as_ref().map(|s| s.offsets().to_vec()),
        outcome,
        seconds,
        solver: opts.solver.join(" "),
        cnf_sha256: manifest.sha256,
        proof,
        detail,
        timestamp: chrono::Utc::now().to_rfc3339(),
    })
}

fn verify_sat_model(job: &Job, stdout_path: &Path) -> kgon_core::Result<Verdict> {
    let text = std::fs::read_to_string(stdout_path)?;
    let numbering = assign_variables(&job.params)?;
    let model = Model::parse_solver_output(&text, numbering.total_vars())?;
    decode_and_verify(&model, &job.params)
}

/// Summary of one campaign invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignSummary {
    /// Jobs executed this invocation.
    pub ran: usize,
    /// Jobs skipped because the ledger already holds a terminal entry.
    pub already_terminal: usize,
    /// Corrupt ledger lines tolerated while loading.
    pub corrupt_lines: usize,
}

/// Run all pending jobs with a bounded worker pool, appending terminal
/// entries to the ledger as they arrive. Jobs whose digest already has a
/// terminal entry are never re-run. `cancel` stops the pool gracefully:
/// in-flight jobs finish and are recorded, queued jobs stay pending.
/// `progress` sees each entry after it is durably appended.
pub fn run_campaign(
    jobs: &[Job],
    opts: &RunnerOptions,
    ledger_path: &Path,
    cancel: &AtomicBool,
    mut progress: impl FnMut(&LedgerEntry),
) -> Result<CampaignSummary> {
    let (existing, corrupt_lines) = load_entries(ledger_path)?;
    let mut terminal: HashSet<String> = existing.into_iter().map(|e| e.job).collect();

    let mut pending: Vec<Job> = Vec::new();
    let mut queued: HashSet<String> = HashSet::new();
    for job in jobs {
        let digest = job.digest();
        if terminal.contains(&digest) || !queued.insert(digest) {
            continue;
        }
        pending.push(job.clone());
    }
    let already_terminal = jobs.len() - pending.len();

    let queue: Mutex<std::collections::VecDeque<Job>> = Mutex::new(pending.into_iter().collect());
    let (sender, receiver) = mpsc::channel::<Result<LedgerEntry>>();

    let mut ran = 0usize;
    std::thread::scope(|scope| -> Result<()> {
        for _ in 0..opts.workers.max(1) {
            let sender = sender.clone();
            let queue = &queue;
            scope.spawn(move || loop {
                if cancel.load(Ordering::SeqCst) {
                    break;
                }
                let job = match queue.lock().expect("queue lock").pop_front() {
                    Some(job) => job,
                    None => break,
                };
                let result = run_job(&job, opts);
                if sender.send(result).is_err() {
                    break;
                }
            });
        }
        drop(sender);

        for result in receiver {
            let entry = result?;
            // one terminal entry per job digest, ever
            if terminal.insert(entry.job.clone()) {
                append_entry(ledger_path, &entry)?;
                ran += 1;
                progress(&entry);
            }
        }
        Ok(())
    })?;

    Ok(CampaignSummary {
        ran,
        already_terminal,
        corrupt_lines,
    })
}
