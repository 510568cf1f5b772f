//! Append-only, line-delimited campaign ledger.
//!
//! One JSON record per line. Appends are flushed whole-line; a reader skips
//! any trailing partial line (from a crash mid-write) and any corrupt line,
//! counting them as warnings, so a torn write can never masquerade as a
//! terminal outcome.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::Result;

/// Terminal outcome of one solver run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Sat,
    Unsat,
    Timeout,
    Error,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Sat => "sat",
            Outcome::Unsat => "unsat",
            Outcome::Timeout => "timeout",
            Outcome::Error => "error",
        })
    }
}

/// One terminal ledger record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    /// Job digest (identity of params + template + sub-cube + mode).
    pub job: String,
    pub n: u32,
    pub k: u32,
    pub cc5: String,
    pub layers: Option<Vec<u32>>,
    pub w: Option<Vec<u32>>,
    pub outcome: Outcome,
    pub seconds: f64,
    pub solver: String,
    pub cnf_sha256: String,
    pub proof: Option<String>,
    pub detail: Option<String>,
    pub timestamp: String,
}

/// Append one record and flush it as a whole line.
pub fn append_entry(path: &Path, entry: &LedgerEntry) -> Result<()> {
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut line = serde_json::to_string(entry)
        .map_err(|e| crate::Error::Ledger(format!("serialize: {e}")))?;
    line.push('\n');
    file.write_all(line.as_bytes())?;
    file.flush()?;
    Ok(())
}

/// Load all valid records; returns the entries and the number of skipped
/// (corrupt or partial) lines.
pub fn load_entries(path: &Path) -> Result<(Vec<LedgerEntry>, usize)> {
    if !path.exists() {
        return Ok((Vec::new(), 0));
    }
    let reader = BufReader::new(std::fs::File::open(path)?);
    let mut entries = Vec::new();
    let mut skipped = 0usize;
    for line in reader.split(b'\n') {
        let line = line?;
        if line.iter().all(|b| b.is_ascii_whitespace()) {
            continue;
        }
        match serde_json::from_slice::<LedgerEntry>(&line) {
            Ok(entry) => entries.push(entry),
            Err(_) => skipped += 1,
        }
    }
    Ok((entries, skipped))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(job: &str, outcome: Outcome, seconds: f64) -> LedgerEntry {
        LedgerEntry {
            job: job.into(),
            n: 9,
            k: 5,
            cc5: "reduced".into(),
            layers: None,
            w: None,
            outcome,
            seconds,
            solver: "stub".into(),
            cnf_sha256: "deadbeef".into(),
            proof: None,
            detail: None,
            timestamp: "2000-01-01T00:00:00Z".into(),
        }
    }

    #[test]
    fn roundtrip_and_partial_line_tolerance() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ledger.jsonl");
        append_entry(&path, &entry("a", Outcome::Unsat, 1.5)).unwrap();
        append_entry(&path, &entry("b", Outcome::Sat, 0.25)).unwrap();
        // simulate a crash mid-write: partial JSON with no newline
        {
            use std::io::Write;
            let mut f = OpenOptions::new().append(true).open(&path).unwrap();
            f.write_all(b"{\"job\":\"c\",\"n\":9").unwrap();
        }
        let (entries, skipped) = load_entries(&path).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(skipped, 1);
        assert_eq!(entries[0].job, "a");
        assert_eq!(entries[1].outcome, Outcome::Sat);
    }

    #[test]
    fn missing_ledger_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        let (entries, skipped) = load_entries(&dir.path().join("nope.jsonl")).unwrap();
        assert!(entries.is_empty());
        assert_eq!(skipped, 0);
    }
}
