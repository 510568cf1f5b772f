//! Ledger summaries: a per-job table plus aggregates, with heavy-tail
//! flagging of template families whose runtimes spread widely.

use std::collections::BTreeMap;

use crate::ledger::{LedgerEntry, Outcome};

/// Families whose max/min decided-runtime ratio reaches this are flagged.
pub const HEAVY_TAIL_RATIO: f64 = 100.0;

#[derive(Debug, Clone, PartialEq)]
pub struct StatusReport {
    /// All valid entries, in ledger order.
    pub rows: Vec<LedgerEntry>,
    /// Count per terminal state.
    pub by_outcome: BTreeMap<String, usize>,
    /// Min/max/median wall-clock seconds over decided (sat/unsat) runs.
    pub min_seconds: f64,
    pub max_seconds: f64,
    pub median_seconds: f64,
    /// (family key, max/min ratio) for families over [`HEAVY_TAIL_RATIO`].
    pub heavy_tails: Vec<(String, f64)>,
    /// Corrupt lines skipped when the ledger was loaded.
    pub corrupt_lines: usize,
}

fn family_key(entry: &LedgerEntry) -> String {
    match &entry.layers {
        Some(layers) => layers
            .iter()
            .map(|h| h.to_string())
            .collect::<Vec<_>>()
            .join(","),
        None => "(no template)".to_string(),
    }
}

/// Summarize ledger entries.
pub fn status(entries: &[LedgerEntry], corrupt_lines: usize) -> StatusReport {
    let mut by_outcome = BTreeMap::new();
    for outcome in ["sat", "unsat", "timeout", "error"] {
        by_outcome.insert(outcome.to_string(), 0usize);
    }
    let mut decided_seconds: Vec<f64> = Vec::new();
    let mut families: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for entry in entries {
        *by_outcome.entry(entry.outcome.to_string()).or_insert(0) += 1;
        if matches!(entry.outcome, Outcome::Sat | Outcome::Unsat) {
            decided_seconds.push(entry.seconds);
            families.entry(family_key(entry)).or_default().push(entry.seconds);
        }
    }
    decided_seconds.sort_by(|a, b| a.total_cmp(b));
    let (min_seconds, max_seconds, median_seconds) = if decided_seconds.is_empty() {
        (0.0, 0.0, 0.0)
    } else {
        let mid = decided_seconds.len() / 2;
        let median = if decided_seconds.len() % 2 == 1 {
            decided_seconds[mid]
        } else {
            (decided_seconds[mid - 1] + decided_seconds[mid]) / 2.0
        };
        (
            decided_seconds[0],
            decided_seconds[decided_seconds.len() - 1],
            median,
        )
    };
    let mut heavy_tails = Vec::new();
    for (key, mut secs) in families {
        secs.sort_by(|a, b| a.total_cmp(b));
        let (lo, hi) = (secs[0], secs[secs.len() - 1]);
        if lo > 0.0 && hi / lo >= HEAVY_TAIL_RATIO {
            heavy_tails.push((key, hi / lo));
        }
    }
    StatusReport {
        rows: entries.to_vec(),
        by_outcome,
        min_seconds,
        max_seconds,
        median_seconds,
        heavy_tails,
        corrupt_lines,
    }
}

impl std::fmt::Display for StatusReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "{:<24} {:<22} {:<8} {:>12}  {}",
            "layers", "w", "outcome", "seconds", "solver"
        )?;
        for row in &self.rows {
            let layers = family_key(row);
            let w = match &row.w {
                Some(w) => w
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                None => "-".to_string(),
            };
            writeln!(
                f,
                "{:<24} {:<22} {:<8} {:>12.2}  {}",
                layers, w, row.outcome, row.seconds, row.solver
            )?;
        }
        writeln!(f)?;
        let counts: Vec<String> = self
            .by_outcome
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        writeln!(f, "outcomes: {}", counts.join(" "))?;
        writeln!(
            f,
            "decided seconds: min={:.2} median={:.2} max={:.2}",
            self.min_seconds, self.median_seconds, self.max_seconds
        )?;
        for (family, ratio) in &self.heavy_tails {
            writeln!(
                f,
                "heavy tail: family [{family}] max/min ratio {ratio:.0} (>= {HEAVY_TAIL_RATIO:.0})"
            )?;
        }
        if self.corrupt_lines > 0 {
            writeln!(f, "warning: skipped {} corrupt ledger line(s)", self.corrupt_lines)?;
        }
        Ok(())
    }
}
