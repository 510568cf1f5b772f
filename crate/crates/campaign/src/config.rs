//! Campaign configuration file (TOML).
//!
//! ```toml
//! n = 33
//! k = 7
//! cc5 = "reduced"
//! solver = ["kissat", "--quiet"]
//! time_limit_secs = 3600
//! workers = 4
//! cnf_dir = "cnf"
//! proof_dir = "proofs"      # optional: pass a DRAT path as a second argument
//! ledger = "ledger.jsonl"
//!
//! [[family]]
//! layers = [5, 5, 5, 5, 5, 5]
//! w = [[0], [4], [4], [4], [4], [4]]   # allowed offsets per layer
//!
//! [[family]]
//! layers = [3, 3, 4, 3, 3, 6, 6, 5]
//! w = "all"                            # full offset product past layer 0
//!
//! [[family]]
//! layers = [6, 6, 6, 3, 6, 6]          # no w: run the template alone
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use kgon_core::hull::HullTemplate;
use kgon_core::{Cc5Mode, EncodingParams};

use crate::job::{all_offsets, enumerate_subcubes, Job};
use crate::{Error, Result};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub n: u32,
    pub k: u32,
    #[serde(default = "default_cc5")]
    pub cc5: String,
    pub solver: Vec<String>,
    pub time_limit_secs: u64,
    #[serde(default = "default_workers")]
    pub workers: usize,
    pub cnf_dir: PathBuf,
    #[serde(default)]
    pub proof_dir: Option<PathBuf>,
    #[serde(default = "default_ledger")]
    pub ledger: PathBuf,
    #[serde(rename = "family")]
    pub families: Vec<FamilyConfig>,
}

fn default_cc5() -> String {
    "reduced".into()
}

fn default_workers() -> usize {
    1
}

fn default_ledger() -> PathBuf {
    PathBuf::from("ledger.jsonl")
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    pub layers: Vec<u32>,
    #[serde(default)]
    pub w: Option<OffsetSpec>,
}

/// Per-family sub-cube spec: `"all"` or explicit per-layer offset lists.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OffsetSpec {
    Keyword(String),
    PerLayer(Vec<Vec<u32>>),
}

impl CampaignConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let config: CampaignConfig =
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        if config.solver.is_empty() {
            return Err(Error::Config("solver command is empty".into()));
        }
        if config.workers == 0 {
            return Err(Error::Config("workers must be >= 1".into()));
        }
        if config.families.is_empty() {
            return Err(Error::Config("no [[family]] entries".into()));
        }
        Ok(config)
    }

    pub fn params(&self) -> Result<EncodingParams> {
        Ok(EncodingParams::new(self.n, self.k)?)
    }

    pub fn mode(&self) -> Result<Cc5Mode> {
        Ok(self.cc5.parse::<Cc5Mode>()?)
    }

    /// Expand every family into its job list, deterministically ordered.
    pub fn jobs(&self) -> Result<Vec<Job>> {
        let params = self.params()?;
        let mode = self.mode()?;
        let mut jobs = Vec::new();
        for family in &self.families {
            let template = HullTemplate::new(family.layers.clone())?;
            template.validate_for(params.n())?;
            match &family.w {
                None => jobs.push(Job::new(params, mode, Some(template), None)?),
                Some(OffsetSpec::Keyword(word)) if word == "all" => {
                    let spec = all_offsets(&template);
                    for cube in enumerate_subcubes(&template, &spec)? {
                        jobs.push(Job::new(params, mode, Some(template.clone()), Some(cube))?);
                    }
                }
                Some(OffsetSpec::Keyword(word)) => {
                    return Err(Error::Config(format!(
                        "unknown w spec {word:?}; expected \"all\" or per-layer lists"
                    )))
                }
                Some(OffsetSpec::PerLayer(spec)) => {
                    for cube in enumerate_subcubes(&template, spec)? {
                        jobs.push(Job::new(params, mode, Some(template.clone()), Some(cube))?);
                    }
                }
            }
        }
        Ok(jobs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn parse_and_expand() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("campaign.toml");
        let mut f = std::fs::File::create(&path).unwrap();
        write!(
            f,
            r#"
n = 33
k = 7
solver = ["true"]
time_limit_secs = 60
workers = 2
cnf_dir = "cnf"

[[family]]
layers = [5, 5, 5, 5, 5, 5]
w = [[0], [4], [4], [4], [4], [4]]

[[family]]
layers = [4, 4]
w = "all"

[[family]]
layers = [6, 6, 6, 3, 6, 6]
"#
        )
        .unwrap();
        let config = CampaignConfig::load(&path).unwrap();
        assert_eq!(config.cc5, "reduced");
        let jobs = config.jobs().unwrap();
        // 1 fixed sub-cube + 4 offsets for the second layer of [4,4] + 1 bare template
        assert_eq!(jobs.len(), 1 + 4 + 1);
        // all digests distinct
        let mut digests: Vec<String> = jobs.iter().map(|j| j.digest()).collect();
        digests.sort();
        digests.dedup();
        assert_eq!(digests.len(), 6);
    }

    #[test]
    fn rejects_empty_solver() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.toml");
        std::fs::write(
            &path,
            "n = 9\nk = 5\nsolver = []\ntime_limit_secs = 1\ncnf_dir = \"c\"\n[[family]]\nlayers = [3]\n",
        )
        .unwrap();
        assert!(CampaignConfig::load(&path).is_err());
    }
}
