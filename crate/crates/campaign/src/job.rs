//! Job identity and sub-cube enumeration.

use sha2::{Digest, Sha256};

use kgon_core::hull::{HullTemplate, SubCube};
use kgon_core::{Cc5Mode, EncodingParams};

use crate::{Error, Result};

/// One solver run: an instance (params, template, sub-cube, cc5 mode) to
/// generate and solve. Identity is the digest of everything that determines
/// the CNF.
#[derive(Debug, Clone)]
pub struct Job {
    pub params: EncodingParams,
    pub mode: Cc5Mode,
    pub template: Option<HullTemplate>,
    pub subcube: Option<SubCube>,
}

impl Job {
    pub fn new(
        params: EncodingParams,
        mode: Cc5Mode,
        template: Option<HullTemplate>,
        subcube: Option<SubCube>,
    ) -> Result<Self> {
        if let Some(t) = &template {
            t.validate_for(params.n())?;
        }
        if subcube.is_some() && template.is_none() {
            return Err(Error::Config("a sub-cube requires a hull template".into()));
        }
        Ok(Self {
            params,
            mode,
            template,
            subcube,
        })
    }

    /// Canonical identity string: everything that determines the instance.
    pub fn identity(&self) -> String {
        let mut s = format!(
            "n={};k={};cc5={}",
            self.params.n(),
            self.params.k(),
            self.mode.as_str()
        );
        if let Some(t) = &self.template {
            s.push_str(&format!(";h={t}"));
        }
        if let Some(w) = &self.subcube {
            s.push_str(&format!(";w={w}"));
        }
        s
    }

    /// Hex digest of the identity string, the ledger key.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.identity().as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Expand per-layer allowed offsets into the deduplicated Cartesian product
/// of sub-cubes, in lexicographic order. Layer 0 is always pinned to offset
/// 0 regardless of its spec entry.
pub fn enumerate_subcubes(
    template: &HullTemplate,
    allowed: &[Vec<u32>],
) -> Result<Vec<SubCube>> {
    if allowed.len() != template.layer_count() {
        return Err(Error::Config(format!(
            "offset spec has {} layers, template has {}",
            allowed.len(),
            template.layer_count()
        )));
    }
    let mut choices: Vec<Vec<u32>> = Vec::with_capacity(allowed.len());
    for (i, (list, &h)) in allowed.iter().zip(template.sizes()).enumerate() {
        if i == 0 {
            choices.push(vec![0]);
            continue;
        }
        let mut list = list.clone();
        list.sort_unstable();
        list.dedup();
        if list.is_empty() {
            return Err(Error::Config(format!("layer {i} allows no offsets")));
        }
        if let Some(&bad) = list.iter().find(|&&w| w >= h) {
            return Err(Error::Config(format!(
                "offset {bad} out of range for layer {i} of size {h}"
            )));
        }
        choices.push(list);
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; choices.len()];
    expand(&choices, 0, &mut current, template, &mut out)?;
    Ok(out)
}

fn expand(
    choices: &[Vec<u32>],
    depth: usize,
    current: &mut Vec<u32>,
    template: &HullTemplate,
    out: &mut Vec<SubCube>,
) -> Result<()> {
    if depth == choices.len() {
        out.push(SubCube::new(current.clone(), template)?);
        return Ok(());
    }
    for &w in &choices[depth] {
        current[depth] = w;
        expand(choices, depth + 1, current, template, out)?;
    }
    Ok(())
}

/// Allowed-offset spec meaning "every offset of every layer past the first".
pub fn all_offsets(template: &HullTemplate) -> Vec<Vec<u32>> {
    template
        .sizes()
        .iter()
        .enumerate()
        .map(|(i, &h)| if i == 0 { vec![0] } else { (0..h).collect() })
        .collect()
}
