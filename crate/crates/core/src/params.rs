//! Instance parameters shared by every generator block.

use crate::{Error, Result};

/// Parameters of one instance: `n` point labels, forbidden convex `k`-gon.
///
/// `k >= 5` because the exclusion block talks about 4-subsets of a k-set;
/// `k = 4` degenerates (a 4-set is its own only 4-subset) and is handled by
/// the geometry oracle alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodingParams {
    n: u32,
    k: u32,
}

impl EncodingParams {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k < 5 {
            return Err(Error::InvalidParams(format!("k must be >= 5, got {k}")));
        }
        if n < k {
            return Err(Error::InvalidParams(format!("n must be >= k, got n={n}, k={k}")));
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }
}

/// Which 5-point clause family to generate.
///
/// `Full` deduplicates the clauses arising from all 120 orderings of every
/// 5-subset. `Reduced` is the canonical 40-clause-per-5-set sub-family; the
/// dedupe oracle shows the full family already collapses to exactly those 40
/// clauses, so the two modes emit identical streams. Both are kept so the
/// manifest records which family a file was generated under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Cc5Mode {
    Full,
    #[default]
    Reduced,
}

impl Cc5Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Cc5Mode::Full => "full",
            Cc5Mode::Reduced => "reduced",
        }
    }
}

impl std::str::FromStr for Cc5Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Cc5Mode::Full),
            "reduced" => Ok(Cc5Mode::Reduced),
            other => Err(Error::Parse(format!("unknown cc5 mode {other:?}"))),
        }
    }
}
