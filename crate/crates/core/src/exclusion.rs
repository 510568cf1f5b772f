//! One clause per k-set: some 4-subset is non-convex.
//!
//! A set in general position is in convex position exactly when all of its
//! 4-point subsets are. Contrapositively, a k-set is *not* a convex k-gon
//! exactly when at least one of its 4-subsets realizes a non-convex pattern,
//! which is a single positive disjunction over selector variables:
//! `C(k,4) * 8` literals per k-set (280 at k=7).

use crate::assembly::VarNumbering;
use crate::combinatorics::{binomial, Combinations, SubsetRanker};
use crate::fourset::{FIRST_NONCONVEX, NONCONVEX_PATTERN_COUNT, PATTERN_COUNT};
use crate::geometry::{convex_position, PointSet};
use crate::orientation::SignedLiteral;
use crate::{Error, Result};

/// A k-subset of labels in ascending order, with its lexicographic rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSet {
    labels: Vec<u32>,
    rank: u64,
}

impl KSet {
    pub fn new(labels: Vec<u32>, n: u32) -> Result<Self> {
        if labels.is_empty() || !labels.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::DegenerateTuple(labels));
        }
        if *labels.last().unwrap() >= n {
            return Err(Error::DegenerateTuple(labels));
        }
        let rank = lex_rank(&labels, n);
        Ok(Self { labels, rank })
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }
}

/// Lexicographic rank of an ascending subset among all same-size subsets.
fn lex_rank(labels: &[u32], n: u32) -> u64 {
    let m = labels.len() as u64;
    let mut rank = 0u64;
    let mut prev: i64 = -1;
    for (pos, &label) in labels.iter().enumerate() {
        let remaining = m - pos as u64 - 1;
        for skipped in (prev + 1) as u64..label as u64 {
            rank += binomial(n as u64 - 1 - skipped, remaining);
        }
        prev = label as i64;
    }
    rank
}

/// Clause length for a given k.
pub fn exclusion_clause_len(k: u32) -> u64 {
    binomial(k as u64, 4) * NONCONVEX_PATTERN_COUNT as u64
}

/// Analytic clause count of the block.
pub fn exclusion_block_count(n: u32, k: u32) -> u64 {
    binomial(n as u64, k as u64)
}

fn fill_exclusion_literals(
    labels: &[u32],
    numbering: &VarNumbering,
    ranker: &SubsetRanker,
    out: &mut Vec<SignedLiteral>,
) {
    out.clear();
    let mut quads = Combinations::new(labels.len() as u32, 4);
    while let Some(ix) = quads.current() {
        let (a, b, c, d) = (
            labels[ix[0] as usize],
            labels[ix[1] as usize],
            labels[ix[2] as usize],
            labels[ix[3] as usize],
        );
        let rank4 = ranker.rank4(a, b, c, d);
        for p in FIRST_NONCONVEX..PATTERN_COUNT {
            out.push(SignedLiteral::positive(numbering.selector_var(rank4, p)));
        }
        quads.advance();
    }
}

/// The exclusion clause of one k-set: positive selector literals of every
/// non-convex pattern of every 4-subset, 4-subsets in lexicographic order,
/// patterns in the fixed non-convex order.
pub fn exclusion_clause(kset: &KSet, numbering: &VarNumbering) -> Vec<SignedLiteral> {
    let ranker = SubsetRanker::new(numbering.n());
    let mut out = Vec::with_capacity(exclusion_clause_len(kset.labels.len() as u32) as usize);
    fill_exclusion_literals(&kset.labels, numbering, &ranker, &mut out);
    out
}

/// Stream the whole exclusion block in k-set rank order, reusing one literal
/// buffer (the block is never materialized). Returns the clause count.
pub fn exclusion_block(
    numbering: &VarNumbering,
    k: u32,
    mut emit: impl FnMut(&[SignedLiteral]) -> std::io::Result<()>,
) -> std::io::Result<u64> {
    let n = numbering.n();
    let ranker = SubsetRanker::new(n);
    let mut buf = Vec::with_capacity(exclusion_clause_len(k) as usize);
    let mut clauses = 0u64;
    let mut combos = Combinations::new(n, k);
    while let Some(labels) = combos.current() {
        fill_exclusion_literals(labels, numbering, &ranker, &mut buf);
        clauses += 1;
        emit(&buf)?;
        combos.advance();
    }
    Ok(clauses)
}

/// Both sides of the 4-set criterion on an exact point set: convex position
/// by hull-vertex count, and convexity of every 4-subset. The two always
/// agree for sets in general position; tests exercise the equivalence.
pub fn convex_position_iff_4subsets(ps: &PointSet) -> (bool, bool) {
    let points = ps.points();
    let direct = convex_position(points);
    let mut via_foursets = true;
    let mut quads = Combinations::new(points.len() as u32, 4);
    while let Some(ix) = quads.current() {
        let quad = [
            points[ix[0] as usize],
            points[ix[1] as usize],
            points[ix[2] as usize],
            points[ix[3] as usize],
        ];
        if !convex_position(&quad) {
            via_foursets = false;
            break;
        }
        quads.advance();
    }
    (direct, via_foursets)
}
