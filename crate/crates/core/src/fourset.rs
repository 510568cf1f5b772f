//! Per-4-set selector variables over the 14 realizable cyclic orientation
//! patterns.
//!
//! For a 4-set `{a,b,c,d}` with `a < b < c < d`, the cyclic triples
//! `(a,b,c), (b,c,d), (c,d,a), (d,a,b)` induce a length-4 sign vector. Only
//! 14 of the 16 vectors are realizable by points in general position; the
//! two alternating vectors `+-+-` and `-+-+` never occur. Each 4-set gets 14
//! selector variables, one per pattern, reified against the four cyclic
//! literals (5 clauses each) plus a single at-least-one clause: 71 clauses
//! per 4-set. No at-most-one clauses are added; uniqueness follows from the
//! reification whenever the orientation variables are consistent.

use crate::assembly::VarNumbering;
use crate::combinatorics::{Combinations, SubsetRanker};
use crate::orientation::{literal_of_ordered, OrientationAssignment, Sign, SignedLiteral};
use crate::{Error, Result};

pub const PATTERN_COUNT: usize = 14;
pub const NONCONVEX_PATTERN_COUNT: usize = 8;
/// 0-based index of the first non-convex pattern in [`REALIZABLE_PATTERNS`].
pub const FIRST_NONCONVEX: usize = 6;

/// Convexity class of a cyclic pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternClass {
    Convex,
    NonConvex,
}

/// One realizable cyclic orientation pattern of a 4-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicPattern {
    pub signs: [Sign; 4],
    pub class: PatternClass,
}

use PatternClass::{Convex, NonConvex};
use Sign::{Minus as M, Plus as P};

/// The 14 realizable patterns in the fixed generator order: the six convex
/// patterns first, then the eight non-convex patterns in lexicographic sign
/// order (`+` before `-`). Selector variables and the literals of the k-set
/// exclusion clauses follow this order.
pub static REALIZABLE_PATTERNS: [CyclicPattern; PATTERN_COUNT] = [
    CyclicPattern { signs: [P, P, P, P], class: Convex },
    CyclicPattern { signs: [M, M, M, M], class: Convex },
    CyclicPattern { signs: [P, P, M, M], class: Convex },
    CyclicPattern { signs: [M, M, P, P], class: Convex },
    CyclicPattern { signs: [M, P, P, M], class: Convex },
    CyclicPattern { signs: [P, M, M, P], class: Convex },
    CyclicPattern { signs: [P, P, P, M], class: NonConvex },
    CyclicPattern { signs: [P, P, M, P], class: NonConvex },
    CyclicPattern { signs: [P, M, P, P], class: NonConvex },
    CyclicPattern { signs: [P, M, M, M], class: NonConvex },
    CyclicPattern { signs: [M, P, P, P], class: NonConvex },
    CyclicPattern { signs: [M, P, M, M], class: NonConvex },
    CyclicPattern { signs: [M, M, P, M], class: NonConvex },
    CyclicPattern { signs: [M, M, M, P], class: NonConvex },
];

/// The 14 realizable patterns in their fixed order.
pub fn realizable_patterns() -> &'static [CyclicPattern; PATTERN_COUNT] {
    &REALIZABLE_PATTERNS
}

/// 0-based index of a sign vector among the realizable patterns.
pub fn pattern_index(signs: [Sign; 4]) -> Result<usize> {
    REALIZABLE_PATTERNS
        .iter()
        .position(|p| p.signs == signs)
        .ok_or_else(|| {
            let s: String = signs.iter().map(|s| s.to_string()).collect();
            Error::UnrealizablePattern(s)
        })
}

/// A 4-set `a < b < c < d` with its lexicographic rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourSet {
    labels: [u32; 4],
    rank: u64,
}

impl FourSet {
    pub fn new(a: u32, b: u32, c: u32, d: u32, ranker: &SubsetRanker) -> Result<Self> {
        if !(a < b && b < c && c < d) || d >= ranker.n() {
            return Err(Error::DegenerateTuple(vec![a, b, c, d]));
        }
        Ok(Self {
            labels: [a, b, c, d],
            rank: ranker.rank4(a, b, c, d),
        })
    }

    pub fn labels(&self) -> [u32; 4] {
        self.labels
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    /// The four cyclic ordered triples `(a,b,c), (b,c,d), (c,d,a), (d,a,b)`.
    pub fn cyclic_triples(&self) -> [(u32, u32, u32); 4] {
        let [a, b, c, d] = self.labels;
        [(a, b, c), (b, c, d), (c, d, a), (d, a, b)]
    }

    /// The four cyclic orientation literals, each asserting `chi = +` on its
    /// cyclic triple.
    pub fn cyclic_literals(&self, n: u32) -> [SignedLiteral; 4] {
        let [t0, t1, t2, t3] = self.cyclic_triples();
        [
            literal_of_ordered(t0.0, t0.1, t0.2, n).expect("valid triple"),
            literal_of_ordered(t1.0, t1.1, t1.2, n).expect("valid triple"),
            literal_of_ordered(t2.0, t2.1, t2.2, n).expect("valid triple"),
            literal_of_ordered(t3.0, t3.1, t3.2, n).expect("valid triple"),
        ]
    }

    /// Induced sign vector under an orientation assignment.
    pub fn sign_vector(&self, assignment: &OrientationAssignment) -> Result<[Sign; 4]> {
        let [t0, t1, t2, t3] = self.cyclic_triples();
        Ok([
            assignment.chi(t0.0, t0.1, t0.2)?,
            assignment.chi(t1.0, t1.1, t1.2)?,
            assignment.chi(t2.0, t2.1, t2.2)?,
            assignment.chi(t3.0, t3.1, t3.2)?,
        ])
    }
}

/// The unique realizable pattern matching the assignment's sign vector on
/// this 4-set. Fails with an unrealizable-pattern error on sign vectors no
/// point set can induce (possible only for non-geometric assignments).
pub fn classify_assignment(
    q: &FourSet,
    assignment: &OrientationAssignment,
) -> Result<CyclicPattern> {
    let signs = q.sign_vector(assignment)?;
    Ok(REALIZABLE_PATTERNS[pattern_index(signs)?])
}

/// Emit the 71 clauses of one 4-set: for each pattern `p` with cyclic
/// literals `L1..L4`, the reification of `t_p <-> (L1 & L2 & L3 & L4)` as
/// `(!t_p | Li)` for each `i` plus `(t_p | !L1 | !L2 | !L3 | !L4)`, followed
/// by the at-least-one clause over all 14 selectors.
pub fn fourset_clauses(
    q: &FourSet,
    numbering: &VarNumbering,
    mut emit: impl FnMut(&[SignedLiteral]) -> std::io::Result<()>,
) -> std::io::Result<()> {
    let base_lits = q.cyclic_literals(numbering.n());
    let mut buf: Vec<SignedLiteral> = Vec::with_capacity(PATTERN_COUNT);
    for (p, pattern) in REALIZABLE_PATTERNS.iter().enumerate() {
        let t = SignedLiteral::positive(numbering.selector_var(q.rank(), p));
        let lits = [
            base_lits[0].with_sign(pattern.signs[0]),
            base_lits[1].with_sign(pattern.signs[1]),
            base_lits[2].with_sign(pattern.signs[2]),
            base_lits[3].with_sign(pattern.signs[3]),
        ];
        for l in lits {
            emit(&[t.negate(), l])?;
        }
        buf.clear();
        buf.push(t);
        buf.extend(lits.iter().map(|l| l.negate()));
        emit(&buf)?;
    }
    buf.clear();
    for p in 0..PATTERN_COUNT {
        buf.push(SignedLiteral::positive(numbering.selector_var(q.rank(), p)));
    }
    emit(&buf)
}

/// Stream the whole 4-set consistency block in rank order. Returns the
/// number of clauses emitted.
pub fn fourset_block(
    numbering: &VarNumbering,
    mut emit: impl FnMut(&[SignedLiteral]) -> std::io::Result<()>,
) -> std::io::Result<u64> {
    let n = numbering.n();
    let ranker = SubsetRanker::new(n);
    let mut clauses = 0u64;
    let mut combos = Combinations::new(n, 4);
    while let Some(q) = combos.current() {
        let fourset = FourSet::new(q[0], q[1], q[2], q[3], &ranker).expect("valid 4-set");
        fourset_clauses(&fourset, numbering, |cl| {
            clauses += 1;
            emit(cl)
        })?;
        combos.advance();
    }
    Ok(clauses)
}

/// Clauses contributed per 4-set.
pub const CLAUSES_PER_FOURSET: u64 = 71;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::assign_variables;
    use crate::EncodingParams;

    #[test]
    fn fourteen_patterns_six_convex() {
        let pats = realizable_patterns();
        assert_eq!(pats.len(), 14);
        let convex: Vec<_> = pats.iter().filter(|p| p.class == Convex).collect();
        assert_eq!(convex.len(), 6);
        assert_eq!(pats[0].signs, [P, P, P, P]);
        assert_eq!(pats[0].class, Convex);
        // all patterns distinct
        for (i, a) in pats.iter().enumerate() {
            for b in &pats[i + 1..] {
                assert_ne!(a.signs, b.signs);
            }
        }
    }

    #[test]
    fn alternating_vectors_are_unrealizable() {
        assert!(pattern_index([P, M, P, M]).is_err());
        assert!(pattern_index([M, P, M, P]).is_err());
        assert_eq!(pattern_index([P, P, P, P]).unwrap(), 0);
        assert_eq!(pattern_index([P, P, P, M]).unwrap(), FIRST_NONCONVEX);
    }

    #[test]
    fn clause_census_per_fourset() {
        let params = EncodingParams::new(9, 5).unwrap();
        let numbering = assign_variables(&params).unwrap();
        let ranker = SubsetRanker::new(9);
        let q = FourSet::new(0, 2, 5, 8, &ranker).unwrap();
        let mut lengths = Vec::new();
        fourset_clauses(&q, &numbering, |cl| {
            lengths.push(cl.len());
            Ok(())
        })
        .unwrap();
        assert_eq!(lengths.len(), 71);
        assert_eq!(lengths.iter().filter(|&&l| l == 2).count(), 56);
        assert_eq!(lengths.iter().filter(|&&l| l == 5).count(), 14);
        assert_eq!(lengths.iter().filter(|&&l| l == 14).count(), 1);
    }

    #[test]
    fn selector_count_at_flagship_n() {
        assert_eq!(40920u64 * 14, 572_880);
    }
}
