//! 5-point orientation implication clauses.
//!
//! For distinct points `(p1, .., p5)`, if the five orientations
//! `chi(p1,p2,p3), chi(p1,p2,p4), chi(p1,p2,p5), chi(p1,p3,p4), chi(p1,p4,p5)`
//! are all `+`, then `chi(p1,p3,p5)` is `+` as well. As CNF this is one
//! 6-literal clause per ordered 5-tuple. Over the 120 orderings of a 5-set
//! the clauses collapse to exactly 40 distinct literal-sets (each arising
//! from 3 orderings, 8 per choice of first point), so the deduplicated
//! "full" family and the canonical "reduced" family coincide: 40 clauses
//! per 5-subset. Omitting orderings only relaxes the instance, so UNSAT
//! results remain valid certificates regardless of mode.

use std::sync::OnceLock;

use crate::assembly::VarNumbering;
use crate::combinatorics::{binomial, Combinations};
use crate::orientation::{literal_of_ordered, triple_index, Sign, SignedLiteral, Triple};
use crate::params::Cc5Mode;
use crate::{Error, Result};

/// One 5-point implication clause: five negated premises and one conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cc5Clause {
    literals: [SignedLiteral; 6],
}

impl Cc5Clause {
    pub fn literals(&self) -> &[SignedLiteral; 6] {
        &self.literals
    }

    /// Literals sorted by (variable id, sign), the canonical form used for
    /// deduplication.
    pub fn canonicalized(&self) -> [SignedLiteral; 6] {
        let mut lits = self.literals;
        lits.sort_by_key(|l| l.canonical_key());
        lits
    }
}

/// The implication clause of one ordered 5-tuple.
pub fn cc5_clauses_for_tuple(labels: [u32; 5], n: u32) -> Result<Cc5Clause> {
    for (i, &a) in labels.iter().enumerate() {
        for &b in &labels[i + 1..] {
            if a == b {
                return Err(Error::DegenerateTuple(labels.to_vec()));
            }
        }
    }
    let [p1, p2, p3, p4, p5] = labels;
    let premises = [
        literal_of_ordered(p1, p2, p3, n)?,
        literal_of_ordered(p1, p2, p4, n)?,
        literal_of_ordered(p1, p2, p5, n)?,
        literal_of_ordered(p1, p3, p4, n)?,
        literal_of_ordered(p1, p4, p5, n)?,
    ];
    let conclusion = literal_of_ordered(p1, p3, p5, n)?;
    let literals = [
        premises[0].negate(),
        premises[1].negate(),
        premises[2].negate(),
        premises[3].negate(),
        premises[4].negate(),
        conclusion,
    ];
    debug_assert!({
        let mut vars: Vec<u32> = literals.iter().map(|l| l.var().get()).collect();
        vars.sort_unstable();
        vars.windows(2).all(|w| w[0] != w[1])
    });
    Ok(Cc5Clause { literals })
}

/// A clause schema over the abstract labels `{0..4}`: each literal is a
/// (triple rank among the 10 lex-ordered triples of a 5-set, sign) pair.
/// Instantiation maps rank `r` to the r-th lex triple of a concrete sorted
/// 5-subset; monotone relabeling preserves both lex order and parity, so the
/// schema signs apply verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cc5Template {
    lits: [(u8, Sign); 6],
}

impl Cc5Template {
    pub fn lits(&self) -> &[(u8, Sign); 6] {
        &self.lits
    }

    /// Concrete clause for a sorted 5-subset, given the variable ids of its
    /// 10 lex-ordered triples.
    fn instantiate_ids(&self, triple_ids: &[SignedLiteral; 10]) -> [SignedLiteral; 6] {
        self.lits
            .map(|(rank, sign)| triple_ids[rank as usize].with_sign(sign))
    }

    /// Concrete clause for a sorted 5-subset.
    pub fn instantiate(&self, five: &[u32; 5], n: u32) -> Result<Cc5Clause> {
        if !five.windows(2).all(|w| w[0] < w[1]) || five[4] >= n {
            return Err(Error::DegenerateTuple(five.to_vec()));
        }
        let ids = triple_vars_of_five_set(five, n)?;
        Ok(Cc5Clause {
            literals: self.instantiate_ids(&ids),
        })
    }
}

/// Positive literals of the 10 lex-ordered triples within a sorted 5-subset.
fn triple_vars_of_five_set(five: &[u32; 5], n: u32) -> Result<[SignedLiteral; 10]> {
    let mut out = [SignedLiteral::positive(crate::orientation::VarId::new(1)); 10];
    let mut idx = 0;
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                let t = Triple::new(five[a], five[b], five[c])?;
                out[idx] = SignedLiteral::positive(triple_index(t, n)?);
                idx += 1;
            }
        }
    }
    Ok(out)
}

fn permutations5() -> Vec<[u32; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut items = [0u32, 1, 2, 3, 4];
    fn rec(items: &mut [u32; 5], k: usize, out: &mut Vec<[u32; 5]>) {
        if k == 5 {
            out.push(*items);
            return;
        }
        for i in k..5 {
            items.swap(k, i);
            rec(items, k + 1, out);
            items.swap(k, i);
        }
    }
    rec(&mut items, 0, &mut out);
    out
}

/// The canonical clause family per 5-set: the deduplicated literal-sets of
/// all 120 orderings, each in canonical literal order, the family sorted by
/// its literal keys. Computed once per process.
pub fn canonical_templates() -> &'static [Cc5Template] {
    static TEMPLATES: OnceLock<Vec<Cc5Template>> = OnceLock::new();
    TEMPLATES.get_or_init(|| {
        let mut set = std::collections::BTreeSet::new();
        for perm in permutations5() {
            let clause = cc5_clauses_for_tuple(perm, 5).expect("distinct labels");
            let canon = clause.canonicalized();
            let lits = canon.map(|l| ((l.var().get() - 1) as u8, l.sign()));
            set.insert(Cc5Template { lits });
        }
        set.into_iter().collect()
    })
}

/// Distinct clauses per 5-subset (40).
pub fn clauses_per_five_set() -> u64 {
    canonical_templates().len() as u64
}

/// Analytic clause count of the block.
pub fn cc5_block_count(n: u32, _mode: Cc5Mode) -> u64 {
    clauses_per_five_set() * binomial(n as u64, 5)
}

/// Stream the 5-point block: 5-subsets in lexicographic order, the canonical
/// clause family within each. Both modes emit the same stream; see the
/// module docs. Returns the number of clauses emitted.
pub fn cc5_block(
    numbering: &VarNumbering,
    _mode: Cc5Mode,
    mut emit: impl FnMut(&[SignedLiteral]) -> std::io::Result<()>,
) -> std::io::Result<u64> {
    let n = numbering.n();
    let templates = canonical_templates();
    let mut clauses = 0u64;
    let mut combos = Combinations::new(n, 5);
    while let Some(five) = combos.current() {
        let five: [u32; 5] = five.try_into().expect("5-subset");
        let ids = triple_vars_of_five_set(&five, n).expect("valid 5-subset");
        for t in templates {
            let lits = t.instantiate_ids(&ids);
            clauses += 1;
            emit(&lits)?;
        }
        combos.advance();
    }
    Ok(clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lits_as_dimacs(c: &Cc5Clause) -> Vec<i64> {
        let mut v: Vec<i64> = c.literals().iter().map(|l| l.to_dimacs()).collect();
        v.sort_by_key(|l| (l.unsigned_abs(), *l < 0));
        v
    }

    #[test]
    fn sorted_tuple_example() {
        // n=5 triple vars in lex order: x012=1 x013=2 x014=3 x023=4 x024=5 x034=6
        let c = cc5_clauses_for_tuple([0, 1, 2, 3, 4], 5).unwrap();
        assert_eq!(lits_as_dimacs(&c), vec![-1, -2, -3, -4, 5, -6]);
    }

    #[test]
    fn transposed_tuple_example() {
        // (1,0,2,3,4): premises on (1,0,*) flip sign; premises within {1,2,3,4}
        // stay positive. x123=7 x124=8 x134=9.
        let c = cc5_clauses_for_tuple([1, 0, 2, 3, 4], 5).unwrap();
        assert_eq!(lits_as_dimacs(&c), vec![1, 2, 3, -7, 8, -9]);
    }

    #[test]
    fn rejects_duplicate_labels() {
        assert!(matches!(
            cc5_clauses_for_tuple([0, 1, 2, 2, 4], 9),
            Err(Error::DegenerateTuple(_))
        ));
    }

    #[test]
    fn forty_templates() {
        assert_eq!(canonical_templates().len(), 40);
        assert_eq!(clauses_per_five_set(), 40);
    }

    #[test]
    fn flagship_reduced_count() {
        assert_eq!(cc5_block_count(33, Cc5Mode::Reduced), 9_493_440);
        // 40 clauses per 5-subset is forced by the recorded total
        assert_eq!(9_493_440 / binomial(33, 5), 40);
    }

    #[test]
    fn templates_instantiate_to_tuple_clauses() {
        // every template instantiated on the identity 5-set must equal some
        // ordering's clause, and vice versa
        use std::collections::BTreeSet;
        let five = [0u32, 1, 2, 3, 4];
        let by_templates: BTreeSet<Vec<i64>> = canonical_templates()
            .iter()
            .map(|t| {
                t.instantiate(&five, 5)
                    .unwrap()
                    .canonicalized()
                    .iter()
                    .map(|l| l.to_dimacs())
                    .collect()
            })
            .collect();
        let mut by_orderings = BTreeSet::new();
        for perm in permutations5() {
            let c = cc5_clauses_for_tuple(perm, 5).unwrap();
            by_orderings.insert(
                c.canonicalized()
                    .iter()
                    .map(|l| l.to_dimacs())
                    .collect::<Vec<i64>>(),
            );
        }
        assert_eq!(by_templates, by_orderings);
    }

    #[test]
    fn monotone_relabeling_preserves_clauses() {
        // instantiating templates on a sparse 5-subset equals building the
        // clauses from the relabeled orderings directly
        use std::collections::BTreeSet;
        let five = [1u32, 3, 4, 7, 8];
        let n = 9;
        let by_templates: BTreeSet<Vec<i64>> = canonical_templates()
            .iter()
            .map(|t| {
                t.instantiate(&five, n)
                    .unwrap()
                    .canonicalized()
                    .iter()
                    .map(|l| l.to_dimacs())
                    .collect()
            })
            .collect();
        let mut by_orderings = BTreeSet::new();
        for perm in permutations5() {
            let labels = perm.map(|i| five[i as usize]);
            let c = cc5_clauses_for_tuple(labels, n).unwrap();
            by_orderings.insert(
                c.canonicalized()
                    .iter()
                    .map(|l| l.to_dimacs())
                    .collect::<Vec<i64>>(),
            );
        }
        assert_eq!(by_templates, by_orderings);
    }
}
