//! Triple orientation variables and permutation-parity-aware signed literals.
//!
//! One Boolean variable per unordered triple `{i, j, k}`, numbered by
//! lexicographic rank of the sorted triple. The orientation of an *ordered*
//! triple is carried by a literal sign: even permutations of the sorted
//! triple read the variable positively, odd permutations negated. The global
//! convention is that `+` means counterclockwise.

use crate::combinatorics::binomial;
use crate::{Error, Result};

/// Orientation sign; `Plus` is counterclockwise under the global convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_parity_even(even: bool) -> Sign {
        if even {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self.flip()
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// 1-based variable id, valid within one instance's numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(u32);

impl VarId {
    pub fn new(id: u32) -> VarId {
        debug_assert!(id >= 1);
        VarId(id)
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// A variable with a polarity. Negation flips the sign only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedLiteral {
    var: VarId,
    sign: Sign,
}

impl SignedLiteral {
    pub fn new(var: VarId, sign: Sign) -> Self {
        Self { var, sign }
    }

    pub fn positive(var: VarId) -> Self {
        Self::new(var, Sign::Plus)
    }

    pub fn negative(var: VarId) -> Self {
        Self::new(var, Sign::Minus)
    }

    pub fn var(self) -> VarId {
        self.var
    }

    pub fn sign(self) -> Sign {
        self.sign
    }

    pub fn negate(self) -> Self {
        Self::new(self.var, self.sign.flip())
    }

    /// Apply an orientation sign: `+` keeps the literal, `-` negates it.
    pub fn with_sign(self, sign: Sign) -> Self {
        Self::new(self.var, self.sign * sign)
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var.get() as i64;
        match self.sign {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }

    pub fn from_dimacs(lit: i64) -> Result<Self> {
        if lit == 0 || lit.unsigned_abs() > u32::MAX as u64 {
            return Err(Error::Parse(format!("literal {lit} out of range")));
        }
        let var = VarId::new(lit.unsigned_abs() as u32);
        Ok(Self::new(var, Sign::from_parity_even(lit > 0)))
    }

    /// Canonical clause order: by variable id, positive before negative.
    pub fn canonical_key(self) -> (u32, u8) {
        (self.var.get(), if self.sign.is_plus() { 0 } else { 1 })
    }
}

impl std::ops::Not for SignedLiteral {
    type Output = SignedLiteral;

    fn not(self) -> SignedLiteral {
        self.negate()
    }
}

impl std::fmt::Display for SignedLiteral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Sorted point-label triple `i < j < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    i: u32,
    j: u32,
    k: u32,
}

impl Triple {
    pub fn new(i: u32, j: u32, k: u32) -> Result<Self> {
        if i < j && j < k {
            Ok(Self { i, j, k })
        } else {
            Err(Error::DegenerateTriple(i, j, k))
        }
    }

    /// Sort three pairwise-distinct labels into a triple plus the parity of
    /// the sorting permutation (true = even).
    pub fn sort_labels(a: u32, b: u32, c: u32) -> Result<(Self, bool)> {
        if a == b || b == c || a == c {
            return Err(Error::DegenerateTriple(a, b, c));
        }
        let mut v = [a, b, c];
        let mut swaps = 0u8;
        if v[0] > v[1] {
            v.swap(0, 1);
            swaps += 1;
        }
        if v[1] > v[2] {
            v.swap(1, 2);
            swaps += 1;
        }
        if v[0] > v[1] {
            v.swap(0, 1);
            swaps += 1;
        }
        Ok((Self { i: v[0], j: v[1], k: v[2] }, swaps % 2 == 0))
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn labels(&self) -> [u32; 3] {
        [self.i, self.j, self.k]
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.i, self.j, self.k)
    }
}

/// Variable id of a triple: lexicographic rank of `(i, j, k)` mapped onto
/// `1..=C(n,3)`. Closed form, so generation streams without a lookup table.
pub fn triple_index(t: Triple, n: u32) -> Result<VarId> {
    if t.k >= n {
        return Err(Error::InvalidTriple(t.i, t.j, t.k, n));
    }
    let (n64, i, j, k) = (n as u64, t.i as u64, t.j as u64, t.k as u64);
    let rank = binomial(n64, 3) - binomial(n64 - i, 3) + binomial(n64 - 1 - i, 2)
        - binomial(n64 - j, 2)
        + (k - j - 1);
    debug_assert!(rank < binomial(n64, 3));
    Ok(VarId::new(rank as u32 + 1))
}

/// Signed literal of an ordered triple `(a, b, c)`: positive on the sorted
/// triple's variable for even permutations, negative for odd ones.
pub fn literal_of_ordered(a: u32, b: u32, c: u32, n: u32) -> Result<SignedLiteral> {
    let (triple, even) = Triple::sort_labels(a, b, c)?;
    let var = triple_index(triple, n)?;
    Ok(SignedLiteral::new(var, Sign::from_parity_even(even)))
}

/// A total orientation assignment over all sorted triples of `{0, .., n-1}`
/// (a chirotope restricted to sorted triples). Ordered-triple orientations
/// are derived through permutation parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationAssignment {
    n: u32,
    signs: Vec<Sign>,
}

impl OrientationAssignment {
    /// Build from a function on sorted triples, invoked in lexicographic
    /// order.
    pub fn from_fn(n: u32, mut f: impl FnMut(Triple) -> Sign) -> Self {
        let count = binomial(n as u64, 3) as usize;
        let mut signs = Vec::with_capacity(count);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    signs.push(f(Triple { i, j, k }));
                }
            }
        }
        debug_assert_eq!(signs.len(), count);
        Self { n, signs }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Orientation of a sorted triple.
    pub fn sign_of(&self, t: Triple) -> Result<Sign> {
        let var = triple_index(t, self.n)?;
        Ok(self.signs[(var.get() - 1) as usize])
    }

    /// Orientation of an ordered triple, adjusted by permutation parity.
    pub fn chi(&self, a: u32, b: u32, c: u32) -> Result<Sign> {
        let (t, even) = Triple::sort_labels(a, b, c)?;
        let base = self.sign_of(t)?;
        Ok(base * Sign::from_parity_even(even))
    }

    /// Truth value of a signed literal over a triple variable.
    pub fn satisfies_literal(&self, lit: SignedLiteral) -> bool {
        let idx = (lit.var().get() - 1) as usize;
        self.signs[idx] == lit.sign()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn triple_index_examples() {
        let t = |i, j, k| Triple::new(i, j, k).unwrap();
        assert_eq!(triple_index(t(0, 1, 2), 33).unwrap().get(), 1);
        assert_eq!(triple_index(t(0, 1, 3), 33).unwrap().get(), 2);
        assert_eq!(triple_index(t(30, 31, 32), 33).unwrap().get(), 5456);
    }

    #[test]
    fn triple_index_rejects_out_of_range() {
        let t = Triple::new(1, 2, 40).unwrap();
        assert!(matches!(triple_index(t, 33), Err(Error::InvalidTriple(..))));
    }

    #[test]
    fn triple_new_rejects_unsorted() {
        assert!(Triple::new(2, 1, 3).is_err());
        assert!(Triple::new(1, 1, 3).is_err());
    }

    #[test]
    fn literal_examples() {
        let n = 5;
        let x012 = triple_index(Triple::new(0, 1, 2).unwrap(), n).unwrap();
        assert_eq!(
            literal_of_ordered(0, 1, 2, n).unwrap(),
            SignedLiteral::positive(x012)
        );
        assert_eq!(
            literal_of_ordered(1, 0, 2, n).unwrap(),
            SignedLiteral::negative(x012)
        );
        assert_eq!(
            literal_of_ordered(2, 0, 1, n).unwrap(),
            SignedLiteral::positive(x012)
        );
    }

    #[test]
    fn literal_rejects_repeats() {
        assert!(matches!(
            literal_of_ordered(1, 1, 2, 5),
            Err(Error::DegenerateTriple(..))
        ));
    }

    #[test]
    fn transposition_is_negation() {
        let n = 7;
        for (a, b, c) in [(0u32, 1, 2), (3, 5, 6), (2, 4, 5)] {
            let l = literal_of_ordered(a, b, c, n).unwrap();
            assert_eq!(literal_of_ordered(b, a, c, n).unwrap(), l.negate());
            assert_eq!(literal_of_ordered(a, c, b, n).unwrap(), l.negate());
            assert_eq!(literal_of_ordered(c, b, a, n).unwrap(), l.negate());
            assert_eq!(literal_of_ordered(b, c, a, n).unwrap(), l);
            assert_eq!(literal_of_ordered(c, a, b, n).unwrap(), l);
        }
    }

    #[test]
    fn bijection_up_to_40() {
        for n in [5u32, 9, 33, 40] {
            let count = binomial(n as u64, 3) as usize;
            let mut seen = vec![false; count];
            let mut prev = 0u32;
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        let id = triple_index(Triple::new(i, j, k).unwrap(), n).unwrap().get();
                        assert!(id >= 1 && id as usize <= count);
                        assert!(!seen[(id - 1) as usize], "collision at {id}");
                        assert!(id > prev, "not increasing in lexicographic order");
                        seen[(id - 1) as usize] = true;
                        prev = id;
                    }
                }
            }
            assert!(seen.iter().all(|&b| b));
        }
    }

    #[test]
    fn variable_count_at_flagship_n() {
        assert_eq!(binomial(33, 3), 5456);
    }

    proptest! {
        #[test]
        fn parity_over_all_six_permutations(mut labels in proptest::collection::vec(0u32..40, 3)) {
            labels.sort_unstable();
            labels.dedup();
            prop_assume!(labels.len() == 3);
            let (a, b, c) = (labels[0], labels[1], labels[2]);
            let n = 40;
            let base = literal_of_ordered(a, b, c, n).unwrap();
            // even permutations
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                prop_assert_eq!(literal_of_ordered(x, y, z, n).unwrap(), base);
            }
            // odd permutations
            for (x, y, z) in [(b, a, c), (a, c, b), (c, b, a)] {
                prop_assert_eq!(literal_of_ordered(x, y, z, n).unwrap(), base.negate());
            }
        }

        #[test]
        fn dimacs_roundtrip(id in 1u32..1_000_000, neg in proptest::bool::ANY) {
            let lit = SignedLiteral::new(VarId::new(id), Sign::from_parity_even(!neg));
            prop_assert_eq!(SignedLiteral::from_dimacs(lit.to_dimacs()).unwrap(), lit);
        }
    }
}
