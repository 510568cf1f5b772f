//! Binomial coefficients, closed-form subset ranking, and lexicographic
//! subset enumeration.
//!
//! Generation never materializes the subset families it walks; blocks stream
//! from the in-place iterator and ranks come from prefix-sum tables.

/// Binomial coefficient C(n, k) in u64, evaluated product-wise.
///
/// Panics on overflow; the instance sizes this crate supports stay far below
/// u64 range (capacity limits are enforced in variable numbering).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiply because
        // acc holds C(n, i) exactly.
        acc = acc
            .checked_mul(n - i)
            .expect("binomial overflow")
            / (i + 1);
    }
    acc
}

/// Prefix-sum tables for O(1) lexicographic ranking of 2-, 3- and 4-subsets
/// of `{0, .., n-1}`.
#[derive(Debug, Clone)]
pub struct SubsetRanker {
    n: u32,
    // s1[i] = sum_{x < i} C(n-1-x, 1), and likewise s2, s3 for C(., 2), C(., 3)
    s1: Vec<u64>,
    s2: Vec<u64>,
    s3: Vec<u64>,
}

impl SubsetRanker {
    pub fn new(n: u32) -> Self {
        let mut s1 = vec![0u64; n as usize + 1];
        let mut s2 = vec![0u64; n as usize + 1];
        let mut s3 = vec![0u64; n as usize + 1];
        for x in 0..n as u64 {
            let m = (n as u64) - 1 - x;
            s1[x as usize + 1] = s1[x as usize] + m;
            s2[x as usize + 1] = s2[x as usize] + binomial(m, 2);
            s3[x as usize + 1] = s3[x as usize] + binomial(m, 3);
        }
        Self { n, s1, s2, s3 }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Lexicographic rank of `a < b < c` among all 3-subsets.
    pub fn rank3(&self, a: u32, b: u32, c: u32) -> u64 {
        debug_assert!(a < b && b < c && c < self.n);
        self.s2[a as usize] + (self.s1[b as usize] - self.s1[a as usize + 1]) + (c - b - 1) as u64
    }

    /// Lexicographic rank of `a < b < c < d` among all 4-subsets.
    pub fn rank4(&self, a: u32, b: u32, c: u32, d: u32) -> u64 {
        debug_assert!(a < b && b < c && c < d && d < self.n);
        self.s3[a as usize]
            + (self.s2[b as usize] - self.s2[a as usize + 1])
            + (self.s1[c as usize] - self.s1[b as usize + 1])
            + (d - c - 1) as u64
    }
}

/// In-place lexicographic enumeration of m-subsets of `{0, .., n-1}`.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: u32,
    current: Vec<u32>,
    done: bool,
}

impl Combinations {
    pub fn new(n: u32, m: u32) -> Self {
        let done = m > n;
        Self {
            n,
            current: (0..m).collect(),
            done,
        }
    }

    pub fn current(&self) -> Option<&[u32]> {
        if self.done {
            None
        } else {
            Some(&self.current)
        }
    }

    /// Advance to the next subset in lexicographic order.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let m = self.current.len();
        if m == 0 {
            self.done = true;
            return false;
        }
        let mut i = m;
        while i > 0 {
            i -= 1;
            if self.current[i] < self.n - (m - i) as u32 {
                self.current[i] += 1;
                for j in i + 1..m {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return true;
            }
        }
        self.done = true;
        false
    }

    /// Run `f` on every subset, in lexicographic order.
    pub fn for_each<E>(mut self, mut f: impl FnMut(&[u32]) -> Result<(), E>) -> Result<u64, E> {
        let mut count = 0u64;
        while let Some(cur) = self.current() {
            f(cur)?;
            count += 1;
            self.advance();
        }
        Ok(count)
    }
}
