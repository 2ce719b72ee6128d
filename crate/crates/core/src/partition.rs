//! Characteristic parameters, p-strict/restricted partitions, node contents,
//! parity and block-content functions, and enumeration of `RP_p(n)`.
//!
//! Rows and columns are 1-indexed throughout. Partitions are immutable
//! values; all operations return new values.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::Error;

/// A content value, i.e. an element of the residue alphabet `I`.
///
/// For p > 0 residues lie in `{0, ..., ℓ}` with `ℓ = (p-1)/2`; for p = 0 the
/// alphabet is all of `ℤ_{≥0}` and residue-indexed maps stay sparse.
pub type Residue = u64;

/// The characteristic parameter: 0 or an odd prime.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Char {
    p: u64,
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Char {
    pub fn new(p: u64) -> Result<Char, Error> {
        if p == 0 || is_odd_prime(p) {
            Ok(Char { p })
        } else {
            Err(Error::InvalidChar(p))
        }
    }

    /// The characteristic-zero parameter set.
    pub fn zero() -> Char {
        Char { p: 0 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `ℓ = (p-1)/2`; `None` means infinite (p = 0).
    pub fn ell(&self) -> Option<u64> {
        if self.p == 0 {
            None
        } else {
            Some((self.p - 1) / 2)
        }
    }

    /// Content of column `s ≥ 1` under the repeating pattern
    /// `0,1,...,ℓ-1,ℓ,ℓ-1,...,1,0` of period p (for p = 0 simply `s-1`).
    pub fn content_of_column(&self, s: u64) -> Residue {
        assert!(s >= 1, "columns are 1-indexed");
        if self.p == 0 {
            s - 1
        } else {
            let r = (s - 1) % self.p;
            r.min(self.p - 1 - r)
        }
    }
}

impl fmt::Display for Char {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.p)
    }
}

/// A node `(row, col)` of a Young diagram, 1-indexed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Node {
    pub row: u32,
    pub col: u32,
}

impl Node {
    pub fn new(row: u32, col: u32) -> Node {
        assert!(row >= 1 && col >= 1, "nodes are 1-indexed");
        Node { row, col }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A partition with positive, non-increasing parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, panicking on non-positive or increasing parts.
    pub fn new(parts: Vec<u32>) -> Partition {
        Partition::try_new(parts).expect("valid partition")
    }

    pub fn try_new(parts: Vec<u32>) -> Result<Partition, Error> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(
                "parts must be non-increasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The degree n (sum of parts).
    pub fn n(&self) -> u64 {
        self.parts.iter().map(|&x| x as u64).sum()
    }

    /// Number of (positive) parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part in row `r` (1-indexed); 0 beyond the last row.
    pub fn part(&self, r: u32) -> u32 {
        if r == 0 || r as usize > self.parts.len() {
            0
        } else {
            self.parts[r as usize - 1]
        }
    }

    /// Removes the last node of row `r`, returning `None` when the result is
    /// not a partition shape.
    pub fn remove_end(&self, r: u32) -> Option<Partition> {
        let ru = r as usize;
        if ru == 0 || ru > self.parts.len() {
            return None;
        }
        let cur = self.parts[ru - 1];
        let below = self.part(r + 1);
        if cur - 1 < below {
            return None;
        }
        let mut parts = self.parts.clone();
        if cur == 1 {
            parts.pop();
        } else {
            parts[ru - 1] = cur - 1;
        }
        Some(Partition { parts })
    }

    /// Adds a node at the end of row `r` (row `len+1` starts a new part),
    /// returning `None` when the result is not a partition shape.
    pub fn add_end(&self, r: u32) -> Option<Partition> {
        let ru = r as usize;
        if ru == 0 || ru > self.parts.len() + 1 {
            return None;
        }
        let cur = self.part(r);
        if r >= 2 && self.part(r - 1) < cur + 1 {
            return None;
        }
        let mut parts = self.parts.clone();
        if ru == parts.len() + 1 {
            parts.push(1);
        } else {
            parts[ru - 1] = cur + 1;
        }
        Some(Partition { parts })
    }

    /// True iff every repeated part is divisible by p (all parts distinct
    /// when p = 0).
    pub fn is_p_strict(&self, c: Char) -> bool {
        self.parts.windows(2).all(|w| {
            if w[0] == w[1] {
                c.p() > 0 && u64::from(w[0]) % c.p() == 0
            } else {
                true
            }
        })
    }

    /// True iff the partition is p-strict and each consecutive difference
    /// (including the final part against 0) is `< p` at parts divisible by p
    /// and `≤ p` otherwise. For p = 0 this is strictness.
    pub fn is_restricted(&self, c: Char) -> bool {
        if !self.is_p_strict(c) {
            return false;
        }
        let p = c.p();
        if p == 0 {
            return true;
        }
        for r in 1..=self.parts.len() as u32 {
            let cur = u64::from(self.part(r));
            let diff = cur - u64::from(self.part(r + 1));
            let bound_ok = if cur % p == 0 { diff < p } else { diff <= p };
            if !bound_ok {
                return false;
            }
        }
        true
    }

    /// The p'-height: the number of parts not divisible by p (all parts when
    /// p = 0).
    pub fn p_prime_height(&self, c: Char) -> u64 {
        let p = c.p();
        self.parts
            .iter()
            .filter(|&&x| p == 0 || u64::from(x) % p != 0)
            .count() as u64
    }

    /// The parity `a(λ) = σ(n - h_{p'}(λ))`; 0 means type M, 1 means type Q.
    pub fn a_parity(&self, c: Char) -> u8 {
        ((self.n() - self.p_prime_height(c)) % 2) as u8
    }

    /// Counts of nodes per content value.
    pub fn block_content(&self, c: Char) -> BlockContent {
        let mut bc = BlockContent::default();
        for &part in &self.parts {
            for s in 1..=u64::from(part) {
                bc.add(c.content_of_column(s), 1);
            }
        }
        bc
    }

    /// Content of the last node of row `r` (which must be non-empty).
    pub fn content_of_row_end(&self, c: Char, r: u32) -> Residue {
        c.content_of_column(u64::from(self.part(r)))
    }
}

impl fmt::Display for Partition {
    /// Comma-separated decimal parts, no whitespace; ∅ is the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for part in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{part}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Partition, Error> {
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part `{tok}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::try_new(parts)
    }
}

/// Multiset of node contents: the superblock invariant `γ(λ)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BlockContent {
    counts: BTreeMap<Residue, u64>,
}

impl BlockContent {
    pub fn add(&mut self, i: Residue, k: u64) {
        if k > 0 {
            *self.counts.entry(i).or_insert(0) += k;
        }
    }

    /// Removes one node of content `i`; `None` if no such node is counted.
    pub fn minus_nu(&self, i: Residue) -> Option<BlockContent> {
        let mut counts = self.counts.clone();
        match counts.get_mut(&i) {
            Some(k) if *k > 1 => *k -= 1,
            Some(_) => {
                counts.remove(&i);
            }
            None => return None,
        }
        Some(BlockContent { counts })
    }

    pub fn count(&self, i: Residue) -> u64 {
        self.counts.get(&i).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Residue, u64)> + '_ {
        self.counts.iter().map(|(&i, &k)| (i, k))
    }
}

impl fmt::Display for BlockContent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, (i, k)) in self.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}:{k}")?;
        }
        write!(f, "}}")
    }
}

/// Whether appending `next` (0 meaning "end of partition") after a part
/// `prev` keeps the restrictedness difference conditions.
fn step_ok(c: Char, prev: u32, next: u32) -> bool {
    let p = c.p();
    if p == 0 {
        return next < prev;
    }
    if next == prev {
        return u64::from(prev) % p == 0;
    }
    let diff = u64::from(prev - next);
    if u64::from(prev) % p == 0 {
        diff < p
    } else {
        diff <= p
    }
}

/// All restricted p-strict partitions of `n`, each exactly once, in
/// lexicographically decreasing order.
pub fn enumerate_rpp(c: Char, n: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    descend(c, n, None, &mut stack, &mut out);
    out
}

fn descend(c: Char, remaining: u64, prev: Option<u32>, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        // The tail condition against the virtual 0 part was enforced when the
        // last part was pushed.
        out.push(Partition {
            parts: stack.clone(),
        });
        return;
    }
    let cap = match prev {
        Some(q) => remaining.min(u64::from(q)),
        None => remaining,
    };
    for k in (1..=cap).rev() {
        let k32 = k as u32;
        if let Some(q) = prev {
            if !step_ok(c, q, k32) {
                continue;
            }
        }
        if remaining == k && !step_ok(c, k32, 0) {
            continue;
        }
        stack.push(k32);
        descend(c, remaining - k, Some(k32), stack, out);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ch(p: u64) -> Char {
        Char::new(p).unwrap()
    }

    #[test]
    fn char_validation() {
        assert!(Char::new(0).is_ok());
        assert!(Char::new(3).is_ok());
        assert!(Char::new(17).is_ok());
        assert_eq!(Char::new(2), Err(Error::InvalidChar(2)));
        assert_eq!(Char::new(9), Err(Error::InvalidChar(9)));
        assert_eq!(ch(7).ell(), Some(3));
        assert_eq!(ch(0).ell(), None);
    }

    #[test]
    fn content_of_column_examples() {
        assert_eq!(ch(5).content_of_column(3), 2);
        assert_eq!(ch(0).content_of_column(1), 0);
        // Independent oracle: build the length-p palindromic pattern and index.
        let p = 7u64;
        let ell = 3u64;
        let mut pattern: Vec<u64> = (0..=ell).collect();
        pattern.extend((0..ell).rev());
        assert_eq!(pattern.len() as u64, p);
        assert_eq!(pattern[((13 - 1) % p) as usize], 1);
        assert_eq!(ch(7).content_of_column(13), 1);
        for s in 1..=60 {
            assert_eq!(
                ch(7).content_of_column(s),
                pattern[((s - 1) % p) as usize],
                "column {s}"
            );
        }
    }

    #[test]
    fn content_periodicity() {
        for p in [3, 5, 7, 11] {
            let c = ch(p);
            for s in 1..=200 {
                assert_eq!(c.content_of_column(s), c.content_of_column(s + p));
            }
        }
    }

    #[test]
    fn p_strict_examples() {
        assert!(pt("10,10,3").is_p_strict(ch(5)));
        assert!(!pt("2,2").is_p_strict(ch(0)));
        assert!(pt("16,11,10,10,9,5,1").is_p_strict(ch(5)));
        assert!(!pt("4,4").is_p_strict(ch(5)));
    }

    #[test]
    fn restricted_examples() {
        assert!(!pt("3").is_restricted(ch(3)));
        assert!(pt("4,1").is_restricted(ch(3)));
        assert!(pt("16,11,10,10,9,5,1").is_restricted(ch(5)));
        assert!(pt("").is_restricted(ch(3)));
        // 4 - 0 = 4 > 3 at the tail.
        assert!(!pt("4").is_restricted(ch(3)));
    }

    #[test]
    fn height_and_parity() {
        assert_eq!(pt("16,11,10,10,9,5,1").p_prime_height(ch(5)), 4);
        assert_eq!(pt("9,5,3").p_prime_height(ch(0)), 3);
        assert_eq!(Partition::empty().p_prime_height(ch(7)), 0);
        assert_eq!(pt("3,2,1").a_parity(ch(5)), 1);
        assert_eq!(pt("5,4,1").a_parity(ch(5)), 0);
        assert_eq!(pt("9").a_parity(ch(0)), 0);
    }

    #[test]
    fn a_parity_equals_nonzero_content_count_mod_2() {
        for p in [3, 5, 7] {
            let c = ch(p);
            for n in 0..=18 {
                for la in enumerate_rpp(c, n) {
                    let nonzero: u64 = la
                        .block_content(c)
                        .iter()
                        .filter(|&(i, _)| i != 0)
                        .map(|(_, k)| k)
                        .sum();
                    assert_eq!(
                        u64::from(la.a_parity(c)) % 2,
                        nonzero % 2,
                        "p={p} lambda={la}"
                    );
                }
            }
        }
    }

    #[test]
    fn block_content_examples() {
        let bc = pt("5,2").block_content(ch(5));
        let pairs: Vec<_> = bc.iter().collect();
        assert_eq!(pairs, vec![(0, 3), (1, 3), (2, 1)]);
        assert_eq!(Partition::empty().block_content(ch(5)).total(), 0);
        for n in 0..=15 {
            for la in enumerate_rpp(ch(5), n) {
                assert_eq!(la.block_content(ch(5)).total(), n);
            }
        }
    }

    /// Brute-force oracle: all partitions of n, filtered by the definition.
    fn all_partitions(n: u64, max: u64, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition::new(prefix.clone()));
            return;
        }
        let mut k = n.min(max);
        while k >= 1 {
            prefix.push(k as u32);
            all_partitions(n - k, k, prefix, out);
            prefix.pop();
            k -= 1;
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_rpp(ch(3), 5), vec![pt("4,1"), pt("3,2")]);
        assert_eq!(enumerate_rpp(ch(3), 3), vec![pt("2,1")]);
        assert_eq!(enumerate_rpp(ch(0), 5), vec![pt("5"), pt("4,1"), pt("3,2")]);
        assert_eq!(enumerate_rpp(ch(7), 0), vec![Partition::empty()]);
    }

    #[test]
    fn enumerate_matches_bruteforce_filter() {
        for p in [0, 3, 5, 7] {
            let c = ch(p);
            for n in 0..=20 {
                let mut brute = Vec::new();
                all_partitions(n, n, &mut Vec::new(), &mut brute);
                let mut expected: Vec<Partition> = brute
                    .into_iter()
                    .filter(|la| la.is_restricted(c))
                    .collect();
                expected.sort();
                expected.reverse();
                let got = enumerate_rpp(c, n);
                assert_eq!(got, expected, "p={p} n={n}");
                for la in &got {
                    assert!(la.is_restricted(c));
                    assert_eq!(la.n(), n);
                }
            }
        }
    }

    #[test]
    fn partition_text_roundtrip() {
        for s in ["", "16,11,10,10,9,5,1", "3,2,1"] {
            let la: Partition = s.parse().unwrap();
            assert_eq!(la.to_string(), s);
        }
        assert!("3,0".parse::<Partition>().is_err());
        assert!("2,3".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
    }
}
