//! Sidon sequences: verification (plain and modular), greedy extension,
//! modulus thresholds, and alternating-sum collision enumeration.
//!
//! A sequence is Sidon when all pairwise sums `a_i + a_j` (`i <= j`) are
//! distinct; Sidon modulo `N` requires distinctness mod `N`. Two admissible
//! triples with equal alternating sum `a - b + c` mod `N` form a collision;
//! collisions are what generate the six-face rings of the flat-plane puzzle.

use alloc::vec::Vec;
use core::fmt;

/// A strictly increasing sequence of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequence {
    terms: Vec<u64>,
}

impl Sequence {
    /// Validates strict monotonicity and non-emptiness.
    pub fn new(terms: Vec<u64>) -> Result<Self, SidonError> {
        if terms.is_empty() {
            return Err(SidonError::Empty);
        }
        if !terms.windows(2).all(|w| w[0] < w[1]) {
            return Err(SidonError::NotIncreasing);
        }
        Ok(Self { terms })
    }

    pub fn from_slice(terms: &[u64]) -> Result<Self, SidonError> {
        Self::new(terms.to_vec())
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The largest term `a_n`.
    pub fn last(&self) -> u64 {
        *self.terms.last().expect("sequence is non-empty")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SidonError {
    /// A sequence must contain at least one term.
    Empty,
    /// Terms must be strictly increasing.
    NotIncreasing,
    /// Modular Sidon conditions need a modulus of at least 2.
    ModulusTooSmall(u64),
    /// The operation requires a Sidon sequence.
    NotSidon,
    /// The operation requires the sequence to be Sidon modulo the given N.
    NotSidonMod(u64),
}

impl fmt::Display for SidonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SidonError::Empty => write!(f, "sequence is empty"),
            SidonError::NotIncreasing => write!(f, "sequence is not strictly increasing"),
            SidonError::ModulusTooSmall(n) => write!(f, "modulus {n} is smaller than 2"),
            SidonError::NotSidon => write!(f, "input sequence is not a Sidon sequence"),
            SidonError::NotSidonMod(n) => {
                write!(f, "input sequence is not a Sidon sequence modulo {n}")
            }
        }
    }
}

impl core::error::Error for SidonError {}

/// True iff all pairwise sums `a_i + a_j` (`i <= j`) are distinct over ℤ.
pub fn verify_sidon(seq: &Sequence) -> bool {
    let t = seq.terms();
    let mut sums = Vec::with_capacity(t.len() * (t.len() + 1) / 2);
    for i in 0..t.len() {
        for j in i..t.len() {
            sums.push(t[i] + t[j]);
        }
    }
    sums.sort_unstable();
    sums.windows(2).all(|w| w[0] != w[1])
}

/// True iff all pairwise sums `a_i + a_j` (`i <= j`) are distinct modulo `n`.
pub fn verify_sidon_mod(seq: &Sequence, n: u64) -> Result<bool, SidonError> {
    if n < 2 {
        return Err(SidonError::ModulusTooSmall(n));
    }
    let t = seq.terms();
    let mut sums = Vec::with_capacity(t.len() * (t.len() + 1) / 2);
    for i in 0..t.len() {
        for j in i..t.len() {
            sums.push((t[i] % n + t[j] % n) % n);
        }
    }
    sums.sort_unstable();
    Ok(sums.windows(2).all(|w| w[0] != w[1]))
}

/// Extends `seq` by `count` terms, each time taking the smallest integer that
/// keeps the Sidon property. Starting from `(0)` this grows the Mian–Chowla
/// sequence.
pub fn greedy_extend(seq: &Sequence, count: usize) -> Result<Sequence, SidonError> {
    if !verify_sidon(seq) {
        return Err(SidonError::NotSidon);
    }
    let mut terms = seq.terms().to_vec();
    let mut sums = alloc::collections::BTreeSet::new();
    for i in 0..terms.len() {
        for j in i..terms.len() {
            sums.insert(terms[i] + terms[j]);
        }
    }
    for _ in 0..count {
        let mut candidate = terms.last().unwrap() + 1;
        loop {
            // candidate > every existing term, so the new sums a_i + m are
            // pairwise distinct automatically; only clashes with old sums
            // can occur.
            if terms.iter().all(|&a| !sums.contains(&(a + candidate)))
                && !sums.contains(&(2 * candidate))
            {
                break;
            }
            candidate += 1;
        }
        for &a in &terms {
            sums.insert(a + candidate);
        }
        sums.insert(2 * candidate);
        terms.push(candidate);
    }
    Sequence::new(terms)
}

/// The threshold `max(2, 2·a_n + 1)` past which the sequence is Sidon modulo
/// every `N`. When `a_0 = 0` and the sequence has at least two terms, the
/// modular condition fails at exactly `2·a_n`.
pub fn n_zero(seq: &Sequence) -> Result<u64, SidonError> {
    if !verify_sidon(seq) {
        return Err(SidonError::NotSidon);
    }
    Ok((2 * seq.last() + 1).max(2))
}

/// The smallest `N >= 2` for which the sequence is Sidon modulo `N`.
/// Always at most [`n_zero`].
pub fn n_double_zero(seq: &Sequence) -> Result<u64, SidonError> {
    if !verify_sidon(seq) {
        return Err(SidonError::NotSidon);
    }
    let bound = (2 * seq.last() + 1).max(2);
    for n in 2..=bound {
        if verify_sidon_mod(seq, n)? {
            return Ok(n);
        }
    }
    unreachable!("a Sidon sequence is Sidon modulo n_zero")
}

/// An unordered pair of distinct admissible triples with equal alternating
/// sum mod `N`. Stored with the lexicographically smaller triple first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CollisionPair {
    pub residue: u64,
    pub first: [u64; 3],
    pub second: [u64; 3],
}

/// All unordered pairs of distinct triples `(a,b,c)` with `a != b`, `b != c`
/// (repeating `a = c` is allowed) and equal alternating sum `a - b + c`
/// modulo `n`, grouped by residue, then canonical triple order.
pub fn alternating_collisions(seq: &Sequence, n: u64) -> Result<Vec<CollisionPair>, SidonError> {
    if !verify_sidon_mod(seq, n)? {
        return Err(SidonError::NotSidonMod(n));
    }
    let t = seq.terms();
    let alt = |a: u64, b: u64, c: u64| (a % n + (n - b % n) + c % n) % n;

    let mut triples: Vec<(u64, [u64; 3])> = Vec::new();
    for &a in t {
        for &b in t {
            if b == a {
                continue;
            }
            for &c in t {
                if c == b {
                    continue;
                }
                triples.push((alt(a, b, c), [a, b, c]));
            }
        }
    }
    triples.sort_unstable();

    let mut pairs = Vec::new();
    let mut i = 0;
    while i < triples.len() {
        let mut j = i;
        while j < triples.len() && triples[j].0 == triples[i].0 {
            j += 1;
        }
        for x in i..j {
            for y in x + 1..j {
                let (first, second) = (triples[x].1, triples[y].1);
                // Sidon mod n forces the outer entries apart; a collision
                // with a = a' or c = c' would equate two distinct pair sums.
                debug_assert!(first[0] != second[0] && first[2] != second[2]);
                pairs.push(CollisionPair {
                    residue: triples[i].0,
                    first,
                    second,
                });
            }
        }
        i = j;
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn seq(terms: &[u64]) -> Sequence {
        Sequence::from_slice(terms).unwrap()
    }

    #[test]
    fn sequence_invariants() {
        assert_eq!(Sequence::new(vec![]), Err(SidonError::Empty));
        assert_eq!(Sequence::new(vec![3, 3]), Err(SidonError::NotIncreasing));
        assert_eq!(Sequence::new(vec![5, 2]), Err(SidonError::NotIncreasing));
        assert!(Sequence::new(vec![0, 2, 7]).is_ok());
    }

    #[test]
    fn verify_sidon_examples() {
        assert!(verify_sidon(&seq(&[0, 2, 7, 8, 11])));
        assert!(verify_sidon(&seq(&[0])));
        // 0 + 2 = 1 + 1
        assert!(!verify_sidon(&seq(&[0, 1, 2])));
    }

    #[test]
    fn verify_sidon_mod_examples() {
        assert_eq!(verify_sidon_mod(&seq(&[0, 2, 7]), 8), Ok(true));
        assert_eq!(verify_sidon_mod(&seq(&[0, 1, 3]), 6), Ok(false));
        assert_eq!(verify_sidon_mod(&seq(&[0, 1, 3]), 7), Ok(true));
        assert_eq!(verify_sidon_mod(&seq(&[0, 1, 3, 7, 20]), 35), Ok(true));
        assert_eq!(
            verify_sidon_mod(&seq(&[0, 1]), 1),
            Err(SidonError::ModulusTooSmall(1))
        );
    }

    #[test]
    fn greedy_extend_mian_chowla() {
        let got = greedy_extend(&seq(&[0]), 10).unwrap();
        assert_eq!(got.terms(), &[0, 1, 3, 7, 12, 20, 30, 44, 65, 80, 96]);
    }

    #[test]
    fn greedy_extend_zero_terms() {
        assert_eq!(greedy_extend(&seq(&[0, 1, 3]), 0).unwrap(), seq(&[0, 1, 3]));
    }

    #[test]
    fn greedy_extend_matches_exhaustive_scan() {
        let base = seq(&[0, 2, 7, 8, 11]);
        let extended = greedy_extend(&base, 1).unwrap();
        // Independent oracle: scan integers above 11 and test verify_sidon.
        let mut next = 12;
        loop {
            let mut terms = base.terms().to_vec();
            terms.push(next);
            if verify_sidon(&Sequence::new(terms).unwrap()) {
                break;
            }
            next += 1;
        }
        assert_eq!(extended.terms().last(), Some(&next));
    }

    #[test]
    fn greedy_extend_rejects_non_sidon() {
        assert_eq!(greedy_extend(&seq(&[0, 1, 2]), 1), Err(SidonError::NotSidon));
    }

    #[test]
    fn n_zero_examples() {
        assert_eq!(n_zero(&seq(&[0, 1, 3])), Ok(7));
        assert_eq!(n_zero(&seq(&[0, 2, 7])), Ok(15));
        assert_eq!(n_zero(&seq(&[0, 1])), Ok(3));
        assert_eq!(n_zero(&seq(&[0, 1, 2])), Err(SidonError::NotSidon));
    }

    #[test]
    fn n_double_zero_examples() {
        assert_eq!(n_double_zero(&seq(&[0, 1, 3])), Ok(7));
        assert_eq!(n_double_zero(&seq(&[0, 2, 7])), Ok(8));
        assert_eq!(n_double_zero(&seq(&[0, 1])), Ok(3));
    }

    #[test]
    fn n_double_zero_bounded_by_n_zero() {
        for terms in [&[0u64, 1, 3][..], &[0, 2, 7], &[0, 1, 3, 7], &[0, 2, 7, 8, 11]] {
            let s = seq(terms);
            assert!(n_double_zero(&s).unwrap() <= n_zero(&s).unwrap());
        }
    }

    #[test]
    fn collisions_mod_8() {
        let pairs = alternating_collisions(&seq(&[0, 1, 3]), 8).unwrap();
        assert_eq!(pairs.len(), 9);
        let res7: Vec<_> = pairs.iter().filter(|p| p.residue == 7).collect();
        assert_eq!(res7.len(), 1);
        assert_eq!(res7[0].first, [0, 1, 0]);
        assert_eq!(res7[0].second, [1, 3, 1]);
    }

    #[test]
    fn collisions_mod_7() {
        let pairs = alternating_collisions(&seq(&[0, 1, 3]), 7).unwrap();
        assert_eq!(pairs.len(), 12);
        // Each inhabited residue class (2, 4, 5, 6) holds three triples,
        // hence three unordered pairs.
        for r in [2u64, 4, 5, 6] {
            assert_eq!(pairs.iter().filter(|p| p.residue == r).count(), 3);
        }
    }

    #[test]
    fn collisions_empty_for_short_sequence() {
        assert_eq!(alternating_collisions(&seq(&[0, 1]), 3).unwrap(), vec![]);
    }

    #[test]
    fn collisions_require_sidon_mod() {
        assert_eq!(
            alternating_collisions(&seq(&[0, 1, 3]), 6),
            Err(SidonError::NotSidonMod(6))
        );
    }

    #[test]
    fn collisions_closed_under_reversal() {
        // (a,b,c) -> (c,b,a) preserves alternating sums, so it permutes the
        // collision set.
        for (terms, n) in [(&[0u64, 1, 3][..], 8), (&[0, 1, 3], 7), (&[0, 2, 7], 8)] {
            let s = seq(terms);
            let pairs = alternating_collisions(&s, n).unwrap();
            let mut reversed: Vec<CollisionPair> = pairs
                .iter()
                .map(|p| {
                    let a = [p.first[2], p.first[1], p.first[0]];
                    let b = [p.second[2], p.second[1], p.second[0]];
                    let (first, second) = if a <= b { (a, b) } else { (b, a) };
                    CollisionPair {
                        residue: p.residue,
                        first,
                        second,
                    }
                })
                .collect();
            reversed.sort_unstable();
            let mut expect = pairs.clone();
            expect.sort_unstable();
            assert_eq!(reversed, expect);
        }
    }
}
