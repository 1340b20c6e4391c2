//! Permutations, words, and Hertzsprung occurrence detection.
//!
//! A permutation is stored in one-line notation over `{1..n}`.  All
//! positions in the public API are 1-based, matching the usual
//! `π(d+1)…π(d+k)` factor indexing.  A factor `b_1…b_k` of a host
//! permutation is an *occurrence* of a pattern τ when `τ(i) − b_i` is
//! constant over `i`; equivalently the factor standardizes to τ and its
//! value set is an integer interval.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors from permutation construction, parsing, and enumeration.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    /// The value sequence is not a bijection onto {1..n}.
    #[error("not a permutation of 1..{n}: {reason}")]
    NotPermutation { n: usize, reason: String },
    /// A word contained a repeated letter.
    #[error("letters are not pairwise distinct: {0} appears twice")]
    RepeatedLetter(u16),
    /// Text could not be parsed; `column` is 1-based within the input.
    #[error("cannot parse permutation at column {column}: {reason}")]
    Parse { column: usize, reason: String },
    /// An exhaustive scan was requested above the configured ceiling.
    #[error("n = {n} exceeds the brute-force ceiling {ceiling}")]
    CeilingExceeded { n: usize, ceiling: usize },
    /// `inflate` was called with the wrong number of parts.
    #[error("inflation arity mismatch: outer has length {outer}, got {parts} parts")]
    ArityMismatch { outer: usize, parts: usize },
    /// `inflate` was called with an empty part.
    #[error("inflation part {index} is empty")]
    EmptyPart { index: usize },
}

/// A permutation of `{1..n}` in one-line notation.
///
/// The empty permutation (`n = 0`) is allowed and behaves as the neutral
/// element for concatenation-style constructions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u16>,
}

impl Permutation {
    /// Validates that `values` is a bijection onto `{1..n}`.
    pub fn new(values: Vec<u16>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v as usize > n {
                return Err(PermError::NotPermutation {
                    n,
                    reason: format!("value {v} out of range"),
                });
            }
            if seen[v as usize - 1] {
                return Err(PermError::NotPermutation {
                    n,
                    reason: format!("value {v} repeated"),
                });
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { values })
    }

    /// Constructs without validation; caller guarantees the invariant.
    pub(crate) fn from_vec_unchecked(values: Vec<u16>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    /// The identity permutation `12…n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u16).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One-line notation as a slice (0-based storage of the 1-based sequence).
    pub fn values(&self) -> &[u16] {
        &self.values
    }

    /// The value at 1-based position `i`.
    pub fn at(&self, i: usize) -> u16 {
        self.values[i - 1]
    }

    /// The factor at 1-based positions `start..start+len-1`, as a word.
    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word::from_vec_unchecked(self.values[start - 1..start - 1 + len].to_vec())
    }

    /// Complement: value `v` becomes `n+1−v` at each position.
    pub fn complement(&self) -> Self {
        let n = self.len() as u16;
        Permutation {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Reversal of the one-line notation.
    pub fn reverse(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Permutation { values }
    }

    /// Lexicographic rank among all permutations of the same length,
    /// counting from 0.  Valid for `n ≤ 20` (the factorial fits in `u64`).
    pub fn lex_rank(&self) -> u64 {
        let n = self.len();
        debug_assert!(n <= 20);
        let mut rank = 0u64;
        let mut fact = (1..n as u64).product::<u64>().max(1);
        for i in 0..n {
            let smaller = self.values[i + 1..]
                .iter()
                .filter(|&&v| v < self.values[i])
                .count() as u64;
            rank += smaller * fact;
            if n - i > 1 {
                fact /= (n - i - 1) as u64;
            }
        }
        rank
    }

    /// Inverse of [`lex_rank`](Self::lex_rank).
    pub fn from_lex_rank(n: usize, mut rank: u64) -> Self {
        let mut fact: u64 = (1..=n.saturating_sub(1) as u64).product::<u64>().max(1);
        let mut pool: Vec<u16> = (1..=n as u16).collect();
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let idx = (rank / fact) as usize;
            rank %= fact;
            values.push(pool.remove(idx));
            if n - i > 1 {
                fact /= (n - i - 1) as u64;
            }
        }
        Permutation { values }
    }
}

impl fmt::Display for Permutation {
    /// Digit string for `n ≤ 9`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for &v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts both text forms: a digit string (`"45312"`) or
    /// comma-separated values (`"10,6,7,4,5,1,2,3"`).
    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        let mut values = Vec::new();
        if s.is_empty() {
            return Permutation::new(values);
        }
        if s.contains(',') {
            let mut column = 1;
            for field in s.split(',') {
                let v: u16 = field.trim().parse().map_err(|_| PermError::Parse {
                    column,
                    reason: format!("invalid value {field:?}"),
                })?;
                values.push(v);
                column += field.len() + 1;
            }
        } else {
            for (i, c) in s.chars().enumerate() {
                let d = c.to_digit(10).filter(|&d| d > 0).ok_or(PermError::Parse {
                    column: i + 1,
                    reason: format!("expected digit 1-9, found {c:?}"),
                })?;
                values.push(d as u16);
            }
        }
        Permutation::new(values)
    }
}

/// A word: a sequence of pairwise-distinct positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    letters: Vec<u16>,
}

impl Word {
    pub fn new(letters: Vec<u16>) -> Result<Self, PermError> {
        let mut sorted = letters.clone();
        sorted.sort_unstable();
        for pair in sorted.windows(2) {
            if pair[0] == pair[1] {
                return Err(PermError::RepeatedLetter(pair[0]));
            }
        }
        Ok(Word { letters })
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<u16>) -> Self {
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    /// True when the letter set is an interval `{m, m+1, …, M}` of integers.
    pub fn is_interval_valued(&self) -> bool {
        if self.letters.is_empty() {
            return true;
        }
        let min = *self.letters.iter().min().unwrap() as usize;
        let max = *self.letters.iter().max().unwrap() as usize;
        max - min + 1 == self.letters.len()
    }
}

impl From<&Permutation> for Word {
    fn from(p: &Permutation) -> Self {
        Word {
            letters: p.values().to_vec(),
        }
    }
}

/// Replaces the smallest letter by 1, the next smallest by 2, and so on.
///
/// The result is order-isomorphic to the input: `w_i < w_j ⇔ out_i < out_j`.
pub fn standardize(w: &Word) -> Permutation {
    let mut order: Vec<usize> = (0..w.len()).collect();
    order.sort_by_key(|&i| w.letters()[i]);
    let mut values = vec![0u16; w.len()];
    for (rank, &i) in order.iter().enumerate() {
        values[i] = rank as u16 + 1;
    }
    Permutation { values }
}

/// All 1-based start positions `d` such that `host(d)…host(d+k−1)` is an
/// occurrence of `pattern`, i.e. `pattern(i) − host(d+i−1)` is constant.
///
/// Positions come out ascending.  The count of positions is the statistic
/// τ(π) that the cluster method distributes over.
pub fn find_occurrences(pattern: &Permutation, host: &Permutation) -> Vec<usize> {
    let k = pattern.len();
    let n = host.len();
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    'scan: for d in 0..=n - k {
        // Constant difference pattern(1) − host(d+1) must persist across the factor.
        let shift = pattern.values[0] as i32 - host.values[d] as i32;
        for i in 1..k {
            if pattern.values[i] as i32 - host.values[d + i] as i32 != shift {
                continue 'scan;
            }
        }
        out.push(d + 1);
    }
    out
}

/// Number of occurrences of `pattern` in `host`.
pub fn count_occurrences(pattern: &Permutation, host: &Permutation) -> usize {
    find_occurrences(pattern, host).len()
}

/// True iff `host` contains no occurrence of any pattern in `patterns`.
pub fn avoids(host: &Permutation, patterns: &[Permutation]) -> bool {
    patterns
        .iter()
        .all(|p| find_occurrences(p, host).is_empty())
}

/// Inflation `outer[part_1, …, part_k]`: part `i` (in position order) is
/// shifted up by the total length of the parts whose outer value is
/// smaller than `outer(i)`, then the shifted parts are concatenated in
/// position order.
///
/// Each shifted part is an occurrence of its pattern in the result, and
/// the result length is the sum of the part lengths.
pub fn inflate(outer: &Permutation, parts: &[Permutation]) -> Result<Permutation, PermError> {
    let k = outer.len();
    if parts.len() != k {
        return Err(PermError::ArityMismatch {
            outer: k,
            parts: parts.len(),
        });
    }
    for (i, p) in parts.iter().enumerate() {
        if p.is_empty() {
            return Err(PermError::EmptyPart { index: i + 1 });
        }
    }
    // shift[p] = total length of parts at positions whose outer value is
    // smaller than outer(p+1).
    let mut by_value: Vec<usize> = (0..k).collect();
    by_value.sort_by_key(|&p| outer.values[p]);
    let mut shift = vec![0u16; k];
    let mut acc = 0u16;
    for &p in &by_value {
        shift[p] = acc;
        acc += parts[p].len() as u16;
    }
    let mut values = Vec::with_capacity(acc as usize);
    for (p, part) in parts.iter().enumerate() {
        values.extend(part.values().iter().map(|&v| v + shift[p]));
    }
    Ok(Permutation { values })
}

/// Lexicographic stream of all permutations of `{1..n}`.
///
/// `ceiling` guards against accidental factorial blow-ups; pass
/// [`crate::DEFAULT_BRUTE_CEILING`] unless a caller-specific bound applies.
pub fn enumerate_permutations(
    n: usize,
    ceiling: usize,
) -> Result<LexPermutations, PermError> {
    if n > ceiling {
        return Err(PermError::CeilingExceeded { n, ceiling });
    }
    Ok(LexPermutations {
        next: Some(Permutation::identity(n)),
    })
}

/// Iterator produced by [`enumerate_permutations`].
pub struct LexPermutations {
    next: Option<Permutation>,
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        self.next = next_lex(&current);
        Some(current)
    }
}

/// Successor in lexicographic order, or `None` from the last permutation.
fn next_lex(p: &Permutation) -> Option<Permutation> {
    let mut v = p.values.clone();
    let n = v.len();
    if n < 2 {
        return None;
    }
    // Standard next-permutation: find the rightmost ascent, swap with the
    // smallest larger value to its right, reverse the tail.
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    Some(Permutation { values: v })
}
