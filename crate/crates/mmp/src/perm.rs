//! Permutations in one-line notation: parsing, reduction, left-to-right
//! maxima, pseudocycle decomposition, and exhaustive enumeration of `S_n`.
//!
//! Values and positions are both 1-based throughout.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("empty input")]
    Empty,
    #[error("invalid token `{0}`")]
    InvalidToken(String),
    #[error("duplicate value {0}")]
    DuplicateValue(usize),
    #[error("value {value} out of range 1..={n}")]
    OutOfRange { value: usize, n: usize },
    #[error("value {0} not present")]
    ValueNotPresent(usize),
    #[error("length must be at least {0}")]
    TooShort(usize),
}

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from a word, validating that it is a
    /// permutation of `1..=n`.
    pub fn new(word: Vec<usize>) -> Result<Self, PermError> {
        if word.is_empty() {
            return Err(PermError::Empty);
        }
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v < 1 || v > n {
                return Err(PermError::OutOfRange { value: v, n });
            }
            if seen[v] {
                return Err(PermError::DuplicateValue(v));
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    /// Parses the shared text format: decimal values separated by commas or
    /// whitespace, or a compact digit string (`"56418732"`) when `n <= 9`.
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let tokens: Vec<&str> = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.is_empty() {
            return Err(PermError::Empty);
        }
        // A single multi-digit token with no separators is the compact form.
        if tokens.len() == 1 && tokens[0].len() > 1 {
            let tok = tokens[0];
            let mut word = Vec::with_capacity(tok.len());
            for c in tok.chars() {
                let d = c
                    .to_digit(10)
                    .ok_or_else(|| PermError::InvalidToken(tok.to_string()))?;
                word.push(d as usize);
            }
            return Permutation::new(word);
        }
        let mut word = Vec::with_capacity(tokens.len());
        for tok in tokens {
            let v: usize = tok
                .parse()
                .map_err(|_| PermError::InvalidToken(tok.to_string()))?;
            word.push(v);
        }
        Permutation::new(word)
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Value at 1-based position `pos`.
    pub fn value_at(&self, pos: usize) -> usize {
        self.word[pos - 1]
    }

    /// 1-based position of value `v`.
    pub fn position_of(&self, v: usize) -> usize {
        self.word.iter().position(|&w| w == v).expect("value present") + 1
    }

    /// Ascending positions of the left-to-right maxima.
    pub fn left_to_right_maxima(&self) -> Vec<usize> {
        let mut best = 0;
        let mut positions = Vec::new();
        for (i, &v) in self.word.iter().enumerate() {
            if v > best {
                best = v;
                positions.push(i + 1);
            }
        }
        positions
    }

    /// Deletes the value `v` and reduces the remaining word.
    pub fn delete_value_and_reduce(&self, v: usize) -> Result<Permutation, PermError> {
        if self.n() < 2 {
            return Err(PermError::TooShort(2));
        }
        if v < 1 || v > self.n() {
            return Err(PermError::ValueNotPresent(v));
        }
        let rest: Vec<i64> = self
            .word
            .iter()
            .filter(|&&w| w != v)
            .map(|&w| w as i64)
            .collect();
        reduce(&rest)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let strs: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", strs.join(" "))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// `red()`: relabels a word of distinct integers onto `1..=k`, preserving
/// relative order. `red(3625) = 2413`.
pub fn reduce(word: &[i64]) -> Result<Permutation, PermError> {
    if word.is_empty() {
        return Err(PermError::Empty);
    }
    let mut sorted: Vec<i64> = word.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        let d = sorted.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
        return Err(PermError::DuplicateValue(d.unsigned_abs() as usize));
    }
    let reduced: Vec<usize> = word
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() + 1)
        .collect();
    Permutation::new(reduced)
}

/// Decomposition of a permutation into pseudocycles: maximal substrings each
/// starting at a left-to-right maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudocycleDecomposition {
    /// Inclusive 1-based position ranges partitioning `1..=n`.
    pub segments: Vec<(usize, usize)>,
    /// Positions of the segment starts (the left-to-right maxima).
    pub heads: Vec<usize>,
}

pub fn pseudocycle_decomposition(sigma: &Permutation) -> PseudocycleDecomposition {
    let heads = sigma.left_to_right_maxima();
    let n = sigma.n();
    let segments = heads
        .iter()
        .enumerate()
        .map(|(q, &start)| {
            let end = if q + 1 < heads.len() { heads[q + 1] - 1 } else { n };
            (start, end)
        })
        .collect();
    PseudocycleDecomposition { segments, heads }
}

/// Iterator over all of `S_n` in lexicographic order of the one-line word.
pub struct SnIter {
    current: Option<Vec<usize>>,
}

impl Iterator for SnIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let word = self.current.take()?;
        let out = Permutation { word: word.clone() };
        self.current = next_lex(word);
        Some(out)
    }
}

fn next_lex(mut w: Vec<usize>) -> Option<Vec<usize>> {
    let n = w.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    Some(w)
}

/// Yields all `n!` permutations of length `n` in lexicographic order.
pub fn enumerate_sn(n: usize) -> Result<SnIter, PermError> {
    if n == 0 {
        return Err(PermError::TooShort(1));
    }
    Ok(SnIter {
        current: Some((1..=n).collect()),
    })
}

/// Shard of `enumerate_sn(n)` fixed to a given first entry, still in
/// lexicographic order. Concatenating the shards for `first = 1..=n`
/// reproduces the serial stream.
pub fn enumerate_sn_with_first(n: usize, first: usize) -> Result<impl Iterator<Item = Permutation>, PermError> {
    if n == 0 {
        return Err(PermError::TooShort(1));
    }
    if first < 1 || first > n {
        return Err(PermError::OutOfRange { value: first, n });
    }
    Ok(enumerate_sn(n)?.filter(move |p| p.value_at(1) == first))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Permutation {
        Permutation::parse(text).unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("5 6 4 1 8 7 3 2").word(), &[5, 6, 4, 1, 8, 7, 3, 2]);
        assert_eq!(p("5,6,4,1,8,7,3,2"), p("56418732"));
        assert_eq!(p("1").word(), &[1]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Permutation::parse("1 1 2"), Err(PermError::DuplicateValue(1)));
        assert_eq!(Permutation::parse(""), Err(PermError::Empty));
        assert_eq!(
            Permutation::parse("1 5 2"),
            Err(PermError::OutOfRange { value: 5, n: 3 })
        );
        assert!(matches!(Permutation::parse("1 x 2"), Err(PermError::InvalidToken(_))));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&[3, 6, 2, 5]).unwrap(), p("2413"));
        assert_eq!(reduce(&[1, 2, 3, 4]).unwrap(), p("1234"));
        assert_eq!(reduce(&[9, 5, 12]).unwrap(), p("213"));
        assert!(reduce(&[4, 4]).is_err());
    }

    #[test]
    fn reduce_idempotent() {
        for sigma in enumerate_sn(5).unwrap() {
            let w: Vec<i64> = sigma.word().iter().map(|&v| v as i64).collect();
            assert_eq!(reduce(&w).unwrap(), sigma);
        }
    }

    #[test]
    fn ltr_maxima() {
        assert_eq!(p("56418732").left_to_right_maxima(), vec![1, 2, 5]);
        assert_eq!(p("12345").left_to_right_maxima(), vec![1, 2, 3, 4, 5]);
        assert_eq!(p("51234").left_to_right_maxima(), vec![1]);
    }

    #[test]
    fn pseudocycles() {
        let d = pseudocycle_decomposition(&p("56418732"));
        assert_eq!(d.segments, vec![(1, 1), (2, 4), (5, 8)]);
        assert_eq!(d.heads, vec![1, 2, 5]);

        let id = pseudocycle_decomposition(&p("1234"));
        assert_eq!(id.segments.len(), 4);

        let dec = pseudocycle_decomposition(&p("54321"));
        assert_eq!(dec.segments, vec![(1, 5)]);
    }

    #[test]
    fn heads_match_maxima() {
        for sigma in enumerate_sn(6).unwrap() {
            let d = pseudocycle_decomposition(&sigma);
            assert_eq!(d.heads, sigma.left_to_right_maxima());
            // segments concatenate back to 1..=n
            let mut covered = Vec::new();
            for (a, b) in &d.segments {
                covered.extend(*a..=*b);
            }
            assert_eq!(covered, (1..=6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn enumerate_small() {
        let all: Vec<String> = enumerate_sn(3).unwrap().map(|q| q.to_string()).collect();
        assert_eq!(all, vec!["123", "132", "213", "231", "312", "321"]);
        assert_eq!(enumerate_sn(1).unwrap().count(), 1);
        assert_eq!(enumerate_sn(5).unwrap().count(), 120);
        assert!(enumerate_sn(0).is_err());
    }

    #[test]
    fn enumerate_no_duplicates() {
        let mut seen = std::collections::HashSet::new();
        for sigma in enumerate_sn(6).unwrap() {
            assert!(seen.insert(sigma));
        }
        assert_eq!(seen.len(), 720);
    }

    #[test]
    fn sharded_enumeration_matches_serial() {
        let serial: Vec<Permutation> = enumerate_sn(5).unwrap().collect();
        let mut sharded = Vec::new();
        for first in 1..=5 {
            sharded.extend(enumerate_sn_with_first(5, first).unwrap());
        }
        assert_eq!(serial, sharded);
    }

    #[test]
    fn delete_and_reduce() {
        assert_eq!(p("1342").delete_value_and_reduce(1).unwrap(), p("231"));
        assert_eq!(p("21").delete_value_and_reduce(2).unwrap(), p("1"));
        assert_eq!(p("3142").delete_value_and_reduce(4).unwrap(), p("312"));
        assert!(p("1").delete_value_and_reduce(1).is_err());
        assert!(p("21").delete_value_and_reduce(5).is_err());
    }
}
