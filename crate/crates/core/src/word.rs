//! Reduced words in the free group `F_n` on the basis `a_1, ..., a_n`.
//!
//! Words are always stored freely reduced, so equality of group elements is
//! equality of letter sequences. The textual form writes `a3` for the
//! generator `a_3` and `A3` for its inverse; a product is written by
//! juxtaposition (`a1A2a1`) and the empty word is written `1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

/// Longest word any substitution may produce before it is aborted.
pub const MAX_WORD_LEN: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("expected {expected} images, got {actual}")]
    ImageCountMismatch { expected: usize, actual: usize },
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("word length exceeded {MAX_WORD_LEN} letters")]
    TooLong,
}

/// A basis letter `a_i` or its inverse `a_i^{-1}`, stored as `±i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter(i32);

impl Letter {
    /// `index` is 1-based.
    pub fn new(index: usize, inverse: bool) -> Self {
        assert!(index >= 1, "letter indices are 1-based");
        let i = i32::try_from(index).expect("letter index fits in i32");
        Letter(if inverse { -i } else { i })
    }

    pub fn gen(index: usize) -> Self {
        Letter::new(index, false)
    }

    pub fn inv(index: usize) -> Self {
        Letter::new(index, true)
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    /// +1 for `a_i`, -1 for `a_i^{-1}`.
    pub fn sign(self) -> i64 {
        self.0.signum() as i64
    }

    pub fn inverted(self) -> Self {
        Letter(-self.0)
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.0 == -other.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.is_inverse() { 'A' } else { 'a' };
        write!(f, "{c}{}", self.index())
    }
}

type Letters = SmallVec<[Letter; 6]>;

/// A freely reduced word of a fixed rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    rank: usize,
    letters: Letters,
}

impl Word {
    /// The empty word (group identity) of the given rank.
    pub fn identity(rank: usize) -> Self {
        Word {
            rank,
            letters: Letters::new(),
        }
    }

    /// The single-letter word `a_index` (or its inverse).
    pub fn letter(rank: usize, letter: Letter) -> Result<Self, WordError> {
        Self::from_letters(rank, [letter])
    }

    pub fn gen(rank: usize, index: usize) -> Result<Self, WordError> {
        Self::letter(rank, Letter::gen(index))
    }

    /// Builds a word from arbitrary letters, reducing eagerly.
    pub fn from_letters<I>(rank: usize, letters: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut out = Letters::new();
        for l in letters {
            if l.index() > rank {
                return Err(WordError::IndexOutOfRange {
                    index: l.index(),
                    rank,
                });
            }
            push_reduced(&mut out, l);
        }
        Ok(Word { rank, letters: out })
    }

    /// Builds a word from signed 1-based indices (`-2` is `a_2^{-1}`).
    pub fn from_signed(rank: usize, signed: &[i64]) -> Result<Self, WordError> {
        let mut letters = Vec::with_capacity(signed.len());
        for &s in signed {
            if s == 0 {
                return Err(WordError::IndexOutOfRange { index: 0, rank });
            }
            letters.push(Letter::new(s.unsigned_abs() as usize, s < 0));
        }
        Self::from_letters(rank, letters)
    }

    pub fn parse(text: &str, rank: usize) -> Result<Self, WordError> {
        let letters = parse_letters(text)?;
        Self::from_letters(rank, letters)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Signed indices, the inverse of [`Word::from_signed`].
    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.0 as i64).collect()
    }

    /// Free-group product `self · other`.
    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Ok(Word {
            rank: self.rank,
            letters: out,
        })
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Homomorphic substitution `a_i ↦ images[i-1]`, fully reduced.
    ///
    /// Images may have a rank different from `self`; the result takes the
    /// images' rank.
    pub fn apply_map(&self, images: &[Word]) -> Result<Word, WordError> {
        if images.len() != self.rank {
            return Err(WordError::ImageCountMismatch {
                expected: self.rank,
                actual: images.len(),
            });
        }
        let target = images.first().map_or(self.rank, Word::rank);
        if let Some(bad) = images.iter().find(|w| w.rank != target) {
            return Err(WordError::RankMismatch {
                left: target,
                right: bad.rank,
            });
        }
        let mut out = Letters::new();
        for l in &self.letters {
            let image = &images[l.index() - 1];
            if l.is_inverse() {
                for &m in image.letters.iter().rev() {
                    push_reduced(&mut out, m.inverted());
                }
            } else {
                for &m in &image.letters {
                    push_reduced(&mut out, m);
                }
            }
            if out.len() > MAX_WORD_LEN {
                return Err(WordError::TooLong);
            }
        }
        Ok(Word {
            rank: target,
            letters: out,
        })
    }

    /// Exponent sum of each generator, indexed from 0.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.rank];
        for l in &self.letters {
            sums[l.index() - 1] += l.sign();
        }
        sums
    }
}

fn push_reduced(out: &mut Letters, l: Letter) {
    match out.last() {
        Some(&last) if last.cancels(l) => {
            out.pop();
        }
        _ => out.push(l),
    }
}

fn parse_letters(text: &str) -> Result<Vec<Letter>, WordError> {
    let bytes = text.as_bytes();
    let trimmed = text.trim();
    if trimmed == "1" {
        return Ok(Vec::new());
    }
    let mut letters = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let inverse = match c {
            b'a' => false,
            b'A' => true,
            _ => {
                return Err(WordError::Syntax {
                    offset: i,
                    message: format!("expected 'a' or 'A', found {:?}", c as char),
                })
            }
        };
        let start = i + 1;
        let mut end = start;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == start {
            return Err(WordError::Syntax {
                offset: start,
                message: "expected generator index".into(),
            });
        }
        let index: usize = text[start..end].parse().map_err(|_| WordError::Syntax {
            offset: start,
            message: "generator index too large".into(),
        })?;
        if index == 0 {
            return Err(WordError::Syntax {
                offset: start,
                message: "generator indices start at 1".into(),
            });
        }
        letters.push(Letter::new(index, inverse));
        i = end;
    }
    if letters.is_empty() {
        return Err(WordError::Syntax {
            offset: 0,
            message: "empty input; write 1 for the identity".into(),
        });
    }
    Ok(letters)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Parses with the rank set to the largest index that appears.
impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = parse_letters(s)?;
        let rank = letters.iter().map(|l| l.index()).max().unwrap_or(0);
        Word::from_letters(rank, letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, rank: usize) -> Word {
        Word::parse(s, rank).unwrap()
    }

    #[test]
    fn concat_cancels() {
        assert_eq!(w("a1", 3).concat(&w("A1", 3)).unwrap(), Word::identity(3));
        assert_eq!(w("a1a2", 3).concat(&w("A2a3", 3)).unwrap(), w("a1a3", 3));
        let x = w("a2A3a1", 3);
        assert_eq!(Word::identity(3).concat(&x).unwrap(), x);
    }

    #[test]
    fn concat_rank_mismatch() {
        let err = w("a1", 2).concat(&w("a1", 3)).unwrap_err();
        assert_eq!(err, WordError::RankMismatch { left: 2, right: 3 });
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("a1a2", 2).inverse(), w("A2A1", 2));
        assert_eq!(Word::identity(2).inverse(), Word::identity(2));
        assert_eq!(w("A1", 2).inverse(), w("a1", 2));
    }

    #[test]
    fn apply_map_examples() {
        // R_1 on rank 2: a1 -> A2, a2 -> A2 a1
        let r1 = [w("A2", 2), w("A2a1", 2)];
        assert_eq!(w("a1", 2).apply_map(&r1).unwrap(), w("A2", 2));
        assert_eq!(w("a1a2", 2).apply_map(&r1).unwrap(), w("A2A2a1", 2));
        let e1 = [w("A1", 2), w("a2", 2)];
        assert_eq!(w("a1a1", 2).apply_map(&e1).unwrap(), w("A1A1", 2));
    }

    #[test]
    fn apply_map_errors() {
        let err = w("a1", 2).apply_map(&[w("a1", 2)]).unwrap_err();
        assert_eq!(
            err,
            WordError::ImageCountMismatch {
                expected: 2,
                actual: 1
            }
        );
    }

    #[test]
    fn apply_map_length_guard() {
        // a1 -> a1 a1 repeatedly doubles the length.
        let images = [w("a1a1", 1)];
        let mut x = w("a1", 1);
        let mut hit = false;
        for _ in 0..25 {
            match x.apply_map(&images) {
                Ok(y) => x = y,
                Err(e) => {
                    assert_eq!(e, WordError::TooLong);
                    hit = true;
                    break;
                }
            }
        }
        assert!(hit);
    }

    #[test]
    fn parse_print_round_trip() {
        for s in ["1", "a1", "A3", "a1A2a1", "a12A10"] {
            assert_eq!(w(s, 12).to_string(), s);
        }
        // Input is reduced on construction.
        assert_eq!(w("a1A1a2", 2).to_string(), "a2");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Word::parse("a1b2", 3),
            Err(WordError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            Word::parse("a", 3),
            Err(WordError::Syntax { offset: 1, .. })
        ));
        assert!(matches!(
            Word::parse("a0", 3),
            Err(WordError::Syntax { .. })
        ));
        assert_eq!(
            Word::parse("a4", 3),
            Err(WordError::IndexOutOfRange { index: 4, rank: 3 })
        );
        assert!(Word::parse("", 3).is_err());
    }

    #[test]
    fn from_str_infers_rank() {
        let x: Word = "a1A5".parse().unwrap();
        assert_eq!(x.rank(), 5);
    }
}
