//! Alphabets, words and the truncated free semigroup `F(g, k)`.
//!
//! Words are stored as letter indices. Rendering goes through an
//! [`Alphabet`], whose default letters are `a, b, c, ...`. The product
//! `u ∘ v` concatenates and keeps the last `k` letters.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_ALPHABET: usize = 26;

/// Largest number of words [`words_of_length`] will materialize.
pub const DEFAULT_WORD_LIMIT: u128 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    /// The alphabet `{a, b, ...}` with `size` letters.
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_ALPHABET {
            return Err(Error::AlphabetSize(size));
        }
        Ok(Alphabet {
            letters: (0..size as u8).map(|i| (b'a' + i) as char).collect(),
        })
    }

    pub fn from_letters(letters: &str) -> Result<Self> {
        let letters: Vec<char> = letters.chars().collect();
        if letters.is_empty() || letters.len() > MAX_ALPHABET {
            return Err(Error::AlphabetSize(letters.len()));
        }
        for (i, c) in letters.iter().enumerate() {
            if letters[..i].contains(c) {
                return Err(Error::DuplicateLetter(*c));
            }
        }
        Ok(Alphabet { letters })
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter(&self, index: u8) -> char {
        self.letters[index as usize]
    }

    pub fn index_of(&self, c: char) -> Result<u8> {
        self.letters
            .iter()
            .position(|&l| l == c)
            .map(|i| i as u8)
            .ok_or(Error::UnknownLetter(c))
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        s.chars()
            .map(|c| self.index_of(c))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render(&self, w: &Word) -> String {
        w.0.iter().map(|&i| self.letter(i)).collect()
    }

    pub fn as_string(&self) -> String {
        self.letters.iter().collect()
    }

    /// `g^len`, or `None` on overflow.
    pub fn count_words(&self, len: usize) -> Option<u128> {
        (self.size() as u128).checked_pow(len as u32)
    }
}

/// A finite word over an alphabet, possibly empty.
///
/// The derived ordering is lexicographic on letter indices, which for words
/// of equal length is the enumeration order of [`words_of_length`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[u8]) -> Self {
        Word(letters.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, letter: u8) -> Word {
        let mut v = self.0.clone();
        v.push(letter);
        Word(v)
    }

    pub fn prepend(&self, letter: u8) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// The suffix of length `len` (the whole word if it is shorter).
    pub fn suffix(&self, len: usize) -> Word {
        let n = self.len();
        Word(self.0[n.saturating_sub(len)..].to_vec())
    }

    /// `ξ_k`: the last `k` letters, or the word itself when it is shorter.
    pub fn truncate_suffix(&self, k: usize) -> Word {
        self.suffix(k)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_factor_of(&self, other: &Word) -> bool {
        self.is_empty() || other.0.windows(self.len()).any(|w| w == self.0.as_slice())
    }

    /// Proper suffixes, longest first, ending with `ε`.
    pub fn proper_suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len()).rev().map(move |l| self.suffix(l))
    }

    /// Index of the word among `A^len` in lexicographic order.
    pub fn rank(&self, g: usize) -> usize {
        self.0.iter().fold(0, |acc, &c| acc * g + c as usize)
    }

    pub fn from_rank(mut rank: usize, len: usize, g: usize) -> Word {
        let mut v = vec![0u8; len];
        for slot in v.iter_mut().rev() {
            *slot = (rank % g) as u8;
            rank /= g;
        }
        Word(v)
    }

    /// Shortlex order: by length, then lexicographically.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        for &c in &self.0 {
            write!(f, "{}", (b'a' + c) as char)?;
        }
        Ok(())
    }
}

/// `u ∘ v = (uv)ξ_k`, the product of `F(g, k)`.
pub fn product(u: &Word, v: &Word, k: usize) -> Result<Word> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if u.is_empty() || v.is_empty() {
        return Err(Error::EmptyWord);
    }
    if v.len() >= k {
        return Ok(v.suffix(k));
    }
    let keep = k - v.len();
    let mut out = u.suffix(keep).0;
    out.extend_from_slice(&v.0);
    Ok(Word(out))
}

/// Longest common suffix.
pub fn lcs(u: &Word, v: &Word) -> Word {
    let n = u
        .0
        .iter()
        .rev()
        .zip(v.0.iter().rev())
        .take_while(|(a, b)| a == b)
        .count();
    u.suffix(n)
}

/// Longest common suffix of a nonempty collection.
pub fn lcs_all<'a>(words: impl IntoIterator<Item = &'a Word>) -> Option<Word> {
    let mut it = words.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, w| lcs(&acc, w)))
}

/// All `g^len` words of length `len` in lexicographic order.
pub fn words_of_length(alphabet: &Alphabet, len: usize) -> Result<Vec<Word>> {
    words_of_length_bounded(alphabet, len, DEFAULT_WORD_LIMIT)
}

pub fn words_of_length_bounded(alphabet: &Alphabet, len: usize, limit: u128) -> Result<Vec<Word>> {
    let g = alphabet.size();
    let count = alphabet.count_words(len).unwrap_or(u128::MAX);
    if count > limit {
        return Err(Error::BoundExceeded {
            requested: count,
            limit,
        });
    }
    Ok((0..count as usize).map(|r| Word::from_rank(r, len, g)).collect())
}

/// All words of length at most `max_len`, shortest first, including `ε`.
pub fn words_up_to(alphabet: &Alphabet, max_len: usize) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        out.extend(words_of_length(alphabet, len)?);
    }
    Ok(out)
}

/// `u ∘ a` on ranks of `A^k`: drop the first letter, append `a`.
#[inline]
pub(crate) fn act_rank(rank: usize, letter: usize, g: usize, carrier: usize) -> usize {
    (rank * g + letter) % carrier
}
