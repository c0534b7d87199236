//! JSON interchange formats.
//!
//! Words are plain strings over the declared alphabet; the empty word is
//! `""`. Rationals are `"num/den"` strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::code::{GeneratedCode, IdealRep, SemaphoreCode};
use crate::congruence::RightCongruence;
use crate::error::{Error, Result};
use crate::walks::{format_rational, parse_rational, LetterDistribution, ResetProfile};
use crate::words::{Alphabet, Word};

pub fn from_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn parse_word(alphabet: &Alphabet, s: &str) -> Result<Word> {
    if s == "ε" {
        return Ok(Word::empty());
    }
    alphabet.parse_word(s)
}

/// `{"alphabet": "ab", "k": 3, "blocks": [["aaa","aba"], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceJson {
    pub alphabet: String,
    pub k: usize,
    pub blocks: Vec<Vec<String>>,
}

impl CongruenceJson {
    pub fn from_congruence(rc: &RightCongruence) -> Self {
        CongruenceJson {
            alphabet: rc.alphabet().as_string(),
            k: rc.k(),
            blocks: rc.render_blocks(),
        }
    }

    fn parts(&self) -> Result<(Alphabet, Vec<Vec<Word>>)> {
        let alphabet = Alphabet::from_letters(&self.alphabet)?;
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|w| alphabet.parse_word(w)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok((alphabet, blocks))
    }

    /// Validate into a right congruence.
    pub fn to_congruence(&self) -> Result<RightCongruence> {
        let (alphabet, blocks) = self.parts()?;
        RightCongruence::from_blocks(&alphabet, self.k, &blocks)
    }

    /// Only check that the blocks partition `A^k`.
    pub fn to_partition(&self) -> Result<RightCongruence> {
        let (alphabet, blocks) = self.parts()?;
        RightCongruence::partition_from_blocks(&alphabet, self.k, &blocks)
    }
}

/// `{"alphabet": "ab", "k": 3, "pairs": [["aab","bab"], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsJson {
    pub alphabet: String,
    pub k: usize,
    pub pairs: Vec<(String, String)>,
}

impl PairsJson {
    pub fn generate(&self) -> Result<RightCongruence> {
        let alphabet = Alphabet::from_letters(&self.alphabet)?;
        let pairs = self
            .pairs
            .iter()
            .map(|(u, v)| Ok((alphabet.parse_word(u)?, alphabet.parse_word(v)?)))
            .collect::<Result<Vec<_>>>()?;
        RightCongruence::generate(&alphabet, self.k, &pairs)
    }
}

/// `{"alphabet": "ab", "k": 3, "code": ["b","ba","aaa","baa"]}`
///
/// `k` is absent for codes not tied to a length; `infinite_tail` marks a
/// truncated enumeration; `epsilon` flags the code `{ε}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub alphabet: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub code: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub infinite_tail: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub epsilon: bool,
}

impl CodeJson {
    pub fn from_code(code: &SemaphoreCode, k: Option<usize>) -> Self {
        CodeJson {
            alphabet: code.alphabet().as_string(),
            k,
            code: code.render(),
            infinite_tail: false,
            epsilon: code.is_epsilon(),
        }
    }

    pub fn from_ideal(ideal: &IdealRep) -> Self {
        Self::from_code(ideal.code(), Some(ideal.k()))
    }

    pub fn from_generated(g: &GeneratedCode) -> Self {
        CodeJson {
            alphabet: g.alphabet.as_string(),
            k: None,
            code: g.words.iter().map(|w| g.alphabet.render(w)).collect(),
            infinite_tail: g.infinite_tail,
            epsilon: g.words.len() == 1 && g.words[0].is_empty(),
        }
    }

    pub fn words(&self) -> Result<(Alphabet, Vec<Word>)> {
        let alphabet = Alphabet::from_letters(&self.alphabet)?;
        let words = self
            .code
            .iter()
            .map(|w| parse_word(&alphabet, w))
            .collect::<Result<Vec<_>>>()?;
        Ok((alphabet, words))
    }

    pub fn to_code(&self) -> Result<SemaphoreCode> {
        if self.infinite_tail {
            return Err(Error::NotSemaphore("truncated code".into()));
        }
        let (alphabet, words) = self.words()?;
        SemaphoreCode::new(alphabet, words)
    }

    /// Requires `k`.
    pub fn to_ideal(&self) -> Result<IdealRep> {
        let k = self.k.ok_or_else(|| Error::Parse("code has no \"k\"".into()))?;
        IdealRep::new(self.to_code()?, k)
    }
}

/// `{"P": ["1/2","3/4","1"], "t": "7/4"}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    #[serde(rename = "P")]
    pub cumulative: Vec<String>,
    pub t: String,
}

impl ProfileJson {
    pub fn from_profile(p: &ResetProfile) -> Self {
        let (cumulative, t) = p.render();
        ProfileJson { cumulative, t }
    }
}

/// `{"a": "1/3", "b": "2/3"}`
pub fn distribution_to_json(pi: &LetterDistribution) -> BTreeMap<String, String> {
    pi.to_map().into_iter().map(|(c, p)| (c.to_string(), p)).collect()
}

pub fn distribution_from_json(alphabet: &Alphabet, map: &BTreeMap<String, String>) -> Result<LetterDistribution> {
    let mut parsed = BTreeMap::new();
    for (letter, p) in map {
        let mut chars = letter.chars();
        let c = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => return Err(Error::Parse(format!("bad letter {letter:?}"))),
        };
        parsed.insert(c, parse_rational(p)?);
    }
    LetterDistribution::from_map(alphabet, &parsed)
}

pub fn rationals(values: &[num_rational::BigRational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}
