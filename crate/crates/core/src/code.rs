//! Semaphore codes, ideals of `A*` containing `A^k`, and special right
//! congruences.
//!
//! An ideal `I` with `A^k ⊆ I` is determined by its suffix-minimal elements,
//! a finite semaphore code whose words have length at most `k`. That code is
//! the only representation of ideals used here ([`IdealRep`]).

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::congruence::RightCongruence;
use crate::error::{Error, Result};
use crate::graph::{resets, AGraph};
use crate::words::{lcs, lcs_all, words_of_length, words_up_to, Alphabet, Word};

/// Largest number of ideals [`enumerate_ideals`] will produce.
pub const MAX_IDEALS: usize = 1 << 20;

/// Outcome of [`is_semaphore`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemaphoreDiagnosis {
    Semaphore,
    /// `shorter` is a proper suffix of `longer`.
    NotSuffixCode { shorter: Word, longer: Word },
    /// `word · letter` has no suffix in the set.
    NoSuffix { word: Word, letter: u8 },
}

impl SemaphoreDiagnosis {
    pub fn is_semaphore(&self) -> bool {
        matches!(self, SemaphoreDiagnosis::Semaphore)
    }

    pub fn describe(&self, alphabet: &Alphabet) -> String {
        match self {
            SemaphoreDiagnosis::Semaphore => "semaphore code".into(),
            SemaphoreDiagnosis::NotSuffixCode { shorter, longer } => format!(
                "{} is a suffix of {}",
                alphabet.render(shorter),
                alphabet.render(longer)
            ),
            SemaphoreDiagnosis::NoSuffix { word, letter } => format!(
                "{}{} has no suffix in the code",
                alphabet.render(word),
                alphabet.letter(*letter)
            ),
        }
    }
}

fn sorted_dedup(mut words: Vec<Word>) -> Vec<Word> {
    words.sort_by(|a, b| a.shortlex_cmp(b));
    words.dedup();
    words
}

/// Check that `words` is a suffix code with `SA ⊆ A*S`.
pub fn is_semaphore(alphabet: &Alphabet, words: &[Word]) -> SemaphoreDiagnosis {
    is_semaphore_up_to(alphabet, words, usize::MAX)
}

/// Like [`is_semaphore`], but only words shorter than `max_len` are required
/// to have their right action inside the set. Use this on codes enumerated
/// up to `max_len` whose continuation was cut off.
pub fn is_semaphore_up_to(alphabet: &Alphabet, words: &[Word], max_len: usize) -> SemaphoreDiagnosis {
    let words = sorted_dedup(words.to_vec());
    let set: HashSet<&Word> = words.iter().collect();
    for longer in &words {
        if let Some(shorter) = longer.proper_suffixes().find(|s| set.contains(s)) {
            return SemaphoreDiagnosis::NotSuffixCode {
                shorter,
                longer: longer.clone(),
            };
        }
    }
    for word in words.iter().filter(|w| w.len() < max_len) {
        for letter in 0..alphabet.size() as u8 {
            let extended = word.push(letter);
            let hit = (0..=extended.len()).any(|l| set.contains(&extended.suffix(l)));
            if !hit {
                return SemaphoreDiagnosis::NoSuffix {
                    word: word.clone(),
                    letter,
                };
            }
        }
    }
    SemaphoreDiagnosis::Semaphore
}

/// A finite semaphore code, words kept in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemaphoreCode {
    alphabet: Alphabet,
    words: Vec<Word>,
}

impl SemaphoreCode {
    pub fn new(alphabet: Alphabet, words: Vec<Word>) -> Result<Self> {
        let diagnosis = is_semaphore(&alphabet, &words);
        if !diagnosis.is_semaphore() {
            return Err(Error::NotSemaphore(diagnosis.describe(&alphabet)));
        }
        Ok(Self::new_unchecked(alphabet, words))
    }

    pub(crate) fn new_unchecked(alphabet: Alphabet, words: Vec<Word>) -> Self {
        SemaphoreCode {
            alphabet,
            words: sorted_dedup(words),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_epsilon(&self) -> bool {
        self.words.len() == 1 && self.words[0].is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search_by(|x| x.shortlex_cmp(w)).is_ok()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.words.binary_search_by(|x| x.shortlex_cmp(w)).ok()
    }

    /// The suffix of `w` lying in the code, if any (unique for a suffix code).
    pub fn suffix_in_code(&self, w: &Word) -> Option<Word> {
        (0..=w.len()).map(|l| w.suffix(l)).find(|s| self.contains(s))
    }

    /// `s.a`: the unique suffix of `sa` in the code.
    pub fn action(&self, s: &Word, letter: u8) -> Result<Word> {
        if self.is_epsilon() {
            return Err(Error::EpsilonCode);
        }
        if !self.contains(s) {
            return Err(Error::NotInCode(self.alphabet.render(s)));
        }
        self.suffix_in_code(&s.push(letter))
            .ok_or_else(|| Error::Internal("semaphore code without right action".into()))
    }

    /// The walk graph: one vertex per code word, `s --a--> s.a`.
    pub fn action_graph(&self) -> Result<AGraph> {
        if self.is_epsilon() {
            return Err(Error::EpsilonCode);
        }
        let table = self
            .words
            .iter()
            .map(|s| {
                (0..self.alphabet.size() as u8)
                    .map(|a| {
                        let t = self.action(s, a)?;
                        Ok(self.index_of(&t).expect("action stays in the code"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = self.render();
        AGraph::with_labels(self.alphabet.clone(), labels, table)
    }

    pub fn render(&self) -> Vec<String> {
        self.words.iter().map(|w| self.alphabet.render(w)).collect()
    }
}

impl fmt::Display for SemaphoreCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.render().join(","))
    }
}

/// Result of [`from_generators`]: the code `XA* \ A⁺XA*` cut at `max_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedCode {
    pub alphabet: Alphabet,
    /// Words of the code of length at most `max_len`, shortlex order.
    pub words: Vec<Word>,
    pub max_len: usize,
    /// True when the code has words longer than `max_len`.
    pub infinite_tail: bool,
}

impl GeneratedCode {
    /// The closed part passes the truncation-aware semaphore check.
    pub fn diagnosis(&self) -> SemaphoreDiagnosis {
        if self.infinite_tail {
            is_semaphore_up_to(&self.alphabet, &self.words, self.max_len)
        } else {
            is_semaphore(&self.alphabet, &self.words)
        }
    }

    /// `S_k`: see [`restrict_k`]. Needs the code enumerated at least to length `k`.
    pub fn restrict_k(&self, k: usize) -> Result<IdealRep> {
        if self.max_len < k && self.infinite_tail {
            return Err(Error::ParameterMismatch(format!(
                "code enumerated to length {} < k = {k}",
                self.max_len
            )));
        }
        restrict_words(&self.alphabet, &self.words, k)
    }
}

/// `w` lies in `XA*` but not in `A⁺XA*`: it starts with a generator and no
/// generator occurs at a later position.
fn in_generated_code(w: &Word, generators: &[Word]) -> bool {
    let starts = generators.iter().any(|x| x.is_prefix_of(w));
    let later = generators.iter().any(|x| {
        (1..=w.len().saturating_sub(x.len())).any(|i| &w.letters()[i..i + x.len()] == x.letters())
    });
    starts && !later
}

/// The semaphore code `XA* \ A⁺XA*`, enumerated up to `max_len`.
///
/// Every code word extends its shortest generator prefix letter by letter
/// through code words, so a breadth-first extension from the generators
/// reaches all of them.
pub fn from_generators(alphabet: &Alphabet, generators: &[Word], max_len: usize) -> GeneratedCode {
    let mut frontier: Vec<Word> = sorted_dedup(
        generators
            .iter()
            .filter(|x| x.len() <= max_len && in_generated_code(x, generators))
            .cloned()
            .collect(),
    );
    let mut found: BTreeSet<Word> = frontier.iter().cloned().collect();
    let mut infinite_tail = false;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..alphabet.size() as u8 {
                let e = w.push(a);
                if !in_generated_code(&e, generators) {
                    continue;
                }
                if e.len() > max_len {
                    infinite_tail = true;
                } else if found.insert(e.clone()) {
                    next.push(e);
                }
            }
        }
        frontier = next;
    }
    GeneratedCode {
        alphabet: alphabet.clone(),
        words: sorted_dedup(found.into_iter().collect()),
        max_len,
        infinite_tail,
    }
}

/// `S' = (S ∩ A^{≤k}) ∪ (A^k \ A*S)` on an arbitrary word set, without
/// validating the result.
pub fn complete_to_length(alphabet: &Alphabet, words: &[Word], k: usize) -> Result<Vec<Word>> {
    let short: Vec<Word> = words.iter().filter(|w| w.len() <= k).cloned().collect();
    let mut out = short.clone();
    for w in words_of_length(alphabet, k)? {
        if !short.iter().any(|s| s.is_suffix_of(&w)) {
            out.push(w);
        }
    }
    Ok(sorted_dedup(out))
}

/// `S_k ∈ Sem(A^k)`: keep the code words of length at most `k` and add the
/// words of length `k` left without a suffix in the code.
pub fn restrict_k(code: &SemaphoreCode, k: usize) -> Result<IdealRep> {
    restrict_words(code.alphabet(), code.words(), k)
}

fn restrict_words(alphabet: &Alphabet, words: &[Word], k: usize) -> Result<IdealRep> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if words.iter().any(Word::is_empty) {
        return Err(Error::EpsilonCode);
    }
    let completed = complete_to_length(alphabet, words, k)?;
    IdealRep::new(SemaphoreCode::new(alphabet.clone(), completed)?, k)
}

/// An ideal `I` of `A*` with `A^k ⊆ I`, stored as its suffix-minimal code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealRep {
    code: SemaphoreCode,
    k: usize,
}

impl IdealRep {
    pub fn new(code: SemaphoreCode, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        if let Some(w) = code.words().iter().find(|w| w.len() > k) {
            return Err(Error::CodeTooLong(code.alphabet().render(w)));
        }
        for w in words_of_length(code.alphabet(), k)? {
            if code.suffix_in_code(&w).is_none() {
                return Err(Error::NotCovering {
                    word: code.alphabet().render(&w),
                    k,
                });
            }
        }
        Ok(IdealRep { code, k })
    }

    pub(crate) fn from_code_unchecked(alphabet: Alphabet, k: usize, words: Vec<Word>) -> Self {
        IdealRep {
            code: SemaphoreCode::new_unchecked(alphabet, words),
            k,
        }
    }

    /// Parse-and-validate convenience.
    pub fn from_words(alphabet: &Alphabet, k: usize, words: Vec<Word>) -> Result<Self> {
        Self::new(SemaphoreCode::new(alphabet.clone(), words)?, k)
    }

    /// The ideal whose elements of length at most `k` satisfy `member`.
    ///
    /// Fails unless the selection is closed under adding a letter on either
    /// side and contains `A^k`.
    pub fn from_members(alphabet: &Alphabet, k: usize, member: impl Fn(&Word) -> bool) -> Result<Self> {
        let all = words_up_to(alphabet, k)?;
        let chosen: HashSet<&Word> = all.iter().filter(|w| member(w)).collect();
        for w in &all {
            if w.len() == k && !chosen.contains(w) {
                return Err(Error::NotCovering {
                    word: alphabet.render(w),
                    k,
                });
            }
            if w.len() < k && chosen.contains(w) {
                for a in 0..alphabet.size() as u8 {
                    if !chosen.contains(&w.push(a)) || !chosen.contains(&w.prepend(a)) {
                        return Err(Error::NotClosed("two-sided multiplication"));
                    }
                }
            }
        }
        let code = all
            .iter()
            .filter(|w| chosen.contains(w) && !w.proper_suffixes().any(|s| chosen.contains(&s)))
            .cloned()
            .collect();
        Ok(Self::from_code_unchecked(alphabet.clone(), k, code))
    }

    /// `A*XA* ∪ A^kA*`.
    pub fn generated_by(alphabet: &Alphabet, k: usize, generators: &[Word]) -> Result<Self> {
        Self::from_members(alphabet, k, |w| w.len() == k || generators.iter().any(|x| x.is_factor_of(w)))
    }

    /// Bottom element `A^kA*`.
    pub fn bottom(alphabet: &Alphabet, k: usize) -> Result<Self> {
        Self::generated_by(alphabet, k, &[])
    }

    /// Top element `A*`, code `{ε}`.
    pub fn top(alphabet: &Alphabet, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        Ok(Self::from_code_unchecked(alphabet.clone(), k, vec![Word::empty()]))
    }

    pub fn code(&self) -> &SemaphoreCode {
        &self.code
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.code.alphabet()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Membership in `A*C`.
    pub fn contains(&self, w: &Word) -> bool {
        self.code.suffix_in_code(w).is_some()
    }

    pub fn is_subset_of(&self, other: &IdealRep) -> bool {
        self.code.words().iter().all(|w| other.contains(w))
    }

    pub fn intersection(&self, other: &IdealRep) -> Result<IdealRep> {
        self.same_parameters(other)?;
        Self::from_members(self.alphabet(), self.k, |w| self.contains(w) && other.contains(w))
    }

    pub fn union(&self, other: &IdealRep) -> Result<IdealRep> {
        self.same_parameters(other)?;
        Self::from_members(self.alphabet(), self.k, |w| self.contains(w) || other.contains(w))
    }

    fn same_parameters(&self, other: &IdealRep) -> Result<()> {
        if self.alphabet() != other.alphabet() || self.k != other.k {
            return Err(Error::ParameterMismatch("ideals over different (A, k)".into()));
        }
        Ok(())
    }
}

/// Group the words of `A^k` by their suffix in a suffix code covering `A^k`.
fn bucket_by_code(alphabet: &Alphabet, k: usize, code: &SemaphoreCode) -> Result<Vec<usize>> {
    words_of_length(alphabet, k)?
        .iter()
        .map(|u| {
            let mut hits = (0..=k).map(|l| u.suffix(l)).filter_map(|s| code.index_of(&s));
            match (hits.next(), hits.next()) {
                (Some(i), None) => Ok(i),
                (None, _) => Err(Error::NotCovering {
                    word: alphabet.render(u),
                    k,
                }),
                (Some(_), Some(_)) => Err(Error::NotSemaphore(format!(
                    "{} has two suffixes in the code",
                    alphabet.render(u)
                ))),
            }
        })
        .collect()
}

/// `τ_I`: words of `A^k` related when they share a suffix in `I`.
pub fn tau_of(ideal: &IdealRep) -> RightCongruence {
    let labels = bucket_by_code(ideal.alphabet(), ideal.k(), ideal.code()).expect("ideal code covers A^k exactly once");
    let rc = RightCongruence::from_labels_unchecked(ideal.alphabet(), ideal.k(), &labels);
    debug_assert!(RightCongruence::from_labels(ideal.alphabet(), ideal.k(), &labels).is_ok());
    rc
}

/// The blocks of `τ_L` for the left ideal `L = A*B` with suffix-code basis
/// `B`. Only an equivalence relation in general; it is a right congruence
/// exactly when `L` is an ideal.
pub fn tau_of_left_ideal(alphabet: &Alphabet, k: usize, basis: &[Word]) -> Result<Vec<Vec<Word>>> {
    let code = SemaphoreCode::new_unchecked(alphabet.clone(), basis.to_vec());
    let labels = bucket_by_code(alphabet, k, &code)?;
    Ok(RightCongruence::from_labels_unchecked(alphabet, k, &labels).blocks())
}

/// `Λ_ρ`, `Λ'_ρ` and the ideal they generate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambdas {
    /// `lcs` of each class, indexed by class.
    pub per_class: Vec<Word>,
    /// `Λ_ρ` as a set, shortlex order.
    pub lambda: Vec<Word>,
    /// `Λ'_ρ`: `lcs(u, v)` over related pairs, shortlex order.
    pub lambda_pairs: Vec<Word>,
    /// `A*Λ_ρ`, which equals `A*Λ'_ρ`.
    pub ideal: IdealRep,
}

pub fn lambda_of(rc: &RightCongruence) -> Result<Lambdas> {
    let blocks = rc.blocks();
    let per_class: Vec<Word> = blocks.iter().map(|b| lcs_all(b).expect("classes are nonempty")).collect();
    let lambda = sorted_dedup(per_class.clone());
    let mut pairs = BTreeSet::new();
    for b in &blocks {
        for (i, u) in b.iter().enumerate() {
            for v in &b[i..] {
                pairs.insert(lcs(u, v));
            }
        }
    }
    let lambda_pairs = sorted_dedup(pairs.into_iter().collect());
    let ideal = IdealRep::from_members(rc.alphabet(), rc.k(), |w| lambda.iter().any(|s| s.is_suffix_of(w)))
        .map_err(|e| Error::Internal(format!("A*Λ is not an ideal in I_k(A): {e}")))?;
    let ideal_pairs = IdealRep::from_members(rc.alphabet(), rc.k(), |w| lambda_pairs.iter().any(|s| s.is_suffix_of(w)))
        .map_err(|e| Error::Internal(format!("A*Λ' is not an ideal in I_k(A): {e}")))?;
    if ideal != ideal_pairs {
        return Err(Error::Internal("A*Λ differs from A*Λ'".into()));
    }
    Ok(Lambdas {
        per_class,
        lambda,
        lambda_pairs,
        ideal,
    })
}

fn require_binary(rc: &RightCongruence) -> Result<()> {
    if rc.alphabet().size() < 2 {
        return Err(Error::UnaryAlphabet);
    }
    Ok(())
}

/// Whether `ρ` is special: `lcs` is injective on classes and `Λ_ρ` is a
/// suffix code. Cross-checked against `ρ = τ_{Res(ρ)}`.
pub fn is_special(rc: &RightCongruence) -> Result<bool> {
    require_binary(rc)?;
    let lambdas = lambda_of(rc)?;
    let injective = lambdas.lambda.len() == lambdas.per_class.len();
    let suffix_code = !matches!(
        is_semaphore_up_to(rc.alphabet(), &lambdas.lambda, 0),
        SemaphoreDiagnosis::NotSuffixCode { .. }
    );
    let by_lcs = injective && suffix_code;
    let by_resets = tau_of(&resets(rc)) == *rc;
    if by_lcs != by_resets {
        return Err(Error::Internal(format!(
            "special-congruence tests disagree on {rc}: lcs says {by_lcs}, resets say {by_resets}"
        )));
    }
    Ok(by_lcs)
}

/// `ρ̲ = τ_{Res(ρ)}`, the largest special congruence below `ρ`.
pub fn lower_approx(rc: &RightCongruence) -> Result<(RightCongruence, IdealRep)> {
    require_binary(rc)?;
    let ideal = resets(rc);
    Ok((tau_of(&ideal), ideal))
}

/// `ρ̄ = τ_{A*Λ_ρ}`, the smallest special congruence above `ρ`.
pub fn upper_approx(rc: &RightCongruence) -> Result<(RightCongruence, IdealRep)> {
    require_binary(rc)?;
    let ideal = lambda_of(rc)?.ideal;
    Ok((tau_of(&ideal), ideal))
}

/// Every ideal in `I_k(A)`.
///
/// Such an ideal is fixed by its words shorter than `k`, which form a set
/// closed under adding a letter on either side (with `A^k` always present).
/// Words are decided longest first, so a word may join only once all of its
/// one-letter extensions have.
pub fn enumerate_ideals(alphabet: &Alphabet, k: usize) -> Result<Vec<IdealRep>> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let g = alphabet.size();
    let mut short: Vec<Word> = words_up_to(alphabet, k - 1)?;
    short.reverse();
    let index: std::collections::HashMap<Word, usize> = short.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let extensions: Vec<Vec<usize>> = short
        .iter()
        .map(|w| {
            (0..g as u8)
                .flat_map(|a| [w.push(a), w.prepend(a)])
                .filter_map(|e| index.get(&e).copied())
                .collect()
        })
        .collect();
    let mut chosen = vec![false; short.len()];
    let mut out = Vec::new();
    let mut overflow = false;
    fn rec(
        i: usize,
        chosen: &mut Vec<bool>,
        extensions: &[Vec<usize>],
        emit: &mut dyn FnMut(&[bool]) -> bool,
    ) -> bool {
        if i == chosen.len() {
            return emit(chosen);
        }
        chosen[i] = false;
        if !rec(i + 1, chosen, extensions, emit) {
            return false;
        }
        if extensions[i].iter().all(|&e| chosen[e]) {
            chosen[i] = true;
            let go_on = rec(i + 1, chosen, extensions, emit);
            chosen[i] = false;
            return go_on;
        }
        true
    }
    let mut emit = |chosen: &[bool]| {
        if out.len() >= MAX_IDEALS {
            overflow = true;
            return false;
        }
        let members: HashSet<&Word> = short.iter().zip(chosen).filter(|(_, &c)| c).map(|(w, _)| w).collect();
        let ideal = IdealRep::from_members(alphabet, k, |w| w.len() >= k || members.contains(w))
            .expect("up-sets of the factor order are ideals");
        out.push(ideal);
        true
    };
    rec(0, &mut chosen, &extensions, &mut emit);
    if overflow {
        return Err(Error::BoundExceeded {
            requested: MAX_IDEALS as u128 + 1,
            limit: MAX_IDEALS as u128,
        });
    }
    Ok(out)
}

/// `SRC(A^k)`: `τ_I` for every `I ∈ I_k(A)`, canonical order.
pub fn src_lattice(alphabet: &Alphabet, k: usize) -> Result<Vec<RightCongruence>> {
    if alphabet.size() < 2 {
        return Err(Error::UnaryAlphabet);
    }
    let mut out: Vec<RightCongruence> = enumerate_ideals(alphabet, k)?.iter().map(tau_of).collect();
    out.sort_by(|a, b| a.labels().cmp(b.labels()));
    Ok(out)
}
