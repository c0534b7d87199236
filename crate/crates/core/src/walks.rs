//! Random walks driven by Bernoulli letter sources, in exact arithmetic.
//!
//! A letter source `π` drives a walk on the states of a semaphore code (or on
//! the classes of a right congruence) through the right action. Everything
//! analytic is a [`BigRational`]; floats show up only in [`simulate`].

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{lower_approx, SemaphoreCode};
use crate::congruence::RightCongruence;
use crate::error::{Error, Result};
use crate::graph::{resets, AGraph};
use crate::words::{words_of_length, Alphabet, Word};

/// Render as `"num/den"`, or `"n"` for integers.
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let q = BigRational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    if q.denom().is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(q)
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A Bernoulli distribution on the letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterDistribution {
    alphabet: Alphabet,
    probs: Vec<BigRational>,
}

impl LetterDistribution {
    pub fn new(alphabet: &Alphabet, probs: Vec<BigRational>) -> Result<Self> {
        if probs.len() != alphabet.size() {
            return Err(Error::Distribution(format!(
                "{} probabilities for {} letters",
                probs.len(),
                alphabet.size()
            )));
        }
        if let Some(p) = probs.iter().find(|p| *p < &BigRational::zero() || *p > &BigRational::one()) {
            return Err(Error::Distribution(format!("probability {p} outside [0, 1]")));
        }
        let total: BigRational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::Distribution(format!("probabilities sum to {total}")));
        }
        Ok(LetterDistribution {
            alphabet: alphabet.clone(),
            probs,
        })
    }

    pub fn uniform(alphabet: &Alphabet) -> Self {
        let g = alphabet.size() as i64;
        LetterDistribution {
            alphabet: alphabet.clone(),
            probs: vec![ratio(1, g); g as usize],
        }
    }

    /// Parse `a=1/3,b=2/3`. Every letter must be given exactly once.
    pub fn parse(alphabet: &Alphabet, s: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            let (letter, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected letter=rational, got {part:?}")))?;
            let mut chars = letter.trim().chars();
            let c = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => return Err(Error::Parse(format!("bad letter {letter:?}"))),
            };
            if map.insert(c, parse_rational(value)?).is_some() {
                return Err(Error::Parse(format!("letter {c:?} given twice")));
            }
        }
        Self::from_map(alphabet, &map)
    }

    pub fn from_map(alphabet: &Alphabet, map: &BTreeMap<char, BigRational>) -> Result<Self> {
        if let Some(c) = map.keys().find(|c| alphabet.index_of(**c).is_err()) {
            return Err(Error::UnknownLetter(*c));
        }
        let probs = alphabet
            .letters()
            .iter()
            .map(|c| {
                map.get(c)
                    .cloned()
                    .ok_or_else(|| Error::Distribution(format!("no probability for letter {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, probs)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    pub fn prob(&self, letter: u8) -> &BigRational {
        &self.probs[letter as usize]
    }

    /// `π(w)`, the product over the letters of `w`.
    pub fn word_prob(&self, w: &Word) -> BigRational {
        w.letters().iter().map(|&a| self.probs[a as usize].clone()).product()
    }

    pub fn is_positive(&self) -> bool {
        self.probs.iter().all(|p| p > &BigRational::zero())
    }

    pub fn to_map(&self) -> BTreeMap<char, String> {
        self.alphabet
            .letters()
            .iter()
            .zip(&self.probs)
            .map(|(c, p)| (*c, format_rational(p)))
            .collect()
    }
}

/// Deterministic grid of strictly positive distributions: `k + 2` values
/// `i / (g(k+3))` per free letter, the last letter taking the remainder.
///
/// A polynomial of degree at most `k` in each free variable that vanishes on
/// the grid vanishes identically.
pub fn grid_points(alphabet: &Alphabet, k: usize) -> Vec<LetterDistribution> {
    let g = alphabet.size();
    let steps = k + 2;
    let den = (g * (k + 3)) as i64;
    let mut out = Vec::new();
    let mut idx = vec![1usize; g - 1];
    loop {
        let mut probs: Vec<BigRational> = idx.iter().map(|&i| ratio(i as i64, den)).collect();
        let rest = BigRational::one() - probs.iter().sum::<BigRational>();
        probs.push(rest);
        out.push(LetterDistribution::new(alphabet, probs).expect("grid points are distributions"));
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return out;
            }
            if idx[pos] < steps {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 1;
            pos += 1;
        }
    }
}

/// A row-stochastic matrix with labelled states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub labels: Vec<String>,
    pub rows: Vec<Vec<BigRational>>,
}

impl TransitionMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_row_stochastic(&self) -> bool {
        self.rows.iter().all(|r| r.iter().sum::<BigRational>().is_one())
    }

    /// `v · T`.
    pub fn left_multiply(&self, v: &[BigRational]) -> Vec<BigRational> {
        let n = self.len();
        let mut out = vec![BigRational::zero(); n];
        for (i, row) in self.rows.iter().enumerate() {
            if v[i].is_zero() {
                continue;
            }
            for (j, t) in row.iter().enumerate() {
                if !t.is_zero() {
                    out[j] += &v[i] * t;
                }
            }
        }
        out
    }

    /// Strong connectivity of the support graph.
    pub fn is_irreducible(&self) -> bool {
        let n = self.len();
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for (j, s) in seen.iter_mut().enumerate() {
                    let edge = if forward { &self.rows[i][j] } else { &self.rows[j][i] };
                    if !*s && !edge.is_zero() {
                        *s = true;
                        stack.push(j);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        n > 0 && reach(true) && reach(false)
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(format_rational).collect()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationaryVector {
    pub labels: Vec<String>,
    pub values: Vec<BigRational>,
}

impl StationaryVector {
    pub fn render(&self) -> Vec<String> {
        self.values.iter().map(format_rational).collect()
    }

    pub fn is_fixed_by(&self, t: &TransitionMatrix) -> bool {
        t.left_multiply(&self.values) == self.values
    }

    pub fn sums_to_one(&self) -> bool {
        self.values.iter().sum::<BigRational>().is_one()
    }
}

fn check_alphabets(a: &Alphabet, b: &Alphabet) -> Result<()> {
    if a != b {
        return Err(Error::ParameterMismatch(format!(
            "distribution over {:?}, input over {:?}",
            b.as_string(),
            a.as_string()
        )));
    }
    Ok(())
}

/// `T = Σ π(a) T(a)` for a deterministic complete graph.
pub fn graph_transition_matrix(graph: &AGraph, pi: &LetterDistribution) -> Result<TransitionMatrix> {
    check_alphabets(graph.alphabet(), pi.alphabet())?;
    let n = graph.num_vertices();
    let mut rows = vec![vec![BigRational::zero(); n]; n];
    for (q, row) in rows.iter_mut().enumerate() {
        for (a, p) in pi.probs().iter().enumerate() {
            row[graph.step(q, a as u8)] += p;
        }
    }
    Ok(TransitionMatrix {
        labels: graph.labels().to_vec(),
        rows,
    })
}

/// The walk on a semaphore code, states in shortlex order.
pub fn transition_matrix(code: &SemaphoreCode, pi: &LetterDistribution) -> Result<TransitionMatrix> {
    graph_transition_matrix(&code.action_graph()?, pi)
}

/// `(π(w))` over `A^k` in lexicographic order.
pub fn debruijn_stationary(pi: &LetterDistribution, k: usize) -> Result<StationaryVector> {
    let words = words_of_length(pi.alphabet(), k)?;
    Ok(StationaryVector {
        labels: words.iter().map(|w| pi.alphabet().render(w)).collect(),
        values: words.iter().map(|w| pi.word_prob(w)).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StationaryReport {
    pub vector: StationaryVector,
    pub matrix: TransitionMatrix,
    pub irreducible: bool,
    /// Uniqueness of the fixed vector is only guaranteed for positive `π`.
    pub positive: bool,
}

/// `I = (π(s))_{s ∈ S}`, checked to be an exact fixed vector summing to 1.
pub fn stationary(code: &SemaphoreCode, pi: &LetterDistribution) -> Result<StationaryReport> {
    let matrix = transition_matrix(code, pi)?;
    let vector = StationaryVector {
        labels: matrix.labels.clone(),
        values: code.words().iter().map(|s| pi.word_prob(s)).collect(),
    };
    if !vector.sums_to_one() {
        return Err(Error::Internal(format!("π(S) ≠ 1 for {code}")));
    }
    if !vector.is_fixed_by(&matrix) {
        return Err(Error::Internal(format!("(π(s)) is not fixed by the walk on {code}")));
    }
    Ok(StationaryReport {
        irreducible: matrix.is_irreducible(),
        positive: pi.is_positive(),
        vector,
        matrix,
    })
}

/// Solve `x T = x`, `Σ x = 1` by Gaussian elimination over the rationals.
/// `None` when the solution is not unique.
pub fn solve_stationary(t: &TransitionMatrix) -> Option<Vec<BigRational>> {
    let n = t.len();
    // Rows 0..n: (Tᵀ − Id) x = 0; row n: Σ x = 1. Augmented column at n.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| t.rows[j][i].clone()).collect();
            row[i] -= BigRational::one();
            row.push(BigRational::zero());
            row
        })
        .collect();
    m.push(vec![BigRational::one(); n + 1]);
    // Every column needs a pivot for a unique solution, so column `col`
    // pivots on row `col`.
    for col in 0..n {
        let p = (col..=n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot).skip(col) {
                    *x -= &f * y;
                }
            }
        }
    }
    if m[n][n].is_zero() {
        Some(m[..n].iter().map(|r| r[n].clone()).collect())
    } else {
        None
    }
}

/// Reset probabilities over the code of `ρ̲`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResetProfile {
    /// `P(ℓ)` for `ℓ = 1..=k`.
    pub cumulative: Vec<BigRational>,
    /// `p(ℓ) = P(ℓ) − P(ℓ−1)` with `P(0) = 0`.
    pub increments: Vec<BigRational>,
    pub hitting_time: BigRational,
}

impl ResetProfile {
    /// Profile of any word set: `P(ℓ) = Σ_{s, |s| ≤ ℓ} π(s)`.
    pub fn of_words(words: &[Word], pi: &LetterDistribution, k: usize) -> Self {
        let mut cumulative = Vec::with_capacity(k);
        let mut increments = Vec::with_capacity(k);
        let mut running = BigRational::zero();
        let mut t = BigRational::zero();
        for l in 1..=k {
            let p: BigRational = words
                .iter()
                .filter(|s| s.len() == l || (l == 1 && s.is_empty()))
                .map(|s| pi.word_prob(s))
                .sum();
            running += &p;
            t += &p * BigRational::from_integer(BigInt::from(l));
            cumulative.push(running.clone());
            increments.push(p);
        }
        ResetProfile {
            cumulative,
            increments,
            hitting_time: t,
        }
    }

    pub fn render(&self) -> (Vec<String>, String) {
        (
            self.cumulative.iter().map(format_rational).collect(),
            format_rational(&self.hitting_time),
        )
    }
}

fn require_binary(alphabet: &Alphabet) -> Result<()> {
    if alphabet.size() < 2 {
        return Err(Error::UnaryAlphabet);
    }
    Ok(())
}

/// `P(ℓ)`, `p(ℓ)` and the expected time to reset for `Cay(ρ)`.
pub fn reset_profile(rc: &RightCongruence, pi: &LetterDistribution) -> Result<ResetProfile> {
    require_binary(rc.alphabet())?;
    check_alphabets(rc.alphabet(), pi.alphabet())?;
    let (_, ideal) = lower_approx(rc)?;
    Ok(ResetProfile::of_words(ideal.code().words(), pi, rc.k()))
}

/// Check `Σ_{s ∈ words} π(s) = 1` as a polynomial identity in `π`.
pub fn sums_to_one_identically(alphabet: &Alphabet, words: &[Word], k: usize) -> Result<bool> {
    require_binary(alphabet)?;
    Ok(grid_points(alphabet, k)
        .iter()
        .all(|pi| words.iter().map(|s| pi.word_prob(s)).sum::<BigRational>().is_one()))
}

/// `P(k) = 1` identically for the reset code of `ρ`.
pub fn check_polynomial_identity(rc: &RightCongruence) -> Result<bool> {
    require_binary(rc.alphabet())?;
    sums_to_one_identically(rc.alphabet(), resets(rc).code().words(), rc.k())
}

/// The walk on `ρ` classes, obtained by lumping the walk on `ρ̲`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lumped {
    pub matrix: TransitionMatrix,
    pub stationary: StationaryVector,
}

pub fn lumped(rc: &RightCongruence, pi: &LetterDistribution) -> Result<Lumped> {
    require_binary(rc.alphabet())?;
    check_alphabets(rc.alphabet(), pi.alphabet())?;
    let alphabet = rc.alphabet();
    let k = rc.k();
    let (_, ideal) = lower_approx(rc)?;
    let code = ideal.code();
    let m = rc.num_classes();

    // ρ class of each code word s: that of any word of A^k ending in s.
    let pad = |s: &Word| Word::from_letters(&vec![0; k - s.len()]).concat(s);
    let class_of_state: Vec<usize> = code.words().iter().map(|s| rc.class_of(&pad(s))).collect();

    let fine = if code.is_epsilon() {
        TransitionMatrix {
            labels: vec!["ε".into()],
            rows: vec![vec![BigRational::one()]],
        }
    } else {
        transition_matrix(code, pi)?
    };

    // Lumpability: merged-column sums depend only on the ρ class of the row.
    let mut coarse = vec![vec![BigRational::zero(); m]; m];
    let mut seen = vec![None::<usize>; m];
    for (s, row) in fine.rows.iter().enumerate() {
        let mut merged = vec![BigRational::zero(); m];
        for (t, p) in row.iter().enumerate() {
            merged[class_of_state[t]] += p;
        }
        let c = class_of_state[s];
        match seen[c] {
            None => {
                seen[c] = Some(s);
                coarse[c] = merged;
            }
            Some(first) if coarse[c] != merged => {
                return Err(Error::NotLumpable {
                    s: fine.labels[first].clone(),
                    t: fine.labels[s].clone(),
                });
            }
            Some(_) => {}
        }
    }
    let direct = graph_transition_matrix(&AGraph::cayley(rc), pi)?;
    if direct.rows != coarse {
        return Err(Error::Internal("lumped matrix differs from the Cayley walk".into()));
    }

    let mut from_code = vec![BigRational::zero(); m];
    for (s, w) in code.words().iter().enumerate() {
        from_code[class_of_state[s]] += pi.word_prob(w);
    }
    let mut from_debruijn = vec![BigRational::zero(); m];
    for w in words_of_length(alphabet, k)? {
        from_debruijn[rc.class_of(&w)] += pi.word_prob(&w);
    }
    if from_code != from_debruijn {
        return Err(Error::Internal(
            "lumped stationary vector differs between code sums and de Bruijn sums".into(),
        ));
    }
    let stationary = StationaryVector {
        labels: direct.labels.clone(),
        values: from_code,
    };
    if !stationary.is_fixed_by(&direct) {
        return Err(Error::Internal("lumped vector is not stationary".into()));
    }
    Ok(Lumped {
        matrix: direct,
        stationary,
    })
}

/// Output of [`simulate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    pub labels: Vec<String>,
    pub visits: Vec<u64>,
    pub frequencies: Vec<f64>,
    /// Letters read from an empty history until it first lies in `A*S`,
    /// one sample per completed episode.
    pub reset_times: Vec<u32>,
    pub mean_reset_time: f64,
}

impl Simulation {
    /// Total-variation distance between the visit frequencies and `target`.
    pub fn total_variation(&self, target: &[BigRational]) -> f64 {
        0.5 * self
            .frequencies
            .iter()
            .zip(target)
            .map(|(f, t)| (f - t.to_f64().unwrap_or(f64::NAN)).abs())
            .sum::<f64>()
    }
}

/// Draws letters by comparing a uniform `u64` against `⌊F(i)·2^64⌋` for the
/// cumulative distribution `F`, so the sampler uses `π` exactly up to the
/// resolution of the generator.
struct LetterSampler {
    thresholds: Vec<u128>,
}

impl LetterSampler {
    fn new(pi: &LetterDistribution) -> Self {
        let scale = BigInt::one() << 64;
        let mut cum = BigRational::zero();
        let thresholds = pi
            .probs()
            .iter()
            .map(|p| {
                cum += p;
                let scaled: BigInt = cum.numer() * &scale / cum.denom();
                scaled.to_u128().expect("threshold fits in 65 bits")
            })
            .collect();
        LetterSampler { thresholds }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> u8 {
        let r = rng.next_u64() as u128;
        self.thresholds.iter().position(|&t| r < t).unwrap_or(self.thresholds.len() - 1) as u8
    }
}

/// Run the walk on `code` for `steps` letters from a `ChaCha8` stream seeded
/// with `seed`. The same letters also drive the reset-time episodes.
pub fn simulate(code: &SemaphoreCode, pi: &LetterDistribution, steps: u64, seed: u64) -> Result<Simulation> {
    check_alphabets(code.alphabet(), pi.alphabet())?;
    if steps == 0 {
        return Err(Error::Parse("steps must be at least 1".into()));
    }
    let graph = code.action_graph()?;
    let sampler = LetterSampler::new(pi);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = graph.num_vertices();
    let mut visits = vec![0u64; n];
    let mut state = 0;
    let max_len = code.max_len();
    let mut history = Word::empty();
    let mut episode = 0u32;
    let mut reset_times = Vec::new();
    for _ in 0..steps {
        let a = sampler.draw(&mut rng);
        state = graph.step(state, a);
        visits[state] += 1;
        episode += 1;
        history = history.push(a).suffix(max_len.min(history.len() + 1));
        if code.suffix_in_code(&history).is_some() {
            reset_times.push(episode);
            episode = 0;
            history = Word::empty();
        }
    }
    let total = steps as f64;
    let mean_reset_time = if reset_times.is_empty() {
        f64::NAN
    } else {
        reset_times.iter().map(|&t| t as f64).sum::<f64>() / reset_times.len() as f64
    };
    Ok(Simulation {
        labels: graph.labels().to_vec(),
        frequencies: visits.iter().map(|&v| v as f64 / total).collect(),
        visits,
        reset_times,
        mean_reset_time,
    })
}
