#![allow(dead_code)]

use num_bigint::BigInt;
use resetwalk::{Alphabet, BigRational, LetterDistribution, RightCongruence, Word};

pub fn ab() -> Alphabet {
    Alphabet::new(2).unwrap()
}

pub fn w(s: &str) -> Word {
    ab().parse_word(s).unwrap()
}

/// Comma-separated words over {a, b}; `""` is ε.
pub fn ws(s: &str) -> Vec<Word> {
    if s.is_empty() {
        return vec![Word::empty()];
    }
    s.split(',').map(w).collect()
}

pub fn strs(words: &[Word]) -> Vec<String> {
    words.iter().map(|w| w.to_string()).collect()
}

/// Blocks separated by spaces, words by commas.
pub fn rc(alphabet: &Alphabet, spec: &str) -> RightCongruence {
    let blocks: Vec<Vec<Word>> = spec
        .split(' ')
        .map(|b| b.split(',').map(|x| alphabet.parse_word(x).unwrap()).collect())
        .collect();
    RightCongruence::from_blocks(alphabet, blocks[0][0].len(), &blocks).unwrap()
}

pub fn eq1() -> RightCongruence {
    rc(&ab(), "aaa,aba,baa bab,aab abb bba bbb")
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn pi2(n: i64, d: i64) -> LetterDistribution {
    LetterDistribution::new(&ab(), vec![q(n, d), q(d - n, d)]).unwrap()
}

/// The canonical index of the class containing `word`.
pub fn class(rho: &RightCongruence, word: &str) -> usize {
    rho.class_of(&rho.alphabet().parse_word(word).unwrap())
}

// ---------------------------------------------------------------------------
// Independent oracles. These work on plain strings and vectors and share no
// code with the library beyond parsing.

/// All words of length `k` over the first `g` letters, as strings.
pub fn oracle_words(g: usize, k: usize) -> Vec<String> {
    let letters: Vec<char> = (0..g as u8).map(|i| (b'a' + i) as char).collect();
    let mut out = vec![String::new()];
    for _ in 0..k {
        out = out
            .iter()
            .flat_map(|w| letters.iter().map(move |c| format!("{w}{c}")))
            .collect();
    }
    out
}

fn last_k(s: &str, k: usize) -> String {
    s[s.len() - k..].to_string()
}

/// Every set partition of `0..n` as a block-label vector, built by inserting
/// element `i` into each existing block or a new one.
pub fn oracle_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut parts: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &parts {
            let blocks = p.iter().max().map_or(0, |m| m + 1);
            for b in 0..=blocks {
                let mut q = p.clone();
                q.push(b);
                next.push(q);
            }
        }
        parts = next;
    }
    parts
}

/// Right congruences on A^k by filtering all partitions, as sorted block
/// lists of strings.
pub fn oracle_congruences(g: usize, k: usize) -> Vec<Vec<Vec<String>>> {
    let words = oracle_words(g, k);
    let index = |s: &str| words.iter().position(|w| w == s).unwrap();
    let letters: Vec<char> = (0..g as u8).map(|i| (b'a' + i) as char).collect();
    let mut out = Vec::new();
    for p in oracle_partitions(words.len()) {
        let closed = (0..words.len()).all(|i| {
            (0..words.len()).all(|j| {
                p[i] != p[j]
                    || letters.iter().all(|c| {
                        let x = index(&last_k(&format!("{}{c}", words[i]), k));
                        let y = index(&last_k(&format!("{}{c}", words[j]), k));
                        p[x] == p[y]
                    })
            })
        });
        if closed {
            let nb = p.iter().max().unwrap() + 1;
            let mut blocks: Vec<Vec<String>> = (0..nb)
                .map(|b| (0..words.len()).filter(|&i| p[i] == b).map(|i| words[i].clone()).collect())
                .collect();
            blocks.sort();
            out.push(blocks);
        }
    }
    out.sort();
    out
}

pub fn sorted_blocks(rho: &RightCongruence) -> Vec<Vec<String>> {
    let mut b = rho.render_blocks();
    b.sort();
    b
}

/// Whether `word` is a reset word of Cay(ρ), by running it from every class.
pub fn oracle_is_reset(rho: &RightCongruence, word: &str) -> bool {
    let k = rho.k();
    let reps: Vec<String> = rho.render_blocks().iter().map(|b| b[0].clone()).collect();
    let targets: std::collections::BTreeSet<usize> = reps
        .iter()
        .map(|r| class(rho, &last_k(&format!("{r}{word}"), k)))
        .collect();
    targets.len() == 1
}

/// `Σ π(w)` over reset words `w` of length `ℓ`.
pub fn oracle_reset_probability(rho: &RightCongruence, pi: &LetterDistribution, l: usize) -> BigRational {
    let g = rho.alphabet().size();
    oracle_words(g, l)
        .iter()
        .filter(|w| oracle_is_reset(rho, w))
        .map(|w| pi.word_prob(&rho.alphabet().parse_word(w).unwrap()))
        .sum()
}

/// Stationary vector of a row-stochastic matrix by fixing `x₀ = 1`, solving
/// the remaining balance equations, then normalising.
pub fn oracle_stationary(t: &[Vec<BigRational>]) -> Vec<BigRational> {
    use num_traits::{One, Zero};
    let n = t.len();
    if n == 1 {
        return vec![BigRational::one()];
    }
    // Equations j = 1..n: Σ_i x_i T[i][j] − x_j = 0, with x_0 = 1 moved right.
    let m = n - 1;
    let mut a: Vec<Vec<BigRational>> = (1..n)
        .map(|j| {
            let mut row: Vec<BigRational> = (1..n).map(|i| t[i][j].clone()).collect();
            row[j - 1] -= BigRational::one();
            row.push(-t[0][j].clone());
            row
        })
        .collect();
    for c in 0..m {
        let p = (c..m).find(|&r| !a[r][c].is_zero()).expect("unique stationary vector");
        a.swap(c, p);
        for r in 0..m {
            if r != c && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot).skip(c) {
                    *x -= &f * y;
                }
            }
        }
    }
    let mut x = vec![BigRational::one()];
    x.extend((0..m).map(|r| &a[r][m] / &a[r][r]));
    let total: BigRational = x.iter().sum();
    x.iter().map(|v| v / &total).collect()
}

/// A small deterministic generator for test instances.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self, bound: u64) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 33) % bound
    }
}
