//! Right congruences on `A^k`.
//!
//! A [`RightCongruence`] is a partition of `A^k` such that related words stay
//! related after appending any letter (with truncation back to length `k`).
//! Words of `A^k` are addressed by their lexicographic rank, and the class
//! labels are kept in canonical restricted-growth form: classes are numbered
//! by their least member, so equality of values is equality of partitions.

mod lattice;

use std::collections::BTreeSet;
use std::fmt;

pub use lattice::{lattice_report, Lattice, LatticeReport, Pentagon, Witnesses};

use crate::error::{Error, Result};
use crate::words::{act_rank, Alphabet, Word};

/// Default largest carrier `|A^k|` for exhaustive enumeration (Bell(8) = 4140).
pub const DEFAULT_ENUMERATION_CARRIER: usize = 8;
/// Enumeration is refused outright beyond this carrier (Bell(12) = 4213597).
pub const MAX_ENUMERATION_CARRIER: usize = 12;
/// Largest carrier accepted by any congruence computation.
pub const MAX_CARRIER: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RightCongruence {
    alphabet: Alphabet,
    k: usize,
    class_of: Vec<u32>,
    classes: usize,
}

pub(crate) fn carrier_size(alphabet: &Alphabet, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    match alphabet.count_words(k) {
        Some(n) if n <= MAX_CARRIER as u128 => Ok(n as usize),
        n => Err(Error::BoundExceeded {
            requested: n.unwrap_or(u128::MAX),
            limit: MAX_CARRIER as u128,
        }),
    }
}

/// Relabel so that classes are numbered in order of their least member.
fn canonical_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> (Vec<u32>, usize) {
    let mut seen = std::collections::HashMap::new();
    let out = labels
        .iter()
        .map(|l| {
            let next = seen.len() as u32;
            *seen.entry(*l).or_insert(next)
        })
        .collect();
    (out, seen.len())
}

impl RightCongruence {
    /// Build from arbitrary per-rank labels without checking closure.
    pub(crate) fn from_labels_unchecked<T: Copy + Eq + std::hash::Hash>(
        alphabet: &Alphabet,
        k: usize,
        labels: &[T],
    ) -> Self {
        let (class_of, classes) = canonical_labels(labels);
        RightCongruence {
            alphabet: alphabet.clone(),
            k,
            class_of,
            classes,
        }
    }

    /// Build from per-rank labels, checking the right-action closure.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(
        alphabet: &Alphabet,
        k: usize,
        labels: &[T],
    ) -> Result<Self> {
        let n = carrier_size(alphabet, k)?;
        if labels.len() != n {
            return Err(Error::NotAPartition(format!(
                "{} labels for a carrier of {n} words",
                labels.len()
            )));
        }
        let rc = Self::from_labels_unchecked(alphabet, k, labels);
        rc.check_closure()?;
        Ok(rc)
    }

    /// The identity relation `λ`: every class a singleton.
    pub fn identity(alphabet: &Alphabet, k: usize) -> Result<Self> {
        let n = carrier_size(alphabet, k)?;
        Ok(Self::from_labels_unchecked(alphabet, k, &(0..n).collect::<Vec<_>>()))
    }

    /// The universal relation: one class.
    pub fn universal(alphabet: &Alphabet, k: usize) -> Result<Self> {
        let n = carrier_size(alphabet, k)?;
        Ok(Self::from_labels_unchecked(alphabet, k, &vec![0u8; n]))
    }

    /// Validate a partition of `A^k` given as blocks of words.
    ///
    /// Blocks may arrive in any order. A closure failure reports the first
    /// witness `(u, v, a)` found scanning ranks in lexicographic order, where
    /// `u` is the least member of its block.
    pub fn from_blocks(alphabet: &Alphabet, k: usize, blocks: &[Vec<Word>]) -> Result<Self> {
        let rc = Self::partition_from_blocks(alphabet, k, blocks)?;
        rc.check_closure()?;
        Ok(rc)
    }

    /// Like [`from_blocks`](Self::from_blocks) but skipping the closure check;
    /// the result is only an equivalence relation.
    pub fn partition_from_blocks(alphabet: &Alphabet, k: usize, blocks: &[Vec<Word>]) -> Result<Self> {
        let n = carrier_size(alphabet, k)?;
        let g = alphabet.size();
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::NotAPartition("empty block".into()));
            }
            for w in block {
                if w.len() != k {
                    return Err(Error::wrong_length(w, k));
                }
                if w.letters().iter().any(|&c| c as usize >= g) {
                    return Err(Error::NotAPartition(format!("{w} is not over the alphabet")));
                }
                let r = w.rank(g);
                if labels[r] != usize::MAX {
                    return Err(Error::NotAPartition(format!("{} occurs twice", alphabet.render(w))));
                }
                labels[r] = b;
            }
        }
        if let Some(r) = labels.iter().position(|&l| l == usize::MAX) {
            let w = Word::from_rank(r, k, g);
            return Err(Error::NotAPartition(format!("{} is not covered", alphabet.render(&w))));
        }
        Ok(Self::from_labels_unchecked(alphabet, k, &labels))
    }

    fn check_closure(&self) -> Result<()> {
        let g = self.alphabet.size();
        let n = self.class_of.len();
        let mut rep = vec![usize::MAX; self.classes];
        for r in 0..n {
            let c = self.class_of[r] as usize;
            if rep[c] == usize::MAX {
                rep[c] = r;
                continue;
            }
            let u = rep[c];
            for a in 0..g {
                if self.class_of[act_rank(u, a, g, n)] != self.class_of[act_rank(r, a, g, n)] {
                    return Err(Error::ClosureViolation {
                        u: self.alphabet.render(&Word::from_rank(u, self.k, g)),
                        v: self.alphabet.render(&Word::from_rank(r, self.k, g)),
                        letter: self.alphabet.letter(a as u8),
                    });
                }
            }
        }
        Ok(())
    }

    /// `R^#`: the smallest right congruence containing the given pairs.
    pub fn generate(alphabet: &Alphabet, k: usize, pairs: &[(Word, Word)]) -> Result<Self> {
        let n = carrier_size(alphabet, k)?;
        let g = alphabet.size();
        let mut ranked = Vec::with_capacity(pairs.len());
        for (u, v) in pairs {
            for w in [u, v] {
                if w.len() != k {
                    return Err(Error::wrong_length(w, k));
                }
                if w.letters().iter().any(|&c| c as usize >= g) {
                    return Err(Error::NotAPartition(format!("{w} is not over the alphabet")));
                }
            }
            ranked.push((u.rank(g), v.rank(g)));
        }
        let mut uf = UnionFind::new(n);
        close(&mut uf, ranked, g, n);
        Ok(Self::from_union_find(alphabet, k, &mut uf))
    }

    fn from_union_find(alphabet: &Alphabet, k: usize, uf: &mut UnionFind) -> Self {
        let labels: Vec<usize> = (0..uf.len()).map(|r| uf.find(r)).collect();
        Self::from_labels_unchecked(alphabet, k, &labels)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `|A^k|`.
    pub fn carrier(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    /// Class index of the word with the given rank.
    pub fn class_of_rank(&self, rank: usize) -> usize {
        self.class_of[rank] as usize
    }

    pub fn class_of(&self, w: &Word) -> usize {
        self.class_of_rank(w.rank(self.alphabet.size()))
    }

    pub fn labels(&self) -> &[u32] {
        &self.class_of
    }

    pub fn related(&self, u: &Word, v: &Word) -> bool {
        self.class_of(u) == self.class_of(v)
    }

    /// Ranks of each class, in class order; each list ascending.
    pub fn block_ranks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.classes];
        for (r, &c) in self.class_of.iter().enumerate() {
            blocks[c as usize].push(r);
        }
        blocks
    }

    /// Blocks in canonical form: each sorted, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<Word>> {
        let g = self.alphabet.size();
        self.block_ranks()
            .into_iter()
            .map(|b| b.into_iter().map(|r| Word::from_rank(r, self.k, g)).collect())
            .collect()
    }

    /// Least member of each class.
    pub fn representatives(&self) -> Vec<usize> {
        let mut rep = vec![usize::MAX; self.classes];
        for (r, &c) in self.class_of.iter().enumerate() {
            if rep[c as usize] == usize::MAX {
                rep[c as usize] = r;
            }
        }
        rep
    }

    /// Class reached from class `c` by appending `letter`.
    pub fn successor(&self, c: usize, letter: usize) -> usize {
        let g = self.alphabet.size();
        let rep = self.class_of.iter().position(|&x| x as usize == c).expect("class index in range");
        self.class_of_rank(act_rank(rep, letter, g, self.carrier()))
    }

    fn same_parameters(&self, other: &Self) -> Result<()> {
        if self.alphabet != other.alphabet || self.k != other.k {
            return Err(Error::ParameterMismatch(format!(
                "({}, k={}) vs ({}, k={})",
                self.alphabet.as_string(),
                self.k,
                other.alphabet.as_string(),
                other.k
            )));
        }
        Ok(())
    }

    /// Inclusion of relations: every pair related here is related in `other`.
    pub fn is_finer_than(&self, other: &Self) -> bool {
        if self.same_parameters(other).is_err() {
            return false;
        }
        let mut image = vec![u32::MAX; self.classes];
        self.class_of.iter().zip(&other.class_of).all(|(&mine, &theirs)| {
            let slot = &mut image[mine as usize];
            if *slot == u32::MAX {
                *slot = theirs;
            }
            *slot == theirs
        })
    }

    /// Common refinement.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.same_parameters(other)?;
        let pairs: Vec<(u32, u32)> = self.class_of.iter().copied().zip(other.class_of.iter().copied()).collect();
        Ok(Self::from_labels_unchecked(&self.alphabet, self.k, &pairs))
    }

    /// Smallest right congruence containing both, computed as `(ρ ∪ ρ')^#`.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.same_parameters(other)?;
        let g = self.alphabet.size();
        let n = self.carrier();
        let mut uf = UnionFind::new(n);
        let mut pending = Vec::new();
        for rc in [self, other] {
            for block in rc.block_ranks() {
                pending.extend(block.windows(2).map(|w| (w[0], w[1])));
            }
        }
        close(&mut uf, pending, g, n);
        Ok(Self::from_union_find(&self.alphabet, self.k, &mut uf))
    }

    /// Related pairs `(u, v)` with `u < v` in rank order.
    pub fn pairs(&self) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        for block in self.blocks() {
            for i in 0..block.len() {
                for j in i + 1..block.len() {
                    out.push((block[i].clone(), block[j].clone()));
                }
            }
        }
        out
    }

    pub fn render_blocks(&self) -> Vec<Vec<String>> {
        self.blocks()
            .iter()
            .map(|b| b.iter().map(|w| self.alphabet.render(w)).collect())
            .collect()
    }

    pub fn render_block(&self, c: usize) -> String {
        let g = self.alphabet.size();
        let words: Vec<String> = self
            .class_of
            .iter()
            .enumerate()
            .filter(|(_, &x)| x as usize == c)
            .map(|(r, _)| self.alphabet.render(&Word::from_rank(r, self.k, g)))
            .collect();
        format!("{{{}}}", words.join(","))
    }
}

impl fmt::Display for RightCongruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.classes).map(|c| self.render_block(c)).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Merge pending pairs and propagate along the right action until fixpoint.
///
/// Whenever two classes are merged through `(u, v)`, the pair `(u∘a, v∘a)` is
/// queued for every letter. Pairs found already merged are dropped: they are
/// joined by a chain of merged pairs whose successors were queued.
fn close(uf: &mut UnionFind, mut pending: Vec<(usize, usize)>, g: usize, n: usize) {
    while let Some((u, v)) = pending.pop() {
        if uf.union(u, v) {
            for a in 0..g {
                pending.push((act_rank(u, a, g, n), act_rank(v, a, g, n)));
            }
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    /// Returns false when already in the same set.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }
}

/// Every right congruence on `A^k`, refusing carriers above
/// [`DEFAULT_ENUMERATION_CARRIER`].
pub fn enumerate_all(alphabet: &Alphabet, k: usize) -> Result<Vec<RightCongruence>> {
    enumerate_all_bounded(alphabet, k, DEFAULT_ENUMERATION_CARRIER)
}

/// Every right congruence on `A^k`, as set partitions filtered by closure.
///
/// The result is sorted by label vector, i.e. canonical order.
pub fn enumerate_all_bounded(alphabet: &Alphabet, k: usize, max_carrier: usize) -> Result<Vec<RightCongruence>> {
    let limit = max_carrier.min(MAX_ENUMERATION_CARRIER);
    let n = alphabet.count_words(k).unwrap_or(u128::MAX);
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if n > limit as u128 {
        return Err(Error::BoundExceeded {
            requested: n,
            limit: limit as u128,
        });
    }
    let n = n as usize;
    let g = alphabet.size();
    let mut out = Vec::new();
    let mut labels = vec![0u32; n];
    // Restricted growth strings: labels[i] <= 1 + max(labels[..i]).
    fn rec(i: usize, max: u32, labels: &mut [u32], emit: &mut dyn FnMut(&[u32])) {
        if i == labels.len() {
            emit(labels);
            return;
        }
        for c in 0..=max {
            labels[i] = c;
            rec(i + 1, max.max(c + 1), labels, emit);
        }
    }
    let mut emit = |labels: &[u32]| {
        let closed = (0..n).all(|u| {
            (u + 1..n).all(|v| {
                labels[u] != labels[v]
                    || (0..g).all(|a| labels[act_rank(u, a, g, n)] == labels[act_rank(v, a, g, n)])
            })
        });
        if closed {
            out.push(RightCongruence {
                alphabet: alphabet.clone(),
                k,
                class_of: labels.to_vec(),
                classes: labels.iter().max().map_or(0, |m| *m as usize + 1),
            });
        }
    };
    if n > 0 {
        labels[0] = 0;
        rec(1, 1, &mut labels, &mut emit);
    }
    Ok(out)
}

/// Distinct elements, preserving first occurrence.
pub(crate) fn dedup(elements: Vec<RightCongruence>) -> Vec<RightCongruence> {
    let mut seen = BTreeSet::new();
    elements
        .into_iter()
        .filter(|e| seen.insert(e.class_of.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn parse_blocks(alphabet: &Alphabet, spec: &str) -> Vec<Vec<Word>> {
        spec.split('/')
            .map(|b| b.split(',').map(|w| alphabet.parse_word(w).unwrap()).collect())
            .collect()
    }

    fn rc(spec: &str) -> Result<RightCongruence> {
        let a = ab();
        let k = spec.split(['/', ',']).next().unwrap().len();
        RightCongruence::from_blocks(&a, k, &parse_blocks(&a, spec))
    }

    #[test]
    fn eq1_validates() {
        let r = rc("aaa,baa,aba/bba/aab,bab/abb/bbb").unwrap();
        assert_eq!(r.num_classes(), 5);
        assert_eq!(r.to_string(), "{aaa,aba,baa} {aab,bab} {abb} {bba} {bbb}");
    }

    #[test]
    fn singletons_validate() {
        let r = rc("aaa/aab/aba/abb/baa/bab/bba/bbb").unwrap();
        assert_eq!(r, RightCongruence::identity(&ab(), 3).unwrap());
    }

    #[test]
    fn closure_witness() {
        let err = rc("aaa,aab/aba/abb/baa/bab/bba/bbb").unwrap_err();
        assert_eq!(
            err,
            Error::ClosureViolation {
                u: "aaa".into(),
                v: "aab".into(),
                letter: 'a'
            }
        );
    }

    #[test]
    fn partition_errors() {
        assert!(matches!(rc("aaa,aab/aab/aba/abb/baa/bab/bba/bbb"), Err(Error::NotAPartition(_))));
        assert!(matches!(rc("aaa/aab/aba/abb/baa/bab/bba"), Err(Error::NotAPartition(_))));
        let a = ab();
        let blocks = parse_blocks(&a, "aa/ab/ba/bb");
        assert!(matches!(
            RightCongruence::from_blocks(&a, 3, &blocks),
            Err(Error::WrongLength { .. })
        ));
    }

    #[test]
    fn generation() {
        let a = ab();
        let w = |s: &str| a.parse_word(s).unwrap();
        assert_eq!(
            RightCongruence::generate(&a, 3, &[]).unwrap(),
            RightCongruence::identity(&a, 3).unwrap()
        );
        let sigma = RightCongruence::generate(&a, 3, &[(w("aaa"), w("bba"))]).unwrap();
        assert_eq!(sigma, rc("aaa,bba,baa/aab,bab/aba/abb/bbb").unwrap());
        let small = RightCongruence::generate(&a, 3, &[(w("aaa"), w("baa"))]).unwrap();
        assert_eq!(small, rc("aaa,baa/aab/aba/abb/bab/bba/bbb").unwrap());
        assert!(matches!(
            RightCongruence::generate(&a, 3, &[(w("aa"), w("ab"))]),
            Err(Error::WrongLength { .. })
        ));
    }

    #[test]
    fn meet_and_join_on_four_letters() {
        let a = Alphabet::new(4).unwrap();
        let b = |s| RightCongruence::from_blocks(&a, 1, &parse_blocks(&a, s)).unwrap();
        let lambda = RightCongruence::identity(&a, 1).unwrap();
        let sigma = b("a,b/c/d");
        let sigma2 = b("a,b/c,d");
        let tau = b("a,d/b,c");
        let rho = b("a,b,c,d");
        assert_eq!(sigma2.meet(&tau).unwrap(), lambda);
        assert_eq!(sigma.join(&tau).unwrap(), rho);
        assert_eq!(sigma.meet(&lambda).unwrap(), lambda);
        let univ = RightCongruence::universal(&a, 1).unwrap();
        assert_eq!(sigma.join(&univ).unwrap(), univ);
        let other = RightCongruence::identity(&a, 2).unwrap();
        assert!(matches!(sigma.meet(&other), Err(Error::ParameterMismatch(_))));
    }

    #[test]
    fn inclusion() {
        let id = RightCongruence::identity(&ab(), 3).unwrap();
        let eq1 = rc("aaa,baa,aba/bba/aab,bab/abb/bbb").unwrap();
        let univ = RightCongruence::universal(&ab(), 3).unwrap();
        assert!(id.is_finer_than(&eq1) && eq1.is_finer_than(&univ));
        assert!(!eq1.is_finer_than(&id));
        assert!(eq1.is_finer_than(&eq1));
    }

    #[test]
    fn enumeration_counts() {
        let unary = Alphabet::new(1).unwrap();
        assert_eq!(enumerate_all(&unary, 5).unwrap().len(), 1);
        assert_eq!(enumerate_all(&Alphabet::new(4).unwrap(), 1).unwrap().len(), 15);
        let err = enumerate_all(&Alphabet::new(3).unwrap(), 2).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { requested: 9, limit: 8 }));
        let err = enumerate_all_bounded(&Alphabet::new(2).unwrap(), 4, 100).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { requested: 16, limit: 12 }));
    }

    #[test]
    fn successor_follows_the_action() {
        let eq1 = rc("aaa,baa,aba/bba/aab,bab/abb/bbb").unwrap();
        let a = ab();
        let c = |s: &str| eq1.class_of(&a.parse_word(s).unwrap());
        assert_eq!(eq1.successor(c("abb"), 0), c("bba"));
        assert_eq!(eq1.successor(c("aab"), 1), c("abb"));
    }
}
