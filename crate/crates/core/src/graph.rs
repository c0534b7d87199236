//! Deterministic complete `A`-graphs: Cayley graphs of right congruences,
//! reset words, the inverse construction `ζ_Γ`, and graph morphisms.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::code::IdealRep;
use crate::congruence::RightCongruence;
use crate::error::{Error, Result};
use crate::words::{act_rank, Alphabet, Word};

/// Morphism search refuses graphs above this many vertices.
pub const MAX_MORPHISM_VERTICES: usize = 10_000;

/// A deterministic complete `A`-graph given by its transition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AGraph {
    alphabet: Alphabet,
    labels: Vec<String>,
    /// `table[q][a]` is the vertex reached from `q` by letter `a`.
    table: Vec<Vec<usize>>,
}

impl AGraph {
    pub fn new(alphabet: Alphabet, table: Vec<Vec<usize>>) -> Result<Self> {
        let labels = (0..table.len()).map(|q| q.to_string()).collect();
        Self::with_labels(alphabet, labels, table)
    }

    pub fn with_labels(alphabet: Alphabet, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Parse("a graph needs at least one vertex".into()));
        }
        if labels.len() != n {
            return Err(Error::Parse(format!("{} labels for {n} vertices", labels.len())));
        }
        for (q, row) in table.iter().enumerate() {
            if row.len() != alphabet.size() {
                return Err(Error::Parse(format!("vertex {q} has {} edges, expected {}", row.len(), alphabet.size())));
            }
            if let Some(t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::Parse(format!("edge from {q} to missing vertex {t}")));
            }
        }
        Ok(AGraph { alphabet, labels, table })
    }

    /// `Cay(ρ)`: one vertex per class, `[u] --a--> [u∘a]`.
    pub fn cayley(rc: &RightCongruence) -> Self {
        let g = rc.alphabet().size();
        let n = rc.carrier();
        let table = rc
            .representatives()
            .into_iter()
            .map(|r| (0..g).map(|a| rc.class_of_rank(act_rank(r, a, g, n))).collect())
            .collect();
        let labels = (0..rc.num_classes()).map(|c| rc.render_block(c)).collect();
        AGraph {
            alphabet: rc.alphabet().clone(),
            labels,
            table,
        }
    }

    /// The `k`-dimensional de Bruijn graph, vertices in lexicographic order.
    pub fn de_bruijn(alphabet: &Alphabet, k: usize) -> Result<Self> {
        Ok(Self::cayley(&RightCongruence::identity(alphabet, k)?))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_vertices(&self) -> usize {
        self.table.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn step(&self, q: usize, letter: u8) -> usize {
        self.table[q][letter as usize]
    }

    pub fn run(&self, q: usize, w: &Word) -> usize {
        w.letters().iter().fold(q, |q, &a| self.step(q, a))
    }

    /// `Qw`, sorted.
    pub fn image(&self, w: &Word) -> Vec<usize> {
        let mut current: Vec<usize> = (0..self.num_vertices()).collect();
        for &a in w.letters() {
            let mut next: Vec<usize> = current.iter().map(|&q| self.step(q, a)).collect();
            next.sort_unstable();
            next.dedup();
            current = next;
        }
        current
    }

    /// `|Qw| = 1`.
    pub fn is_reset(&self, w: &Word) -> bool {
        self.image(w).len() == 1
    }

    fn reachable_from(&self, start: usize, forward: bool) -> Vec<bool> {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let reverse: Vec<Vec<usize>> = if forward {
            Vec::new()
        } else {
            let mut rev = vec![Vec::new(); n];
            for (q, row) in self.table.iter().enumerate() {
                for &t in row {
                    rev[t].push(q);
                }
            }
            rev
        };
        while let Some(q) = queue.pop_front() {
            let next: &[usize] = if forward { &self.table[q] } else { &reverse[q] };
            for &t in next {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.reachable_from(0, true).into_iter().all(|x| x) && self.reachable_from(0, false).into_iter().all(|x| x)
    }

    /// `Res_k(Γ) = A^k`.
    pub fn is_k_reset(&self, k: usize) -> Result<bool> {
        Ok(self.first_non_reset(k)?.is_none())
    }

    fn first_non_reset(&self, k: usize) -> Result<Option<Word>> {
        let words = crate::words::words_of_length(&self.alphabet, k)?;
        Ok(words.into_iter().find(|w| !self.is_reset(w)))
    }

    /// `ζ_Γ`: words of `A^k` are related when they send every vertex to the
    /// same single vertex.
    pub fn zeta(&self, k: usize) -> Result<RightCongruence> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        if !self.is_strongly_connected() {
            return Err(Error::NotStronglyConnected);
        }
        if let Some(w) = self.first_non_reset(k)? {
            return Err(Error::NotKReset(k, self.alphabet.render(&w)));
        }
        let words = crate::words::words_of_length(&self.alphabet, k)?;
        let targets: Vec<usize> = words.iter().map(|w| self.run(0, w)).collect();
        RightCongruence::from_labels(&self.alphabet, k, &targets)
    }

    /// A label-preserving vertex map `self → other`, if one exists.
    ///
    /// Determinism means the image of one vertex fixes the images of every
    /// vertex reachable from it, so each unmapped vertex is seeded in turn
    /// with every candidate image and the consequences propagated; conflicts
    /// backtrack. For strongly connected sources this is exactly `|Q'|` seed
    /// trials, tried in vertex order.
    pub fn morphism_to(&self, other: &AGraph) -> Result<Option<Vec<usize>>> {
        for n in [self.num_vertices(), other.num_vertices()] {
            if n > MAX_MORPHISM_VERTICES {
                return Err(Error::GraphTooLarge(n, MAX_MORPHISM_VERTICES));
            }
        }
        if self.alphabet != other.alphabet {
            return Err(Error::ParameterMismatch("graphs over different alphabets".into()));
        }
        let mut map = vec![usize::MAX; self.num_vertices()];
        Ok(self.extend_morphism(other, &mut map).then_some(map))
    }

    fn extend_morphism(&self, other: &AGraph, map: &mut Vec<usize>) -> bool {
        let Some(seed) = map.iter().position(|&m| m == usize::MAX) else {
            return true;
        };
        for image in 0..other.num_vertices() {
            let saved = map.clone();
            if self.propagate(other, map, seed, image) && self.extend_morphism(other, map) {
                return true;
            }
            *map = saved;
        }
        false
    }

    fn propagate(&self, other: &AGraph, map: &mut [usize], seed: usize, image: usize) -> bool {
        map[seed] = image;
        let mut queue = VecDeque::from([seed]);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.size() {
                let (t, t_img) = (self.table[q][a], other.table[map[q]][a]);
                if map[t] == usize::MAX {
                    map[t] = t_img;
                    queue.push_back(t);
                } else if map[t] != t_img {
                    return false;
                }
            }
        }
        true
    }

    /// A bijective morphism whose inverse is also a morphism.
    pub fn isomorphism_to(&self, other: &AGraph) -> Result<Option<Vec<usize>>> {
        if self.num_vertices() != other.num_vertices() {
            return Ok(None);
        }
        let Some(map) = self.morphism_to(other)? else {
            return Ok(None);
        };
        let mut inverse = vec![usize::MAX; map.len()];
        for (q, &m) in map.iter().enumerate() {
            if inverse[m] != usize::MAX {
                return Ok(None);
            }
            inverse[m] = q;
        }
        let inverse_ok = (0..other.num_vertices())
            .all(|p| (0..self.alphabet.size()).all(|a| inverse[other.table[p][a]] == self.table[inverse[p]][a]));
        Ok(inverse_ok.then_some(map))
    }

    /// Graphviz rendering with stable node and edge order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for (q, label) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{q} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for (q, row) in self.table.iter().enumerate() {
            for (a, &t) in row.iter().enumerate() {
                let _ = writeln!(out, "  n{q} -> n{t} [label=\"{}\"];", self.alphabet.letter(a as u8));
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            alphabet: self.alphabet.as_string(),
            vertices: self.labels.clone(),
            transitions: self.table.clone(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let alphabet = Alphabet::from_letters(&json.alphabet)?;
        Self::with_labels(alphabet, json.vertices.clone(), json.transitions.clone())
    }
}

/// Transition-table interchange format; row `q` lists the targets of `q` in
/// letter order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub alphabet: String,
    pub vertices: Vec<String>,
    pub transitions: Vec<Vec<usize>>,
}

/// `Res(ρ)` as the suffix-minimal generators of the reset ideal.
///
/// A word `w` resets `Cay(ρ)` exactly when all words of `A^k` ending in `w`
/// are `ρ`-related. Candidates are tested shortest first, skipping those
/// that already have a reset suffix. Every word of length `k` is a reset, so
/// generators never exceed length `k`.
pub fn resets(rc: &RightCongruence) -> IdealRep {
    let alphabet = rc.alphabet();
    let g = alphabet.size();
    let k = rc.k();
    let n = rc.carrier();
    let mut code: Vec<Word> = Vec::new();
    let mut modulus = 1usize;
    for len in 0..=k {
        for r in 0..modulus {
            let w = Word::from_rank(r, len, g);
            if code.iter().any(|c| c.is_suffix_of(&w)) {
                continue;
            }
            // Words of A^k with suffix w are the ranks congruent to r mod g^len.
            let class = rc.class_of_rank(r);
            if (r..n).step_by(modulus).all(|u| rc.class_of_rank(u) == class) {
                code.push(w);
            }
        }
        modulus *= g;
    }
    IdealRep::from_code_unchecked(alphabet.clone(), k, code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn eq1() -> RightCongruence {
        let a = ab();
        let blocks: Vec<Vec<Word>> = "aaa,baa,aba/bba/aab,bab/abb/bbb"
            .split('/')
            .map(|b| b.split(',').map(|w| a.parse_word(w).unwrap()).collect())
            .collect();
        RightCongruence::from_blocks(&a, 3, &blocks).unwrap()
    }

    fn w(s: &str) -> Word {
        ab().parse_word(s).unwrap()
    }

    #[test]
    fn universal_is_a_single_looped_vertex() {
        let g = AGraph::cayley(&RightCongruence::universal(&ab(), 3).unwrap());
        assert_eq!(g.table(), &[vec![0, 0]]);
        assert!(g.is_reset(&Word::empty()));
    }

    #[test]
    fn de_bruijn_edges() {
        let g = AGraph::de_bruijn(&ab(), 2).unwrap();
        // aa ab ba bb: xy --c--> yc
        assert_eq!(g.table(), &[vec![0, 1], vec![2, 3], vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn resets_of_eq1_cayley() {
        let g = AGraph::cayley(&eq1());
        assert!(g.is_reset(&w("aa")));
        assert!(!g.is_reset(&w("ba")));
        assert!(!g.is_reset(&w("a")));
        for x in crate::words::words_of_length(&ab(), 3).unwrap() {
            assert!(g.is_reset(&x));
        }
    }

    #[test]
    fn reset_ideal_generators() {
        let render = |i: IdealRep| i.code().words().iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(render(resets(&eq1())), ["aa", "ab", "aba", "abb", "bba", "bbb"]);
        let id = RightCongruence::identity(&ab(), 3).unwrap();
        assert_eq!(resets(&id).code().words().len(), 8);
        let univ = RightCongruence::universal(&ab(), 3).unwrap();
        assert_eq!(resets(&univ).code().words(), &[Word::empty()]);
    }

    #[test]
    fn zeta_inverts_cayley_on_examples() {
        let r = eq1();
        assert_eq!(AGraph::cayley(&r).zeta(3).unwrap(), r);
        let single = AGraph::new(ab(), vec![vec![0, 0]]).unwrap();
        assert_eq!(single.zeta(3).unwrap(), RightCongruence::universal(&ab(), 3).unwrap());
        let db = AGraph::de_bruijn(&ab(), 3).unwrap();
        assert_eq!(db.zeta(3).unwrap(), RightCongruence::identity(&ab(), 3).unwrap());
    }

    #[test]
    fn zeta_preconditions() {
        let split = AGraph::new(ab(), vec![vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(split.zeta(2), Err(Error::NotStronglyConnected));
        let db3 = AGraph::de_bruijn(&ab(), 3).unwrap();
        assert!(matches!(db3.zeta(2), Err(Error::NotKReset(2, _))));
    }

    #[test]
    fn morphisms() {
        let r = eq1();
        let id = RightCongruence::identity(&ab(), 3).unwrap();
        let (cr, cid) = (AGraph::cayley(&r), AGraph::cayley(&id));
        let map = cid.morphism_to(&cr).unwrap().expect("quotient map");
        for (q, &m) in map.iter().enumerate() {
            for a in 0..2 {
                assert_eq!(cr.step(m, a), map[cid.step(q, a)]);
            }
        }
        assert_eq!(cr.morphism_to(&cid).unwrap(), None);
        assert!(cr.isomorphism_to(&cr).unwrap().is_some());
        assert_eq!(cid.isomorphism_to(&cr).unwrap(), None);
    }

    #[test]
    fn morphism_search_handles_disconnected_sources() {
        let two_loops = AGraph::new(ab(), vec![vec![0, 0], vec![1, 1]]).unwrap();
        let one = AGraph::new(ab(), vec![vec![0, 0]]).unwrap();
        assert_eq!(two_loops.morphism_to(&one).unwrap(), Some(vec![0, 0]));
    }

    #[test]
    fn dot_output_is_stable() {
        let dot = AGraph::cayley(&RightCongruence::universal(&ab(), 1).unwrap()).to_dot();
        assert_eq!(dot, "digraph {\n  n0 [label=\"{a,b}\"];\n  n0 -> n0 [label=\"a\"];\n  n0 -> n0 [label=\"b\"];\n}\n");
    }

    #[test]
    fn malformed_tables() {
        assert!(AGraph::new(ab(), vec![]).is_err());
        assert!(AGraph::new(ab(), vec![vec![0]]).is_err());
        assert!(AGraph::new(ab(), vec![vec![0, 3]]).is_err());
    }
}
