//! Exhaustive lattice checks over an enumerated set of right congruences.

use std::collections::HashMap;

use super::{dedup, RightCongruence};
use crate::error::{Error, Result};

/// Lattices above this size are refused rather than sampled.
pub const MAX_LATTICE: usize = 5000;

/// Indices of a pentagon sublattice
///
/// ```text
///      top
///     /    \
///  upper    \
///    |     side
///  lower    /
///     \    /
///     bottom
/// ```
///
/// with `lower < upper`, `lower ∨ side = upper ∨ side = top` and
/// `lower ∧ side = upper ∧ side = bottom`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pentagon {
    pub top: usize,
    pub upper: usize,
    pub lower: usize,
    pub side: usize,
    pub bottom: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witnesses {
    /// A pentagon, present when the lattice is not modular.
    pub modular: Option<Pentagon>,
    /// A pentagon whose side covers its bottom.
    pub semimodular: Option<Pentagon>,
    /// An element that is not the join of the atoms below it.
    pub atomistic: Option<usize>,
    /// An element reached from the bottom by maximal chains of different lengths.
    pub jordan_dedekind: Option<(usize, Vec<usize>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub size: usize,
    /// `(x, y)` with `y` covering `x`.
    pub covers: Vec<(usize, usize)>,
    pub atoms: Vec<usize>,
    pub semimodular: bool,
    pub modular: bool,
    pub atomistic: bool,
    pub jordan_dedekind: bool,
    pub witnesses: Witnesses,
}

/// A finite lattice of right congruences ordered by inclusion, with meet and
/// join tables precomputed.
#[derive(Debug, Clone)]
pub struct Lattice {
    elements: Vec<RightCongruence>,
    leq: Vec<Vec<bool>>,
    covers: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Fails with [`Error::NotClosed`] if some meet or join falls outside the
    /// given set.
    pub fn new(elements: Vec<RightCongruence>) -> Result<Self> {
        let elements = dedup(elements);
        let n = elements.len();
        if n == 0 {
            return Err(Error::NotClosed("an empty set has no bottom"));
        }
        if n > MAX_LATTICE {
            return Err(Error::BoundExceeded {
                requested: n as u128,
                limit: MAX_LATTICE as u128,
            });
        }
        let index: HashMap<&RightCongruence, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                let m = elements[i].meet(&elements[j])?;
                let jn = elements[i].join(&elements[j])?;
                let m = *index.get(&m).ok_or(Error::NotClosed("meet"))?;
                let jn = *index.get(&jn).ok_or(Error::NotClosed("join"))?;
                meet[i][j] = m;
                meet[j][i] = m;
                join[i][j] = jn;
                join[j][i] = jn;
            }
        }
        let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| meet[i][j] == i).collect()).collect();
        let covers = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| x != y && leq[x][y] && !(0..n).any(|z| z != x && z != y && leq[x][z] && leq[z][y]))
                    .collect()
            })
            .collect();
        let bottom = (0..n).fold(0, |acc, i| meet[acc][i]);
        let top = (0..n).fold(0, |acc, i| join[acc][i]);
        Ok(Lattice {
            elements,
            leq,
            covers,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[RightCongruence] {
        &self.elements
    }

    pub fn index_of(&self, rc: &RightCongruence) -> Option<usize> {
        self.elements.iter().position(|e| e == rc)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x][y]
    }

    /// `y` covers `x`.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.covers[x][y]
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.covers[x][y])
            .collect()
    }

    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.covers[self.bottom][a]).collect()
    }

    pub fn is_pentagon(&self, p: &Pentagon) -> bool {
        let ids = [p.top, p.upper, p.lower, p.side, p.bottom];
        let distinct = ids.iter().enumerate().all(|(i, x)| !ids[..i].contains(x));
        distinct
            && self.leq[p.lower][p.upper]
            && self.join[p.lower][p.side] == p.top
            && self.join[p.upper][p.side] == p.top
            && self.meet[p.lower][p.side] == p.bottom
            && self.meet[p.upper][p.side] == p.bottom
    }

    /// Every pentagon sublattice, scanning `lower < upper` pairs and checking
    /// that some third element cannot tell them apart by meet or join.
    pub fn pentagons(&self) -> Vec<Pentagon> {
        let mut out = Vec::new();
        self.scan_pentagons(|p| {
            out.push(p);
            false
        });
        out
    }

    /// First pentagon found, optionally requiring `side` to cover `bottom`.
    pub fn find_pentagon(&self, side_covers_bottom: bool) -> Option<Pentagon> {
        let mut found = None;
        self.scan_pentagons(|p| {
            if !side_covers_bottom || self.covers[p.bottom][p.side] {
                found = Some(p);
                true
            } else {
                false
            }
        });
        found
    }

    fn scan_pentagons(&self, mut visit: impl FnMut(Pentagon) -> bool) {
        let n = self.len();
        for lower in 0..n {
            for upper in 0..n {
                if lower == upper || !self.leq[lower][upper] {
                    continue;
                }
                for side in 0..n {
                    let top = self.join[lower][side];
                    let bottom = self.meet[lower][side];
                    // Comparable `side` always separates lower from upper.
                    if top == self.join[upper][side] && bottom == self.meet[upper][side] {
                        let p = Pentagon {
                            top,
                            upper,
                            lower,
                            side,
                            bottom,
                        };
                        debug_assert!(self.is_pentagon(&p));
                        if visit(p) {
                            return;
                        }
                    }
                }
            }
        }
    }

    /// Elements in an order compatible with `≤` (finer first).
    fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.elements[i].num_classes()));
        order
    }

    /// For each element, the sorted set of lengths of maximal chains from the
    /// bottom up to it.
    pub fn chain_lengths(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut lengths: Vec<Vec<usize>> = vec![Vec::new(); n];
        lengths[self.bottom] = vec![0];
        for y in self.linear_extension() {
            if y == self.bottom {
                continue;
            }
            let mut set: Vec<usize> = (0..n)
                .filter(|&x| self.covers[x][y])
                .flat_map(|x| lengths[x].iter().map(|l| l + 1).collect::<Vec<_>>())
                .collect();
            set.sort_unstable();
            set.dedup();
            lengths[y] = set;
        }
        lengths
    }

    pub fn report(&self) -> LatticeReport {
        let atoms = self.atoms();
        let modular_witness = self.find_pentagon(false);
        let semimodular_witness = self.find_pentagon(true);
        let atomistic_witness = (0..self.len()).find(|&x| {
            let j = atoms
                .iter()
                .filter(|&&a| self.leq[a][x])
                .fold(self.bottom, |acc, &a| self.join[acc][a]);
            j != x
        });
        let jd_witness = self
            .chain_lengths()
            .into_iter()
            .enumerate()
            .find(|(_, l)| l.len() > 1);
        LatticeReport {
            size: self.len(),
            covers: self.cover_pairs(),
            atoms,
            semimodular: semimodular_witness.is_none(),
            modular: modular_witness.is_none(),
            atomistic: atomistic_witness.is_none(),
            jordan_dedekind: jd_witness.is_none(),
            witnesses: Witnesses {
                modular: modular_witness,
                semimodular: semimodular_witness,
                atomistic: atomistic_witness,
                jordan_dedekind: jd_witness,
            },
        }
    }
}

/// Build the lattice over `elements` and compute every flag.
pub fn lattice_report(elements: Vec<RightCongruence>) -> Result<LatticeReport> {
    Ok(Lattice::new(elements)?.report())
}
