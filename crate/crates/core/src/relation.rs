//! Binary relations on states, stored as bit-packed `n x n` matrices.
//!
//! A relation doubles as a digraph: `(s, t)` is an arc from `s` to `t`, and
//! `(s, s)` a loop. Closures follow the reachability convention where every
//! vertex reaches itself by the empty path, so [`Relation::transitive_closure`]
//! is always reflexive.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::graph;
use crate::partition::{Partition, UnionFind};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// The diagonal `{(q, q)}`.
    pub fn identity(n: usize) -> Self {
        let mut rel = Self::empty(n);
        for q in 0..n {
            rel.insert(q, q);
        }
        rel
    }

    /// The full square `Q x Q`.
    pub fn total(n: usize) -> Self {
        let mut rel = Self::empty(n);
        for s in 0..n {
            for t in 0..n {
                rel.insert(s, t);
            }
        }
        rel
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut rel = Self::empty(n);
        for (s, t) in pairs {
            for q in [s, t] {
                if q >= n {
                    return Err(Error::StateOutOfRange { state: q, n });
                }
            }
            rel.insert(s, t);
        }
        Ok(rel)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn row(&self, s: usize) -> &[u64] {
        &self.bits[s * self.words..(s + 1) * self.words]
    }

    #[inline]
    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.bits[s * self.words + t / WORD] >> (t % WORD) & 1 == 1
    }

    /// Adds `(s, t)`; returns true if it was absent.
    #[inline]
    pub fn insert(&mut self, s: usize, t: usize) -> bool {
        let word = &mut self.bits[s * self.words + t / WORD];
        let mask = 1u64 << (t % WORD);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Successors of `s`, ascending.
    pub fn successors(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(s).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    /// All pairs in row-major order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|s| self.successors(s).map(move |t| (s, t)))
            .collect()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|s| self.successors(s).collect()).collect()
    }

    fn check_dim(&self, other: &Relation) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn inverse(&self) -> Relation {
        let mut inv = Relation::empty(self.n);
        for (s, t) in self.pairs() {
            inv.insert(t, s);
        }
        inv
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        Ok(out)
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0))
    }

    /// `Δ ∪ ρ ∪ ρ⁻¹`.
    pub fn symmetric_closure(&self) -> Relation {
        let mut out = self.clone();
        for (s, t) in self.pairs() {
            out.insert(t, s);
        }
        for q in 0..self.n {
            out.insert(q, q);
        }
        out
    }

    /// Reflexive-transitive closure: `(s, t)` is present iff `t` is reachable
    /// from `s` by a possibly empty path. Warshall's algorithm over packed rows.
    pub fn transitive_closure(&self) -> Relation {
        let mut out = self.clone();
        for q in 0..self.n {
            out.insert(q, q);
        }
        let words = self.words;
        for k in 0..self.n {
            let (kw, kb) = (k / WORD, 1u64 << (k % WORD));
            for i in 0..self.n {
                if i != k && out.bits[i * words + kw] & kb != 0 {
                    for w in 0..words {
                        let v = out.bits[k * words + w];
                        out.bits[i * words + w] |= v;
                    }
                }
            }
        }
        out
    }

    /// The smallest equivalence containing the relation; its blocks are the
    /// weak components of the digraph.
    pub fn equivalence_closure(&self) -> Partition {
        let mut uf = UnionFind::new(self.n);
        for (s, t) in self.pairs() {
            uf.union(s, t);
        }
        uf.into_partition()
    }

    /// True iff every arc lies on a cycle, i.e. every weak component of the
    /// digraph is strongly connected. A loop counts as a cycle of length one.
    pub fn is_cyclic(&self) -> bool {
        let adj = self.adjacency();
        let (comp, _) = graph::strongly_connected_components(&adj);
        adj.iter()
            .enumerate()
            .all(|(s, succ)| succ.iter().all(|&t| comp[s] == comp[t]))
    }

    /// True iff the digraph on all `n` vertices is strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let (_, count) = graph::strongly_connected_components(&self.adjacency());
        count == 1
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|q| self.contains(q, q))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().into_iter().all(|(s, t)| self.contains(t, s))
    }
}

/// True iff every letter maps every pair of `rel` back into `rel`. Closure
/// under the letters is enough, since they generate the transition monoid.
pub fn is_invariant(automaton: &Automaton, rel: &Relation) -> Result<bool> {
    if automaton.n() != rel.n() {
        return Err(Error::DimensionMismatch {
            expected: automaton.n(),
            found: rel.n(),
        });
    }
    let pairs = rel.pairs();
    Ok(automaton.letters().iter().all(|f| {
        pairs
            .iter()
            .all(|&(s, t)| rel.contains(f.apply(s), f.apply(t)))
    }))
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (s, t)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({s},{t})")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation[{}]{self}", self.n)
    }
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().serialize(serializer)
    }
}
