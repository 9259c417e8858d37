//! Equivalence relations on states, kept in a canonical block-id form.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relation::Relation;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if they were
    /// already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        self.size.fill(1);
    }

    pub fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).map(|q| self.find(q)).collect();
        Partition::from_labels(&roots)
    }
}

/// A partition of `{0..n}` into blocks. Block ids are numbered in order of
/// each block's smallest member, so two partitions are equal iff they
/// describe the same equivalence relation.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "Vec<Vec<usize>>")]
pub struct Partition {
    block_of: Vec<usize>,
    block_count: usize,
}

impl Partition {
    /// Normalizes arbitrary labels: states with equal labels share a block.
    pub fn from_labels<L: PartialEq + Copy>(labels: &[L]) -> Self {
        let mut seen: Vec<L> = Vec::new();
        let block_of = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i,
                None => {
                    seen.push(*l);
                    seen.len() - 1
                }
            })
            .collect();
        Self {
            block_of,
            block_count: seen.len(),
        }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &q in block {
                if q >= n {
                    return Err(Error::StateOutOfRange { state: q, n });
                }
                if labels[q] != usize::MAX {
                    return Err(Error::InvalidInput(format!(
                        "state {q} appears in two blocks"
                    )));
                }
                labels[q] = b;
            }
        }
        if let Some(q) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidInput(format!("state {q} is in no block")));
        }
        Ok(Self::from_labels(&labels))
    }

    /// The identity relation: all blocks singletons.
    pub fn discrete(n: usize) -> Self {
        Self {
            block_of: (0..n).collect(),
            block_count: n,
        }
    }

    /// The total relation: one block.
    pub fn total(n: usize) -> Self {
        Self {
            block_of: vec![0; n],
            block_count: n.min(1),
        }
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn block_of(&self, q: usize) -> usize {
        self.block_of[q]
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block_of
    }

    pub fn same_block(&self, p: usize, q: usize) -> bool {
        self.block_of[p] == self.block_of[q]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (q, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(q);
        }
        blocks
    }

    /// Neither the identity nor the total relation.
    pub fn is_nontrivial(&self) -> bool {
        self.block_count > 1 && self.block_count < self.n()
    }

    pub fn to_relation(&self) -> Relation {
        let n = self.n();
        let mut rel = Relation::empty(n);
        for s in 0..n {
            for t in 0..n {
                if self.same_block(s, t) {
                    rel.insert(s, t);
                }
            }
        }
        rel
    }
}

impl From<Partition> for Vec<Vec<usize>> {
    fn from(p: Partition) -> Self {
        p.blocks()
    }
}

impl fmt::Display for Partition {
    /// Renders blocks as `{0,1}{2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in self.blocks() {
            write!(f, "{{")?;
            for (i, q) in block.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{q}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}
