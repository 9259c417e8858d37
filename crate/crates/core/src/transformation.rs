//! Total self-maps of a finite state set.
//!
//! A transformation on `n` states is stored as its image table: position `q`
//! holds `(q)f`. Composition follows the right-action convention used for
//! words, so `f.compose(&g)` applies `f` first and then `g`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::UnionFind;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    image: Box<[u32]>,
}

/// A weakly connected component of the functional graph of a transformation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionalComponent {
    /// Members of the component, ascending.
    pub states: Vec<usize>,
    /// The unique cycle of the component, listed in cycle order starting
    /// from its smallest state. A fixed point is a cycle of length one.
    pub cycle: Vec<usize>,
}

impl FunctionalComponent {
    pub fn cycle_length(&self) -> usize {
        self.cycle.len()
    }

    /// True when the component consists of its cycle only.
    pub fn is_pure_cycle(&self) -> bool {
        self.cycle.len() == self.states.len()
    }
}

impl Transformation {
    /// Builds a transformation from its image table, checking that every
    /// entry names a state.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::NoStates);
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidInput(format!("{n} states is too many")));
        }
        if let Some(&bad) = image.iter().find(|&&q| q >= n) {
            return Err(Error::StateOutOfRange { state: bad, n });
        }
        Ok(Self {
            image: image.into_iter().map(|q| q as u32).collect(),
        })
    }

    pub(crate) fn from_u32_unchecked(image: Box<[u32]>) -> Self {
        debug_assert!(image.iter().all(|&q| (q as usize) < image.len()));
        Self { image }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> usize) -> Result<Self> {
        Self::new((0..n).map(f).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n as u32).collect(),
        }
    }

    pub fn constant(n: usize, target: usize) -> Result<Self> {
        Self::new(vec![target; n])
    }

    /// The cyclic permutation `q -> q + 1 (mod n)`.
    pub fn cycle(n: usize) -> Self {
        Self {
            image: (0..n as u32).map(|q| (q + 1) % n as u32).collect(),
        }
    }

    /// The unitary map `(source -> target)`: moves `source` to `target` and
    /// fixes every other state.
    pub fn unitary(n: usize, source: usize, target: usize) -> Result<Self> {
        Self::semiconstant(n, &[source], target)
    }

    /// The semiconstant map `(sources -> target)`.
    pub fn semiconstant(n: usize, sources: &[usize], target: usize) -> Result<Self> {
        if target >= n {
            return Err(Error::StateOutOfRange { state: target, n });
        }
        let mut image: Vec<usize> = (0..n).collect();
        for &s in sources {
            if s >= n {
                return Err(Error::StateOutOfRange { state: s, n });
            }
            image[s] = target;
        }
        Self::new(image)
    }

    /// Number of states the map acts on.
    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.image.iter().map(|&q| q as usize).collect()
    }

    #[inline]
    pub fn apply(&self, q: usize) -> usize {
        self.image[q] as usize
    }

    /// `f.compose(g)` maps `q` to `((q)f)g`.
    pub fn compose(&self, g: &Transformation) -> Result<Transformation> {
        if self.n() != g.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: g.n(),
            });
        }
        Ok(self.then(g))
    }

    /// Unchecked composition; callers guarantee equal dimensions.
    pub(crate) fn then(&self, g: &Transformation) -> Transformation {
        Transformation {
            image: self.image.iter().map(|&q| g.image[q as usize]).collect(),
        }
    }

    pub fn power(&self, exp: usize) -> Transformation {
        let mut acc = Transformation::identity(self.n());
        for _ in 0..exp {
            acc = acc.then(self);
        }
        acc
    }

    /// Distinct image values, ascending.
    pub fn image_set(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        for &q in self.image.iter() {
            seen[q as usize] = true;
        }
        seen.iter()
            .enumerate()
            .filter_map(|(q, &hit)| hit.then_some(q))
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut rank = 0;
        for &q in self.image.iter() {
            if !std::mem::replace(&mut seen[q as usize], true) {
                rank += 1;
            }
        }
        rank
    }

    pub fn deficiency(&self) -> usize {
        self.n() - self.rank()
    }

    pub fn rank_and_deficiency(&self) -> (usize, usize) {
        let rank = self.rank();
        (rank, self.n() - rank)
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.n()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(q, &r)| q == r as usize)
    }

    pub fn is_constant(&self) -> bool {
        self.image.iter().all(|&q| q == self.image[0])
    }

    pub fn inverse(&self) -> Option<Transformation> {
        if !self.is_permutation() {
            return None;
        }
        let mut inv = vec![0u32; self.n()];
        for (q, &r) in self.image.iter().enumerate() {
            inv[r as usize] = q as u32;
        }
        Some(Transformation { image: inv.into() })
    }

    /// Renames states through the bijection `sigma`: the result maps
    /// `sigma[q]` to `sigma[(q)f]`.
    pub fn relabel(&self, sigma: &[usize]) -> Result<Transformation> {
        if sigma.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: sigma.len(),
            });
        }
        let mut image = vec![u32::MAX; self.n()];
        for (q, &r) in self.image.iter().enumerate() {
            let s = sigma[q];
            if s >= self.n() || image[s] != u32::MAX {
                return Err(Error::InvalidInput("relabeling is not a bijection".into()));
            }
            image[s] = sigma[r as usize] as u32;
        }
        Ok(Transformation {
            image: image.into(),
        })
    }

    /// Components of the functional graph `q -> (q)f`, ordered by their
    /// smallest state.
    pub fn functional_components(&self) -> Vec<FunctionalComponent> {
        let n = self.n();
        let mut uf = UnionFind::new(n);
        for q in 0..n {
            uf.union(q, self.apply(q));
        }

        // A state lies on a cycle iff it is reached again after n steps from
        // some n-th iterate; iterating f^n collapses every tail onto its cycle.
        let mut on_cycle = vec![false; n];
        for q in 0..n {
            let mut p = q;
            for _ in 0..n {
                p = self.apply(p);
            }
            on_cycle[p] = true;
        }

        let mut comp_index = vec![usize::MAX; n];
        let mut components: Vec<FunctionalComponent> = Vec::new();
        for (q, &cyclic) in on_cycle.iter().enumerate() {
            let root = uf.find(q);
            if comp_index[root] == usize::MAX {
                comp_index[root] = components.len();
                components.push(FunctionalComponent {
                    states: Vec::new(),
                    cycle: Vec::new(),
                });
            }
            let comp = &mut components[comp_index[root]];
            comp.states.push(q);
            if cyclic && comp.cycle.is_empty() {
                let mut p = q;
                loop {
                    comp.cycle.push(p);
                    p = self.apply(p);
                    if p == q {
                        break;
                    }
                }
            }
        }
        components
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, q) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Transformation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.image.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[usize]) -> Transformation {
        Transformation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_applies_left_first() {
        let a = t(&[1, 0, 1]);
        let b = t(&[2, 2, 1]);
        assert_eq!(a.compose(&b).unwrap(), t(&[2, 2, 2]));
        assert_eq!(b.compose(&b).unwrap(), t(&[1, 1, 2]));
        assert_eq!(Transformation::identity(3).compose(&a).unwrap(), a);
    }

    #[test]
    fn compose_rejects_mismatched_lengths() {
        let err = t(&[0, 1]).compose(&t(&[0, 1, 2])).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn new_rejects_out_of_range_and_empty() {
        assert_eq!(
            Transformation::new(vec![0, 3, 1]).unwrap_err(),
            Error::StateOutOfRange { state: 3, n: 3 }
        );
        assert_eq!(Transformation::new(vec![]).unwrap_err(), Error::NoStates);
    }

    #[test]
    fn rank_and_deficiency_examples() {
        assert_eq!(t(&[4, 2, 3, 0, 0]).rank_and_deficiency(), (4, 1));
        assert_eq!(Transformation::identity(5).rank_and_deficiency(), (5, 0));
        assert_eq!(t(&[1, 0, 3, 3, 0]).deficiency(), 2);
    }

    #[test]
    fn components_of_a_permutation_are_pure_cycles() {
        // (0 1)(2 3 4)
        let comps = t(&[1, 0, 3, 4, 2]).functional_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].states, vec![0, 1]);
        assert_eq!(comps[0].cycle_length(), 2);
        assert_eq!(comps[1].states, vec![2, 3, 4]);
        assert_eq!(comps[1].cycle_length(), 3);
        assert!(comps.iter().all(FunctionalComponent::is_pure_cycle));
    }

    #[test]
    fn components_with_tails() {
        let comps = t(&[1, 0, 3, 3, 0]).functional_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].states, vec![0, 1, 4]);
        assert_eq!(comps[0].cycle, vec![0, 1]);
        assert!(!comps[0].is_pure_cycle());
        assert_eq!(comps[1].states, vec![2, 3]);
        assert_eq!(comps[1].cycle, vec![3]);
        assert!(!comps[1].is_pure_cycle());

        let comps = t(&[3, 0, 3, 4, 0]).functional_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].cycle, vec![0, 3, 4]);
        assert_eq!(comps[0].cycle_length(), 3);
    }

    #[test]
    fn relabel_conjugates() {
        let f = t(&[1, 1, 2]);
        // swap 0 and 2
        let g = f.relabel(&[2, 1, 0]).unwrap();
        assert_eq!(g, t(&[0, 1, 1]));
        assert!(f.relabel(&[0, 0, 1]).is_err());
    }

    #[test]
    fn inverse_of_permutation() {
        let p = t(&[2, 0, 1]);
        assert_eq!(
            p.compose(&p.inverse().unwrap()).unwrap(),
            Transformation::identity(3)
        );
        assert!(t(&[0, 0, 1]).inverse().is_none());
    }
}
