//! Canonical forms of automata under state relabeling and letter reordering.
//!
//! The canonical form of an automaton is the lexicographically least letter
//! sequence, comparing letters by their image tables, over all `n!`
//! relabelings and all orderings of the letters. For a fixed relabeling the
//! least ordering is the sorted one, so the brute-force form is the minimum
//! over relabelings of the sorted relabeled letters.
//!
//! [`LetterTable`] indexes every transformation on `n <= 7` states and
//! records, for each one, the least member of its conjugacy class together
//! with a relabeling that reaches it. The enumeration engine uses it to test
//! canonicity without trying all `n!` relabelings.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::transformation::Transformation;

/// Largest state count for which letter tables are built.
pub const MAX_TABLE_STATES: usize = 7;

/// Largest state count accepted by the brute-force canonical form.
pub const MAX_BRUTE_FORCE_STATES: usize = 8;

pub(crate) type Image = [u8; 8];

pub(crate) fn permutations(n: usize) -> Vec<Image> {
    (0..n as u8)
        .permutations(n)
        .map(|p| {
            let mut img = [0u8; 8];
            img[..n].copy_from_slice(&p);
            img
        })
        .collect()
}

/// `g` with `(sigma q)g = sigma((q)f)`.
#[inline]
pub(crate) fn relabel_image(n: usize, f: &Image, sigma: &Image) -> Image {
    let mut g = [0u8; 8];
    for q in 0..n {
        g[sigma[q] as usize] = sigma[f[q] as usize];
    }
    g
}

/// `q -> alpha(tau(q))`.
#[inline]
fn compose_perm(n: usize, tau: &Image, alpha: &Image) -> Image {
    let mut s = [0u8; 8];
    for q in 0..n {
        s[q] = alpha[tau[q] as usize];
    }
    s
}

fn to_image(f: &Transformation) -> Image {
    let mut img = [0u8; 8];
    for (q, &r) in f.image().iter().enumerate() {
        img[q] = r as u8;
    }
    img
}

fn image_to_transformation(n: usize, img: &Image) -> Transformation {
    Transformation::from_u32_unchecked(img[..n].iter().map(|&r| r as u32).collect())
}

/// Every transformation on `n` states, indexed in lexicographic order of
/// image tables, with conjugacy-class data.
pub struct LetterTable {
    n: usize,
    radix: Vec<u32>,
    images: Vec<Image>,
    perms: Vec<Image>,
    /// Least conjugate of each letter.
    rep: Vec<u32>,
    /// Index into `perms` of a relabeling taking the letter to its rep.
    transporter: Vec<u16>,
    /// For reps, index into `automorphisms`.
    aut_slot: Vec<u32>,
    automorphisms: Vec<Vec<Image>>,
    permutation: Vec<bool>,
}

impl LetterTable {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoStates);
        }
        if n > MAX_TABLE_STATES {
            return Err(Error::ResourceExceeded {
                what: format!("letter table for {n} states"),
                cap: MAX_TABLE_STATES as u128,
            });
        }
        let count = (n as u32).pow(n as u32) as usize;
        let radix: Vec<u32> = (0..n).map(|q| (n as u32).pow((n - 1 - q) as u32)).collect();

        let mut images = Vec::with_capacity(count);
        let mut permutation = Vec::with_capacity(count);
        let mut img = [0u8; 8];
        for _ in 0..count {
            images.push(img);
            let mut seen = 0u8;
            for &r in &img[..n] {
                seen |= 1 << r;
            }
            permutation.push(seen.count_ones() as usize == n);
            // odometer with position 0 most significant
            for q in (0..n).rev() {
                img[q] += 1;
                if (img[q] as usize) < n {
                    break;
                }
                img[q] = 0;
            }
        }

        let perms = permutations(n);
        let mut rep = vec![u32::MAX; count];
        let mut transporter = vec![0u16; count];
        let mut aut_slot = vec![u32::MAX; count];
        let mut automorphisms = Vec::new();
        let mut table = LetterTable {
            n,
            radix,
            images,
            perms,
            rep: Vec::new(),
            transporter: Vec::new(),
            aut_slot: Vec::new(),
            automorphisms: Vec::new(),
            permutation,
        };
        let inverse: Vec<u16> = table
            .perms
            .iter()
            .map(|p| {
                let mut inv = [0u8; 8];
                for q in 0..n {
                    inv[p[q] as usize] = q as u8;
                }
                table.perms.iter().position(|x| *x == inv).unwrap() as u16
            })
            .collect();
        for idx in 0..count {
            if rep[idx] != u32::MAX {
                continue;
            }
            // first unvisited index is the least member of its class
            let mut auts = Vec::new();
            for (pi, sigma) in table.perms.iter().enumerate() {
                let g = table.encode(&relabel_image(n, &table.images[idx], sigma));
                if g as usize == idx {
                    auts.push(*sigma);
                }
                if rep[g as usize] == u32::MAX {
                    rep[g as usize] = idx as u32;
                    // g = sigma . f, so sigma^-1 takes g back to the rep
                    transporter[g as usize] = inverse[pi];
                }
            }
            aut_slot[idx] = automorphisms.len() as u32;
            automorphisms.push(auts);
        }
        table.rep = rep;
        table.transporter = transporter;
        table.aut_slot = aut_slot;
        table.automorphisms = automorphisms;
        Ok(table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub(crate) fn encode(&self, img: &Image) -> u32 {
        img[..self.n]
            .iter()
            .zip(&self.radix)
            .map(|(&r, &w)| r as u32 * w)
            .sum()
    }

    pub fn index_of(&self, f: &Transformation) -> Result<u32> {
        if f.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: f.n(),
            });
        }
        Ok(self.encode(&to_image(f)))
    }

    #[inline]
    pub(crate) fn image(&self, idx: u32) -> &Image {
        &self.images[idx as usize]
    }

    pub fn transformation(&self, idx: u32) -> Transformation {
        image_to_transformation(self.n, self.image(idx))
    }

    #[inline]
    pub fn is_permutation(&self, idx: u32) -> bool {
        self.permutation[idx as usize]
    }

    /// Least conjugate of the letter.
    #[inline]
    pub fn rep(&self, idx: u32) -> u32 {
        self.rep[idx as usize]
    }

    pub fn class_count(&self) -> usize {
        self.automorphisms.len()
    }

    pub fn automaton(&self, tuple: &[u32]) -> Automaton {
        Automaton::new(tuple.iter().map(|&i| self.transformation(i)).collect())
            .expect("table letters share a state count")
    }

    pub fn tuple_of(&self, automaton: &Automaton) -> Result<Vec<u32>> {
        automaton
            .letters()
            .iter()
            .map(|f| self.index_of(f))
            .collect()
    }

    #[inline]
    fn relabel_index(&self, idx: u32, sigma: &Image) -> u32 {
        self.encode(&relabel_image(self.n, self.image(idx), sigma))
    }

    /// Canonical letter tuple by trying every relabeling.
    pub fn canonical_tuple(&self, tuple: &[u32]) -> Vec<u32> {
        let mut best: Option<Vec<u32>> = None;
        let mut buf = Vec::with_capacity(tuple.len());
        for sigma in &self.perms {
            buf.clear();
            buf.extend(tuple.iter().map(|&i| self.relabel_index(i, sigma)));
            buf.sort_unstable();
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
        best.unwrap_or_default()
    }

    /// True when `tuple` equals its canonical form. Only relabelings that
    /// send some letter to the least rep present are tried; these are
    /// `alpha . tau_i` with `tau_i` the stored transporter of letter `i` and
    /// `alpha` an automorphism of the rep.
    pub fn is_canonical(&self, tuple: &[u32], buf: &mut Vec<u32>) -> bool {
        let Some(&first) = tuple.first() else {
            return true;
        };
        if self.rep(first) != first {
            return false;
        }
        let rest = &tuple[1..];
        if rest.windows(2).any(|w| w[0] > w[1]) || rest.iter().any(|&t| self.rep(t) < first) {
            return false;
        }
        let auts = &self.automorphisms[self.aut_slot[first as usize] as usize];
        for (i, &ti) in tuple.iter().enumerate() {
            if self.rep(ti) != first || (i > 0 && tuple[i - 1] == ti) {
                continue;
            }
            let tau = &self.perms[self.transporter[ti as usize] as usize];
            for alpha in auts {
                let sigma = compose_perm(self.n, tau, alpha);
                buf.clear();
                buf.extend(
                    tuple
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, &tj)| self.relabel_index(tj, &sigma)),
                );
                buf.sort_unstable();
                if buf.as_slice() < rest {
                    return false;
                }
            }
        }
        true
    }
}

fn check_brute_force_size(n: usize) -> Result<()> {
    if n > MAX_BRUTE_FORCE_STATES {
        return Err(Error::ResourceExceeded {
            what: format!("canonical form over {n}! relabelings"),
            cap: MAX_BRUTE_FORCE_STATES as u128,
        });
    }
    Ok(())
}

/// Canonical representative of the isomorphism class, with default letter
/// names.
pub fn canonical_form(automaton: &Automaton) -> Result<Automaton> {
    let n = automaton.n();
    check_brute_force_size(n)?;
    let letters: Vec<Image> = automaton.letters().iter().map(to_image).collect();
    let mut best: Option<Vec<Image>> = None;
    let mut buf = Vec::with_capacity(letters.len());
    for sigma in permutations(n) {
        buf.clear();
        buf.extend(letters.iter().map(|f| relabel_image(n, f, &sigma)));
        buf.sort_unstable();
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    let best = best.unwrap_or_default();
    Automaton::new(
        best.iter()
            .map(|img| image_to_transformation(n, img))
            .collect(),
    )
}

/// Same state count, letter count and canonical form.
pub fn isomorphic(a: &Automaton, b: &Automaton) -> Result<bool> {
    if a.n() != b.n() || a.letter_count() != b.letter_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Number of distinct letter tuples isomorphic to `automaton`, counting
/// each ordering of the letters separately.
pub fn class_size(automaton: &Automaton) -> Result<u128> {
    let n = automaton.n();
    check_brute_force_size(n)?;
    let k = automaton.letter_count();
    let letters: Vec<Image> = automaton.letters().iter().map(to_image).collect();
    let mut multisets = std::collections::BTreeSet::new();
    for sigma in permutations(n) {
        let mut m: Vec<Image> = letters
            .iter()
            .map(|f| relabel_image(n, f, &sigma))
            .collect();
        m.sort_unstable();
        multisets.insert(m);
    }
    let orderings = |m: &Vec<Image>| -> u128 {
        let mut r = factorial(k);
        for (_, group) in &m.iter().chunk_by(|x| **x) {
            r /= factorial(group.count());
        }
        r
    };
    Ok(multisets.iter().map(orderings).sum())
}

fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

fn cycle_lengths(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut q = s;
        while !seen[q] {
            seen[q] = true;
            q = p[q];
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Number of maps commuting with a permutation of the given cycle type.
fn commuting_maps(cycles: &[usize]) -> u128 {
    cycles
        .iter()
        .map(|&c| {
            cycles
                .iter()
                .filter(|&&d| c % d == 0)
                .map(|&d| d as u128)
                .sum::<u128>()
        })
        .product()
}

/// Number of isomorphism classes of `k`-letter automata on `n` states, by
/// Burnside's lemma over simultaneous relabeling and letter reordering.
pub fn isomorphism_class_count(n: usize, k: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::NoStates);
    }
    if n > MAX_BRUTE_FORCE_STATES || k > MAX_BRUTE_FORCE_STATES {
        return Err(Error::ResourceExceeded {
            what: format!("class count for n={n}, k={k}"),
            cap: MAX_BRUTE_FORCE_STATES as u128,
        });
    }
    // fixed tuples of (sigma, pi): each cycle of pi of length L contributes
    // the number of maps commuting with sigma^L
    let mut by_power: BTreeMap<usize, Vec<u128>> = BTreeMap::new();
    for l in 1..=k.max(1) {
        let counts = (0..n)
            .permutations(n)
            .map(|p| {
                let pl: Vec<usize> = (0..n).map(|q| (0..l).fold(q, |x, _| p[x])).collect();
                commuting_maps(&cycle_lengths(&pl))
            })
            .collect();
        by_power.insert(l, counts);
    }
    let nf = factorial(n) as usize;
    let mut total: u128 = 0;
    for pi in (0..k).permutations(k) {
        let lens = cycle_lengths(&pi);
        total += (0..nf)
            .map(|s| lens.iter().map(|l| by_power[l][s]).product::<u128>())
            .sum::<u128>();
    }
    Ok(total / (factorial(n) * factorial(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn table_orders_letters_by_image() {
        let t = LetterTable::new(3).unwrap();
        assert_eq!(t.len(), 27);
        assert_eq!(t.transformation(0).to_vec(), vec![0, 0, 0]);
        assert_eq!(t.transformation(5).to_vec(), vec![0, 1, 2]);
        assert_eq!(t.transformation(26).to_vec(), vec![2, 2, 2]);
        let f = Transformation::new(vec![1, 0, 1]).unwrap();
        assert_eq!(t.transformation(t.index_of(&f).unwrap()), f);
    }

    #[test]
    fn class_counts_match_functional_digraphs() {
        // unlabeled functional digraphs: 1, 3, 7, 19, 47
        for (n, want) in [(1, 1), (2, 3), (3, 7), (4, 19), (5, 47)] {
            assert_eq!(LetterTable::new(n).unwrap().class_count(), want);
            assert_eq!(isomorphism_class_count(n, 1).unwrap(), want as u128);
        }
    }

    #[test]
    fn reps_are_least_conjugates() {
        let t = LetterTable::new(4).unwrap();
        let perms = permutations(4);
        for idx in 0..t.len() as u32 {
            let least = perms.iter().map(|s| t.relabel_index(idx, s)).min().unwrap();
            assert_eq!(t.rep(idx), least);
            let tau = &t.perms[t.transporter[idx as usize] as usize];
            assert_eq!(t.relabel_index(idx, tau), least);
        }
    }

    #[test]
    fn fast_check_agrees_with_brute_force() {
        for (n, k) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let t = LetterTable::new(n).unwrap();
            let mut buf = Vec::new();
            let mut classes = 0u128;
            for tuple in (0..k).map(|_| 0..t.len() as u32).multi_cartesian_product() {
                let canonical = t.canonical_tuple(&tuple) == tuple;
                assert_eq!(t.is_canonical(&tuple, &mut buf), canonical, "{tuple:?}");
                classes += canonical as u128;
            }
            assert_eq!(classes, isomorphism_class_count(n, k).unwrap());
        }
    }

    #[test]
    fn fixtures_canonicalize_consistently() {
        let a = fixtures::primitive_nonsync_5b();
        let c = canonical_form(&a).unwrap();
        let shuffled = a
            .relabel(&[4, 2, 0, 1, 3])
            .unwrap()
            .reorder_letters(&[2, 0, 1])
            .unwrap();
        assert_eq!(canonical_form(&shuffled).unwrap(), c);
        assert!(isomorphic(&a, &shuffled).unwrap());
        assert!(!isomorphic(&a, &fixtures::almost_group_5()).unwrap());
        let t = LetterTable::new(5).unwrap();
        let tuple = t.tuple_of(&a).unwrap();
        assert_eq!(t.automaton(&t.canonical_tuple(&tuple)), c);
    }

    #[test]
    fn class_size_of_symmetric_automaton() {
        // identity letters only: a single tuple
        let id = Automaton::new(vec![Transformation::identity(3); 2]).unwrap();
        assert_eq!(class_size(&id).unwrap(), 1);
        // two distinct constants on 2 states: (c0, c1) and (c1, c0)
        let consts = Automaton::new(vec![
            Transformation::constant(2, 0).unwrap(),
            Transformation::constant(2, 1).unwrap(),
        ])
        .unwrap();
        assert_eq!(class_size(&consts).unwrap(), 2);
    }

    #[test]
    fn oversized_inputs_are_rejected() {
        assert!(matches!(
            LetterTable::new(8),
            Err(Error::ResourceExceeded { .. })
        ));
        let big = fixtures::cerny(9);
        assert!(matches!(
            canonical_form(&big),
            Err(Error::ResourceExceeded { .. })
        ));
    }
}
