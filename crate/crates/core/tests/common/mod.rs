#![allow(dead_code)]

use primsync_core::analysis::{connectivity_class, ConnectivityClass};
use primsync_core::{Automaton, Transformation};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn aut(rows: &[&[usize]]) -> Automaton {
    Automaton::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Transformation {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    Transformation::new(image).unwrap()
}

pub fn random_map<R: Rng>(rng: &mut R, n: usize) -> Transformation {
    Transformation::from_fn(n, |_| rng.gen_range(0..n)).unwrap()
}

/// `(s -> r)` with `s != r`; needs `n >= 2`.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> Transformation {
    let s = rng.gen_range(0..n);
    let r = (s + rng.gen_range(1..n)) % n;
    Transformation::unitary(n, s, r).unwrap()
}

/// `(S -> r)` with `S` non-empty and not containing `r`; needs `n >= 2`.
pub fn random_semiconstant<R: Rng>(rng: &mut R, n: usize) -> Transformation {
    let r = rng.gen_range(0..n);
    loop {
        let sources: Vec<usize> = (0..n).filter(|&q| q != r && rng.gen_bool(0.4)).collect();
        if !sources.is_empty() {
            return Transformation::semiconstant(n, &sources, r).unwrap();
        }
    }
}

/// Random block labels for `n` states, at most `max_blocks` distinct.
pub fn random_blocks<R: Rng>(rng: &mut R, n: usize, max_blocks: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..max_blocks)).collect()
}

/// A permutation mapping each block onto itself.
pub fn random_block_permutation<R: Rng>(rng: &mut R, blocks: &[usize]) -> Transformation {
    let n = blocks.len();
    let mut image: Vec<usize> = (0..n).collect();
    for b in 0..=blocks.iter().copied().max().unwrap_or(0) {
        let members: Vec<usize> = (0..n).filter(|&q| blocks[q] == b).collect();
        let mut shuffled = members.clone();
        shuffled.shuffle(rng);
        for (&q, &r) in members.iter().zip(&shuffled) {
            image[q] = r;
        }
    }
    Transformation::new(image).unwrap()
}

/// Permutational and unitary letters, at least one unitary. Half of the
/// draws keep the permutations inside random blocks, so that the group
/// has several orbits.
pub fn random_pu<R: Rng>(rng: &mut R, n: usize, k: usize) -> Automaton {
    let blocks = if rng.gen_bool(0.5) {
        random_blocks(rng, n, 3)
    } else {
        vec![0; n]
    };
    let unitary_at = rng.gen_range(0..k);
    let letters = (0..k)
        .map(|i| {
            if i == unitary_at || rng.gen_bool(0.3) {
                random_unitary(rng, n)
            } else {
                random_block_permutation(rng, &blocks)
            }
        })
        .collect();
    Automaton::new(letters).unwrap()
}

/// Permutational and semiconstant letters, at least one semiconstant.
pub fn random_psc<R: Rng>(rng: &mut R, n: usize, k: usize) -> Automaton {
    let sc_at = rng.gen_range(0..k);
    let letters = (0..k)
        .map(|i| {
            if i == sc_at || rng.gen_bool(0.3) {
                random_semiconstant(rng, n)
            } else {
                random_permutation(rng, n)
            }
        })
        .collect();
    Automaton::new(letters).unwrap()
}

pub fn strongly_connected(a: &Automaton) -> bool {
    connectivity_class(a) == ConnectivityClass::StronglyConnected
}

/// Draws until `accept` holds.
pub fn sample_until<R: Rng>(
    rng: &mut R,
    mut draw: impl FnMut(&mut R) -> Automaton,
    accept: impl Fn(&Automaton) -> bool,
) -> Automaton {
    loop {
        let a = draw(rng);
        if accept(&a) {
            return a;
        }
    }
}

pub fn is_pu_letter(f: &Transformation) -> bool {
    f.is_permutation()
        || (f.deficiency() == 1 && primsync_core::rystsov::semiconstant_form(f).is_some())
}

pub fn is_psc_letter(f: &Transformation) -> bool {
    f.is_permutation() || primsync_core::rystsov::semiconstant_form(f).is_some()
}
