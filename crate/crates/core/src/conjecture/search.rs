//! Random search for counterexamples beyond the exhaustive range.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::canon::Image;
use super::{instance_verdict, kernel, VariantSpec, Verdict};
use crate::analysis;
use crate::automaton::Automaton;
use crate::transformation::Transformation;

/// Draws a letter from a mixture biased toward near-permutations:
/// a permutation, a permutation with one or two entries overwritten, or a
/// uniform map.
pub fn random_letter<R: Rng>(rng: &mut R, n: usize) -> Transformation {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    let overwrite = match rng.gen_range(0..6) {
        0 | 1 => 0,
        2 | 3 => 1,
        4 => 2,
        _ => {
            for x in image.iter_mut() {
                *x = rng.gen_range(0..n);
            }
            0
        }
    };
    for _ in 0..overwrite {
        let q = rng.gen_range(0..n);
        image[q] = rng.gen_range(0..n);
    }
    Transformation::new(image).expect("entries are states")
}

/// A random automaton whose letters all pass the variant's condition.
/// Permutations pass every condition, so rejection sampling terminates.
pub fn random_in_scope<R: Rng>(rng: &mut R, n: usize, k: usize, variant: VariantSpec) -> Automaton {
    let letters = (0..k)
        .map(|_| loop {
            let f = random_letter(rng, n);
            if variant.letter_ok(&f) {
                break f;
            }
        })
        .collect();
    Automaton::new(letters).expect("letters share a state count")
}

fn fast_counterexample(a: &Automaton) -> bool {
    let images: Vec<Image> = a
        .letters()
        .iter()
        .map(|f| {
            let mut img = [0u8; 8];
            for (q, &r) in f.image().iter().enumerate() {
                img[q] = r as u8;
            }
            img
        })
        .collect();
    let refs: Vec<&Image> = images.iter().collect();
    kernel::primitive(a.n(), &refs) && !kernel::synchronizing(a.n(), &refs)
}

/// Samples `budget` in-scope automata and returns the first counterexample.
/// Any hit is re-checked with the general analysis before it is returned.
pub fn search_counterexample(
    n: usize,
    k: usize,
    variant: VariantSpec,
    budget: u64,
    seed: u64,
) -> Option<Automaton> {
    if n == 0 || k == 0 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let a = random_in_scope(&mut rng, n, k, variant);
        if a.all_permutational() {
            continue;
        }
        let candidate = if n <= kernel::MAX_STATES {
            fast_counterexample(&a)
        } else {
            instance_verdict(&a, variant) == Verdict::Counterexample
        };
        if candidate
            && instance_verdict(&a, variant) == Verdict::Counterexample
            && analysis::is_primitive(&a).primitive
            && !analysis::is_synchronizing(&a).synchronizing
        {
            return Some(a);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_budget_finds_nothing() {
        assert!(search_counterexample(5, 2, VariantSpec::Strong, 0, 1).is_none());
    }

    #[test]
    fn samples_respect_the_variant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let a = random_in_scope(&mut rng, 6, 2, VariantSpec::Weak);
            assert!(a.letters().iter().all(|f| f.deficiency() <= 1));
        }
    }

    #[test]
    fn relaxed_search_finds_a_counterexample() {
        let relaxed = VariantSpec::Relaxed {
            allowed_deficiency: 2,
            max_cycle: 3,
        };
        let a = search_counterexample(5, 2, relaxed, 200_000, 11).expect("counterexample");
        assert_eq!(instance_verdict(&a, relaxed), Verdict::Counterexample);
    }
}
