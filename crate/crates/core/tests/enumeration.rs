//! Exhaustive enumeration: class counts, scope inclusions, determinism.

mod common;

use std::sync::atomic::{AtomicU64, Ordering};

use common::*;
use primsync_core::conjecture::canon::{class_size, isomorphism_class_count};
use primsync_core::conjecture::{
    enumerate_and_verify, letter_ok_strong, letter_ok_weak, search_counterexample, TupleSpace,
    VariantSpec, VerifyConfig,
};
use primsync_core::{Error, Transformation};

const RELAXED: VariantSpec = VariantSpec::Relaxed {
    allowed_deficiency: 2,
    max_cycle: 3,
};

#[test]
fn class_sizes_reconstruct_the_raw_count() {
    for (n, k) in [(3, 2), (2, 3), (4, 1), (3, 1)] {
        let space = TupleSpace::new(n, k, true, |_| true).unwrap();
        let mut total = 0u128;
        let mut classes = 0u128;
        space.for_each_automaton(|a| {
            total += class_size(a).unwrap();
            classes += 1;
        });
        assert_eq!(total, (n as u128).pow((n * k) as u32), "n={n} k={k}");
        assert_eq!(classes, isomorphism_class_count(n, k).unwrap());
    }
}

#[test]
fn raw_space_has_every_tuple() {
    let space = TupleSpace::new(3, 2, false, |_| true).unwrap();
    assert_eq!(space.count(), 729);
    assert_eq!(space.candidate_count(), 729);
}

#[test]
fn weak_scope_is_inside_strong_scope() {
    let space = TupleSpace::new(4, 2, false, |_| true).unwrap();
    let mut weak = 0;
    space.for_each_automaton(|a| {
        if a.letters().iter().all(letter_ok_weak) {
            weak += 1;
            assert!(a.letters().iter().all(letter_ok_strong), "{a:?}");
        }
    });
    assert!(weak > 0);
    // a semiconstant map of deficiency 2 is strong-only
    let sc = Transformation::semiconstant(4, &[1, 2], 0).unwrap();
    assert!(letter_ok_strong(&sc) && !letter_ok_weak(&sc));
}

#[test]
fn semiconstant_letters_pass_the_strong_condition() {
    for n in 1..=4 {
        let space = TupleSpace::new(n, 1, false, is_psc_letter).unwrap();
        space.for_each_automaton(|a| assert!(letter_ok_strong(&a.letters()[0]), "{a:?}"));
    }
}

#[test]
fn raw_and_dedup_agree_on_counterexamples() {
    let cfg = VerifyConfig::new(5, 2, RELAXED).max_counterexamples(usize::MAX);
    let raw = enumerate_and_verify(&cfg, None).unwrap();
    let dedup = enumerate_and_verify(&cfg.clone().dedup(true), None).unwrap();
    assert!(!dedup.counterexamples.is_empty());
    assert_eq!(raw.counterexamples, dedup.counterexamples);
    // every raw counterexample lies in one of the classes
    let sizes: u128 = dedup
        .counterexamples
        .iter()
        .map(|a| class_size(a).unwrap())
        .sum();
    assert_eq!(sizes, raw.counterexample_count as u128);
}

#[test]
fn small_ranges_hold_for_both_variants() {
    for variant in [VariantSpec::Weak, VariantSpec::Strong] {
        for (n, k) in [(3, 2), (4, 2), (3, 3)] {
            let r = enumerate_and_verify(&VerifyConfig::new(n, k, variant), None).unwrap();
            assert!(r.holds(), "n={n} k={k} {variant}");
            assert_eq!(r.total_enumerated, (n as u128).pow((n * k) as u32));
            assert!(r.in_scope >= r.all_permutational + r.primitive_in_scope);
        }
    }
}

#[test]
fn report_is_independent_of_worker_count() {
    let base = VerifyConfig::new(5, 2, RELAXED).dedup(true);
    let one = enumerate_and_verify(&base.clone().jobs(1), None).unwrap();
    let three = enumerate_and_verify(&base.jobs(3), None).unwrap();
    assert_eq!(one.counterexamples, three.counterexamples);
    assert_eq!(
        (
            one.in_scope,
            one.primitive_in_scope,
            one.counterexample_count
        ),
        (
            three.in_scope,
            three.primitive_in_scope,
            three.counterexample_count
        )
    );
}

#[test]
fn counterexample_list_keeps_the_least() {
    let all = enumerate_and_verify(
        &VerifyConfig::new(5, 2, RELAXED)
            .dedup(true)
            .max_counterexamples(usize::MAX),
        None,
    )
    .unwrap();
    let few = enumerate_and_verify(
        &VerifyConfig::new(5, 2, RELAXED)
            .dedup(true)
            .max_counterexamples(3),
        None,
    )
    .unwrap();
    assert_eq!(few.counterexamples, all.counterexamples[..3]);
    assert!(few.counterexamples_truncated);
    assert_eq!(few.counterexample_count, all.counterexample_count);
}

#[test]
fn progress_reaches_the_total() {
    let last = AtomicU64::new(0);
    let total = AtomicU64::new(0);
    let cb = |done: u64, of: u64| {
        last.fetch_max(done, Ordering::Relaxed);
        total.store(of, Ordering::Relaxed);
    };
    let r = enumerate_and_verify(
        &VerifyConfig::new(4, 2, VariantSpec::Strong).dedup(true),
        Some(&cb),
    )
    .unwrap();
    assert_eq!(last.load(Ordering::Relaxed), r.candidates_examined);
    assert_eq!(total.load(Ordering::Relaxed), r.candidates_examined);
}

#[test]
fn over_budget_runs_fail_before_starting() {
    let err = enumerate_and_verify(
        &VerifyConfig::new(5, 3, VariantSpec::Weak).budget(1000),
        None,
    )
    .unwrap_err();
    assert!(matches!(err, Error::ResourceExceeded { .. }));
    let err = enumerate_and_verify(&VerifyConfig::new(8, 2, VariantSpec::Weak), None).unwrap_err();
    assert!(matches!(err, Error::ResourceExceeded { .. }));
}

#[test]
fn random_search_respects_the_verified_range() {
    assert!(search_counterexample(6, 2, VariantSpec::Weak, 1_000_000, 1).is_none());
    assert!(search_counterexample(5, 2, VariantSpec::Strong, 200_000, 2).is_none());
    assert!(search_counterexample(5, 3, RELAXED, 0, 3).is_none());
}
