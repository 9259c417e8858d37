//! Exhaustive enumeration of letter tuples, raw or up to isomorphism.
//!
//! The space is split into shards by the first letter. Shards are processed
//! in parallel and merged in shard order, so reports do not depend on the
//! number of workers.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::canon::{Image, LetterTable};
use super::{kernel, VariantSpec};
use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::transformation::Transformation;

/// Default cap on the number of candidate tuples examined by one run.
pub const DEFAULT_BUDGET: u64 = 20_000_000_000;

const PROGRESS_STRIDE: u64 = 1 << 16;

fn binomial(n: u128, r: u128) -> u128 {
    let r = r.min(n.saturating_sub(r));
    (0..r).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-tuples of letters on `n` states passing a filter, optionally
/// restricted to canonical forms. The filter must be invariant under
/// relabeling for the restricted space to contain one tuple per class.
pub struct TupleSpace {
    table: LetterTable,
    k: usize,
    dedup: bool,
    scope: Vec<u32>,
    shards: Vec<u32>,
    shard_sizes: Vec<u128>,
}

impl TupleSpace {
    pub fn new(
        n: usize,
        k: usize,
        dedup: bool,
        filter: impl Fn(&Transformation) -> bool,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::NoLetters);
        }
        let table = LetterTable::new(n)?;
        let scope: Vec<u32> = (0..table.len() as u32)
            .filter(|&i| filter(&table.transformation(i)))
            .collect();
        let (shards, shard_sizes) = if dedup {
            let mut scope_reps: Vec<u32> = scope.iter().map(|&i| table.rep(i)).collect();
            scope_reps.sort_unstable();
            let shards: Vec<u32> = scope
                .iter()
                .copied()
                .filter(|&i| table.rep(i) == i)
                .collect();
            let sizes = shards
                .iter()
                .map(|&r| {
                    let eligible = scope_reps.len() - scope_reps.partition_point(|&x| x < r);
                    binomial(eligible as u128 + k as u128 - 2, k as u128 - 1)
                })
                .collect();
            (shards, sizes)
        } else {
            let per = (scope.len() as u128).pow(k as u32 - 1);
            (scope.clone(), vec![per; scope.len()])
        };
        Ok(Self {
            table,
            k,
            dedup,
            scope,
            shards,
            shard_sizes,
        })
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dedup(&self) -> bool {
        self.dedup
    }

    pub fn table(&self) -> &LetterTable {
        &self.table
    }

    /// Letters passing the filter, ascending.
    pub fn scope(&self) -> &[u32] {
        &self.scope
    }

    pub fn shard_count(&self) -> usize {
        self.shards.len()
    }

    /// Tuples examined by a full pass, before the canonicity test.
    pub fn candidate_count(&self) -> u128 {
        self.shard_sizes.iter().sum()
    }

    /// Calls `visit` on every tuple of the shard, in lexicographic order.
    pub fn visit_shard(&self, shard: usize, mut visit: impl FnMut(&[u32])) {
        let first = self.shards[shard];
        let k = self.k;
        let mut tuple = vec![first; k];
        if k == 1 {
            visit(&tuple);
            return;
        }
        let letters: Vec<u32> = if self.dedup {
            self.scope
                .iter()
                .copied()
                .filter(|&i| self.table.rep(i) >= first)
                .collect()
        } else {
            self.scope.clone()
        };
        if letters.is_empty() {
            return;
        }
        let mut pos = vec![0usize; k];
        let mut buf = Vec::with_capacity(k);
        loop {
            for j in 1..k {
                tuple[j] = letters[pos[j]];
            }
            if !self.dedup || self.table.is_canonical(&tuple, &mut buf) {
                visit(&tuple);
            }
            // advance; in dedup mode positions are non-decreasing
            let mut j = k - 1;
            loop {
                pos[j] += 1;
                if pos[j] < letters.len() {
                    break;
                }
                if j == 1 {
                    return;
                }
                j -= 1;
            }
            for i in j + 1..k {
                pos[i] = if self.dedup { pos[j] } else { 0 };
            }
        }
    }

    /// Sequential pass over every tuple as an [`Automaton`].
    pub fn for_each_automaton(&self, mut visit: impl FnMut(&Automaton)) {
        for shard in 0..self.shard_count() {
            self.visit_shard(shard, |t| visit(&self.table.automaton(t)));
        }
    }

    /// Number of tuples visited by a full pass.
    pub fn count(&self) -> u64 {
        (0..self.shard_count())
            .map(|s| {
                let mut c = 0u64;
                self.visit_shard(s, |_| c += 1);
                c
            })
            .sum()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub n: usize,
    pub k: usize,
    pub variant: VariantSpec,
    pub dedup: bool,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    /// Maximum number of candidate tuples.
    pub budget: u64,
    /// Maximum number of counterexamples kept in the report.
    pub max_counterexamples: usize,
}

impl VerifyConfig {
    pub fn new(n: usize, k: usize, variant: VariantSpec) -> Self {
        Self {
            n,
            k,
            variant,
            dedup: false,
            jobs: 0,
            budget: DEFAULT_BUDGET,
            max_counterexamples: 100,
        }
    }

    pub fn dedup(mut self, dedup: bool) -> Self {
        self.dedup = dedup;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn max_counterexamples(mut self, max: usize) -> Self {
        self.max_counterexamples = max;
        self
    }
}

/// Counts refer to raw tuples, or to isomorphism classes when `dedup` is
/// set. Counterexamples are listed by canonical form, least first, in both
/// modes.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub k: usize,
    pub variant: VariantSpec,
    pub dedup: bool,
    /// Size of the whole space: `n^(n k)` tuples, or the number of classes.
    pub total_enumerated: u128,
    pub candidates_examined: u64,
    pub in_scope: u64,
    pub all_permutational: u64,
    /// In scope, some letter not a permutation, primitive.
    pub primitive_in_scope: u64,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Automaton>,
    pub counterexamples_truncated: bool,
    #[serde(serialize_with = "serialize_secs")]
    pub elapsed: Duration,
}

fn serialize_secs<S: serde::Serializer>(
    d: &Duration,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.counterexample_count == 0
    }
}

#[derive(Default)]
struct ShardTally {
    candidates: u64,
    in_scope: u64,
    all_permutational: u64,
    primitive: u64,
    counterexamples: u64,
    found: BTreeSet<Vec<u32>>,
}

impl ShardTally {
    fn keep(&mut self, tuple: Vec<u32>, max: usize) {
        self.found.insert(tuple);
        if self.found.len() > max {
            self.found.pop_last();
        }
    }

    fn merge(&mut self, other: ShardTally, max: usize) {
        self.candidates += other.candidates;
        self.in_scope += other.in_scope;
        self.all_permutational += other.all_permutational;
        self.primitive += other.primitive;
        self.counterexamples += other.counterexamples;
        for t in other.found {
            self.keep(t, max);
        }
    }
}

/// Progress callback: `(candidates processed, candidates total)`.
pub type Progress<'a> = &'a (dyn Fn(u64, u64) + Sync);

/// Classifies every tuple of the space with the conjecture instance verdict.
pub fn enumerate_and_verify(
    config: &VerifyConfig,
    progress: Option<Progress<'_>>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if config.n == 0 {
        return Err(Error::NoStates);
    }
    let variant = config.variant;
    let space = TupleSpace::new(config.n, config.k, config.dedup, |f| variant.letter_ok(f))?;
    let total_candidates = space.candidate_count();
    if total_candidates > config.budget as u128 {
        return Err(Error::ResourceExceeded {
            what: format!(
                "{total_candidates} candidate tuples for n={}, k={}",
                config.n, config.k
            ),
            cap: config.budget as u128,
        });
    }
    let total_enumerated = if config.dedup {
        super::canon::isomorphism_class_count(config.n, config.k)?
    } else {
        (config.n as u128).pow((config.n * config.k) as u32)
    };

    let processed = AtomicU64::new(0);
    let total = total_candidates as u64;
    let max = config.max_counterexamples;
    let table = space.table();
    let n = config.n;
    let run_shard = |shard: usize| {
        let mut tally = ShardTally::default();
        let mut reported = 0u64;
        let report = |count: u64| {
            let done = processed.fetch_add(count, Ordering::Relaxed) + count;
            if let Some(p) = progress {
                p(done, total);
            }
        };
        let mut refs: Vec<&Image> = Vec::with_capacity(config.k);
        space.visit_shard(shard, |tuple| {
            tally.in_scope += 1;
            if tally.in_scope % PROGRESS_STRIDE == 0 {
                report(PROGRESS_STRIDE);
                reported += PROGRESS_STRIDE;
            }
            if tuple.iter().all(|&i| table.is_permutation(i)) {
                tally.all_permutational += 1;
                return;
            }
            refs.clear();
            refs.extend(tuple.iter().map(|&i| table.image(i)));
            if !kernel::primitive(n, &refs) {
                return;
            }
            tally.primitive += 1;
            if !kernel::synchronizing(n, &refs) {
                tally.counterexamples += 1;
                let canonical = if space.dedup() {
                    tuple.to_vec()
                } else {
                    table.canonical_tuple(tuple)
                };
                tally.keep(canonical, max);
            }
        });
        // tuples rejected as non-canonical count as examined
        tally.candidates = space.shard_sizes[shard] as u64;
        report(tally.candidates - reported);
        tally
    };

    let tallies: Vec<ShardTally> = if config.jobs == 0 {
        (0..space.shard_count())
            .into_par_iter()
            .map(run_shard)
            .collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
            .install(|| {
                (0..space.shard_count())
                    .into_par_iter()
                    .map(run_shard)
                    .collect()
            })
    };
    let mut merged = ShardTally::default();
    for t in tallies {
        merged.merge(t, max);
    }

    let counterexamples: Vec<Automaton> = merged.found.iter().map(|t| table.automaton(t)).collect();
    Ok(VerificationReport {
        n: config.n,
        k: config.k,
        variant,
        dedup: config.dedup,
        total_enumerated,
        candidates_examined: merged.candidates,
        in_scope: merged.in_scope,
        all_permutational: merged.all_permutational,
        primitive_in_scope: merged.primitive,
        counterexample_count: merged.counterexamples,
        counterexamples_truncated: merged.counterexamples as usize > counterexamples.len(),
        counterexamples,
        elapsed: start.elapsed(),
    })
}
