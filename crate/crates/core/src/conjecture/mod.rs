//! Letter-shape conditions under which primitivity is expected to imply
//! synchronization, per-automaton verdicts, and the exhaustive and random
//! searches over small automata.
//!
//! Three families of letter conditions are supported:
//!
//! * [`VariantSpec::Weak`]: every letter has deficiency at most one.
//! * [`VariantSpec::Strong`]: every letter has deficiency at most one, or its
//!   functional graph has at most one component that is not a cycle and that
//!   component's cycle has length at most two.
//! * [`VariantSpec::Relaxed`]: every letter has deficiency at most
//!   `allowed_deficiency`, and letters of deficiency two or more have every
//!   non-cycle component's cycle of length at most `max_cycle`. Used to
//!   probe how far the conditions can be widened before counterexamples
//!   appear.

pub mod canon;
pub mod enumerate;
pub(crate) mod kernel;
pub mod search;

use std::fmt;

use serde::Serialize;

use crate::analysis;
use crate::automaton::Automaton;
use crate::transformation::Transformation;

pub use enumerate::{enumerate_and_verify, TupleSpace, VerificationReport, VerifyConfig};
pub use search::search_counterexample;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum VariantSpec {
    Weak,
    Strong,
    Relaxed {
        allowed_deficiency: usize,
        max_cycle: usize,
    },
}

impl VariantSpec {
    pub fn letter_ok(&self, f: &Transformation) -> bool {
        match *self {
            VariantSpec::Weak => letter_ok_weak(f),
            VariantSpec::Strong => letter_ok_strong(f),
            VariantSpec::Relaxed {
                allowed_deficiency,
                max_cycle,
            } => letter_ok_relaxed(f, allowed_deficiency, max_cycle),
        }
    }
}

impl fmt::Display for VariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VariantSpec::Weak => write!(f, "weak"),
            VariantSpec::Strong => write!(f, "strong"),
            VariantSpec::Relaxed {
                allowed_deficiency,
                max_cycle,
            } => write!(
                f,
                "relaxed(deficiency {allowed_deficiency}, max-cycle {max_cycle})"
            ),
        }
    }
}

pub fn letter_ok_weak(f: &Transformation) -> bool {
    f.deficiency() <= 1
}

pub fn letter_ok_strong(f: &Transformation) -> bool {
    if f.deficiency() <= 1 {
        return true;
    }
    let mut non_pure = f
        .functional_components()
        .into_iter()
        .filter(|c| !c.is_pure_cycle());
    match (non_pure.next(), non_pure.next()) {
        (None, _) => true,
        (Some(c), None) => c.cycle_length() <= 2,
        (Some(_), Some(_)) => false,
    }
}

pub fn letter_ok_relaxed(f: &Transformation, allowed_deficiency: usize, max_cycle: usize) -> bool {
    let deficiency = f.deficiency();
    if deficiency > allowed_deficiency {
        return false;
    }
    deficiency <= 1
        || f.functional_components()
            .iter()
            .filter(|c| !c.is_pure_cycle())
            .all(|c| c.cycle_length() <= max_cycle)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    /// Some letter violates the variant's condition.
    OutOfScope,
    AllPermutational,
    /// Synchronizing, or not primitive.
    Holds,
    /// Primitive and not synchronizing.
    Counterexample,
}

pub fn instance_verdict(automaton: &Automaton, variant: VariantSpec) -> Verdict {
    if !automaton.letters().iter().all(|f| variant.letter_ok(f)) {
        return Verdict::OutOfScope;
    }
    if automaton.all_permutational() {
        return Verdict::AllPermutational;
    }
    if analysis::is_primitive(automaton).primitive
        && !analysis::is_synchronizing(automaton).synchronizing
    {
        Verdict::Counterexample
    } else {
        Verdict::Holds
    }
}
