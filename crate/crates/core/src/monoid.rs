//! Explicit transition monoids of small automata.

use std::collections::HashSet;

use serde::Serialize;

use crate::analysis;
use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::transformation::Transformation;

/// Default limit on the number of monoid elements generated.
pub const DEFAULT_MONOID_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct MonoidEnumeration {
    /// Elements in breadth-first order from the identity.
    pub elements: Vec<Transformation>,
    /// Generation stopped early because the cap was exceeded.
    pub truncated: bool,
    pub cap: usize,
}

impl MonoidEnumeration {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, f: &Transformation) -> bool {
        self.elements.contains(f)
    }

    pub fn has_constant(&self) -> bool {
        self.elements.iter().any(|f| f.rank() == 1)
    }
}

/// Breadth-first closure of the identity under right multiplication by
/// letters, deduplicated by image table.
pub fn generate_monoid(automaton: &Automaton, cap: usize) -> MonoidEnumeration {
    let identity = Transformation::identity(automaton.n());
    let mut seen: HashSet<Transformation> = HashSet::from([identity.clone()]);
    let mut elements = vec![identity];
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for f in automaton.letters() {
            let next = current.then(f);
            if seen.insert(next.clone()) {
                elements.push(next);
                if elements.len() > cap {
                    return MonoidEnumeration {
                        elements,
                        truncated: true,
                        cap,
                    };
                }
            }
        }
    }
    MonoidEnumeration {
        elements,
        truncated: false,
        cap,
    }
}

/// Index and period of the power sequence `t, t², t³, …`, found with
/// Floyd's tortoise and hare. The period is the least `k ≥ 1` with
/// `t^m = t^(m+k)` for the index `m`.
pub fn index_and_period(t: &Transformation) -> (usize, usize) {
    // x_i = t^(i+1); standard Floyd on the sequence x_0, x_1, ...
    let mut tortoise = t.then(t);
    let mut hare = tortoise.then(t);
    while tortoise != hare {
        tortoise = tortoise.then(t);
        hare = hare.then(t).then(t);
    }
    let mut index = 1;
    tortoise = t.clone();
    while tortoise != hare {
        tortoise = tortoise.then(t);
        hare = hare.then(t);
        index += 1;
    }
    let mut period = 1;
    hare = tortoise.then(t);
    while tortoise != hare {
        hare = hare.then(t);
        period += 1;
    }
    (index, period)
}

/// Whether the transition monoid has only trivial subgroups, i.e. every
/// element has period one. `None` when the monoid exceeds `cap`.
pub fn is_aperiodic(automaton: &Automaton, cap: usize) -> Option<bool> {
    let monoid = generate_monoid(automaton, cap);
    if monoid.truncated {
        return None;
    }
    Some(monoid.elements.iter().all(|t| index_and_period(t).1 == 1))
}

/// For aperiodic automata, synchronization is equivalent to the existence of
/// a state reachable from every state. Returns that verdict after checking
/// it against the pair criterion; `None` when the automaton is not
/// aperiodic or its monoid exceeds `cap`.
pub fn trahtman_check(automaton: &Automaton, cap: usize) -> Result<Option<bool>> {
    if is_aperiodic(automaton, cap) != Some(true) {
        return Ok(None);
    }
    let verdict = analysis::reachable_from_all(automaton).is_some();
    if verdict != analysis::is_synchronizing(automaton).synchronizing {
        return Err(Error::InvariantViolation(format!(
            "aperiodic automaton: common reachable state = {verdict} disagrees with the pair criterion"
        )));
    }
    Ok(Some(verdict))
}
