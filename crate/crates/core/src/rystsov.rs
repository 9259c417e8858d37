//! Automata whose letters are permutations, unitary maps `(s -> r)` or
//! semiconstant maps `(S -> r)`.
//!
//! The permutational letters generate a group `G`. The relation `π` is the
//! union of the `G`-orbitals of the pairs `(s, r)` of the unitary letters;
//! its digraph is the Rystsov graph. For strongly connected automata with
//! only permutational and unitary letters, synchronization is equivalent to
//! strong connectivity of that graph. Semiconstant letters reduce to that
//! case by splitting `(S -> r)` into one unitary letter per state of `S`.

use serde::Serialize;

use crate::analysis::{self, ConnectivityClass};
use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::graph;
use crate::partition::{Partition, UnionFind};
use crate::relation::{is_invariant, Relation};
use crate::transformation::Transformation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitaryLetter {
    pub letter: usize,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiconstantLetter {
    pub letter: usize,
    /// Collapsed states, ascending, never containing `target`.
    pub sources: Vec<usize>,
    pub target: usize,
}

/// Classification of the letters of an automaton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LetterSplit {
    /// Indices of permutational letters, identity letters included.
    pub permutational: Vec<usize>,
    #[serde(skip)]
    pub perms: Vec<Transformation>,
    pub unitary: Vec<UnitaryLetter>,
    /// Semiconstant letters moving at least two states.
    pub semiconstant: Vec<SemiconstantLetter>,
    pub other: Vec<usize>,
}

impl LetterSplit {
    /// Every letter is permutational or unitary.
    pub fn is_pu(&self) -> bool {
        self.other.is_empty() && self.semiconstant.is_empty()
    }

    /// Every letter is permutational or semiconstant.
    pub fn is_psc(&self) -> bool {
        self.other.is_empty()
    }

    pub fn has_non_permutational(&self) -> bool {
        !(self.unitary.is_empty() && self.semiconstant.is_empty() && self.other.is_empty())
    }
}

/// The form `(S -> r)` of a semiconstant map: `S` is the set of moved
/// states. The identity is reported as `(∅ -> 0)`.
pub fn semiconstant_form(f: &Transformation) -> Option<(Vec<usize>, usize)> {
    let moved: Vec<usize> = (0..f.n()).filter(|&q| f.apply(q) != q).collect();
    let Some(&first) = moved.first() else {
        return Some((Vec::new(), 0));
    };
    let target = f.apply(first);
    let collapses = moved.iter().all(|&q| f.apply(q) == target);
    // target is fixed because it is not among the moved states
    (collapses && f.apply(target) == target).then_some((moved, target))
}

pub fn split_letters(automaton: &Automaton) -> LetterSplit {
    let mut split = LetterSplit {
        permutational: Vec::new(),
        perms: Vec::new(),
        unitary: Vec::new(),
        semiconstant: Vec::new(),
        other: Vec::new(),
    };
    for (i, f) in automaton.letters().iter().enumerate() {
        if f.is_permutation() {
            split.permutational.push(i);
            split.perms.push(f.clone());
            continue;
        }
        match semiconstant_form(f) {
            Some((sources, target)) if sources.len() == 1 => split.unitary.push(UnitaryLetter {
                letter: i,
                source: sources[0],
                target,
            }),
            Some((sources, target)) => split.semiconstant.push(SemiconstantLetter {
                letter: i,
                sources,
                target,
            }),
            None => split.other.push(i),
        }
    }
    split
}

/// Orbits of the group generated by a set of permutations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitStructure {
    pub orbits: Partition,
    #[serde(skip)]
    pub generators: Vec<Transformation>,
}

impl OrbitStructure {
    pub fn n(&self) -> usize {
        self.orbits.n()
    }

    pub fn orbit_id(&self, q: usize) -> usize {
        self.orbits.block_of(q)
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.block_count()
    }

    pub fn same_orbit(&self, p: usize, q: usize) -> bool {
        self.orbits.same_block(p, q)
    }

    /// The orbital of `(s, t)`: its closure under the generators acting on
    /// both coordinates.
    pub fn orbital(&self, s: usize, t: usize) -> Relation {
        let mut rel = Relation::empty(self.n());
        rel.insert(s, t);
        let mut stack = vec![(s, t)];
        while let Some((x, y)) = stack.pop() {
            for g in &self.generators {
                let (u, v) = (g.apply(x), g.apply(y));
                if rel.insert(u, v) {
                    stack.push((u, v));
                }
            }
        }
        rel
    }
}

pub fn group_orbits(perms: &[Transformation], n: usize) -> Result<OrbitStructure> {
    let mut uf = UnionFind::new(n);
    for g in perms {
        if g.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.n(),
            });
        }
        if !g.is_permutation() {
            return Err(Error::InvalidInput(format!("{g} is not a permutation")));
        }
        for q in 0..n {
            uf.union(q, g.apply(q));
        }
    }
    Ok(OrbitStructure {
        orbits: uf.into_partition(),
        generators: perms.to_vec(),
    })
}

/// The orbital of `(s, t)` under the group generated by `perms`.
pub fn orbital(perms: &[Transformation], n: usize, s: usize, t: usize) -> Result<Relation> {
    for q in [s, t] {
        if q >= n {
            return Err(Error::StateOutOfRange { state: q, n });
        }
    }
    Ok(group_orbits(perms, n)?.orbital(s, t))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiRelations {
    /// The pairs `(s, r)` of the unitary letters.
    pub unitary_pairs: Relation,
    pub pi: Relation,
    /// Pairs of `pi` within one orbit.
    pub pi_int: Relation,
    /// Pairs of `pi` across orbits.
    pub pi_ext: Relation,
    pub orbits: OrbitStructure,
}

fn require_pu(automaton: &Automaton) -> Result<LetterSplit> {
    let split = split_letters(automaton);
    if let Some(&i) = split.other.first() {
        return Err(Error::InvalidInput(format!(
            "letter {} is neither a permutation nor unitary",
            automaton.name(i)
        )));
    }
    if let Some(sc) = split.semiconstant.first() {
        return Err(Error::InvalidInput(format!(
            "letter {} is semiconstant but not unitary",
            automaton.name(sc.letter)
        )));
    }
    Ok(split)
}

fn require_strongly_connected_pu(automaton: &Automaton) -> Result<LetterSplit> {
    let split = require_pu(automaton)?;
    if analysis::connectivity_class(automaton) != ConnectivityClass::StronglyConnected {
        return Err(Error::Precondition(
            "automaton is not strongly connected".into(),
        ));
    }
    Ok(split)
}

pub fn pi_relations(automaton: &Automaton) -> Result<PiRelations> {
    let split = require_pu(automaton)?;
    Ok(pi_from_split(automaton.n(), &split))
}

fn pi_from_split(n: usize, split: &LetterSplit) -> PiRelations {
    let orbits = group_orbits(&split.perms, n).expect("permutational letters are permutations");
    let mut unitary_pairs = Relation::empty(n);
    let mut pi = Relation::empty(n);
    for u in &split.unitary {
        unitary_pairs.insert(u.source, u.target);
        // orbitals partition Q x Q, so a covered pair brings nothing new
        if !pi.contains(u.source, u.target) {
            pi = pi
                .union(&orbits.orbital(u.source, u.target))
                .expect("same dimension");
        }
    }
    let mut pi_int = Relation::empty(n);
    let mut pi_ext = Relation::empty(n);
    for (s, t) in pi.pairs() {
        if orbits.same_orbit(s, t) {
            pi_int.insert(s, t);
        } else {
            pi_ext.insert(s, t);
        }
    }
    PiRelations {
        unitary_pairs,
        pi,
        pi_int,
        pi_ext,
        orbits,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CyclicityAudit {
    pub int_cyclic: bool,
    pub ext_cyclic: bool,
    pub pi_cyclic: bool,
}

/// Checks that `π_int`, `π_ext` and `π` are cyclic, as they must be for a
/// strongly connected automaton with permutational and unitary letters.
/// A failing flag is reported as an invariant violation.
pub fn cyclicity_audit(automaton: &Automaton) -> Result<CyclicityAudit> {
    let split = require_strongly_connected_pu(automaton)?;
    let pi = pi_from_split(automaton.n(), &split);
    let audit = CyclicityAudit {
        int_cyclic: pi.pi_int.is_cyclic(),
        ext_cyclic: pi.pi_ext.is_cyclic(),
        pi_cyclic: pi.pi.is_cyclic(),
    };
    for (flag, name, rel) in [
        (audit.int_cyclic, "pi_int", &pi.pi_int),
        (audit.ext_cyclic, "pi_ext", &pi.pi_ext),
        (audit.pi_cyclic, "pi", &pi.pi),
    ] {
        if !flag {
            return Err(Error::InvariantViolation(format!(
                "{name} = {rel} is not cyclic"
            )));
        }
    }
    Ok(audit)
}

/// Synchronization of a strongly connected automaton with permutational
/// and unitary letters, decided by strong connectivity of the Rystsov graph
/// on all states.
pub fn pu_synchronizing(automaton: &Automaton) -> Result<bool> {
    let split = require_strongly_connected_pu(automaton)?;
    Ok(pi_from_split(automaton.n(), &split)
        .pi
        .is_strongly_connected())
}

/// `π_int` and `π_ext` are both preserved by every permutational letter.
pub fn pi_parts_invariant(automaton: &Automaton, pi: &PiRelations) -> Result<bool> {
    let perms: Vec<Transformation> = automaton
        .letters()
        .iter()
        .filter(|f| f.is_permutation())
        .cloned()
        .collect();
    if perms.is_empty() {
        return Ok(true);
    }
    let group = Automaton::new(perms)?;
    Ok(is_invariant(&group, &pi.pi_int)? && is_invariant(&group, &pi.pi_ext)?)
}

/// For every external pair `(s, t)`, each state of the orbit of `s` has an
/// arc of the orbital of `(s, t)` into the orbit of `t`.
pub fn orbital_out_arcs_hold(pi: &PiRelations) -> bool {
    let orbits = &pi.orbits;
    let n = orbits.n();
    let mut done = Relation::empty(n);
    for (s, t) in pi.pi_ext.pairs() {
        if done.contains(s, t) {
            continue;
        }
        let orbital = orbits.orbital(s, t);
        done = done.union(&orbital).expect("same dimension");
        let ok = (0..n).filter(|&p| orbits.same_orbit(p, s)).all(|p| {
            orbital
                .successors(p)
                .any(|r| orbits.same_orbit(r, t) && pi.pi_ext.contains(p, r))
        });
        if !ok {
            return false;
        }
    }
    true
}

/// Quotient of `Γ(π_ext)` by the orbits, with a loop on every orbit, is
/// strongly connected.
pub fn orbit_quotient_strongly_connected(pi: &PiRelations) -> bool {
    let orbits = &pi.orbits;
    let m = orbits.orbit_count();
    let mut adj = vec![Vec::new(); m];
    for (s, t) in pi.pi_ext.pairs() {
        adj[orbits.orbit_id(s)].push(orbits.orbit_id(t));
    }
    for (o, succ) in adj.iter_mut().enumerate() {
        succ.push(o);
        succ.sort_unstable();
        succ.dedup();
    }
    graph::strongly_connected_components(&adj).1 == 1
}

/// From every state, paths of `Γ(π_ext)` (the empty path included) reach
/// every orbit.
pub fn external_paths_reach_every_orbit(pi: &PiRelations) -> bool {
    let orbits = &pi.orbits;
    let adj = pi.pi_ext.adjacency();
    (0..orbits.n()).all(|s| {
        let reach = graph::reachable_from(&adj, s);
        let mut hit = vec![false; orbits.orbit_count()];
        for (q, &r) in reach.iter().enumerate() {
            if r {
                hit[orbits.orbit_id(q)] = true;
            }
        }
        hit.iter().all(|&h| h)
    })
}

/// For a strongly connected non-synchronizing automaton with permutational
/// letters and at least one unitary letter, the equivalence closure of `π`
/// is a non-trivial congruence. Returns it after checking both properties;
/// `None` when the hypotheses do not hold.
pub fn non_sync_congruence(automaton: &Automaton) -> Result<Option<Partition>> {
    let split = require_strongly_connected_pu(automaton)?;
    if split.unitary.is_empty() || analysis::is_synchronizing(automaton).synchronizing {
        return Ok(None);
    }
    let pi = pi_from_split(automaton.n(), &split);
    let congruence = pi.pi.equivalence_closure();
    if !congruence.is_nontrivial() {
        return Err(Error::InvariantViolation(format!(
            "closure of pi {congruence} is trivial for a non-synchronizing automaton"
        )));
    }
    if !is_invariant(automaton, &congruence.to_relation())? {
        return Err(Error::InvariantViolation(format!(
            "closure of pi {congruence} is not a congruence"
        )));
    }
    Ok(Some(congruence))
}

/// Replaces every semiconstant letter `(S -> r)` by the unitary letters
/// `(s -> r)`, `s ∈ S` ascending, in place. Permutational letters, identity
/// included, are kept as they are.
pub fn decompose_sc(automaton: &Automaton) -> Result<Automaton> {
    let n = automaton.n();
    let mut letters = Vec::new();
    let mut names = Vec::new();
    for (i, f) in automaton.letters().iter().enumerate() {
        if f.is_permutation() {
            letters.push(f.clone());
            names.push(automaton.name(i).to_string());
            continue;
        }
        let (sources, target) = semiconstant_form(f).ok_or_else(|| {
            Error::InvalidInput(format!(
                "letter {} is neither a permutation nor semiconstant",
                automaton.name(i)
            ))
        })?;
        if sources.len() == 1 {
            letters.push(f.clone());
            names.push(automaton.name(i).to_string());
            continue;
        }
        for s in sources {
            letters.push(Transformation::unitary(n, s, target)?);
            names.push(format!("{}_{}", automaton.name(i), s));
        }
    }
    Automaton::with_names(letters, names)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PscVerdict {
    /// Primitive, permutational-or-semiconstant letters, at least one of
    /// them not a permutation.
    pub applies: bool,
    pub synchronizing: Option<bool>,
}

/// A primitive automaton with permutational and semiconstant letters, not
/// all permutational, synchronizes. When that applies, the verdict is
/// computed along three routes (the pair criterion on the automaton and on
/// its unitary decomposition, and the Rystsov graph of the decomposition
/// when it is strongly connected) and any disagreement, or a
/// non-synchronizing result, is an invariant violation.
pub fn psc_verdict(automaton: &Automaton) -> Result<PscVerdict> {
    let split = split_letters(automaton);
    let applies = split.is_psc()
        && split.has_non_permutational()
        && analysis::is_primitive(automaton).primitive;
    if !applies {
        return Ok(PscVerdict {
            applies: false,
            synchronizing: None,
        });
    }
    let direct = analysis::is_synchronizing(automaton).synchronizing;
    let decomposed = decompose_sc(automaton)?;
    let via_decomposition = analysis::is_synchronizing(&decomposed).synchronizing;
    let via_graph = match analysis::connectivity_class(&decomposed) {
        ConnectivityClass::StronglyConnected => Some(pu_synchronizing(&decomposed)?),
        _ => None,
    };
    if direct != via_decomposition || via_graph.is_some_and(|g| g != direct) {
        return Err(Error::InvariantViolation(format!(
            "routes disagree: direct {direct}, decomposed {via_decomposition}, graph {via_graph:?}"
        )));
    }
    if !direct {
        return Err(Error::InvariantViolation(
            "primitive automaton with semiconstant letters does not synchronize".into(),
        ));
    }
    Ok(PscVerdict {
        applies: true,
        synchronizing: Some(direct),
    })
}
