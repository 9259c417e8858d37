//! Analysis reports and their text and JSON renderings.

use std::fmt::Write;

use primsync_core::analysis::{
    self, CircularReport, ConnectivityClass, PrimitivityReport, SyncReport, DEFAULT_SUBSET_CAP,
};
use primsync_core::aut::render_aut;
use primsync_core::conjecture::{VariantSpec, VerificationReport};
use primsync_core::monoid::{self, generate_monoid, index_and_period};
use primsync_core::rystsov::{self, LetterSplit, PscVerdict};
use primsync_core::{Automaton, Partition, Relation, Result};
use serde::Serialize;

#[derive(Serialize)]
pub struct Tool {
    name: &'static str,
    version: &'static str,
}

const TOOL: Tool = Tool {
    name: "primsync",
    version: env!("CARGO_PKG_VERSION"),
};

const QUICK_SUBSET_CAP: usize = 1 << 16;

#[derive(Serialize)]
pub struct MonoidSummary {
    cap: usize,
    /// `None` when the monoid exceeds the cap.
    size: Option<usize>,
    aperiodic: Option<bool>,
    /// For aperiodic automata: some state is reachable from every state.
    common_reachable_state: Option<bool>,
}

#[derive(Serialize)]
pub struct PiSummary {
    unitary_pairs: Relation,
    pi: Relation,
    pi_int: Relation,
    pi_ext: Relation,
    orbits: Partition,
    graph_strongly_connected: bool,
    /// Synchronization read off the graph of `pi`; `None` unless the
    /// automaton is strongly connected.
    graph_verdict: Option<bool>,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    tool: Tool,
    states: usize,
    letters: Vec<String>,
    synchronizing: SyncReport,
    primitivity: PrimitivityReport,
    connectivity: ConnectivityClass,
    letter_split: LetterSplit,
    circular: CircularReport,
    monoid: MonoidSummary,
    pu: bool,
    psc: bool,
    /// Of the automaton, or of its unitary decomposition when it has
    /// semiconstant letters; `None` unless every letter is permutational,
    /// unitary or semiconstant.
    pi: Option<PiSummary>,
    psc_verdict: PscVerdict,
}

pub fn analyze(a: &Automaton, shortest: bool, monoid_cap: usize) -> Result<AnalysisReport> {
    // without --shortest a small subset search is tried and skipped if it
    // does not fit
    let synchronizing = if shortest {
        analysis::sync_report_with_shortest(a, DEFAULT_SUBSET_CAP)?
    } else {
        analysis::sync_report_with_shortest(a, QUICK_SUBSET_CAP)
            .unwrap_or_else(|_| analysis::is_synchronizing(a))
    };
    let letter_split = rystsov::split_letters(a);
    let m = generate_monoid(a, monoid_cap);
    let aperiodic = (!m.truncated).then(|| m.elements.iter().all(|t| index_and_period(t).1 == 1));
    let common_reachable_state = if aperiodic == Some(true) {
        monoid::trahtman_check(a, monoid_cap)?
    } else {
        None
    };
    let pi = if letter_split.is_psc() {
        let pu = if letter_split.is_pu() {
            a.clone()
        } else {
            rystsov::decompose_sc(a)?
        };
        let p = rystsov::pi_relations(&pu)?;
        let graph_verdict = match analysis::connectivity_class(&pu) {
            ConnectivityClass::StronglyConnected => Some(rystsov::pu_synchronizing(&pu)?),
            _ => None,
        };
        Some(PiSummary {
            graph_strongly_connected: p.pi.is_strongly_connected(),
            unitary_pairs: p.unitary_pairs,
            pi: p.pi,
            pi_int: p.pi_int,
            pi_ext: p.pi_ext,
            orbits: p.orbits.orbits,
            graph_verdict,
        })
    } else {
        None
    };
    Ok(AnalysisReport {
        tool: TOOL,
        states: a.n(),
        letters: a.names().to_vec(),
        synchronizing,
        primitivity: analysis::is_primitive(a),
        connectivity: analysis::connectivity_class(a),
        pu: letter_split.is_pu(),
        psc: letter_split.is_psc(),
        letter_split,
        circular: analysis::circular_prime(a)?,
        monoid: MonoidSummary {
            cap: monoid_cap,
            size: (!m.truncated).then(|| m.len()),
            aperiodic,
            common_reachable_state,
        },
        pi,
        psc_verdict: rystsov::psc_verdict(a)?,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pair_list(pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|(s, t)| format!("{{{s},{t}}}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn set(states: &[usize]) -> String {
    let items: Vec<String> = states.iter().map(|q| q.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn render_analysis(a: &Automaton, r: &AnalysisReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "states: {}, letters: {}", r.states, r.letters.join(" ")).unwrap();

    let s = &r.synchronizing;
    match s.shortest_reset_word.as_ref().or(s.reset_word.as_ref()) {
        Some(word) => writeln!(w, "synchronizing: yes ({})", a.word_to_string(word)).unwrap(),
        None => writeln!(
            w,
            "synchronizing: no (incompressible pairs {})",
            pair_list(&s.incompressible_pairs)
        )
        .unwrap(),
    }
    if let Some(len) = s.shortest_reset_length {
        writeln!(w, "shortest reset word length: {len}").unwrap();
    }

    let p = &r.primitivity;
    match (&p.witness_congruence, p.degenerate) {
        (Some(c), _) => writeln!(w, "primitive: no (blocks {c})").unwrap(),
        (None, true) => writeln!(w, "primitive: yes (fewer than three states)").unwrap(),
        (None, false) => writeln!(w, "primitive: yes").unwrap(),
    }

    let conn = match r.connectivity {
        ConnectivityClass::StronglyConnected => "strongly connected".to_string(),
        ConnectivityClass::ZeroTransitive { sink } => format!("0-transitive (sink {sink})"),
        ConnectivityClass::Other => "neither strongly connected nor 0-transitive".to_string(),
    };
    writeln!(w, "connectivity: {conn}").unwrap();

    let split = &r.letter_split;
    let mut kinds = Vec::new();
    for (i, name) in r.letters.iter().enumerate() {
        let kind = if split.permutational.contains(&i) {
            "permutation".to_string()
        } else if let Some(u) = split.unitary.iter().find(|u| u.letter == i) {
            format!("unitary ({} -> {})", u.source, u.target)
        } else if let Some(c) = split.semiconstant.iter().find(|c| c.letter == i) {
            format!("semiconstant ({} -> {})", set(&c.sources), c.target)
        } else {
            "other".to_string()
        };
        kinds.push(format!("{name} {kind}"));
    }
    writeln!(w, "letters: {}", kinds.join("; ")).unwrap();
    writeln!(
        w,
        "circular: {}, prime state count: {}",
        yes_no(r.circular.circular),
        yes_no(r.circular.prime_n)
    )
    .unwrap();

    match r.monoid.size {
        Some(size) => {
            writeln!(w, "transition monoid: {size} elements").unwrap();
            writeln!(w, "aperiodic: {}", yes_no(r.monoid.aperiodic == Some(true))).unwrap();
        }
        None => {
            writeln!(w, "transition monoid: more than {} elements", r.monoid.cap).unwrap();
            writeln!(w, "aperiodic: unknown").unwrap();
        }
    }
    if let Some(reach) = r.monoid.common_reachable_state {
        writeln!(w, "state reachable from every state: {}", yes_no(reach)).unwrap();
    }

    writeln!(w, "permutation/unitary letters only: {}", yes_no(r.pu)).unwrap();
    writeln!(
        w,
        "permutation/semiconstant letters only: {}",
        yes_no(r.psc)
    )
    .unwrap();
    if let Some(pi) = &r.pi {
        writeln!(w, "orbits: {}", pi.orbits).unwrap();
        writeln!(w, "pi: {}", pi.pi).unwrap();
        writeln!(
            w,
            "pi graph strongly connected: {}",
            yes_no(pi.graph_strongly_connected)
        )
        .unwrap();
        if let Some(v) = pi.graph_verdict {
            writeln!(w, "synchronizing by pi graph: {}", yes_no(v)).unwrap();
        }
    }
    if r.psc_verdict.applies {
        writeln!(
            w,
            "primitive with semiconstant letters: synchronizing {}",
            yes_no(r.psc_verdict.synchronizing == Some(true))
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
pub struct VerifyJson<'a> {
    tool: Tool,
    report: &'a VerificationReport,
}

impl<'a> VerifyJson<'a> {
    pub fn new(report: &'a VerificationReport) -> Self {
        Self { tool: TOOL, report }
    }
}

pub fn render_verification(r: &VerificationReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "variant: {}", r.variant).unwrap();
    writeln!(
        w,
        "states: {}, letters: {}, up to isomorphism: {}",
        r.n,
        r.k,
        yes_no(r.dedup)
    )
    .unwrap();
    let unit = if r.dedup { "classes" } else { "automata" };
    writeln!(
        w,
        "{unit}: {} (candidates examined {})",
        r.total_enumerated, r.candidates_examined
    )
    .unwrap();
    writeln!(w, "in scope: {}", r.in_scope).unwrap();
    writeln!(w, "all letters permutations: {}", r.all_permutational).unwrap();
    writeln!(
        w,
        "primitive with a non-permutation letter: {}",
        r.primitive_in_scope
    )
    .unwrap();
    writeln!(w, "counterexamples: {}", r.counterexample_count).unwrap();
    writeln!(w, "elapsed: {:.2}s", r.elapsed.as_secs_f64()).unwrap();
    for (i, a) in r.counterexamples.iter().enumerate() {
        writeln!(w, "# counterexample {}", i + 1).unwrap();
        w.push_str(&render_aut(a));
    }
    if r.counterexamples_truncated {
        writeln!(
            w,
            "# {} more not listed",
            r.counterexample_count as usize - r.counterexamples.len()
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
pub struct SearchJson<'a> {
    tool: Tool,
    states: usize,
    letters: usize,
    variant: VariantSpec,
    budget: u64,
    seed: u64,
    counterexample: Option<&'a Automaton>,
}

impl<'a> SearchJson<'a> {
    pub fn new(
        states: usize,
        letters: usize,
        variant: VariantSpec,
        budget: u64,
        seed: u64,
        counterexample: Option<&'a Automaton>,
    ) -> Self {
        Self {
            tool: TOOL,
            states,
            letters,
            variant,
            budget,
            seed,
            counterexample,
        }
    }
}

pub fn render_search(variant: VariantSpec, budget: u64, found: Option<&Automaton>) -> String {
    match found {
        Some(a) => format!(
            "variant: {variant}\ncounterexample found:\n{}",
            render_aut(a)
        ),
        None => format!("variant: {variant}\nno counterexample in {budget} samples\n"),
    }
}
