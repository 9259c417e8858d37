//! Graphviz renderings: the transition graph, the relation graph of `pi`,
//! and the pair-compression graph.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::rystsov;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Transition graph; parallel arcs are merged with comma-separated labels.
pub fn letters_dot(automaton: &Automaton) -> String {
    let mut out = String::from("digraph letters {\n  rankdir=LR;\n");
    for q in 0..automaton.n() {
        writeln!(out, "  {q};").unwrap();
    }
    let mut arcs: BTreeMap<(usize, usize), Vec<&str>> = BTreeMap::new();
    for (i, f) in automaton.letters().iter().enumerate() {
        for q in 0..automaton.n() {
            arcs.entry((q, f.apply(q)))
                .or_default()
                .push(automaton.name(i));
        }
    }
    for ((p, q), names) in arcs {
        writeln!(out, "  {p} -> {q} [label={}];", quote(&names.join(","))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Relation graph of `pi` for a PU automaton, or for the PU decomposition of
/// a PSc automaton. Arcs between different orbits are dashed.
pub fn rystsov_dot(automaton: &Automaton) -> Result<String> {
    let split = rystsov::split_letters(automaton);
    if !split.is_psc() {
        return Err(Error::Precondition(
            "graph of pi needs permutational, unitary or semiconstant letters only".into(),
        ));
    }
    let pu = if split.is_pu() {
        automaton.clone()
    } else {
        rystsov::decompose_sc(automaton)?
    };
    let pi = rystsov::pi_relations(&pu)?;
    let mut out = String::from("digraph rystsov {\n");
    for q in 0..pu.n() {
        writeln!(out, "  {q} [group=\"orbit{}\"];", pi.orbits.orbit_id(q)).unwrap();
    }
    for (s, t) in pi.pi.pairs() {
        if pi.pi_ext.contains(s, t) {
            writeln!(out, "  {s} -> {t} [style=dashed];").unwrap();
        } else {
            writeln!(out, "  {s} -> {t};").unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Arcs `{s,t} -> {(s)a,(t)a}` labeled by letter; pairs collapsed by a
/// letter go to the node `merged`.
pub fn pair_dot(automaton: &Automaton) -> String {
    let n = automaton.n();
    let node = |s: usize, t: usize| format!("\"{{{},{}}}\"", s.min(t), s.max(t));
    let mut out = String::from("digraph pairs {\n  merged [shape=doublecircle];\n");
    for s in 0..n {
        for t in s + 1..n {
            writeln!(out, "  {};", node(s, t)).unwrap();
        }
    }
    type ArcKey = (usize, usize, Option<(usize, usize)>);
    let mut arcs: BTreeMap<ArcKey, Vec<&str>> = BTreeMap::new();
    for (i, f) in automaton.letters().iter().enumerate() {
        for s in 0..n {
            for t in s + 1..n {
                let (x, y) = (f.apply(s), f.apply(t));
                let target = (x != y).then(|| (x.min(y), x.max(y)));
                arcs.entry((s, t, target))
                    .or_default()
                    .push(automaton.name(i));
            }
        }
    }
    for ((s, t, target), names) in arcs {
        let to = match target {
            Some((x, y)) => node(x, y),
            None => "merged".to_string(),
        };
        writeln!(
            out,
            "  {} -> {to} [label={}];",
            node(s, t),
            quote(&names.join(","))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::transformation::Transformation;

    #[test]
    fn letters_graph_of_small_automaton() {
        let dot = letters_dot(&fixtures::nonprimitive_sync_3());
        assert!(dot.contains("0 -> 1 [label=\"a\"];"));
        assert!(dot.contains("0 -> 2 [label=\"b\"];"));
        assert!(dot.contains("2 -> 1 [label=\"a,b\"];"));
        assert_eq!(dot.matches("->").count(), 5);
    }

    #[test]
    fn single_state_has_only_loops() {
        let a = Automaton::new(vec![Transformation::identity(1)]).unwrap();
        let dot = letters_dot(&a);
        assert!(dot.contains("0 -> 0"));
        assert_eq!(dot.matches("->").count(), 1);
    }

    #[test]
    fn rystsov_graph_of_three_cycle() {
        // 3-cycle with the unitary (0 -> 1): pi is the orbital of (0, 1)
        let a = Automaton::new(vec![
            Transformation::cycle(3),
            Transformation::unitary(3, 0, 1).unwrap(),
        ])
        .unwrap();
        let dot = rystsov_dot(&a).unwrap();
        for arc in ["0 -> 1;", "1 -> 2;", "2 -> 0;"] {
            assert!(dot.contains(arc), "{dot}");
        }
        assert_eq!(dot.matches("->").count(), 3);
    }

    #[test]
    fn rystsov_graph_needs_psc() {
        assert!(matches!(
            rystsov_dot(&fixtures::primitive_nonsync_5a()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn pair_graph_has_merge_node() {
        let dot = pair_dot(&fixtures::nonprimitive_sync_3());
        assert!(dot.contains("\"{0,2}\" -> merged [label=\"a\"];"));
        assert_eq!(dot.matches("->").count(), 6);
    }
}
