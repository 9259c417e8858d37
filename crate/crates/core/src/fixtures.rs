//! Reference automata used throughout the tests and the documentation.

use crate::automaton::Automaton;

fn build(rows: &[&[usize]]) -> Automaton {
    let rows: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
    Automaton::from_rows(&rows).expect("fixture is well formed")
}

/// Three states, two letters of deficiency one. Strongly connected,
/// synchronizing (reset word `ab`), with the congruence `{0,1}{2}`.
pub fn nonprimitive_sync_3() -> Automaton {
    build(&[&[1, 0, 1], &[2, 2, 1]])
}

/// Five-state almost-group automaton: `a` has deficiency one, `b` is a
/// permutation. Synchronizing (reset word `aabaaa`), with the congruence
/// `{0}{1}{2}{3,4}`.
pub fn almost_group_5() -> Automaton {
    build(&[&[4, 2, 3, 0, 0], &[1, 2, 0, 4, 3]])
}

/// Primitive, not synchronizing; `a` has deficiency two and two
/// components that are not cycles.
pub fn primitive_nonsync_5a() -> Automaton {
    build(&[&[1, 0, 3, 3, 0], &[0, 2, 3, 4, 1]])
}

/// Primitive, not synchronizing; `a` has deficiency two and a single
/// component whose cycle has length three.
pub fn primitive_nonsync_5b() -> Automaton {
    build(&[&[3, 0, 3, 4, 0], &[2, 4, 0, 3, 1], &[0, 2, 1, 3, 4]])
}

/// The Černý automaton `C_n`: `a` is the cycle `q -> q+1 mod n`, `b` sends
/// `0` to `1` and fixes the rest.
pub fn cerny(n: usize) -> Automaton {
    assert!(n >= 2, "Černý automata need at least two states");
    let a: Vec<usize> = (0..n).map(|q| (q + 1) % n).collect();
    let mut b: Vec<usize> = (0..n).collect();
    b[0] = 1;
    Automaton::from_rows(&[a, b]).expect("fixture is well formed")
}
