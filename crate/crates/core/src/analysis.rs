//! Per-automaton verdicts: synchronization, primitivity and connectivity.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::graph;
use crate::partition::{Partition, UnionFind};

/// Default limit on subsets visited by [`shortest_reset_length`].
pub const DEFAULT_SUBSET_CAP: usize = 1 << 24;

const UNREACHED: u32 = u32::MAX;

/// Shortest compressing words for every pair of states, found by a backward
/// breadth-first search over unordered pairs.
///
/// Pairs merged by some letter are the seeds; a pair is compressible at
/// distance `d + 1` when some letter maps it onto a pair at distance `d`.
#[derive(Debug, Clone)]
pub struct PairSearch {
    n: usize,
    // indexed by s * n + t with s < t
    dist: Vec<u32>,
    // smallest letter starting a shortest compressing word
    first_letter: Vec<u32>,
}

impl PairSearch {
    pub fn new(automaton: &Automaton) -> Self {
        let n = automaton.n();
        let letters = automaton.letters();
        let key = |s: usize, t: usize| if s < t { s * n + t } else { t * n + s };

        let mut dist = vec![UNREACHED; n * n];
        let mut queue = VecDeque::new();
        // reverse arcs in CSR form: target pair -> source pairs
        let mut degree = vec![0u32; n * n + 1];
        for s in 0..n {
            for t in s + 1..n {
                for f in letters {
                    let (u, v) = (f.apply(s), f.apply(t));
                    if u == v {
                        if dist[s * n + t] == UNREACHED {
                            dist[s * n + t] = 1;
                            queue.push_back(s * n + t);
                        }
                    } else {
                        degree[key(u, v) + 1] += 1;
                    }
                }
            }
        }
        for i in 1..degree.len() {
            degree[i] += degree[i - 1];
        }
        let mut fill = degree.clone();
        let mut sources = vec![0u32; degree[n * n] as usize];
        for s in 0..n {
            for t in s + 1..n {
                for f in letters {
                    let (u, v) = (f.apply(s), f.apply(t));
                    if u != v {
                        let k = key(u, v);
                        sources[fill[k] as usize] = (s * n + t) as u32;
                        fill[k] += 1;
                    }
                }
            }
        }

        while let Some(p) = queue.pop_front() {
            let d = dist[p];
            for &r in &sources[degree[p] as usize..degree[p + 1] as usize] {
                if dist[r as usize] == UNREACHED {
                    dist[r as usize] = d + 1;
                    queue.push_back(r as usize);
                }
            }
        }

        let mut first_letter = vec![UNREACHED; n * n];
        for s in 0..n {
            for t in s + 1..n {
                let d = dist[s * n + t];
                if d == UNREACHED {
                    continue;
                }
                first_letter[s * n + t] = letters
                    .iter()
                    .position(|f| {
                        let (u, v) = (f.apply(s), f.apply(t));
                        if d == 1 {
                            u == v
                        } else {
                            u != v && dist[key(u, v)] == d - 1
                        }
                    })
                    .expect("a shortest word starts with some letter")
                    as u32;
            }
        }
        Self {
            n,
            dist,
            first_letter,
        }
    }

    fn key(&self, s: usize, t: usize) -> usize {
        if s < t {
            s * self.n + t
        } else {
            t * self.n + s
        }
    }

    /// Length of a shortest word compressing `{s, t}`, if any.
    pub fn distance(&self, s: usize, t: usize) -> Option<usize> {
        assert_ne!(s, t, "a pair needs two distinct states");
        match self.dist[self.key(s, t)] {
            UNREACHED => None,
            d => Some(d as usize),
        }
    }

    pub fn is_compressible(&self, s: usize, t: usize) -> bool {
        self.distance(s, t).is_some()
    }

    /// The lexicographically least among the shortest words compressing `{s, t}`.
    pub fn compressing_word(
        &self,
        automaton: &Automaton,
        s: usize,
        t: usize,
    ) -> Option<Vec<usize>> {
        let (mut s, mut t) = (s, t);
        let mut word = Vec::new();
        loop {
            let k = self.key(s, t);
            if self.dist[k] == UNREACHED {
                return None;
            }
            let letter = self.first_letter[k] as usize;
            word.push(letter);
            let f = &automaton.letters()[letter];
            (s, t) = (f.apply(s), f.apply(t));
            if s == t {
                return Some(word);
            }
        }
    }

    pub fn compressible_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs_where(true)
    }

    pub fn incompressible_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs_where(false)
    }

    fn pairs_where(&self, compressible: bool) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
            .filter(|&(s, t)| (self.dist[s * n + t] != UNREACHED) == compressible)
            .collect()
    }
}

/// Pairs `(s, t)`, `s < t`, that some word maps to a single state.
pub fn compressible_pairs(automaton: &Automaton) -> Vec<(usize, usize)> {
    PairSearch::new(automaton).compressible_pairs()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyncReport {
    pub synchronizing: bool,
    pub incompressible_pairs: Vec<(usize, usize)>,
    /// Produced by greedy pair compression; not necessarily shortest.
    pub reset_word: Option<Vec<usize>>,
    /// Filled in by [`sync_report_with_shortest`] only.
    pub shortest_reset_word: Option<Vec<usize>>,
    pub shortest_reset_length: Option<usize>,
}

/// Decides synchronization by the pair criterion and, when the automaton
/// synchronizes, builds a reset word by repeatedly compressing the pair of
/// the current image with the shortest (then lexicographically least)
/// compressing word.
pub fn is_synchronizing(automaton: &Automaton) -> SyncReport {
    let search = PairSearch::new(automaton);
    let incompressible = search.incompressible_pairs();
    if !incompressible.is_empty() {
        return SyncReport {
            synchronizing: false,
            incompressible_pairs: incompressible,
            reset_word: None,
            shortest_reset_word: None,
            shortest_reset_length: None,
        };
    }

    let mut image: Vec<usize> = (0..automaton.n()).collect();
    let mut word = Vec::new();
    while image.len() > 1 {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (i, &s) in image.iter().enumerate() {
            for &t in &image[i + 1..] {
                let d = search.distance(s, t).expect("all pairs are compressible");
                if best.as_ref().is_some_and(|(bd, _)| d > *bd) {
                    continue;
                }
                let w = search
                    .compressing_word(automaton, s, t)
                    .expect("all pairs are compressible");
                match &best {
                    Some((bd, bw)) if d == *bd && w >= *bw => {}
                    _ => best = Some((d, w)),
                }
            }
        }
        let (_, step) = best.expect("image has at least two states");
        for &letter in &step {
            let f = &automaton.letters()[letter];
            for q in image.iter_mut() {
                *q = f.apply(*q);
            }
        }
        image.sort_unstable();
        image.dedup();
        word.extend(step);
    }
    SyncReport {
        synchronizing: true,
        incompressible_pairs: Vec::new(),
        reset_word: Some(word),
        shortest_reset_word: None,
        shortest_reset_length: None,
    }
}

/// [`is_synchronizing`] plus a shortest reset word and its length.
pub fn sync_report_with_shortest(automaton: &Automaton, cap: usize) -> Result<SyncReport> {
    let mut report = is_synchronizing(automaton);
    if report.synchronizing {
        report.shortest_reset_word = shortest_reset_word(automaton, cap)?;
        report.shortest_reset_length = report.shortest_reset_word.as_ref().map(Vec::len);
    }
    Ok(report)
}

/// Length of a shortest reset word; see [`shortest_reset_word`].
pub fn shortest_reset_length(automaton: &Automaton, cap: usize) -> Result<Option<usize>> {
    Ok(shortest_reset_word(automaton, cap)?.map(|w| w.len()))
}

/// The lexicographically least among the shortest reset words, by
/// breadth-first search over subsets of states starting from the full set.
/// Exponential; meant for small automata. `cap` bounds the number of
/// subsets visited.
pub fn shortest_reset_word(automaton: &Automaton, cap: usize) -> Result<Option<Vec<usize>>> {
    let n = automaton.n();
    if n == 1 {
        return Ok(Some(Vec::new()));
    }
    if n > 64 {
        return Err(Error::ResourceExceeded {
            what: "subset search supports at most 64 states".into(),
            cap: 64,
        });
    }
    if !PairSearch::new(automaton).incompressible_pairs().is_empty() {
        return Ok(None);
    }
    let letters = automaton.letters();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // subset -> (predecessor, letter); level order with letters in order
    // makes the first word found least among the shortest
    let mut parent: HashMap<u64, (u64, usize)> = HashMap::from([(full, (full, usize::MAX))]);
    let mut frontier = vec![full];
    let word_to = |parent: &HashMap<u64, (u64, usize)>, mut set: u64| {
        let mut word = Vec::new();
        while set != full {
            let (prev, letter) = parent[&set];
            word.push(letter);
            set = prev;
        }
        word.reverse();
        word
    };
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &set in &frontier {
            for (i, f) in letters.iter().enumerate() {
                let mut image = 0u64;
                let mut rest = set;
                while rest != 0 {
                    let q = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    image |= 1u64 << f.apply(q);
                }
                if image.count_ones() == 1 {
                    let mut word = word_to(&parent, set);
                    word.push(i);
                    return Ok(Some(word));
                }
                if let Entry::Vacant(slot) = parent.entry(image) {
                    slot.insert((set, i));
                    if parent.len() > cap {
                        return Err(Error::ResourceExceeded {
                            what: "visited subsets".into(),
                            cap: cap as u128,
                        });
                    }
                    next.push(image);
                }
            }
        }
        frontier = next;
    }
    Ok(None)
}

/// Merges `p` and `q` into `uf` and closes under the letters. Returns the
/// number of classes left.
pub(crate) fn close_congruence(
    automaton: &Automaton,
    uf: &mut UnionFind,
    work: &mut Vec<(usize, usize)>,
    p: usize,
    q: usize,
) -> usize {
    let mut classes = automaton.n();
    work.clear();
    if uf.union(p, q) {
        classes -= 1;
        work.push((p, q));
    }
    while let Some((x, y)) = work.pop() {
        for f in automaton.letters() {
            let (u, v) = (f.apply(x), f.apply(y));
            if uf.union(u, v) {
                classes -= 1;
                if classes == 1 {
                    return 1;
                }
                work.push((u, v));
            }
        }
    }
    classes
}

/// The least congruence identifying `p` and `q`.
pub fn principal_congruence(automaton: &Automaton, p: usize, q: usize) -> Result<Partition> {
    let n = automaton.n();
    for s in [p, q] {
        if s >= n {
            return Err(Error::StateOutOfRange { state: s, n });
        }
    }
    if p == q {
        return Err(Error::InvalidInput(
            "a principal congruence needs two distinct states".into(),
        ));
    }
    let mut uf = UnionFind::new(n);
    close_congruence(automaton, &mut uf, &mut Vec::new(), p, q);
    Ok(uf.into_partition())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitivityReport {
    pub primitive: bool,
    /// A non-trivial congruence, present iff not primitive.
    pub witness_congruence: Option<Partition>,
    /// Set for automata with fewer than three states, where every
    /// equivalence is trivial and the verdict holds vacuously.
    pub degenerate: bool,
}

/// Primitive iff every principal congruence is total. The witness is the
/// principal congruence of the lexicographically first pair that is not.
pub fn is_primitive(automaton: &Automaton) -> PrimitivityReport {
    let n = automaton.n();
    if n <= 2 {
        return PrimitivityReport {
            primitive: true,
            witness_congruence: None,
            degenerate: true,
        };
    }
    let mut uf = UnionFind::new(n);
    let mut work = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            uf.reset();
            if close_congruence(automaton, &mut uf, &mut work, p, q) > 1 {
                return PrimitivityReport {
                    primitive: false,
                    witness_congruence: Some(uf.into_partition()),
                    degenerate: false,
                };
            }
        }
    }
    PrimitivityReport {
        primitive: true,
        witness_congruence: None,
        degenerate: false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ConnectivityClass {
    StronglyConnected,
    /// A unique sink fixed by every letter, every other state reaching all states.
    ZeroTransitive {
        sink: usize,
    },
    Other,
}

pub fn connectivity_class(automaton: &Automaton) -> ConnectivityClass {
    let n = automaton.n();
    let adj = automaton.successor_lists();
    let (_, count) = graph::strongly_connected_components(&adj);
    if count == 1 {
        return ConnectivityClass::StronglyConnected;
    }
    let sinks: Vec<usize> = (0..n)
        .filter(|&q| automaton.letters().iter().all(|f| f.apply(q) == q))
        .collect();
    if let [sink] = sinks[..] {
        let all_reach_everything = (0..n)
            .filter(|&q| q != sink)
            .all(|q| graph::reachable_from(&adj, q).iter().all(|&r| r));
        if all_reach_everything {
            return ConnectivityClass::ZeroTransitive { sink };
        }
    }
    ConnectivityClass::Other
}

/// Some state reachable from every state, if one exists: the smallest state
/// of the unique sink component of the letter digraph.
pub fn reachable_from_all(automaton: &Automaton) -> Option<usize> {
    let adj = automaton.successor_lists();
    let (comp, count) = graph::strongly_connected_components(&adj);
    let mut is_sink = vec![true; count];
    for (q, succ) in adj.iter().enumerate() {
        if succ.iter().any(|&r| comp[r] != comp[q]) {
            is_sink[comp[q]] = false;
        }
    }
    let mut sinks = (0..count).filter(|&c| is_sink[c]);
    let sink = sinks.next()?;
    if sinks.next().is_some() {
        return None;
    }
    (0..automaton.n()).find(|&q| comp[q] == sink)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CircularReport {
    /// Some letter is a single cycle through all states.
    pub circular: bool,
    pub prime_n: bool,
    pub pin_applies: bool,
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn is_full_cycle(f: &crate::Transformation) -> bool {
    let n = f.n();
    let mut q = 0;
    for step in 1..=n {
        q = f.apply(q);
        if q == 0 {
            return step == n;
        }
    }
    false
}

/// Classifies circularity. For a circular automaton with a prime number of
/// states, checks against the direct analyses that it is primitive and
/// synchronizes iff some letter is not a permutation.
pub fn circular_prime(automaton: &Automaton) -> Result<CircularReport> {
    let circular = automaton.letters().iter().any(is_full_cycle);
    let prime_n = is_prime(automaton.n());
    let pin_applies = circular && prime_n;
    if pin_applies {
        if !is_primitive(automaton).primitive {
            return Err(Error::InvariantViolation(
                "circular automaton of prime order is not primitive".into(),
            ));
        }
        let expected = !automaton.all_permutational();
        if is_synchronizing(automaton).synchronizing != expected {
            return Err(Error::InvariantViolation(format!(
                "circular automaton of prime order: expected synchronizing = {expected}"
            )));
        }
    }
    Ok(CircularReport {
        circular,
        prime_n,
        pin_applies,
    })
}
