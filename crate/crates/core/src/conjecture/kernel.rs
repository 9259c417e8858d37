//! Allocation-free synchronization and primitivity tests for automata with
//! at most eight states, used in the enumeration and search loops. The
//! general versions live in [`crate::analysis`]; tests cross-check the two.

use super::canon::Image;

pub(crate) const MAX_STATES: usize = 8;

#[inline]
fn pair_bit(s: u8, t: u8) -> u64 {
    let (s, t) = if s < t { (s, t) } else { (t, s) };
    1u64 << (s as u32 * 8 + t as u32)
}

/// Every pair is compressible.
pub(crate) fn synchronizing(n: usize, letters: &[&Image]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut all = 0u64;
    for s in 0..n as u8 {
        for t in s + 1..n as u8 {
            all |= pair_bit(s, t);
        }
    }
    let mut good = 0u64;
    loop {
        let before = good;
        let mut rest = all & !good;
        while rest != 0 {
            let b = rest.trailing_zeros();
            let (s, t) = ((b / 8) as usize, (b % 8) as usize);
            for f in letters {
                let (x, y) = (f[s], f[t]);
                if x == y || good & pair_bit(x, y) != 0 {
                    good |= 1u64 << b;
                    break;
                }
            }
            rest &= rest - 1;
        }
        if good == all {
            return true;
        }
        if good == before {
            return false;
        }
    }
}

struct SmallUnionFind {
    parent: [u8; MAX_STATES],
    classes: usize,
}

impl SmallUnionFind {
    fn new(n: usize) -> Self {
        let mut parent = [0u8; MAX_STATES];
        for (q, p) in parent.iter_mut().enumerate() {
            *p = q as u8;
        }
        Self { parent, classes: n }
    }

    #[inline]
    fn find(&mut self, mut x: u8) -> u8 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    #[inline]
    fn union(&mut self, a: u8, b: u8) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb) as usize] = ra.min(rb);
        self.classes -= 1;
        true
    }
}

/// The least congruence containing `(p, q)` is the total relation.
fn generates_total(n: usize, letters: &[&Image], p: u8, q: u8) -> bool {
    let mut uf = SmallUnionFind::new(n);
    let mut stack = [(0u8, 0u8); MAX_STATES];
    let mut top = 0;
    uf.union(p, q);
    stack[top] = (p, q);
    top += 1;
    while top > 0 {
        top -= 1;
        let (s, t) = stack[top];
        for f in letters {
            let (x, y) = (f[s as usize], f[t as usize]);
            if uf.union(x, y) {
                if uf.classes == 1 {
                    return true;
                }
                stack[top] = (x, y);
                top += 1;
            }
        }
    }
    uf.classes == 1
}

/// No congruence other than the trivial ones. Automata with at most two
/// states count as primitive.
pub(crate) fn primitive(n: usize, letters: &[&Image]) -> bool {
    if n <= 2 {
        return true;
    }
    for p in 0..n as u8 {
        for q in p + 1..n as u8 {
            if !generates_total(n, letters, p, q) {
                return false;
            }
        }
    }
    true
}
