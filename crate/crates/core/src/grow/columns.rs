//! Reduced column sets: nonzero vectors modulo scaling by a unit.

use crate::ring::{unit_table, Ring, RingElement};

/// `{0} ∪ L_k` for every `k` in `norms`, sorted.
pub fn alphabet_from_norms(ring: Ring, norms: &[u64]) -> Vec<RingElement> {
    let mut out = vec![ring.zero()];
    for &k in norms {
        if k > 0 {
            out.extend(ring.elements_of_norm(k));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Is `x` the least element of its unit orbit?
fn is_orbit_min(x: RingElement) -> bool {
    unit_table(x.ring).iter().all(|&u| u * x >= x)
}

/// Enumerates one representative of each nonzero class of vectors with
/// entries in `alphabet`, calling `f` for each.
///
/// The representative is the lexicographically least vector of its class,
/// which is the one whose first nonzero entry is least in its unit orbit.
/// `caps[v]` bounds the norm of entry `v` and `bound` bounds the total norm.
/// The alphabet must be closed under multiplication by units.
pub fn for_each_column<F>(alphabet: &[RingElement], caps: &[u64], bound: Option<u64>, f: F)
where
    F: FnMut(&[RingElement]),
{
    for_each_column_pruned(alphabet, caps, bound, &[], f)
}

/// As [`for_each_column`], skipping every column whose support contains a
/// pair `u < v` with `conflicts[u * n + v]` set. An empty slice means no conflicts.
pub fn for_each_column_pruned<F>(alphabet: &[RingElement], caps: &[u64], bound: Option<u64>, conflicts: &[bool], mut f: F)
where
    F: FnMut(&[RingElement]),
{
    let Some(first) = alphabet.first() else {
        return;
    };
    let n = caps.len();
    assert!(conflicts.is_empty() || conflicts.len() == n * n, "conflict table must be n × n");
    let ring = first.ring;
    let mut sorted = alphabet.to_vec();
    sorted.sort();
    sorted.dedup();
    let leads: Vec<RingElement> = sorted.iter().copied().filter(|x| !x.is_zero() && is_orbit_min(*x)).collect();
    let mut walk = Walk {
        alphabet: &sorted,
        leads: &leads,
        caps,
        conflicts,
        col: vec![ring.zero(); n],
        support: Vec::with_capacity(n),
    };
    walk.recurse(bound.unwrap_or(u64::MAX), 0, &mut f);
}

struct Walk<'a> {
    alphabet: &'a [RingElement],
    leads: &'a [RingElement],
    caps: &'a [u64],
    conflicts: &'a [bool],
    col: Vec<RingElement>,
    support: Vec<usize>,
}

impl Walk<'_> {
    fn recurse<F: FnMut(&[RingElement])>(&mut self, remaining: u64, pos: usize, f: &mut F) {
        let n = self.col.len();
        if pos == n {
            if !self.support.is_empty() {
                f(&self.col);
            }
            return;
        }
        // zero first keeps the output in lexicographic order of the support pattern
        self.recurse(remaining, pos + 1, f);
        if self.caps[pos] == 0 || remaining == 0 {
            return;
        }
        if !self.conflicts.is_empty() && self.support.iter().any(|&q| self.conflicts[q * n + pos]) {
            return;
        }
        let choices = if self.support.is_empty() { self.leads } else { self.alphabet };
        self.support.push(pos);
        for &x in choices {
            if x.is_zero() {
                continue;
            }
            let nx = x.norm();
            if nx > self.caps[pos] || nx > remaining {
                continue;
            }
            self.col[pos] = x;
            self.recurse(remaining - nx, pos + 1, f);
        }
        self.support.pop();
        self.col[pos] = self.col[pos].ring.zero();
    }
}

/// All reduced columns of length `n` over `alphabet`, with total norm at most `bound`.
pub fn generate_columns(n: usize, alphabet: &[RingElement], bound: Option<u64>) -> Vec<Vec<RingElement>> {
    let mut out = Vec::new();
    for_each_column(alphabet, &vec![u64::MAX; n], bound, |c| out.push(c.to_vec()));
    out
}
