//! The equivalence group acting on Hermitian matrices: unit switchings,
//! vertex permutations, Galois conjugation and (for full equivalence) global
//! negation. Provides canonical keys for deduplication and induced-subgraph
//! matching against patterns with wildcard cells.
//!
//! Canonical forms. For a vertex ordering in which every vertex is either
//! adjacent to an earlier one or the first of its component, there is exactly
//! one switching that turns the first nonzero entry above the diagonal in each
//! column into the distinguished representative of its unit orbit (the
//! element with lexicographically greatest `(a, b)`). The resulting
//! normalized matrix depends only on the ordering, not on any switching
//! applied beforehand. The canonical form minimizes, over all such orderings,
//! the sequence of column tokens `(colour, charge, normalized entries to
//! earlier vertices)`, where colours come from an equivariant colour
//! refinement. Prefixes that are not minimal are discarded as soon as they
//! fall behind, and components are canonized separately and sorted.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graphmat::{HermitianMatrix, MAX_VERTICES};
use crate::ring::{unit_table, Ring, RingElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquivError {
    #[error("switching factor {0} is not a unit")]
    NotUnit(RingElement),
    #[error("vertex {0} out of range for a {1}-vertex matrix")]
    VertexOutOfRange(usize, usize),
    #[error("matrices differ in size or ring ({0} vs {1})")]
    Mismatch(String, String),
    #[error("{0}-vertex matrix exceeds the canonicalization bound of {MAX_VERTICES}")]
    Capacity(usize),
    #[error("exhaustive canonicalization is limited to 8 vertices, got {0}")]
    ExhaustiveCapacity(usize),
}

/// Which group the canonical key is taken under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Switchings, permutations and Galois conjugation.
    Strong,
    /// Strong equivalence together with global negation.
    Full,
}

impl Flavor {
    fn transforms(self) -> &'static [Transform] {
        const STRONG: [Transform; 2] = [Transform { conj: false, neg: false }, Transform { conj: true, neg: false }];
        const FULL: [Transform; 4] = [
            Transform { conj: false, neg: false },
            Transform { conj: true, neg: false },
            Transform { conj: false, neg: true },
            Transform { conj: true, neg: true },
        ];
        match self {
            Flavor::Strong => &STRONG,
            Flavor::Full => &FULL,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Transform {
    conj: bool,
    neg: bool,
}

impl Transform {
    fn apply(self, a: &HermitianMatrix) -> HermitianMatrix {
        let mut m = a.clone();
        if self.conj {
            m = galois_conjugate(&m);
        }
        if self.neg {
            m = negate(&m);
        }
        m
    }
}

/// Canonical serialization of an equivalence class: `ring:n:` followed by
/// the row-major entries of the canonical representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    bytes: Vec<u8>,
    flavor: Flavor,
}

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("keys are ASCII")
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn from_parts(text: &str, flavor: Flavor) -> Self {
        CanonicalKey { bytes: text.as_bytes().to_vec(), flavor }
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({:?}, {})", self.flavor, self.as_str())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Serialized as the string `strong|<key>` or `full|<key>`, so keys can index maps.
impl Serialize for CanonicalKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let tag = match self.flavor {
            Flavor::Strong => "strong",
            Flavor::Full => "full",
        };
        format!("{tag}|{}", self.as_str()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CanonicalKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let (tag, key) = text.split_once('|').ok_or_else(|| serde::de::Error::custom("canonical key without flavor tag"))?;
        let flavor = match tag {
            "strong" => Flavor::Strong,
            "full" => Flavor::Full,
            other => return Err(serde::de::Error::custom(format!("unknown flavor {other}"))),
        };
        Ok(CanonicalKey::from_parts(key, flavor))
    }
}

/// Scales row `v` by `μ` and column `v` by `μ̄`, i.e. `QAQ*` with `Q` the
/// identity except `Q[v][v] = μ`.
pub fn switch(a: &HermitianMatrix, v: usize, mu: RingElement) -> Result<HermitianMatrix, EquivError> {
    if !mu.is_unit() || mu.ring != a.ring() {
        return Err(EquivError::NotUnit(mu));
    }
    if v >= a.n() {
        return Err(EquivError::VertexOutOfRange(v, a.n()));
    }
    let mut m = a.clone();
    for u in 0..a.n() {
        if u != v {
            m.set_edge(v, u, mu * a.get(v, u)).expect("in range");
        }
    }
    Ok(m)
}

/// Entrywise complex conjugation (equivalently the transpose).
pub fn galois_conjugate(a: &HermitianMatrix) -> HermitianMatrix {
    let n = a.n();
    let entries = a.entries().iter().map(|x| x.conj()).collect();
    HermitianMatrix::from_entries_unchecked(a.ring(), n, entries)
}

/// `−A`.
pub fn negate(a: &HermitianMatrix) -> HermitianMatrix {
    let entries = a.entries().iter().map(|&x| -x).collect();
    HermitianMatrix::from_entries_unchecked(a.ring(), a.n(), entries)
}

/// Colours from iterated refinement of `(charge, degree, incident norms)`.
fn refine_colours(a: &HermitianMatrix) -> Vec<usize> {
    let n = a.n();
    let initial: Vec<(i64, u64, Vec<u64>)> = (0..n)
        .map(|v| {
            let mut norms: Vec<u64> = a.neighbors(v).map(|u| a.get(u, v).norm()).collect();
            norms.sort_unstable();
            (a.charge(v), a.degree(v), norms)
        })
        .collect();
    let mut colours = rank(&initial);
    loop {
        let count = colours.iter().max().map_or(0, |&m| m + 1);
        let sigs: Vec<(usize, Vec<(u64, usize)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(u64, usize)> = a.neighbors(v).map(|u| (a.get(u, v).norm(), colours[u])).collect();
                nb.sort_unstable();
                (colours[v], nb)
            })
            .collect();
        let next = rank(&sigs);
        let next_count = next.iter().max().map_or(0, |&m| m + 1);
        colours = next;
        if next_count == count {
            return colours;
        }
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    sigs.iter().map(|s| distinct.binary_search(s).expect("present")).collect()
}

#[derive(Clone)]
struct Partial {
    order: Vec<usize>,
    mu: Vec<RingElement>,
    placed: u32,
}

/// Switching factor for `v` so that its first nonzero entry to an earlier
/// vertex becomes the orbit representative; one for a component root.
fn normalizing_unit(a: &HermitianMatrix, order: &[usize], mu: &[RingElement], v: usize) -> RingElement {
    for &p in order {
        let x = a.get(p, v);
        if !x.is_zero() {
            let (_, u) = (mu[p] * x).unit_orbit_rep();
            // μ_p·x·conj(μ_v) = u·μ_p·x
            return u.conj();
        }
    }
    a.ring().one()
}

fn column_token(a: &HermitianMatrix, colours: &[usize], order: &[usize], mu: &[RingElement], v: usize, mv: RingElement) -> Vec<i64> {
    let mut t = Vec::with_capacity(2 + 2 * order.len());
    t.push(colours[v] as i64);
    t.push(a.charge(v));
    for &p in order {
        let x = mu[p] * a.get(p, v) * mv.conj();
        t.push(x.a);
        t.push(x.b);
    }
    t
}

/// Minimal token sequence and ordering (with switchings) for one component.
fn canon_component(a: &HermitianMatrix, colours: &[usize], comp: &[usize]) -> (Vec<Vec<i64>>, Partial) {
    let ring = a.ring();
    let start = Partial { order: Vec::new(), mu: vec![ring.one(); a.n()], placed: 0 };
    let mut survivors = vec![start];
    let mut tokens: Vec<Vec<i64>> = Vec::with_capacity(comp.len());
    for _ in 0..comp.len() {
        let mut best: Option<Vec<i64>> = None;
        let mut next: Vec<Partial> = Vec::new();
        for s in &survivors {
            let adjacent: Vec<usize> = comp
                .iter()
                .copied()
                .filter(|&v| s.placed & (1 << v) == 0 && s.order.iter().any(|&p| a.is_edge(p, v)))
                .collect();
            let candidates: Vec<usize> = if s.order.is_empty() {
                comp.to_vec()
            } else if adjacent.is_empty() {
                comp.iter().copied().filter(|&v| s.placed & (1 << v) == 0).collect()
            } else {
                adjacent
            };
            for v in candidates {
                let mv = normalizing_unit(a, &s.order, &s.mu, v);
                let tok = column_token(a, colours, &s.order, &s.mu, v, mv);
                let ord = best.as_ref().map_or(Ordering::Less, |b| tok.cmp(b));
                if ord == Ordering::Greater {
                    continue;
                }
                if ord == Ordering::Less {
                    best = Some(tok);
                    next.clear();
                }
                let mut child = s.clone();
                child.order.push(v);
                child.mu[v] = mv;
                child.placed |= 1 << v;
                next.push(child);
            }
        }
        tokens.push(best.expect("component is nonempty"));
        survivors = next;
    }
    let winner = survivors.swap_remove(0);
    (tokens, winner)
}

/// Canonical token sequence and representative under switchings and permutations.
fn canon_switch_perm(a: &HermitianMatrix) -> (Vec<Vec<Vec<i64>>>, HermitianMatrix) {
    let colours = refine_colours(a);
    let mut parts: Vec<(Vec<Vec<i64>>, Partial)> =
        a.components().iter().map(|comp| canon_component(a, &colours, comp)).collect();
    parts.sort_by(|x, y| x.0.cmp(&y.0));
    let n = a.n();
    let mut order = Vec::with_capacity(n);
    let mut mu = vec![a.ring().one(); n];
    for (_, p) in &parts {
        for &v in &p.order {
            order.push(v);
            mu[v] = p.mu[v];
        }
    }
    let rep = apply_switch_perm(a, &order, &mu);
    (parts.into_iter().map(|p| p.0).collect(), rep)
}

/// `B[i][j] = μ_{o_i}·A[o_i][o_j]·conj(μ_{o_j})`.
fn apply_switch_perm(a: &HermitianMatrix, order: &[usize], mu: &[RingElement]) -> HermitianMatrix {
    let n = order.len();
    let mut entries = Vec::with_capacity(n * n);
    for &r in order {
        for &c in order {
            entries.push(mu[r] * a.get(r, c) * mu[c].conj());
        }
    }
    HermitianMatrix::from_entries_unchecked(a.ring(), n, entries)
}

fn key_text(m: &HermitianMatrix) -> String {
    let mut s = format!("{}:{}:", m.ring(), m.n());
    let parts: Vec<String> = m.entries().iter().map(|x| x.to_string()).collect();
    s.push_str(&parts.join(","));
    s
}

/// The canonical representative of the class of `a`.
pub fn canonical_form(a: &HermitianMatrix, flavor: Flavor) -> Result<HermitianMatrix, EquivError> {
    if a.n() > MAX_VERTICES {
        return Err(EquivError::Capacity(a.n()));
    }
    let mut best: Option<(Vec<Vec<Vec<i64>>>, HermitianMatrix)> = None;
    for t in flavor.transforms() {
        let cand = canon_switch_perm(&t.apply(a));
        if best.as_ref().is_none_or(|b| cand.0 < b.0) {
            best = Some(cand);
        }
    }
    Ok(best.expect("at least one transform").1)
}

pub fn canonical_key(a: &HermitianMatrix, flavor: Flavor) -> Result<CanonicalKey, EquivError> {
    let rep = canonical_form(a, flavor)?;
    Ok(CanonicalKey { bytes: key_text(&rep).into_bytes(), flavor })
}

pub fn are_equivalent(a: &HermitianMatrix, b: &HermitianMatrix, flavor: Flavor) -> Result<bool, EquivError> {
    if a.n() != b.n() || a.ring() != b.ring() {
        return Err(EquivError::Mismatch(format!("{} over {}", a.n(), a.ring()), format!("{} over {}", b.n(), b.ring())));
    }
    Ok(canonical_key(a, flavor)? == canonical_key(b, flavor)?)
}

/// Reference canonicalization by brute force over every admissible vertex
/// ordering (n ≤ 8), minimizing the plain row-major serialization. It induces
/// the same partition into classes as [`canonical_key`] but picks different
/// representatives.
pub fn canonical_key_exhaustive(a: &HermitianMatrix, flavor: Flavor) -> Result<String, EquivError> {
    if a.n() > 8 {
        return Err(EquivError::ExhaustiveCapacity(a.n()));
    }
    let mut best: Option<Vec<(i64, i64)>> = None;
    for t in flavor.transforms() {
        let m = t.apply(a);
        let n = m.n();
        let comp_of = {
            let mut c = vec![0; n];
            for (i, comp) in m.components().iter().enumerate() {
                for &v in comp {
                    c[v] = i;
                }
            }
            c
        };
        let mut perm: Vec<usize> = (0..n).collect();
        for_each_permutation(&mut perm, 0, &mut |order| {
            let admissible = (0..n).all(|k| {
                let v = order[k];
                let earlier = &order[..k];
                earlier.iter().any(|&p| m.is_edge(p, v)) || earlier.iter().all(|&p| comp_of[p] != comp_of[v])
            });
            if !admissible {
                return;
            }
            let mut mu = vec![m.ring().one(); n];
            for k in 0..n {
                mu[order[k]] = normalizing_unit(&m, &order[..k], &mu, order[k]);
            }
            let rep = apply_switch_perm(&m, order, &mu);
            let flat: Vec<(i64, i64)> = rep.entries().iter().map(|x| (x.a, x.b)).collect();
            if best.as_ref().is_none_or(|b| flat < *b) {
                best = Some(flat);
            }
        });
    }
    let flat = best.unwrap_or_default();
    let parts: Vec<String> = flat.iter().map(|&(x, y)| a.ring().elem(x, y).to_string()).collect();
    Ok(format!("{}:{}:{}", a.ring(), a.n(), parts.join(",")))
}

fn for_each_permutation(perm: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        for_each_permutation(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// Constraint on a pattern vertex's charge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChargeCell {
    Exact(i64),
    /// Any nonzero charge.
    Nonzero,
    Any,
}

/// Constraint on a pattern edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeCell {
    Zero,
    Exact(RingElement),
    AnyNonzero,
}

/// A graph whose charges and edges may be wildcards. Exact edges are stored
/// Hermitian; an exact pattern over ℤ can be matched inside any ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    ring: Ring,
    n: usize,
    charges: Vec<ChargeCell>,
    cells: Vec<EdgeCell>,
}

impl Pattern {
    pub fn new(ring: Ring, n: usize) -> Self {
        Pattern { ring, n, charges: vec![ChargeCell::Exact(0); n], cells: vec![EdgeCell::Zero; n * n] }
    }

    pub fn from_matrix(a: &HermitianMatrix) -> Self {
        let n = a.n();
        let mut p = Pattern::new(a.ring(), n);
        for v in 0..n {
            p.charges[v] = ChargeCell::Exact(a.charge(v));
            for u in 0..n {
                if u != v && !a.get(u, v).is_zero() {
                    p.cells[u * n + v] = EdgeCell::Exact(a.get(u, v));
                }
            }
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn set_charge(&mut self, v: usize, c: ChargeCell) -> &mut Self {
        self.charges[v] = c;
        self
    }

    /// Sets the cell from `u` to `v` (and the conjugate cell back).
    pub fn set_edge(&mut self, u: usize, v: usize, e: EdgeCell) -> &mut Self {
        assert_ne!(u, v, "use set_charge for the diagonal");
        let back = match e {
            EdgeCell::Exact(x) => EdgeCell::Exact(x.conj()),
            other => other,
        };
        self.cells[u * self.n + v] = e;
        self.cells[v * self.n + u] = back;
        self
    }

    pub fn charge(&self, v: usize) -> ChargeCell {
        self.charges[v]
    }

    pub fn edge(&self, u: usize, v: usize) -> EdgeCell {
        self.cells[u * self.n + v]
    }

    pub fn is_wildcard_free(&self) -> bool {
        self.charges.iter().all(|c| matches!(c, ChargeCell::Exact(_)))
            && self.cells.iter().all(|c| !matches!(c, EdgeCell::AnyNonzero))
    }

    /// The concrete matrix for a wildcard-free pattern.
    pub fn to_matrix(&self) -> Option<HermitianMatrix> {
        if !self.is_wildcard_free() {
            return None;
        }
        let mut m = HermitianMatrix::zero(self.ring, self.n);
        for v in 0..self.n {
            if let ChargeCell::Exact(c) = self.charges[v] {
                m.set_edge(v, v, self.ring.integer(c)).ok()?;
            }
            for u in v + 1..self.n {
                if let EdgeCell::Exact(x) = self.edge(v, u) {
                    m.set_edge(v, u, x).ok()?;
                }
            }
        }
        Some(m)
    }

    /// The same pattern over `ring`, if every exact edge is rational or the rings agree.
    pub(crate) fn in_ring(&self, ring: Ring) -> Option<Pattern> {
        if ring == self.ring {
            return Some(self.clone());
        }
        let mut p = self.clone();
        p.ring = ring;
        for c in p.cells.iter_mut() {
            if let EdgeCell::Exact(x) = c {
                if !x.is_real() {
                    return None;
                }
                *c = EdgeCell::Exact(ring.integer(x.a));
            }
        }
        Some(p)
    }

    /// Ordering of pattern vertices in which each vertex follows a neighbour
    /// along an exact edge when possible; the parent is recorded.
    fn search_order(&self) -> Vec<(usize, Option<usize>)> {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        // wildcard-heavy vertices last within each start choice: start from exact-charge vertices
        let mut starts: Vec<usize> = (0..n).collect();
        starts.sort_by_key(|&v| (!matches!(self.charges[v], ChargeCell::Exact(_)), v));
        for s in starts {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            out.push((s, None));
            let mut i = out.len() - 1;
            while i < out.len() {
                let v = out[i].0;
                i += 1;
                for u in 0..n {
                    if !seen[u] && matches!(self.edge(v, u), EdgeCell::Exact(_)) {
                        seen[u] = true;
                        out.push((u, Some(v)));
                    }
                }
            }
        }
        out
    }
}

struct Matcher<'a> {
    a: &'a HermitianMatrix,
    p: &'a Pattern,
    order: Vec<(usize, Option<usize>)>,
    image: Vec<usize>,
    mu: Vec<RingElement>,
    used: Vec<bool>,
    forced: Option<(usize, usize)>,
}

impl Matcher<'_> {
    fn run(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let (pv, parent) = self.order[k];
        for av in 0..self.a.n() {
            if self.used[av] {
                continue;
            }
            if let Some((fp, fa)) = self.forced {
                if (pv == fp) != (av == fa) {
                    continue;
                }
            }
            let charge_ok = match self.p.charge(pv) {
                ChargeCell::Exact(c) => self.a.charge(av) == c,
                ChargeCell::Nonzero => self.a.charge(av) != 0,
                ChargeCell::Any => true,
            };
            if !charge_ok {
                continue;
            }
            let mv = match parent {
                None => self.a.ring().one(),
                Some(pp) => {
                    let EdgeCell::Exact(e) = self.p.edge(pp, pv) else { unreachable!() };
                    let x = self.mu[pp] * self.a.get(self.image[pp], av);
                    match unit_table(self.a.ring()).iter().find(|&&u| u * x == e) {
                        Some(&u) => u.conj(),
                        None => continue,
                    }
                }
            };
            let consistent = self.order[..k].iter().all(|&(q, _)| {
                let x = self.a.get(self.image[q], av);
                match self.p.edge(q, pv) {
                    EdgeCell::Zero => x.is_zero(),
                    EdgeCell::AnyNonzero => !x.is_zero(),
                    EdgeCell::Exact(e) => self.mu[q] * x * mv.conj() == e,
                }
            });
            if !consistent {
                continue;
            }
            self.image[pv] = av;
            self.mu[pv] = mv;
            self.used[av] = true;
            if self.run(k + 1) {
                return true;
            }
            self.used[av] = false;
        }
        false
    }
}

/// Does some induced subgraph of `a` lie in the class of `pattern`?
pub fn contains_induced_equivalent(a: &HermitianMatrix, pattern: &Pattern, flavor: Flavor) -> bool {
    contains_induced_equivalent_at(a, pattern, flavor, None)
}

/// As [`contains_induced_equivalent`], restricted to occurrences that use
/// vertex `must_include` of `a` when given.
pub fn contains_induced_equivalent_at(
    a: &HermitianMatrix,
    pattern: &Pattern,
    flavor: Flavor,
    must_include: Option<usize>,
) -> bool {
    let Some(p) = pattern.in_ring(a.ring()) else {
        return false;
    };
    if p.n > a.n() || p.n == 0 {
        return false;
    }
    let order = p.search_order();
    for t in flavor.transforms() {
        let m = t.apply(a);
        let forced_choices: Vec<Option<(usize, usize)>> = match must_include {
            None => vec![None],
            Some(v) => (0..p.n).map(|pv| Some((pv, v))).collect(),
        };
        for forced in forced_choices {
            let mut matcher = Matcher {
                a: &m,
                p: &p,
                order: order.clone(),
                image: vec![usize::MAX; p.n],
                mu: vec![m.ring().one(); p.n],
                used: vec![false; m.n()],
                forced,
            };
            if matcher.run(0) {
                return true;
            }
        }
    }
    false
}

/// Groups matrices by canonical key, preserving first-seen order within groups.
pub fn partition_by_key<'a, I>(items: I, flavor: Flavor) -> Result<BTreeMap<CanonicalKey, Vec<usize>>, EquivError>
where
    I: IntoIterator<Item = &'a HermitianMatrix>,
{
    let mut out: BTreeMap<CanonicalKey, Vec<usize>> = BTreeMap::new();
    for (i, m) in items.into_iter().enumerate() {
        out.entry(canonical_key(m, flavor)?).or_default().push(i);
    }
    Ok(out)
}
