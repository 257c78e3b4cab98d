//! Named graphs: the maximal cyclotomic families and sporadics, search seeds,
//! and the excluded subgraphs used to prune searches.
//!
//! Graphs are stored as vertex and edge lists. An edge `(u, v, w)`
//! sets `A[u][v] = w`; weights are `(a, b)` pairs meaning `a + bθ`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::equiv::{ChargeCell, EdgeCell, Pattern};
use crate::graphmat::{GraphError, HermitianMatrix};
use crate::grow::columns::{alphabet_from_norms, for_each_column};
use crate::poly::ExtensionTester;
use crate::ring::{Ring, RingElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error("`{0}` is a family and needs a parameter k")]
    MissingK(String),
    #[error("`{0}` takes no parameter k")]
    UnexpectedK(String),
    #[error("`{name}` needs k ≥ {min}, got {k}")]
    KOutOfRange { name: String, k: usize, min: usize },
    #[error("`{name}` is not defined over {ring}")]
    WrongRing { name: String, ring: Ring },
    #[error("unknown search `{0}`")]
    UnknownSearch(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    /// Infinite maximal cyclotomic family, indexed by k.
    Family,
    /// Sporadic maximal cyclotomic graph.
    Sporadic,
    /// Starting graph of a registered search.
    Seed,
    /// Graph that no large non-supersporadic graph contains.
    Forbidden,
    /// Non-cyclotomic excluded subgraph.
    TypeI,
    /// Cyclotomic graph with finitely many cyclotomic supergraphs.
    TypeII,
    /// One of which every large supersporadic graph contains.
    Included,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphBody {
    Matrix(HermitianMatrix),
    Pattern(Pattern),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: String,
    pub k: Option<usize>,
    pub category: Category,
    pub body: GraphBody,
}

impl NamedGraph {
    pub fn matrix(&self) -> Option<&HermitianMatrix> {
        match &self.body {
            GraphBody::Matrix(m) => Some(m),
            GraphBody::Pattern(_) => None,
        }
    }

    /// The graph as a pattern; a concrete graph becomes an exact pattern.
    pub fn pattern(&self) -> Pattern {
        match &self.body {
            GraphBody::Matrix(m) => Pattern::from_matrix(m),
            GraphBody::Pattern(p) => p.clone(),
        }
    }

    pub fn ring(&self) -> Ring {
        match &self.body {
            GraphBody::Matrix(m) => m.ring(),
            GraphBody::Pattern(p) => p.ring(),
        }
    }

    pub fn n(&self) -> usize {
        match &self.body {
            GraphBody::Matrix(m) => m.n(),
            GraphBody::Pattern(p) => p.n(),
        }
    }

    /// Display name including the parameter, e.g. `T_2k(k=4)`.
    pub fn label(&self) -> String {
        match self.k {
            Some(k) => format!("{}(k={k})", self.name),
            None => self.name.clone(),
        }
    }
}

/// A catalog entry: name, category, least k for families, and the rings
/// over which the graph is defined (for maximal graphs, over which it is maximal).
#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub category: Category,
    pub k_min: Option<usize>,
    pub rings: &'static [Ring],
}

const ZALL: &[Ring] = &[Ring::Rational, Ring::Gaussian, Ring::Eisenstein];
const ZI: &[Ring] = &[Ring::Gaussian];
const ZW: &[Ring] = &[Ring::Eisenstein];
const CX: &[Ring] = &[Ring::Gaussian, Ring::Eisenstein];

const fn e(name: &'static str, category: Category, rings: &'static [Ring]) -> Entry {
    Entry { name, category, k_min: None, rings }
}

const fn fam(name: &'static str, k_min: usize, rings: &'static [Ring]) -> Entry {
    Entry { name, category: Category::Family, k_min: Some(k_min), rings }
}

use Category::*;

pub const ENTRIES: &[Entry] = &[
    fam("T_2k", 3, ZALL),
    fam("T_2k^(i)", 3, ZI),
    fam("T_2k^(w)", 3, ZW),
    fam("C_2k", 2, ZI),
    fam("C_2k++", 2, ZALL),
    fam("C_2k+-", 2, ZALL),
    fam("C_2k+1", 1, ZI),
    e("S_1", Sporadic, ZALL),
    e("S_2", Sporadic, ZALL),
    e("S_2^dag", Sporadic, ZW),
    e("S_4", Sporadic, ZI),
    e("S_4^dag", Sporadic, ZI),
    e("S_4^ddag", Sporadic, ZW),
    e("S_5", Sporadic, ZW),
    e("S_6", Sporadic, ZW),
    e("S_6^dag", Sporadic, ZW),
    e("S_7", Sporadic, ZALL),
    e("S_8", Sporadic, ZALL),
    e("S_8'", Sporadic, ZALL),
    e("S_8^dag", Sporadic, ZI),
    e("S_8^dagdag", Sporadic, ZI),
    e("S_8^ddag", Sporadic, ZI),
    e("S_10", Sporadic, ZW),
    e("S_12", Sporadic, ZW),
    e("S_14", Sporadic, ZALL),
    e("S_16", Sporadic, ZALL),
    e("H_1", Seed, ZI),
    e("H_2", Seed, ZI),
    e("H_3", Seed, ZI),
    e("H_4", Seed, ZI),
    e("Tri3_a", Seed, ZALL),
    e("Tri3_b", Seed, ZALL),
    e("Tri1_H_1", Seed, ZALL),
    e("Tri1_H_2", Seed, ZW),
    e("Tri0_a", Seed, ZALL),
    e("Tri0_b", Seed, CX),
    e("Tri2_H_1", Seed, ZALL),
    e("Tri2_H_2", Seed, ZI),
    e("Q4_1", Seed, ZALL),
    e("Q4_2", Seed, ZALL),
    e("Q4_3", Seed, ZALL),
    e("Q4_4", Seed, ZALL),
    e("Q4_5", Seed, CX),
    e("Q4_6", Seed, CX),
    e("P2_1", Seed, ZALL),
    e("P2_2", Seed, ZALL),
    e("P2_3", Seed, ZALL),
    e("X_1", Forbidden, ZALL),
    e("X_2", Forbidden, ZI),
    e("X_3", Forbidden, ZALL),
    e("X_4", Forbidden, ZI),
    e("X_5", Forbidden, ZALL),
    e("X_6", Forbidden, ZALL),
    e("X_7", Forbidden, ZALL),
    e("X_8", Forbidden, ZI),
    e("Y_1", Forbidden, ZALL),
    e("Y_2", Forbidden, ZALL),
    e("Y_3", Forbidden, ZI),
    e("Y_4", Forbidden, ZI),
    e("Y_5", Forbidden, ZALL),
    e("Y_6", Forbidden, ZALL),
    e("Y_7", Forbidden, ZALL),
    e("Y_8", Forbidden, ZI),
    e("Y_9", Forbidden, ZALL),
    e("Y_10", Forbidden, ZI),
    e("TypeI_1", TypeI, ZI),
    e("TypeI_2", TypeI, ZI),
    e("TypeI_3", TypeI, ZI),
    e("TypeI_4", TypeI, ZI),
    e("TypeI_5", TypeI, ZI),
    e("TypeI_6", TypeI, ZI),
    e("TypeI_7", TypeI, ZI),
    e("TypeI_8", TypeI, ZI),
    e("TypeI_9", TypeI, ZI),
    e("TypeI_X4", TypeI, ZALL),
    e("TypeII_1", TypeII, ZI),
    e("TypeII_2", TypeII, ZI),
    e("TypeII_3", TypeII, ZI),
    e("TypeII_4", TypeII, ZI),
    e("TypeII_5", TypeII, ZI),
    e("YA_1", Included, ZALL),
    e("YA_2", Included, ZALL),
    e("YA_3", Included, ZALL),
];

pub fn entry(name: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.name == name)
}

pub fn names(category: Category) -> Vec<&'static str> {
    ENTRIES.iter().filter(|e| e.category == category).map(|e| e.name).collect()
}

// edge weights as (a, b) = a + bθ
const P: (i64, i64) = (1, 0);
const N: (i64, i64) = (-1, 0);
const W: (i64, i64) = (0, 1);
const WN: (i64, i64) = (0, -1);
const WW: (i64, i64) = (1, 1);
const WWN: (i64, i64) = (-1, -1);

fn el(ring: Ring, w: (i64, i64)) -> Result<RingElement, GraphError> {
    Ok(ring.element(w.0, w.1)?)
}

fn index_of(verts: &[&str], v: &str) -> usize {
    verts.iter().position(|&x| x == v).unwrap_or_else(|| panic!("unknown vertex {v}"))
}

/// Graph from labelled vertices with charges and directed weighted edges.
fn labelled(ring: Ring, verts: &[(&str, i64)], edges: &[(&str, &str, (i64, i64))]) -> Result<HermitianMatrix, GraphError> {
    let names: Vec<&str> = verts.iter().map(|v| v.0).collect();
    let mut m = HermitianMatrix::zero(ring, verts.len());
    for (i, &(_, c)) in verts.iter().enumerate() {
        m.set_edge(i, i, ring.integer(c))?;
    }
    for &(u, v, w) in edges {
        m.set_edge(index_of(&names, u), index_of(&names, v), el(ring, w)?)?;
    }
    Ok(m)
}

/// Uncharged graph on `a, b, c, …` with unit-free edge list.
fn plain(ring: Ring, n: usize, edges: &[(&str, &str, (i64, i64))]) -> Result<HermitianMatrix, GraphError> {
    const LETTERS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
    let verts: Vec<(&str, i64)> = LETTERS[..n].iter().map(|&v| (v, 0)).collect();
    labelled(ring, &verts, edges)
}

#[derive(Clone, Copy)]
enum Pe {
    Exact((i64, i64)),
    Any,
}

/// Pattern with charge cells and edges that are exact or any nonzero.
fn pattern(ring: Ring, verts: &[(&str, ChargeCell)], edges: &[(&str, &str, Pe)]) -> Result<Pattern, GraphError> {
    let names: Vec<&str> = verts.iter().map(|v| v.0).collect();
    let mut p = Pattern::new(ring, verts.len());
    for (i, &(_, c)) in verts.iter().enumerate() {
        p.set_charge(i, c);
    }
    for &(u, v, w) in edges {
        let cell = match w {
            Pe::Exact(w) => EdgeCell::Exact(el(ring, w)?),
            Pe::Any => EdgeCell::AnyNonzero,
        };
        p.set_edge(index_of(&names, u), index_of(&names, v), cell);
    }
    Ok(p)
}

/// Ladder of `k` columns `{2j, 2j+1}`. Rung `j → j+1` carries
/// `x_j → x_{j+1}, x_j → y_{j+1}` with weight `m` and
/// `y_j → x_{j+1}, y_j → y_{j+1}` with weight `−m`.
fn ladder(m: &mut HermitianMatrix, offset: usize, k: usize, rungs: &[(usize, RingElement)]) -> Result<(), GraphError> {
    for &(j, w) in rungs {
        let (x0, y0) = (offset + 2 * j, offset + 2 * j + 1);
        let next = (j + 1) % k;
        let (x1, y1) = (offset + 2 * next, offset + 2 * next + 1);
        m.set_edge(x0, x1, w)?;
        m.set_edge(x0, y1, w)?;
        m.set_edge(y0, x1, -w)?;
        m.set_edge(y0, y1, -w)?;
    }
    Ok(())
}

fn torus(ring: Ring, k: usize, twist: RingElement) -> Result<HermitianMatrix, GraphError> {
    let mut m = HermitianMatrix::zero(ring, 2 * k);
    let one = ring.one();
    let rungs: Vec<(usize, RingElement)> = (0..k).map(|j| (j, if j + 1 == k { twist } else { one })).collect();
    ladder(&mut m, 0, k, &rungs)?;
    Ok(m)
}

fn open_ladder(m: &mut HermitianMatrix, offset: usize, cols: usize) -> Result<(), GraphError> {
    let one = m.ring().one();
    let rungs: Vec<(usize, RingElement)> = (0..cols.saturating_sub(1)).map(|j| (j, one)).collect();
    ladder(m, offset, usize::MAX, &rungs)
}

/// `C_2k`: a `(1+i)` cap, `k − 1` columns, a `(1+i, −1−i)` cap.
fn c_2k(ring: Ring, k: usize) -> Result<HermitianMatrix, GraphError> {
    let cols = k - 1;
    let n = 2 * k;
    let mut m = HermitianMatrix::zero(ring, n);
    open_ladder(&mut m, 1, cols)?;
    let (first, last, end) = (1, 1 + 2 * (cols - 1), n - 1);
    m.set_edge(first, 0, el(ring, WW)?)?;
    m.set_edge(first + 1, 0, el(ring, WW)?)?;
    m.set_edge(last, end, el(ring, WW)?)?;
    m.set_edge(last + 1, end, el(ring, WWN)?)?;
    Ok(m)
}

/// `C_2k^{++}` (`end = 1`) or `C_2k^{+−}` (`end = −1`): `k` columns with charged end pairs.
fn c_charged(ring: Ring, k: usize, end: i64) -> Result<HermitianMatrix, GraphError> {
    let mut m = HermitianMatrix::zero(ring, 2 * k);
    open_ladder(&mut m, 0, k)?;
    let last = 2 * (k - 1);
    m.set_edge(0, 0, ring.one())?;
    m.set_edge(1, 1, ring.one())?;
    m.set_edge(0, 1, ring.one())?;
    m.set_edge(last, last, ring.integer(end))?;
    m.set_edge(last + 1, last + 1, ring.integer(end))?;
    m.set_edge(last, last + 1, ring.integer(-end))?;
    Ok(m)
}

/// `C_{2k+1}`: a `(1+i)` cap, `k` columns, the last charged `+1` with a `−1` rung.
fn c_odd(ring: Ring, k: usize) -> Result<HermitianMatrix, GraphError> {
    let mut m = HermitianMatrix::zero(ring, 2 * k + 1);
    open_ladder(&mut m, 1, k)?;
    m.set_edge(1, 0, el(ring, WW)?)?;
    m.set_edge(2, 0, el(ring, WW)?)?;
    let last = 1 + 2 * (k - 1);
    m.set_edge(last, last, ring.one())?;
    m.set_edge(last + 1, last + 1, ring.one())?;
    m.set_edge(last, last + 1, ring.integer(-1))?;
    Ok(m)
}

/// Five outer vertices `0..5`, five inner `5..10`.
fn s_10(ring: Ring) -> Result<HermitianMatrix, GraphError> {
    let mut m = HermitianMatrix::zero(ring, 10);
    let w2 = el(ring, WN)?;
    for j in 0..5 {
        let inner = |d: usize| 5 + (j + d) % 5;
        m.set_edge(j, inner(0), ring.one())?;
        m.set_edge(j, inner(4), ring.one())?;
        m.set_edge(j, inner(1), w2)?;
        m.set_edge(j, inner(3), w2)?;
    }
    Ok(m)
}

/// Six outer vertices `0..6`, six inner `6..12`.
fn s_12(ring: Ring) -> Result<HermitianMatrix, GraphError> {
    let mut m = HermitianMatrix::zero(ring, 12);
    let w2 = el(ring, WN)?;
    let (one, neg, w) = (ring.one(), ring.integer(-1), el(ring, W)?);
    for j in 0..6 {
        let inner = |d: usize| 6 + (j + d) % 6;
        if j % 2 == 0 {
            m.set_edge(j, inner(0), one)?;
            m.set_edge(j, inner(5), neg)?;
            m.set_edge(j, inner(3), neg)?;
            m.set_edge(j, inner(1), w)?;
        } else {
            m.set_edge(j, inner(0), one)?;
            m.set_edge(j, inner(1), one)?;
            m.set_edge(j, inner(3), one)?;
            m.set_edge(inner(5), j, w2)?;
        }
    }
    Ok(m)
}

/// Bipartite double of the circulant weighing matrix of order 7 and weight 4:
/// row `j` has `+1` at column `j` and `−1` at columns `j+1, j+2, j+4`.
fn s_14(ring: Ring) -> Result<HermitianMatrix, GraphError> {
    let mut m = HermitianMatrix::zero(ring, 14);
    for j in 0..7 {
        for (s, w) in [(0, 1), (1, -1), (2, -1), (4, -1)] {
            m.set_edge(j, 7 + (j + s) % 7, ring.integer(w))?;
        }
    }
    Ok(m)
}

fn s_16(ring: Ring) -> Result<HermitianMatrix, GraphError> {
    let mut m = HermitianMatrix::zero(ring, 16);
    let (one, neg) = (ring.one(), ring.integer(-1));
    for j in 0..8 {
        m.set_edge(j, (j + 3) % 8, one)?;
        let outer = 8 + j;
        m.set_edge(outer, 8 + (j + 1) % 8, one)?;
        m.set_edge(outer, (j + 1) % 8, neg)?;
        m.set_edge(outer, (j + 7) % 8, one)?;
    }
    Ok(m)
}

fn sporadic(name: &str, ring: Ring) -> Result<HermitianMatrix, GraphError> {
    let l = |v: &[(&str, i64)], e: &[(&str, &str, (i64, i64))]| labelled(ring, v, e);
    match name {
        "S_1" => l(&[("a", 2)], &[]),
        "S_2" => l(&[("a", 0), ("b", 0)], &[("a", "b", (2, 0))]),
        "S_2^dag" => l(&[("a", -1), ("b", 1)], &[("b", "a", WW)]),
        "S_4^ddag" => plain(ring, 4, &[("a", "c", WWN), ("b", "d", WW), ("a", "b", P), ("c", "d", P)]),
        "S_5" => l(
            &[("a", 0), ("b", 0), ("c", 1), ("d", 1), ("e", 0)],
            &[
                ("a", "c", WN),
                ("b", "d", WN),
                ("c", "e", P),
                ("e", "d", P),
                ("a", "d", P),
                ("b", "c", P),
                ("e", "b", WN),
                ("a", "b", P),
                ("e", "a", WN),
            ],
        ),
        "S_6" => l(
            &[("a", -1), ("b", 1), ("c", -1), ("d", 1), ("e", -1), ("f", 1)],
            &[
                ("b", "a", WN),
                ("a", "d", WN),
                ("f", "e", WN),
                ("b", "c", P),
                ("e", "d", WN),
                ("f", "c", P),
                ("d", "c", P),
                ("a", "f", P),
                ("b", "e", P),
            ],
        ),
        "S_6^dag" => l(
            &[("a", 0), ("b", 0), ("c", -1), ("d", 1), ("e", 0), ("f", 0)],
            &[
                ("b", "a", WN),
                ("a", "d", WN),
                ("f", "e", WN),
                ("b", "c", P),
                ("e", "d", WN),
                ("f", "c", P),
                ("d", "c", P),
                ("e", "a", N),
                ("b", "f", P),
                ("a", "f", P),
                ("b", "e", P),
            ],
        ),
        "S_4" => l(
            &[("a", 1), ("b", -1), ("c", -1), ("d", 1)],
            &[("a", "c", WWN), ("b", "d", WW), ("b", "a", P), ("c", "d", P)],
        ),
        "S_4^dag" => l(
            &[("a", 1), ("b", 0), ("c", -1), ("d", 0)],
            &[("c", "a", W), ("b", "d", WW), ("b", "a", P), ("c", "d", P), ("a", "d", N), ("c", "b", P)],
        ),
        "S_7" => l(
            &[("a", 1), ("b", 0), ("c", 0), ("d", -1), ("e", 1), ("f", 1), ("g", 0)],
            &[
                ("b", "a", P),
                ("a", "c", N),
                ("a", "d", P),
                ("c", "f", P),
                ("g", "f", N),
                ("b", "g", P),
                ("d", "e", P),
                ("d", "f", P),
                ("b", "e", N),
                ("c", "g", P),
                ("e", "g", P),
                ("b", "c", P),
            ],
        ),
        "S_8" => l(
            &[("a", -1), ("b", 1), ("c", 1), ("d", -1), ("e", 1), ("f", -1), ("g", -1), ("h", 1)],
            &[
                ("b", "a", P),
                ("a", "c", N),
                ("a", "e", P),
                ("c", "g", P),
                ("c", "d", P),
                ("b", "f", N),
                ("b", "d", P),
                ("e", "f", P),
                ("e", "g", P),
                ("h", "g", N),
                ("f", "h", P),
                ("d", "h", P),
            ],
        ),
        "S_8'" => l(
            &[("a", -1), ("b", 1), ("c", 0), ("d", 0), ("e", 0), ("f", 0), ("g", 1), ("h", -1)],
            &[
                ("b", "a", P),
                ("a", "c", P),
                ("a", "e", P),
                ("c", "g", P),
                ("c", "d", N),
                ("b", "f", N),
                ("b", "d", P),
                ("e", "f", P),
                ("e", "g", N),
                ("h", "g", P),
                ("f", "h", P),
                ("d", "h", P),
                ("d", "f", P),
                ("c", "e", P),
            ],
        ),
        "S_8^dag" => plain(
            ring,
            8,
            &[
                ("b", "a", P),
                ("a", "c", P),
                ("a", "g", P),
                ("b", "h", N),
                ("a", "e", W),
                ("g", "c", WN),
                ("c", "d", P),
                ("f", "b", W),
                ("b", "d", N),
                ("e", "f", P),
                ("e", "g", N),
                ("h", "g", P),
                ("f", "h", P),
                ("d", "h", WN),
                ("d", "f", N),
                ("c", "e", P),
            ],
        ),
        "S_8^dagdag" => plain(
            ring,
            8,
            &[
                ("b", "a", P),
                ("a", "c", WW),
                ("a", "e", N),
                ("g", "c", N),
                ("d", "c", P),
                ("b", "f", P),
                ("d", "b", W),
                ("e", "f", P),
                ("e", "g", WN),
                ("h", "g", P),
                ("h", "f", WWN),
                ("h", "d", P),
                ("d", "e", P),
                ("b", "g", P),
            ],
        ),
        "S_8^ddag" => plain(
            ring,
            8,
            &[
                ("b", "a", P),
                ("a", "c", WW),
                ("a", "e", P),
                ("g", "c", N),
                ("d", "c", P),
                ("b", "f", P),
                ("b", "d", WWN),
                ("e", "f", N),
                ("e", "g", WW),
                ("h", "g", P),
                ("f", "h", WW),
                ("h", "d", P),
            ],
        ),
        "S_10" => s_10(ring),
        "S_12" => s_12(ring),
        "S_14" => s_14(ring),
        "S_16" => s_16(ring),
        _ => unreachable!("not a sporadic: {name}"),
    }
}

fn seed(name: &str, ring: Ring) -> Result<HermitianMatrix, GraphError> {
    let l = |v: &[(&str, i64)], e: &[(&str, &str, (i64, i64))]| labelled(ring, v, e);
    let tri = |charges: [i64; 3], bc: (i64, i64)| l(&[("a", charges[0]), ("b", charges[1]), ("c", charges[2])], &[("a", "b", P), ("a", "c", P), ("b", "c", bc)]);
    let square = |cd: Option<(i64, i64)>| {
        let mut e = vec![("a", "b", P), ("b", "d", P), ("a", "c", P)];
        if let Some(w) = cd {
            e.push(("c", "d", w));
        }
        plain(ring, 4, &e)
    };
    match name {
        "H_1" => l(&[("a", 1), ("b", 1)], &[("a", "b", WW)]),
        "H_2" => l(&[("a", 1), ("b", -1)], &[("a", "b", WW)]),
        "H_3" => l(&[("a", 1), ("b", 0)], &[("a", "b", WW)]),
        "H_4" => l(&[("a", 0), ("b", 0)], &[("a", "b", WW)]),
        "Tri3_a" => tri([1, 1, 1], N),
        "Tri3_b" => tri([1, 1, -1], N),
        "Tri1_H_1" => tri([1, 0, 0], N),
        // weight −ω: the triangle with ω is not cyclotomic
        "Tri1_H_2" => tri([1, 0, 0], WN),
        "Tri0_a" => tri([0, 0, 0], P),
        "Tri0_b" => tri([0, 0, 0], W),
        "Tri2_H_1" => l(&[("a", 0), ("b", 1), ("c", 1)], &[("a", "b", P), ("b", "c", N), ("a", "c", P)]),
        "Tri2_H_2" => l(&[("a", 0), ("b", 1), ("c", -1)], &[("a", "b", P), ("b", "c", W), ("c", "a", P)]),
        "Q4_1" => square(None),
        "Q4_2" => plain(ring, 4, &[("a", "b", P), ("a", "d", P), ("a", "c", P)]),
        "Q4_3" => square(Some(P)),
        "Q4_4" => square(Some(N)),
        "Q4_5" => square(Some(W)),
        "Q4_6" => square(Some(WN)),
        "P2_1" => l(&[("a", 1), ("b", 0)], &[("a", "b", P)]),
        "P2_2" => l(&[("a", 1), ("b", 1)], &[("a", "b", P)]),
        "P2_3" => l(&[("a", 1), ("b", -1)], &[("a", "b", P)]),
        _ => unreachable!("not a seed: {name}"),
    }
}

fn forbidden(name: &str, ring: Ring) -> Result<Pattern, GraphError> {
    use ChargeCell::{Any, Exact, Nonzero};
    let (x, any) = (Pe::Exact, Pe::Any);
    match name {
        "X_1" => pattern(
            ring,
            &[("a", Nonzero), ("b", Exact(1)), ("c", Nonzero), ("d", Nonzero)],
            &[("a", "b", any), ("c", "b", any), ("d", "c", any)],
        ),
        "X_2" => pattern(
            ring,
            &[("a", Nonzero), ("b", Nonzero), ("c", Nonzero), ("d", Nonzero)],
            &[("c", "b", x(WW)), ("a", "b", any), ("d", "c", any)],
        ),
        "X_3" => pattern(ring, &[("a", Exact(1)), ("b", Exact(-1))], &[("a", "b", any)]),
        "X_4" => pattern(ring, &[("a", Exact(1)), ("b", Exact(1))], &[("a", "b", x(WW))]),
        "X_5" => pattern(ring, &[("a", Exact(1)), ("b", Exact(1)), ("c", Nonzero)], &[("a", "b", any), ("c", "b", any)]),
        "X_6" => pattern(ring, &[("a", Exact(1)), ("b", Exact(0)), ("c", Exact(1))], &[("a", "b", x(P)), ("c", "b", x(P))]),
        "X_7" => pattern(ring, &[("a", Exact(1)), ("b", Exact(0)), ("c", Exact(-1))], &[("a", "b", x(P)), ("c", "b", x(P))]),
        "X_8" => pattern(ring, &[("a", Exact(1)), ("b", Exact(0)), ("c", Nonzero)], &[("a", "b", x(WW)), ("c", "b", any)]),
        "Y_1" => pattern(
            ring,
            &[("a", Exact(0)), ("b", Nonzero), ("c", Any)],
            &[("a", "b", any), ("c", "b", any), ("c", "a", any)],
        ),
        "Y_2" => pattern(
            ring,
            &[("a", Exact(1)), ("b", Exact(0)), ("c", Exact(1))],
            &[("a", "b", x(P)), ("c", "b", x(P)), ("c", "a", x(P))],
        ),
        "Y_3" => Ok(Pattern::from_matrix(&plain(ring, 4, &[("a", "b", P), ("b", "c", P), ("c", "d", WW), ("a", "d", WW)])?)),
        "Y_4" => Ok(Pattern::from_matrix(&plain(ring, 4, &[("a", "b", P), ("b", "c", P), ("c", "d", P), ("a", "d", W)])?)),
        "Y_5" => Ok(Pattern::from_matrix(&plain(
            ring,
            5,
            &[("a", "b", P), ("b", "c", P), ("c", "d", P), ("a", "d", P), ("d", "e", P)],
        )?)),
        "Y_6" => Ok(Pattern::from_matrix(&plain(
            ring,
            6,
            &[("a", "b", P), ("c", "d", P), ("a", "d", P), ("d", "f", P), ("e", "f", P)],
        )?)),
        "Y_7" | "Y_8" => {
            // 5-cycle a..e with a pendant f on d
            let de = if name == "Y_7" { P } else { W };
            Ok(Pattern::from_matrix(&plain(
                ring,
                6,
                &[("a", "b", P), ("b", "c", P), ("c", "d", de), ("d", "e", P), ("e", "a", P), ("d", "f", P)],
            )?))
        }
        "Y_9" | "Y_10" => {
            let (first, ab) = if name == "Y_9" { (Exact(1), x(P)) } else { (Nonzero, x(WW)) };
            pattern(
                ring,
                &[("a", first), ("b", Nonzero), ("c", Nonzero), ("d", Nonzero), ("e", Nonzero)],
                &[("a", "b", ab), ("b", "c", x(P)), ("d", "c", x(P)), ("b", "e", x(P))],
            )
        }
        _ => unreachable!("not a forbidden pattern: {name}"),
    }
}

fn excluded(name: &str, ring: Ring) -> Result<HermitianMatrix, GraphError> {
    let l = |v: &[(&str, i64)], e: &[(&str, &str, (i64, i64))]| labelled(ring, v, e);
    match name {
        "TypeI_1" => plain(ring, 3, &[("a", "b", WW), ("a", "c", WW), ("b", "c", P)]),
        "TypeI_2" => plain(ring, 3, &[("a", "b", WW), ("c", "a", WW), ("b", "c", P)]),
        "TypeI_3" => plain(ring, 3, &[("a", "b", WW), ("a", "c", P), ("b", "c", P)]),
        "TypeI_4" => l(&[("a", 1), ("b", 1)], &[("a", "b", WW)]),
        "TypeI_5" => l(&[("a", 0), ("b", 0), ("c", 0), ("d", 1)], &[("a", "b", WW), ("b", "c", WW), ("c", "d", P)]),
        "TypeI_6" => plain(ring, 4, &[("a", "b", WW), ("b", "c", WW), ("c", "d", P)]),
        "TypeI_7" => plain(ring, 4, &[("a", "b", WW), ("a", "c", P), ("c", "d", P), ("d", "b", P)]),
        "TypeI_8" => plain(ring, 4, &[("a", "b", WW), ("a", "c", P), ("c", "d", WW), ("d", "b", P)]),
        "TypeI_9" => plain(ring, 4, &[("a", "b", WW), ("a", "c", P), ("d", "c", WW), ("d", "b", P)]),
        "TypeI_X4" => l(&[("a", 0), ("b", 0), ("c", 0), ("d", 1)], &[("a", "d", P), ("b", "d", P), ("c", "d", P)]),
        "TypeII_1" => l(&[("a", 1), ("b", -1)], &[("a", "b", WW)]),
        "TypeII_2" => l(&[("a", 1), ("b", 0)], &[("a", "b", WW)]),
        "TypeII_3" => plain(ring, 4, &[("a", "b", P), ("b", "c", WW), ("c", "d", P)]),
        "TypeII_4" => plain(ring, 4, &[("a", "b", WW), ("a", "c", P), ("c", "d", WWN), ("d", "b", P)]),
        "TypeII_5" => plain(ring, 4, &[("a", "b", WW), ("a", "c", P), ("c", "d", N), ("d", "b", P)]),
        "YA_1" => plain(ring, 6, &[("a", "b", P), ("b", "e", P), ("a", "c", P), ("c", "d", P), ("d", "f", P), ("b", "d", N)]),
        "YA_2" => plain(
            ring,
            6,
            &[("a", "b", P), ("b", "e", P), ("a", "c", P), ("c", "d", P), ("d", "f", P), ("b", "d", N), ("e", "f", P)],
        ),
        "YA_3" => plain(ring, 6, &[("e", "f", P), ("a", "c", P), ("c", "d", P), ("d", "f", P), ("b", "d", P)]),
        _ => unreachable!("not an excluded graph: {name}"),
    }
}

/// Builds a named graph over `ring` (default: the first ring it is defined over).
pub fn build(name: &str, k: Option<usize>, ring: Option<Ring>) -> Result<NamedGraph, CatalogError> {
    let entry = entry(name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    let ring = ring.unwrap_or(entry.rings[0]);
    if !entry.rings.contains(&ring) {
        return Err(CatalogError::WrongRing { name: name.to_string(), ring });
    }
    let k = match (entry.k_min, k) {
        (Some(_), None) => return Err(CatalogError::MissingK(name.to_string())),
        (None, Some(_)) => return Err(CatalogError::UnexpectedK(name.to_string())),
        (Some(min), Some(k)) if k < min => return Err(CatalogError::KOutOfRange { name: name.to_string(), k, min }),
        (_, k) => k,
    };
    let body = match entry.category {
        Family => {
            let k = k.expect("checked above");
            let m = match name {
                "T_2k" => torus(ring, k, ring.one())?,
                "T_2k^(i)" | "T_2k^(w)" => torus(ring, k, el(ring, W)?)?,
                "C_2k" => c_2k(ring, k)?,
                "C_2k++" => c_charged(ring, k, 1)?,
                "C_2k+-" => c_charged(ring, k, -1)?,
                "C_2k+1" => c_odd(ring, k)?,
                _ => unreachable!(),
            };
            GraphBody::Matrix(m)
        }
        Sporadic => GraphBody::Matrix(sporadic(name, ring)?),
        Seed => GraphBody::Matrix(seed(name, ring)?),
        Forbidden => GraphBody::Pattern(forbidden(name, ring)?),
        TypeI | TypeII | Included => GraphBody::Matrix(excluded(name, ring)?),
    };
    Ok(NamedGraph { name: name.to_string(), k, category: entry.category, body })
}

/// Every maximal graph over `ring`, with family members for `k_min..=k_max`.
pub fn maximal_graphs(ring: Ring, k_max: usize) -> Vec<NamedGraph> {
    let mut out = Vec::new();
    for entry in ENTRIES.iter().filter(|e| e.rings.contains(&ring)) {
        match (entry.category, entry.k_min) {
            (Family, Some(min)) => {
                for k in min..=k_max {
                    out.push(build(entry.name, Some(k), Some(ring)).expect("catalog family builds"));
                }
            }
            (Sporadic, _) => out.push(build(entry.name, None, Some(ring)).expect("catalog sporadic builds")),
            _ => {}
        }
    }
    out
}

/// Seed names for each registered search.
const SEEDS: &[(&str, &[&str])] = &[
    ("weight2-zi", &["H_4"]),
    ("weight2-charged-zi", &["H_2", "H_3"]),
    ("triple-triangle-zi", &["Tri3_a", "Tri3_b"]),
    ("triple-triangle-zw", &["Tri3_a", "Tri3_b"]),
    ("single-triangle-zi", &["Tri1_H_1"]),
    ("single-triangle-zw", &["Tri1_H_1", "Tri1_H_2"]),
    ("uncharged-triangle-zi", &["Tri0_a", "Tri0_b"]),
    ("uncharged-triangle-zw", &["Tri0_a", "Tri0_b"]),
    ("double-triangle-zi", &["Tri2_H_1", "Tri2_H_2"]),
    ("double-triangle-zw", &["Tri2_H_1"]),
    ("uncharged-trianglefree-zi", &["Q4_1", "Q4_2", "Q4_3", "Q4_4", "Q4_5", "Q4_6"]),
    ("uncharged-trianglefree-zw", &["Q4_1", "Q4_2", "Q4_3", "Q4_4", "Q4_5", "Q4_6"]),
    ("charged-trianglefree-zi", &["P2_1", "P2_2", "P2_3"]),
    ("charged-trianglefree-zw", &["P2_1", "P2_2", "P2_3"]),
    ("supersporadic-zi", &["YA_1", "YA_2", "YA_3"]),
    ("supersporadic-zw", &["YA_1", "YA_2", "YA_3"]),
];

/// Names of searches with a fixed seed list.
pub fn seeded_searches() -> Vec<&'static str> {
    SEEDS.iter().map(|s| s.0).collect()
}

fn search_ring(search: &str) -> Ring {
    if search.ends_with("-zw") {
        Ring::Eisenstein
    } else {
        Ring::Gaussian
    }
}

/// The seed graphs a registered search starts from, over the search's ring.
pub fn list_seeds(search: &str) -> Result<Vec<NamedGraph>, CatalogError> {
    let (_, names) = SEEDS.iter().find(|s| s.0 == search).ok_or_else(|| CatalogError::UnknownSearch(search.to_string()))?;
    let ring = search_ring(search);
    names.iter().map(|n| build(n, None, Some(ring))).collect()
}

/// Does some addition of a vertex with charge in `{0, ±1}` and column
/// entries of norm at most `cap` give a connected cyclotomic supermatrix?
/// Returns the negation: `true` means maximal.
///
/// Only columns whose new vertex has degree at most 4 are tested, which
/// loses nothing since a cyclotomic matrix has `(A²)_vv ≤ 4`.
pub fn verify_maximal(g: &HermitianMatrix, cap: u64) -> bool {
    first_cyclotomic_addition(g, cap).is_none()
}

/// A cyclotomic addition `(column, charge)` witnessing non-maximality.
pub fn first_cyclotomic_addition(g: &HermitianMatrix, cap: u64) -> Option<(Vec<RingElement>, i64)> {
    let ring = g.ring();
    let norms: Vec<u64> = (1..=cap.min(4)).collect();
    let alphabet = alphabet_from_norms(ring, &norms);
    let Some(tester) = ExtensionTester::new(g) else {
        return first_cyclotomic_addition_slow(g, &alphabet);
    };
    let caps = vec![u64::MAX; g.n()];
    let mut found = None;
    for x in [0i64, 1, -1] {
        let bound = 4 - (x * x) as u64;
        for_each_column(&alphabet, &caps, Some(bound), |c| {
            if found.is_none() && tester.extension_is_cyclotomic(c, x) && (g.is_connected() || extends_connected(g, c)) {
                found = Some((c.to_vec(), x));
            }
        });
        if found.is_some() {
            break;
        }
    }
    found
}

fn first_cyclotomic_addition_slow(g: &HermitianMatrix, alphabet: &[RingElement]) -> Option<(Vec<RingElement>, i64)> {
    let caps = vec![u64::MAX; g.n()];
    let mut found = None;
    for x in [0i64, 1, -1] {
        for_each_column(alphabet, &caps, Some(4 - (x * x) as u64), |c| {
            if found.is_none() {
                let b = g.extend_unchecked(c, x);
                if b.is_connected() && crate::poly::is_cyclotomic_matrix(&b) {
                    found = Some((c.to_vec(), x));
                }
            }
        });
    }
    found
}

fn extends_connected(g: &HermitianMatrix, c: &[RingElement]) -> bool {
    g.components().iter().all(|comp| comp.iter().any(|&v| !c[v].is_zero()))
}

/// The stable file stem for a graph name, e.g. `S_8prime`, `S_2_dag`.
pub fn file_stem(name: &str) -> String {
    name.replace('\'', "prime").replace('^', "_").replace(['(', ')'], "")
}

/// Golden matrix files for the sporadic graphs, as shipped with the crate.
pub fn golden_files() -> BTreeMap<&'static str, &'static str> {
    macro_rules! golden {
        ($($name:literal => $file:literal),* $(,)?) => {
            BTreeMap::from([$(($name, include_str!(concat!("../golden/", $file, ".txt")))),*])
        };
    }
    golden! {
        "S_1" => "S_1",
        "S_2" => "S_2",
        "S_2^dag" => "S_2_dag",
        "S_4" => "S_4",
        "S_4^dag" => "S_4_dag",
        "S_4^ddag" => "S_4_ddag",
        "S_5" => "S_5",
        "S_6" => "S_6",
        "S_6^dag" => "S_6_dag",
        "S_7" => "S_7",
        "S_8" => "S_8",
        "S_8'" => "S_8prime",
        "S_8^dag" => "S_8_dag",
        "S_8^dagdag" => "S_8_dagdag",
        "S_8^ddag" => "S_8_ddag",
        "S_10" => "S_10",
        "S_12" => "S_12",
        "S_14" => "S_14",
        "S_16" => "S_16",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::is_cyclotomic_matrix;

    fn four_identity(m: &HermitianMatrix) -> bool {
        let sq = m.square();
        let n = m.n();
        (0..n).all(|i| (0..n).all(|j| sq[i * n + j] == m.ring().integer(if i == j { 4 } else { 0 })))
    }

    #[test]
    fn spec_examples() {
        let s2 = build("S_2", None, Some(Ring::Gaussian)).unwrap();
        assert_eq!(s2.matrix().unwrap(), &HermitianMatrix::from_integers(Ring::Gaussian, &[vec![0, 2], vec![2, 0]]).unwrap());
        let s1 = build("S_1", None, None).unwrap();
        assert_eq!(s1.matrix().unwrap().to_text(), "ring: rational\nn: 1\n2\n");
        let c4 = build("C_2k++", Some(2), Some(Ring::Gaussian)).unwrap();
        let m = c4.matrix().unwrap();
        assert_eq!(m.n(), 4);
        assert!((0..4).all(|v| m.charge(v) == 1));
        assert!(is_cyclotomic_matrix(m));
        assert!(matches!(build("T_2k", Some(2), None), Err(CatalogError::KOutOfRange { .. })));
        assert!(matches!(build("T_2k", None, None), Err(CatalogError::MissingK(_))));
        assert!(matches!(build("nope", None, None), Err(CatalogError::UnknownName(_))));
        assert!(matches!(build("S_4", None, Some(Ring::Eisenstein)), Err(CatalogError::WrongRing { .. })));
    }

    #[test]
    fn maximal_graphs_square_to_four() {
        for ring in [Ring::Gaussian, Ring::Eisenstein] {
            for g in maximal_graphs(ring, 6) {
                let m = g.matrix().unwrap();
                assert!(four_identity(m), "{} over {ring}:\n{m}", g.label());
                assert!(m.is_connected(), "{}", g.label());
            }
        }
    }

    #[test]
    fn vertex_counts() {
        let n = |name: &str, k: usize| build(name, Some(k), None).unwrap().n();
        assert_eq!(n("T_2k", 5), 10);
        assert_eq!(n("C_2k", 4), 8);
        assert_eq!(n("C_2k+1", 3), 7);
        assert_eq!(n("C_2k++", 3), 6);
        for name in names(Sporadic) {
            let want: usize = name[2..].trim_end_matches(|c: char| !c.is_ascii_digit()).parse().unwrap();
            assert_eq!(build(name, None, None).unwrap().n(), want, "{name}");
        }
    }

    #[test]
    fn small_maximality() {
        let zero = HermitianMatrix::zero(Ring::Gaussian, 1);
        assert!(!verify_maximal(&zero, 4));
        let s4 = build("S_4", None, None).unwrap();
        assert!(verify_maximal(s4.matrix().unwrap(), 4));
        let s7 = build("S_7", None, Some(Ring::Gaussian)).unwrap();
        let m = s7.matrix().unwrap();
        assert!(verify_maximal(m, 4));
        for v in 0..7 {
            assert!(!verify_maximal(&m.delete_vertex(v), 4));
        }
    }

    #[test]
    fn type_one_and_two() {
        for name in names(TypeI) {
            let g = build(name, None, Some(Ring::Gaussian)).unwrap();
            assert!(!is_cyclotomic_matrix(g.matrix().unwrap()), "{name}");
        }
        for name in names(TypeII) {
            let g = build(name, None, Some(Ring::Gaussian)).unwrap();
            assert!(is_cyclotomic_matrix(g.matrix().unwrap()), "{name}");
        }
    }

    #[test]
    fn seeds_are_cyclotomic() {
        for search in seeded_searches() {
            for g in list_seeds(search).unwrap() {
                assert!(is_cyclotomic_matrix(g.matrix().unwrap()), "{search}: {}", g.name);
            }
        }
        assert_eq!(list_seeds("weight2-zi").unwrap()[0].name, "H_4");
        assert_eq!(list_seeds("charged-trianglefree-zw").unwrap().len(), 3);
        assert!(list_seeds("nope").is_err());
    }

    #[test]
    fn golden_files_match_builds() {
        let golden = golden_files();
        assert_eq!(golden.len(), names(Sporadic).len());
        for (name, text) in golden {
            let g = build(name, None, None).unwrap();
            assert_eq!(g.matrix().unwrap().to_text(), text, "{name}");
            assert_eq!(&HermitianMatrix::parse_text(text).unwrap(), g.matrix().unwrap(), "{name}");
        }
    }
}
