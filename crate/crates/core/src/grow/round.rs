//! Growing rounds: expansion of a frontier, minimality tests and the
//! deterministic merge.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::GrowConfig;
use super::filter::CompiledFilter;
use super::GrowError;
use crate::catalog;
use crate::equiv::{canonical_key, CanonicalKey};
use crate::graphmat::HermitianMatrix;
use crate::poly::{is_cyclotomic_matrix_fast, mahler_of_matrix, ExtensionTester, MahlerResult};
use crate::ring::RingElement;

/// Connected, not cyclotomic, and every `(n−1)`-vertex deletion cyclotomic.
///
/// By interlacing, a non-cyclotomic induced subgraph on fewer vertices would
/// make some `(n−1)`-vertex deletion non-cyclotomic, so these deletions suffice.
pub fn is_minimal_noncyclotomic(a: &HermitianMatrix) -> bool {
    a.n() > 0
        && a.is_connected()
        && !is_cyclotomic_matrix_fast(a)
        && (0..a.n()).all(|v| a.n() == 1 || is_cyclotomic_matrix_fast(&a.delete_vertex(v)))
}

/// A minimal non-cyclotomic graph with its Mahler measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoundGraph {
    pub matrix: HermitianMatrix,
    pub mahler: MahlerResult,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundStats {
    /// Vertex count of the supergraphs produced by the round.
    pub j: usize,
    pub parents: usize,
    pub additions: u64,
    pub cyclotomic: u64,
    pub noncyclotomic: u64,
    pub sigma: usize,
    pub minimal: usize,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchState {
    /// Vertex count of the frontier matrices.
    pub round: usize,
    /// Round the search started from.
    pub start_round: usize,
    pub frontier: BTreeMap<CanonicalKey, HermitianMatrix>,
    /// Seeds larger than the current round, by vertex count.
    pub pending: BTreeMap<usize, BTreeMap<CanonicalKey, HermitianMatrix>>,
    /// `T_j` by vertex count.
    pub minimal_found: BTreeMap<usize, BTreeMap<CanonicalKey, FoundGraph>>,
    pub config: GrowConfig,
    pub stats: Vec<RoundStats>,
}

impl SearchState {
    /// A state seeded from the catalog graphs named in the config.
    pub fn new(config: &GrowConfig) -> Result<Self, GrowError> {
        let mut seeds = Vec::new();
        for name in &config.seeds {
            let g = catalog::build(name, None, Some(config.ring))?;
            let m = g.matrix().ok_or_else(|| GrowError::Config(format!("seed {name} has wildcards")))?;
            seeds.push(m.clone());
        }
        Self::from_seeds(config, seeds)
    }

    /// A state seeded from explicit matrices. Cyclotomic connected seeds form
    /// the frontier; minimal non-cyclotomic seeds are recorded; others are dropped.
    pub fn from_seeds(config: &GrowConfig, seeds: Vec<HermitianMatrix>) -> Result<Self, GrowError> {
        config.validate()?;
        if seeds.is_empty() {
            return Err(GrowError::Config("no seeds".into()));
        }
        let mut by_size: BTreeMap<usize, BTreeMap<CanonicalKey, HermitianMatrix>> = BTreeMap::new();
        let mut minimal_found: BTreeMap<usize, BTreeMap<CanonicalKey, FoundGraph>> = BTreeMap::new();
        for m in seeds {
            if m.ring() != config.ring {
                return Err(GrowError::Config(format!("seed over {} in a {} search", m.ring(), config.ring)));
            }
            if m.n() > config.max_vertices {
                return Err(GrowError::Capacity(m.n()));
            }
            let key = canonical_key(&m, config.flavor)?;
            if is_cyclotomic_matrix_fast(&m) {
                if m.is_connected() {
                    by_size.entry(m.n()).or_default().entry(key).or_insert(m);
                }
            } else if is_minimal_noncyclotomic(&m) {
                let mahler = mahler_of_matrix(&m);
                minimal_found.entry(m.n()).or_default().entry(key).or_insert(FoundGraph { matrix: m, mahler });
            }
        }
        let start = by_size.keys().next().copied().or_else(|| minimal_found.keys().next().copied()).unwrap_or(0);
        let frontier = by_size.remove(&start).unwrap_or_default();
        Ok(SearchState {
            round: start,
            start_round: start,
            frontier,
            pending: by_size,
            minimal_found,
            config: config.clone(),
            stats: Vec::new(),
        })
    }

    /// No round can produce anything new.
    pub fn is_finished(&self) -> bool {
        self.round >= self.config.max_vertices || (self.frontier.is_empty() && self.pending.is_empty())
    }

    /// Runs one round in place.
    pub fn grow_round(&mut self) -> Result<(), GrowError> {
        if self.round >= self.config.max_vertices {
            return Err(GrowError::Capacity(self.round + 1));
        }
        let started = Instant::now();
        let filter = CompiledFilter::new(&self.config)?;
        let parents: Vec<&HermitianMatrix> = self.frontier.values().collect();
        let results: Vec<Result<Expansion, GrowError>> = parents.par_iter().map(|a| expand(a, &filter)).collect();
        let mut sigma: BTreeMap<CanonicalKey, HermitianMatrix> = BTreeMap::new();
        let mut minimal: BTreeMap<CanonicalKey, HermitianMatrix> = BTreeMap::new();
        let mut stats = RoundStats { j: self.round + 1, parents: parents.len(), ..RoundStats::default() };
        for r in results {
            let e = r?;
            stats.additions += e.additions;
            stats.cyclotomic += e.cyclotomic_count;
            stats.noncyclotomic += e.noncyclotomic_count;
            for (k, m) in e.cyclotomic {
                sigma.entry(k).or_insert(m);
            }
            for (k, m) in e.minimal {
                minimal.entry(k).or_insert(m);
            }
        }
        self.round += 1;
        if let Some(seeds) = self.pending.remove(&self.round) {
            for (k, m) in seeds {
                sigma.entry(k).or_insert(m);
            }
        }
        let found: Vec<(CanonicalKey, HermitianMatrix)> = minimal.into_iter().collect();
        let measured: Vec<(CanonicalKey, FoundGraph)> = found
            .into_par_iter()
            .map(|(k, m)| {
                let mahler = mahler_of_matrix(&m);
                (k, FoundGraph { matrix: m, mahler })
            })
            .collect();
        let t = self.minimal_found.entry(self.round).or_default();
        for (k, g) in measured {
            t.entry(k).or_insert(g);
        }
        stats.sigma = sigma.len();
        stats.minimal = t.len();
        stats.elapsed_ms = started.elapsed().as_millis() as u64;
        self.frontier = sigma;
        self.stats.push(stats);
        Ok(())
    }

    /// Grows until the frontier has `stop` vertices or nothing is left,
    /// calling `after_round` after each round.
    pub fn run<F>(&mut self, stop: usize, mut after_round: F) -> Result<(), GrowError>
    where
        F: FnMut(&SearchState) -> Result<(), GrowError>,
    {
        let stop = stop.min(self.config.max_vertices);
        while self.round < stop && !self.is_finished() {
            self.grow_round()?;
            after_round(self)?;
        }
        Ok(())
    }

    /// `T_j`, empty when not computed.
    pub fn minimal_at(&self, j: usize) -> Vec<&FoundGraph> {
        self.minimal_found.get(&j).map(|t| t.values().collect()).unwrap_or_default()
    }
}

/// Runs one round on `state` and returns the new state.
pub fn grow_round(mut state: SearchState) -> Result<SearchState, GrowError> {
    state.grow_round()?;
    Ok(state)
}

/// Starts a search from its config and grows it to `stop` vertices.
pub fn run_search(config: &GrowConfig, stop: usize) -> Result<SearchState, GrowError> {
    if stop > crate::graphmat::MAX_VERTICES {
        return Err(GrowError::Capacity(stop));
    }
    let mut state = SearchState::new(config)?;
    state.run(stop, |_| Ok(()))?;
    Ok(state)
}

/// Everything one parent contributes to a round, keyed but not merged.
#[derive(Clone, Debug, Default)]
pub struct Expansion {
    pub cyclotomic: Vec<(CanonicalKey, HermitianMatrix)>,
    pub minimal: Vec<(CanonicalKey, HermitianMatrix)>,
    pub additions: u64,
    pub cyclotomic_count: u64,
    pub noncyclotomic_count: u64,
}

/// Single-vertex extension tests for `a` and for each `a − v`.
struct Testers {
    whole: Option<ExtensionTester>,
    deletions: Vec<Option<ExtensionTester>>,
}

impl Testers {
    fn new(a: &HermitianMatrix) -> Self {
        let deletions = if a.n() > 1 { (0..a.n()).map(|v| ExtensionTester::new(&a.delete_vertex(v))).collect() } else { Vec::new() };
        Testers { whole: ExtensionTester::new(a), deletions }
    }

    fn extension_cyclotomic(&self, a: &HermitianMatrix, c: &[RingElement], x: i64) -> bool {
        match &self.whole {
            Some(t) => t.extension_is_cyclotomic(c, x),
            None => is_cyclotomic_matrix_fast(&a.extend_unchecked(c, x)),
        }
    }

    /// Is the extension with old vertex `v` deleted cyclotomic? `a` is cyclotomic.
    fn deletion_cyclotomic(&self, a: &HermitianMatrix, v: usize, c: &[RingElement], x: i64) -> bool {
        let rest: Vec<RingElement> = c.iter().enumerate().filter(|&(i, _)| i != v).map(|(_, &e)| e).collect();
        if rest.iter().all(|e| e.is_zero()) {
            // `a − v` plus an isolated vertex of charge x
            return x.abs() <= 2;
        }
        match &self.deletions[v] {
            Some(t) => t.extension_is_cyclotomic(&rest, x),
            None => is_cyclotomic_matrix_fast(&a.delete_vertex(v).extend_unchecked(&rest, x)),
        }
    }
}

/// Tests every filtered addition to the cyclotomic matrix `a`.
pub fn expand(a: &HermitianMatrix, filter: &CompiledFilter) -> Result<Expansion, GrowError> {
    let flavor = filter.config.flavor;
    let testers = Testers::new(a);
    let connected = a.is_connected();
    let mut out = Expansion::default();
    let mut cyc: BTreeMap<CanonicalKey, HermitianMatrix> = BTreeMap::new();
    let mut min: BTreeMap<CanonicalKey, HermitianMatrix> = BTreeMap::new();
    let mut err = None;
    filter.for_each_cheap(a, |c, x| {
        if err.is_some() {
            return;
        }
        out.additions += 1;
        let is_cyc = testers.extension_cyclotomic(a, c, x);
        if is_cyc {
            out.cyclotomic_count += 1;
        } else {
            out.noncyclotomic_count += 1;
            if !(0..a.n()).all(|v| testers.deletion_cyclotomic(a, v, c, x)) {
                return;
            }
        }
        let ext = a.extend_unchecked(c, x);
        if !connected && !ext.is_connected() {
            return;
        }
        if filter.has_patterns() && !filter.passes_patterns(&ext) {
            return;
        }
        debug_assert!(is_cyc || is_minimal_noncyclotomic(&ext));
        match canonical_key(&ext, flavor) {
            Ok(k) => {
                let target = if is_cyc { &mut cyc } else { &mut min };
                target.entry(k).or_insert(ext);
            }
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e.into());
    }
    out.cyclotomic = cyc.into_iter().collect();
    out.minimal = min.into_iter().collect();
    Ok(out)
}
