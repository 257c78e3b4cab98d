mod common;

use std::collections::BTreeSet;

use cyclograph::catalog::{build, maximal_graphs, names, Category};
use cyclograph::equiv::{canonical_key, canonical_key_exhaustive, contains_induced_equivalent, CanonicalKey, Flavor, Pattern};
use cyclograph::grow::diagnostics::chordless_profile;
use cyclograph::grow::{
    expand, is_minimal_noncyclotomic, registered_config, run_search, ChargeRule, CompiledFilter, GrowConfig, SearchState,
    TrianglePolicy,
};
use cyclograph::{is_cyclotomic_matrix, HermitianMatrix, Ring};

use common::*;

fn minimal_keys(state: &SearchState, j: usize) -> BTreeSet<CanonicalKey> {
    state.minimal_found.get(&j).map(|m| m.keys().cloned().collect()).unwrap_or_default()
}

#[test]
fn charged_trianglefree_first_round_matches_brute_force() {
    for (name, ring) in [("charged-trianglefree-zi", Ring::Gaussian), ("charged-trianglefree-zw", Ring::Eisenstein)] {
        let state = run_search(&registered_config(name).unwrap(), 3).unwrap();
        let full = charged_path_classes(ring, Flavor::Full);
        assert_eq!(full.len(), 3, "{name}");
        assert_eq!(minimal_keys(&state, 3), full, "{name}");
        // without global negation the three classes split in two
        assert_eq!(charged_path_classes(ring, Flavor::Strong).len(), 6, "{name}");
    }
}

#[test]
fn searched_graphs_satisfy_their_invariants() {
    for name in ["charged-trianglefree-zi", "weight2-zi", "single-triangle-zw"] {
        let cfg = registered_config(name).unwrap();
        let mut state = SearchState::new(&cfg).unwrap();
        while state.round < 5 {
            for m in state.frontier.values() {
                assert!(m.is_connected() && is_cyclotomic_matrix(m), "{name}: frontier graph");
            }
            state.grow_round().unwrap();
        }
        for found in state.minimal_found.values().flat_map(|t| t.values()) {
            assert!(is_minimal_noncyclotomic(&found.matrix), "{name}");
            assert!(!found.mahler.is_exactly_one && found.mahler.value > 1.0, "{name}");
        }
    }
}

/// Does any triangle of `a` violate the policy, taking each of its vertices as the new one?
fn has_forbidden_triangle(a: &HermitianMatrix, policy: TrianglePolicy) -> bool {
    let n = a.n();
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                if a.is_edge(u, v) && a.is_edge(v, w) && a.is_edge(u, w) {
                    for (new, x, y) in [(u, v, w), (v, u, w), (w, u, v)] {
                        let old = usize::from(a.is_charged(x)) + usize::from(a.is_charged(y));
                        if policy.forbids(a.is_charged(new), old) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

#[test]
fn triangle_filters_prune_nothing_they_should_keep() {
    for (name, stop) in [("charged-trianglefree-zi", 5), ("charged-trianglefree-zw", 5), ("double-triangle-zi", 5)] {
        let cfg = registered_config(name).unwrap();
        let filtered = run_search(&cfg, stop).unwrap();
        let mut open = cfg.clone();
        open.triangle_policy = TrianglePolicy::Allow;
        let unfiltered = run_search(&open, stop).unwrap();
        for j in 3..=stop {
            let kept: BTreeSet<CanonicalKey> = unfiltered
                .minimal_found
                .get(&j)
                .into_iter()
                .flat_map(|t| t.iter())
                .filter(|(_, g)| !has_forbidden_triangle(&g.matrix, cfg.triangle_policy))
                .map(|(k, _)| k.clone())
                .collect();
            assert_eq!(minimal_keys(&filtered, j), kept, "{name} j={j}");
        }
    }
}

#[test]
fn frontier_dedup_is_sound() {
    for name in ["charged-trianglefree-zw", "weight2-zi", "uncharged-triangle-zi"] {
        let cfg = registered_config(name).unwrap();
        let mut state = SearchState::new(&cfg).unwrap();
        state.grow_round().unwrap();
        let filter = CompiledFilter::new(&cfg).unwrap();
        let mut raw: Vec<HermitianMatrix> = Vec::new();
        for parent in state.frontier.values() {
            raw.extend(expand(parent, &filter).unwrap().cyclotomic.into_iter().map(|(_, m)| m));
        }
        state.grow_round().unwrap();
        let recomputed: BTreeSet<CanonicalKey> = raw.iter().map(|m| canonical_key(m, Flavor::Full).unwrap()).collect();
        let merged: BTreeSet<CanonicalKey> = state.frontier.keys().cloned().collect();
        assert_eq!(recomputed, merged, "{name}");
        // the reference canonicalization induces the same classes
        let exhaustive: BTreeSet<String> = raw.iter().map(|m| canonical_key_exhaustive(m, Flavor::Full).unwrap()).collect();
        assert_eq!(exhaustive.len(), merged.len(), "{name}");
    }
}

#[test]
fn type_two_graphs_have_finitely_many_cyclotomic_supergraphs() {
    let mut cfg = registered_config("weight2-zi").unwrap();
    cfg.charges = [0, 1, -1].iter().map(|&charge| ChargeRule { charge, norms: vec![1, 2], bound: None }).collect();
    // a cyclotomic matrix has (A²)_vv ≤ 4, so this cap loses nothing
    cfg.degree_cap = Some(4);
    cfg.degree_cap_from = 0;
    cfg.max_vertices = 10;
    for name in names(Category::TypeII) {
        let g = build(name, None, Some(Ring::Gaussian)).unwrap();
        let m = g.matrix().unwrap();
        assert!(is_cyclotomic_matrix(m), "{name}");
        cfg.name = format!("from-{name}");
        cfg.seeds = vec![name.to_string()];
        let mut state = SearchState::new(&cfg).unwrap();
        while !state.is_finished() {
            state.grow_round().unwrap();
        }
        assert!(state.stats[0].sigma > 0, "{name} has no cyclotomic supergraph");
        assert!(state.frontier.is_empty() && state.round < 10, "{name} still grows at {} vertices", state.round);
    }
}

fn family_members(ring: Ring) -> Vec<HermitianMatrix> {
    maximal_graphs(ring, 8)
        .into_iter()
        .filter(|g| g.category == Category::Family)
        .map(|g| g.matrix().unwrap().clone())
        .collect()
}

#[test]
fn charged_family_subgraphs_have_short_chordless_cycles() {
    for name in ["charged-trianglefree-zi", "charged-trianglefree-zw", "weight2-charged-zi"] {
        let cfg: GrowConfig = registered_config(name).unwrap();
        let families = family_members(cfg.ring);
        let mut state = SearchState::new(&cfg).unwrap();
        let mut checked = 0;
        while state.round < 8 && !state.is_finished() {
            state.grow_round().unwrap();
            for m in state.frontier.values().filter(|m| m.has_charges()).take(40) {
                let p = Pattern::from_matrix(m);
                if families.iter().any(|f| f.n() >= m.n() && contains_induced_equivalent(f, &p, Flavor::Full)) {
                    assert!(chordless_profile(m).longest_cycle <= 4, "{name}: {m:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 0, "{name}: nothing sampled");
    }
}

#[test]
fn small_cyclotomic_graphs_embed_in_maximal_ones() {
    let (count, missing) = unembedded_cyclotomic(3, 6);
    assert!(count > 20);
    assert!(missing.is_empty(), "{missing:?}");
}
