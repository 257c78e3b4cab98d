//! Per-matrix filtered vertex additions.

use super::columns::for_each_column_pruned;
use super::config::{GrowConfig, TriangleScope};
use super::GrowError;
use crate::catalog;
use crate::equiv::{contains_induced_equivalent_at, Flavor, Pattern};
use crate::graphmat::{HermitianMatrix, VertexAddition};
use crate::ring::RingElement;

/// A config with its excluded patterns resolved and alphabets expanded.
#[derive(Clone, Debug)]
pub struct CompiledFilter {
    pub config: GrowConfig,
    alphabets: Vec<(i64, Vec<RingElement>, Option<u64>)>,
    patterns: Vec<(String, Pattern)>,
}

impl CompiledFilter {
    pub fn new(config: &GrowConfig) -> Result<Self, GrowError> {
        config.validate()?;
        let alphabets = config.charges.iter().map(|r| (r.charge, config.alphabet(r), r.bound)).collect();
        let mut patterns = Vec::new();
        for name in &config.excluded_patterns {
            let g = catalog::build(name, None, Some(config.ring))?;
            patterns.push((name.clone(), g.pattern()));
        }
        Ok(CompiledFilter { config: config.clone(), alphabets, patterns })
    }

    fn degree(&self, a: &HermitianMatrix, v: usize) -> u64 {
        if self.config.degree_includes_charge {
            a.degree(v)
        } else {
            a.degree_without_charge(v)
        }
    }

    /// Does `a` contain a triangle the policy forbids (anywhere)?
    fn has_forbidden_triangle(&self, a: &HermitianMatrix) -> bool {
        let n = a.n();
        let policy = self.config.triangle_policy;
        for u in 0..n {
            for v in u + 1..n {
                if !a.is_edge(u, v) {
                    continue;
                }
                for w in v + 1..n {
                    if a.is_edge(u, w) && a.is_edge(v, w) {
                        // a charged corner plays the new vertex when there is one
                        let charged = [u, v, w].iter().filter(|&&x| a.is_charged(x)).count();
                        let forbidden = if charged == 0 {
                            policy.forbids(false, 0)
                        } else {
                            policy.forbids(true, charged - 1)
                        };
                        if forbidden {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    /// Calls `f(column, charge)` for every addition to `a` passing the cheap
    /// filters: alphabet, bound, degree cap, triangles, complex entry and charges.
    pub fn for_each_cheap<F: FnMut(&[RingElement], i64)>(&self, a: &HermitianMatrix, mut f: F) {
        let n = a.n();
        let cfg = &self.config;
        if cfg.uncharged_only && a.has_charges() {
            return;
        }
        if cfg.triangle_scope == TriangleScope::Whole && self.has_forbidden_triangle(a) {
            return;
        }
        let cap = cfg.degree_cap_at(n + 1);
        let caps: Vec<u64> = match cap {
            Some(c) => (0..n).map(|v| c.saturating_sub(self.degree(a, v))).collect(),
            None => vec![u64::MAX; n],
        };
        for (x, alphabet, bound) in &self.alphabets {
            let x = *x;
            if cfg.uncharged_only && x != 0 {
                continue;
            }
            let own = if cfg.degree_includes_charge { (x * x) as u64 } else { 0 };
            let bound = match cap {
                Some(c) if own > c => continue,
                Some(c) => Some(bound.map_or(c - own, |b| b.min(c - own))),
                None => *bound,
            };
            let mut conflicts = Vec::new();
            if cfg.triangle_policy != super::config::TrianglePolicy::Allow {
                conflicts = vec![false; n * n];
                for u in 0..n {
                    for v in u + 1..n {
                        if a.is_edge(u, v) {
                            let old = usize::from(a.is_charged(u)) + usize::from(a.is_charged(v));
                            conflicts[u * n + v] = cfg.triangle_policy.forbids(x != 0, old);
                        }
                    }
                }
            }
            for_each_column_pruned(alphabet, &caps, bound, &conflicts, |c| {
                if cfg.require_complex_entry && c.iter().all(|e| e.is_real()) {
                    return;
                }
                f(c, x);
            });
        }
    }

    /// Does the supergraph `ext` (new vertex last) avoid every excluded
    /// pattern through the new vertex?
    pub fn passes_patterns(&self, ext: &HermitianMatrix) -> bool {
        let last = ext.n() - 1;
        self.patterns
            .iter()
            .all(|(_, p)| p.n() > ext.n() || !contains_induced_equivalent_at(ext, p, Flavor::Full, Some(last)))
    }

    pub fn has_patterns(&self) -> bool {
        !self.patterns.is_empty()
    }
}

/// All additions to `a` allowed by `config`, in generation order.
pub fn filtered_additions(a: &HermitianMatrix, config: &GrowConfig) -> Result<Vec<VertexAddition>, GrowError> {
    let filter = CompiledFilter::new(config)?;
    let mut out = Vec::new();
    filter.for_each_cheap(a, |c, x| {
        let add = VertexAddition { column: c.to_vec(), charge: x };
        if !filter.has_patterns() || filter.passes_patterns(&a.extend_unchecked(c, x)) {
            out.push(add);
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grow::config::{registered_config, TrianglePolicy};
    use crate::ring::Ring;

    #[test]
    fn weight_two_addition_to_a_vertex() {
        let cfg = registered_config("weight2-zi").unwrap();
        let a = HermitianMatrix::zero(Ring::Gaussian, 1);
        let adds = filtered_additions(&a, &cfg).unwrap();
        assert!(adds.iter().any(|ad| ad.charge == 0 && ad.column[0].norm() == 2));
        // one unit class and one norm-2 class for x = 0, one unit class for x = ±1
        assert_eq!(adds.len(), 4);
    }

    #[test]
    fn degree_cap_spares_full_vertices() {
        let mut cfg = registered_config("charged-trianglefree-zi").unwrap();
        cfg.triangle_policy = TrianglePolicy::Allow;
        cfg.degree_cap_from = 0;
        // a star with a degree-4 centre
        let g = Ring::Gaussian;
        let mut a = HermitianMatrix::zero(g, 5);
        for v in 1..5 {
            a.set_edge(0, v, g.one()).unwrap();
        }
        let adds = filtered_additions(&a, &cfg).unwrap();
        assert!(!adds.is_empty());
        assert!(adds.iter().all(|ad| ad.column[0].is_zero()));
        assert!(adds.iter().all(|ad| ad.column.iter().map(|e| e.norm()).sum::<u64>() + (ad.charge * ad.charge) as u64 <= 4));
    }

    #[test]
    fn triangle_free_on_a_path() {
        let cfg = registered_config("charged-trianglefree-zi").unwrap();
        let g = Ring::Gaussian;
        let a = HermitianMatrix::from_integers(g, &[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]).unwrap();
        let adds = filtered_additions(&a, &cfg).unwrap();
        assert!(!adds.is_empty());
        for ad in adds {
            let c = &ad.column;
            assert!(c[0].is_zero() || c[1].is_zero());
            assert!(c[1].is_zero() || c[2].is_zero());
        }
    }

    #[test]
    fn excluded_patterns_and_complex_entries() {
        let mut cfg = registered_config("supersporadic-zi").unwrap();
        cfg.require_complex_entry = true;
        let ya = catalog::build("YA_1", None, Some(Ring::Gaussian)).unwrap();
        let a = ya.matrix().unwrap();
        let filter = CompiledFilter::new(&cfg).unwrap();
        let adds = filtered_additions(a, &cfg).unwrap();
        assert!(!adds.is_empty());
        for ad in &adds {
            assert!(ad.column.iter().any(|e| !e.is_real()));
            assert!(filter.passes_patterns(&a.extend(ad).unwrap()));
        }
    }
}
