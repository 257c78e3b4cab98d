//! Search configuration and the registry of named searches.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::GrowError;
use crate::catalog;
use crate::equiv::Flavor;
use crate::graphmat::MAX_VERTICES;
use crate::ring::{Ring, RingElement};

use super::columns::alphabet_from_norms;

/// Which triangles through the new vertex are rejected, by number of charged corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrianglePolicy {
    Allow,
    ForbidAll,
    /// Only triangles with exactly two charged vertices survive.
    ForbidExceptDoubleCharged,
    /// Triangles with at least one charged vertex are rejected.
    ForbidCharged,
    ForbidUncharged,
    /// Triangles whose only charged vertex is the new one are rejected.
    ForbidSingleChargedAtNew,
}

impl TrianglePolicy {
    /// Is a triangle through the new vertex (charged iff `new_charged`) and
    /// two existing vertices with `old_charged` charged corners forbidden?
    pub fn forbids(self, new_charged: bool, old_charged: usize) -> bool {
        let total = old_charged + usize::from(new_charged);
        match self {
            TrianglePolicy::Allow => false,
            TrianglePolicy::ForbidAll => true,
            TrianglePolicy::ForbidExceptDoubleCharged => total != 2,
            TrianglePolicy::ForbidCharged => total > 0,
            TrianglePolicy::ForbidUncharged => total == 0,
            TrianglePolicy::ForbidSingleChargedAtNew => new_charged && old_charged == 0,
        }
    }
}

/// Whether triangle rules apply only to triangles through the new vertex or
/// to every triangle of the supergraph (which matters only for seeds that
/// already contain a forbidden triangle).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TriangleScope {
    #[default]
    NewVertex,
    Whole,
}

/// Column alphabet for one charge of the new vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeRule {
    pub charge: i64,
    /// Entry norms allowed in the column; zero is always allowed.
    pub norms: Vec<u64>,
    /// Bound on the total norm of the column.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
}

fn default_true() -> bool {
    true
}

fn default_degree_from() -> usize {
    7
}

fn default_flavor() -> Flavor {
    Flavor::Full
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowConfig {
    pub name: String,
    pub ring: Ring,
    /// Seed graph names from the catalog; ignored when seeds are given directly.
    #[serde(default)]
    pub seeds: Vec<String>,
    pub charges: Vec<ChargeRule>,
    pub max_vertices: usize,
    /// Bound on every vertex degree, applied once the supergraph has
    /// `degree_cap_from` or more vertices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<u64>,
    #[serde(default = "default_degree_from")]
    pub degree_cap_from: usize,
    /// Count the squared charge in a vertex's degree.
    #[serde(default = "default_true")]
    pub degree_includes_charge: bool,
    #[serde(default)]
    pub excluded_patterns: Vec<String>,
    pub triangle_policy: TrianglePolicy,
    #[serde(default)]
    pub triangle_scope: TriangleScope,
    /// The new column must have a non-real entry.
    #[serde(default)]
    pub require_complex_entry: bool,
    /// The supergraph must carry no charges.
    #[serde(default)]
    pub uncharged_only: bool,
    #[serde(default = "default_flavor")]
    pub flavor: Flavor,
}

impl GrowConfig {
    pub fn validate(&self) -> Result<(), GrowError> {
        let bad = |msg: String| Err(GrowError::Config(msg));
        if self.max_vertices > MAX_VERTICES {
            return Err(GrowError::Capacity(self.max_vertices));
        }
        if self.charges.is_empty() {
            return bad("no charge rules".into());
        }
        let mut seen = Vec::new();
        for rule in &self.charges {
            if !(-2..=2).contains(&rule.charge) {
                return bad(format!("charge {} outside -2..=2", rule.charge));
            }
            if seen.contains(&rule.charge) {
                return bad(format!("charge {} listed twice", rule.charge));
            }
            seen.push(rule.charge);
            if rule.norms.iter().all(|&k| self.ring.elements_of_norm(k).is_empty()) {
                return bad(format!("charge {} has no nonzero entries over {}", rule.charge, self.ring));
            }
        }
        for name in &self.excluded_patterns {
            catalog::entry(name).ok_or_else(|| GrowError::Config(format!("unknown pattern {name}")))?;
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self, GrowError> {
        let cfg: GrowConfig = toml::from_str(text).map_err(|e| GrowError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> [u8; 32] {
        let json = serde_json::to_vec(self).expect("config serializes");
        Sha256::digest(&json).into()
    }

    /// Charge set `X`.
    pub fn charge_set(&self) -> Vec<i64> {
        self.charges.iter().map(|r| r.charge).collect()
    }

    pub(crate) fn alphabet(&self, rule: &ChargeRule) -> Vec<RingElement> {
        alphabet_from_norms(self.ring, &rule.norms)
    }

    /// Is the degree cap active for a supergraph on `n` vertices?
    pub fn degree_cap_at(&self, n: usize) -> Option<u64> {
        self.degree_cap.filter(|_| n >= self.degree_cap_from)
    }
}

fn rule(charge: i64, norms: &[u64], bound: Option<u64>) -> ChargeRule {
    ChargeRule { charge, norms: norms.to_vec(), bound }
}

fn unit_rules(charges: &[i64]) -> Vec<ChargeRule> {
    charges.iter().map(|&x| rule(x, &[1], None)).collect()
}

/// Names of all registered searches.
pub fn registered_searches() -> Vec<&'static str> {
    catalog::seeded_searches()
}

/// The configuration of a registered search.
pub fn registered_config(name: &str) -> Result<GrowConfig, GrowError> {
    let seeds = catalog::list_seeds(name).map_err(|_| GrowError::UnknownSearch(name.to_string()))?;
    let ring = if name.ends_with("-zw") { Ring::Eisenstein } else { Ring::Gaussian };
    let family = name.trim_end_matches("-zi").trim_end_matches("-zw");
    let mut cfg = GrowConfig {
        name: name.to_string(),
        ring,
        seeds: seeds.iter().map(|s| s.name.clone()).collect(),
        charges: unit_rules(&[0, 1, -1]),
        max_vertices: 10,
        degree_cap: Some(4),
        degree_cap_from: 7,
        degree_includes_charge: true,
        excluded_patterns: Vec::new(),
        triangle_policy: TrianglePolicy::Allow,
        triangle_scope: TriangleScope::NewVertex,
        require_complex_entry: false,
        uncharged_only: false,
        flavor: Flavor::Full,
    };
    match family {
        "weight2" => {
            cfg.charges = vec![rule(0, &[1, 2], None), rule(1, &[1], None), rule(-1, &[1], None)];
        }
        "weight2-charged" => {
            cfg.charges = vec![rule(0, &[1, 2], None), rule(1, &[1, 2], None), rule(-1, &[1, 2], None)];
            cfg.max_vertices = 5;
        }
        "triple-triangle" => cfg.max_vertices = 5,
        "single-triangle" | "uncharged-triangle" => cfg.max_vertices = 8,
        "double-triangle" => cfg.triangle_policy = TrianglePolicy::ForbidExceptDoubleCharged,
        "uncharged-trianglefree" => {
            cfg.charges = unit_rules(&[0]);
            cfg.triangle_policy = TrianglePolicy::ForbidAll;
        }
        "charged-trianglefree" => cfg.triangle_policy = TrianglePolicy::ForbidAll,
        "supersporadic" => {
            cfg.charges = vec![rule(0, &[1, 2], Some(4)), rule(1, &[1], Some(3)), rule(-1, &[1], Some(3))];
            cfg.degree_cap_from = 0;
            cfg.triangle_policy = TrianglePolicy::ForbidExceptDoubleCharged;
            cfg.excluded_patterns = catalog::names(catalog::Category::TypeI)
                .into_iter()
                .chain(catalog::names(catalog::Category::TypeII))
                .filter(|n| catalog::entry(n).is_some_and(|e| e.rings.contains(&ring)))
                .map(str::to_string)
                .collect();
        }
        _ => return Err(GrowError::UnknownSearch(name.to_string())),
    }
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_configs_validate_and_round_trip() {
        for name in registered_searches() {
            let cfg = registered_config(name).unwrap();
            let back = GrowConfig::from_toml(&cfg.to_toml()).unwrap();
            assert_eq!(back, cfg, "{name}");
            assert_eq!(back.hash(), cfg.hash());
        }
        assert!(matches!(registered_config("nope"), Err(GrowError::UnknownSearch(_))));
    }

    #[test]
    fn invalid_configs() {
        let mut cfg = registered_config("weight2-zi").unwrap();
        cfg.max_vertices = 17;
        assert!(matches!(cfg.validate(), Err(GrowError::Capacity(17))));
        let mut cfg = registered_config("weight2-zi").unwrap();
        cfg.charges.push(rule(3, &[1], None));
        assert!(cfg.validate().is_err());
        let mut cfg = registered_config("weight2-zi").unwrap();
        cfg.excluded_patterns.push("nope".into());
        assert!(cfg.validate().is_err());
        assert!(GrowConfig::from_toml("name = 1").is_err());
    }

    #[test]
    fn triangle_rules() {
        use TrianglePolicy::*;
        assert!(!Allow.forbids(true, 2));
        assert!(ForbidAll.forbids(false, 0));
        assert!(!ForbidExceptDoubleCharged.forbids(true, 1));
        assert!(ForbidExceptDoubleCharged.forbids(true, 2));
        assert!(ForbidExceptDoubleCharged.forbids(false, 0));
        assert!(ForbidSingleChargedAtNew.forbids(true, 0));
        assert!(!ForbidSingleChargedAtNew.forbids(false, 1));
        assert!(ForbidCharged.forbids(false, 1) && !ForbidCharged.forbids(false, 0));
        assert!(ForbidUncharged.forbids(false, 0) && !ForbidUncharged.forbids(true, 0));
    }
}
