//! Concrete monotone predicates.

use crate::error::{Error, Result};
use crate::oracle::{Oracle, Predicate};
use crate::subset::{GroundSet, Subset};

/// Weighted threshold predicate `Σ_{i∈S} w_i ≥ quota` (a weighted voting game).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    ground: GroundSet,
    quota: u64,
    weights: Vec<u64>,
}

impl Threshold {
    pub fn new(quota: u64, weights: Vec<u64>) -> Result<Self> {
        let ground = GroundSet::new(weights.len())?;
        let total: u128 = weights.iter().map(|&w| u128::from(w)).sum();
        if quota == 0 {
            return Err(Error::spec("quota must be at least 1 (the empty coalition would win)"));
        }
        if u128::from(quota) > total {
            return Err(Error::spec(format!(
                "quota {quota} exceeds the total weight {total} (the grand coalition would lose)"
            )));
        }
        Ok(Threshold {
            ground,
            quota,
            weights,
        })
    }

    pub fn quota(&self) -> u64 {
        self.quota
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight_of(&self, s: Subset) -> u128 {
        s.indices().map(|i| u128::from(self.weights[i])).sum()
    }
}

impl Predicate for Threshold {
    fn ground(&self) -> GroundSet {
        self.ground
    }
    fn holds(&self, s: Subset) -> bool {
        self.weight_of(s) >= u128::from(self.quota)
    }
}

/// A simple undirected graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ground: GroundSet,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// `edges` use 1-based labels; each unordered pair may appear once.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::spec(format!("edge ({a},{b}) has an endpoint outside 1..={n}")));
            }
            if a == b {
                return Err(Error::spec(format!("self-loop on vertex {a}")));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(Error::spec(format!("duplicate edge ({},{})", key.0, key.1)));
            }
            out.push((a, b));
        }
        Ok(Graph { ground, edges: out })
    }

    pub fn vertex_count(&self) -> usize {
        self.ground.size()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn edge_masks(&self) -> Vec<Subset> {
        self.edges
            .iter()
            .map(|&(a, b)| Subset::singleton(a - 1).with(b - 1))
            .collect()
    }

    pub fn dominating_set(&self) -> DominatingSet {
        let mut closed: Vec<Subset> = (0..self.vertex_count()).map(Subset::singleton).collect();
        for &(a, b) in &self.edges {
            closed[a - 1] = closed[a - 1].with(b - 1);
            closed[b - 1] = closed[b - 1].with(a - 1);
        }
        DominatingSet {
            ground: self.ground,
            closed,
        }
    }

    pub fn vertex_cover(&self) -> Result<VertexCover> {
        if self.edges.is_empty() {
            return Err(Error::spec(
                "vertex cover needs at least one edge (the empty set would cover an edgeless graph)",
            ));
        }
        Ok(VertexCover {
            ground: self.ground,
            edges: self.edge_masks(),
        })
    }
}

/// Every vertex is in `S` or adjacent to a vertex of `S`.
#[derive(Clone, Debug)]
pub struct DominatingSet {
    ground: GroundSet,
    closed: Vec<Subset>,
}

impl Predicate for DominatingSet {
    fn ground(&self) -> GroundSet {
        self.ground
    }
    fn holds(&self, s: Subset) -> bool {
        self.closed.iter().all(|&nb| !(nb & s).is_empty())
    }
}

/// Every edge has an endpoint in `S`.
#[derive(Clone, Debug)]
pub struct VertexCover {
    ground: GroundSet,
    edges: Vec<Subset>,
}

impl Predicate for VertexCover {
    fn ground(&self) -> GroundSet {
        self.ground
    }
    fn holds(&self, s: Subset) -> bool {
        self.edges.iter().all(|&e| !(e & s).is_empty())
    }
}

fn sets_from_labels(ground: GroundSet, sets: &[Vec<usize>]) -> Result<Vec<Subset>> {
    sets.iter()
        .enumerate()
        .map(|(k, labels)| {
            if labels.is_empty() {
                return Err(Error::spec(format!("set #{} is empty", k + 1)));
            }
            ground
                .subset_from_labels(labels.iter().copied())
                .map_err(|e| Error::spec(format!("set #{}: {e}", k + 1)))
        })
        .collect()
}

/// `H` meets every listed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSet {
    ground: GroundSet,
    sets: Vec<Subset>,
}

impl HittingSet {
    pub fn new(ground: GroundSet, sets: Vec<Subset>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::spec("hitting-set family must list at least one set"));
        }
        for (k, &s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::spec(format!("set #{} is empty (no set can hit it)", k + 1)));
            }
            ground
                .check(s)
                .map_err(|e| Error::spec(format!("set #{}: {e}", k + 1)))?;
        }
        Ok(HittingSet { ground, sets })
    }

    pub fn from_labels(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        HittingSet::new(ground, sets_from_labels(ground, sets)?)
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }
}

impl Predicate for HittingSet {
    fn ground(&self) -> GroundSet {
        self.ground
    }
    fn holds(&self, h: Subset) -> bool {
        self.sets.iter().all(|&s| !(s & h).is_empty())
    }
}

/// Up-closure of an antichain: `S` satisfies iff it contains a listed set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitFamily {
    ground: GroundSet,
    minimal_sets: Vec<Subset>,
}

impl ExplicitFamily {
    pub fn new(ground: GroundSet, minimal_sets: Vec<Subset>) -> Result<Self> {
        if minimal_sets.is_empty() {
            return Err(Error::spec("monotone family must list at least one minimal set"));
        }
        for (k, &s) in minimal_sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::spec(format!(
                    "minimal set #{} is empty (the predicate would hold everywhere)",
                    k + 1
                )));
            }
            ground
                .check(s)
                .map_err(|e| Error::spec(format!("minimal set #{}: {e}", k + 1)))?;
        }
        if let Some((a, b)) = comparable_pair(&minimal_sets) {
            return Err(Error::NotAntichain(format!("{a} ⊆ {b}")));
        }
        Ok(ExplicitFamily {
            ground,
            minimal_sets,
        })
    }

    pub fn from_labels(n: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let ground = GroundSet::new(n)?;
        ExplicitFamily::new(ground, sets_from_labels(ground, sets)?)
    }

    pub fn minimal_sets(&self) -> &[Subset] {
        &self.minimal_sets
    }
}

impl Predicate for ExplicitFamily {
    fn ground(&self) -> GroundSet {
        self.ground
    }
    fn holds(&self, s: Subset) -> bool {
        self.minimal_sets.iter().any(|&z| z.is_subset_of(s))
    }
}

/// First pair `(a, b)` with `a ⊆ b` (including duplicates), if any.
pub(crate) fn comparable_pair(sets: &[Subset]) -> Option<(Subset, Subset)> {
    for (i, &a) in sets.iter().enumerate() {
        for (j, &b) in sets.iter().enumerate() {
            if i != j && a.is_subset_of(b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Any of the supported problem kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Threshold(Threshold),
    DominatingSet(Graph),
    VertexCover(Graph),
    HittingSet(HittingSet),
    MonotoneFamily(ExplicitFamily),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Threshold(_) => "threshold",
            Instance::DominatingSet(_) => "dominating_set",
            Instance::VertexCover(_) => "vertex_cover",
            Instance::HittingSet(_) => "hitting_set",
            Instance::MonotoneFamily(_) => "monotone_family",
        }
    }

    pub fn ground(&self) -> GroundSet {
        match self {
            Instance::Threshold(t) => t.ground(),
            Instance::DominatingSet(g) | Instance::VertexCover(g) => g.ground,
            Instance::HittingSet(h) => h.ground(),
            Instance::MonotoneFamily(f) => f.ground(),
        }
    }

    /// Fails only for edgeless vertex-cover graphs.
    pub fn oracle(&self) -> Result<Oracle> {
        Ok(match self {
            Instance::Threshold(t) => Oracle::new(t.clone()),
            Instance::DominatingSet(g) => Oracle::new(g.dominating_set()),
            Instance::VertexCover(g) => Oracle::new(g.vertex_cover()?),
            Instance::HittingSet(h) => Oracle::new(h.clone()),
            Instance::MonotoneFamily(f) => Oracle::new(f.clone()),
        })
    }
}
