//! Random instances of every problem kind, for property tests and
//! benchmarks. All generators draw from the caller's generator, so a seeded
//! [`crate::rng::PinnedRng`] makes them reproducible.

use rand::Rng;

use crate::instances::{ExplicitFamily, Graph, HittingSet, Instance, Threshold};
use crate::subset::{GroundSet, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Threshold,
    DominatingSet,
    VertexCover,
    HittingSet,
    MonotoneFamily,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::Threshold,
        Kind::DominatingSet,
        Kind::VertexCover,
        Kind::HittingSet,
        Kind::MonotoneFamily,
    ];
}

pub fn instance<R: Rng>(rng: &mut R, kind: Kind, m: usize) -> Instance {
    match kind {
        Kind::Threshold => Instance::Threshold(threshold(rng, m)),
        Kind::DominatingSet => Instance::DominatingSet(graph(rng, m, false)),
        Kind::VertexCover => Instance::VertexCover(graph(rng, m, true)),
        Kind::HittingSet => Instance::HittingSet(hitting_set(rng, m)),
        Kind::MonotoneFamily => Instance::MonotoneFamily(antichain(rng, m)),
    }
}

/// Weights in `0..=12` (at least one positive) and a quota anywhere in
/// `1..=total`.
pub fn threshold<R: Rng>(rng: &mut R, m: usize) -> Threshold {
    let mut weights: Vec<u64> = (0..m).map(|_| rng.random_range(0..=12)).collect();
    if weights.iter().all(|&w| w == 0) {
        weights[rng.random_range(0..m)] = 1;
    }
    let total: u64 = weights.iter().sum();
    let quota = rng.random_range(1..=total);
    Threshold::new(quota, weights).expect("quota within bounds")
}

/// Erdős–Rényi graph with a random density; with `need_edge` at least one
/// edge is present (requires `m >= 2`).
pub fn graph<R: Rng>(rng: &mut R, m: usize, need_edge: bool) -> Graph {
    let p: f64 = rng.random_range(0.1..0.7);
    let mut edges = Vec::new();
    for a in 1..=m {
        for b in a + 1..=m {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    if need_edge && edges.is_empty() {
        let a = rng.random_range(1..m);
        edges.push((a, a + 1));
    }
    Graph::new(m, &edges).expect("generated edges are valid")
}

fn random_nonempty<R: Rng>(rng: &mut R, ground: GroundSet, max_len: usize) -> Subset {
    let len = rng.random_range(1..=max_len.min(ground.size()));
    let mut s = Subset::EMPTY;
    while s.len() < len {
        s = s.with(rng.random_range(0..ground.size()));
    }
    s
}

pub fn hitting_set<R: Rng>(rng: &mut R, m: usize) -> HittingSet {
    let g = GroundSet::new(m).expect("ground size in range");
    let count = rng.random_range(1..=2 * m);
    let sets = (0..count).map(|_| random_nonempty(rng, g, 4)).collect();
    HittingSet::new(g, sets).expect("nonempty sets")
}

/// Random sets reduced to their inclusion-minimal members.
pub fn antichain<R: Rng>(rng: &mut R, m: usize) -> ExplicitFamily {
    let g = GroundSet::new(m).expect("ground size in range");
    let count = rng.random_range(1..=m + 2);
    let mut sets: Vec<Subset> = (0..count).map(|_| random_nonempty(rng, g, 5)).collect();
    sets.sort_by_key(|s| s.canonical_key());
    sets.dedup();
    let mut kept: Vec<Subset> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset_of(s)) {
            kept.push(s);
        }
    }
    ExplicitFamily::new(g, kept).expect("reduced to an antichain")
}
