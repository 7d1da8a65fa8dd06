//! Enumeration of all minimal sets and minimal breaks.
//!
//! Three routes: exhaustive tabulation ([`enumerate_brute`]), seed, shrink
//! and grow exploration ([`enumerate_marco`]), and minimal-hitting-set
//! dualization of a known family ([`minimal_hitting_sets`]).

use crate::error::{Error, Result};
use crate::family::{sort_canonical, FamilyKind, MinimalFamily};
use crate::minimal::{extract_msp, grow_to_coatom, Algorithm};
use crate::oracle::Oracle;
use crate::subset::{submasks, GroundSet, Subset};

pub const DEFAULT_BRUTE_CAP: usize = 20;
/// Largest cap accepted at all; a table at this size holds 2^30 bits.
pub const MAX_BRUTE_CAP: usize = 30;
/// The exploration bitmap of [`enumerate_marco`] holds 2^m flags.
pub const MARCO_CAP: usize = 24;

/// A dense bitmap over all 2^m subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitTable {
    words: Vec<u64>,
}

impl BitTable {
    pub fn zeros(m: usize) -> Self {
        let bits = 1usize << m;
        BitTable {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    pub fn get(&self, s: Subset) -> bool {
        let i = s.0 as usize;
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn set(&mut self, s: Subset) {
        let i = s.0 as usize;
        self.words[i >> 6] |= 1 << (i & 63);
    }
}

/// The predicate evaluated on every subset.
#[derive(Clone, Debug)]
pub struct TruthTable {
    ground: GroundSet,
    table: BitTable,
}

impl TruthTable {
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn holds(&self, s: Subset) -> bool {
        self.table.get(s)
    }

    /// Masks in ascending numeric order.
    pub fn masks(&self) -> impl Iterator<Item = Subset> {
        (0..self.ground.power_set_len()).map(Subset)
    }

    /// Table of the dual predicate `S ↦ ¬P(N \ S)`, without new oracle calls.
    pub fn complement(&self) -> TruthTable {
        let g = self.ground;
        let mut table = BitTable::zeros(g.size());
        for s in self.masks() {
            if !self.holds(g.complement(s)) {
                table.set(s);
            }
        }
        TruthTable { ground: g, table }
    }

    /// Satisfying masks with no satisfying proper subset.
    pub fn minimal_sets(&self) -> Vec<Subset> {
        let m = self.ground.size();
        // below[S]: some proper subset of S satisfies
        let mut below = BitTable::zeros(m);
        let mut out = Vec::new();
        for s in self.masks() {
            let covered = s
                .indices()
                .any(|i| {
                    let sub = s.without(i);
                    self.holds(sub) || below.get(sub)
                });
            if covered {
                below.set(s);
            } else if self.holds(s) {
                out.push(s);
            }
        }
        sort_canonical(&mut out);
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BruteConfig {
    pub cap: usize,
    pub threads: usize,
}

impl Default for BruteConfig {
    fn default() -> Self {
        BruteConfig {
            cap: DEFAULT_BRUTE_CAP,
            threads: 1,
        }
    }
}

pub fn check_cap(ground: GroundSet, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_BRUTE_CAP);
    if ground.size() > cap {
        return Err(Error::SizeCap {
            size: ground.size(),
            cap,
        });
    }
    Ok(())
}

/// Evaluates the oracle once on each of the 2^m masks. With several threads
/// the mask range is split into contiguous word-aligned blocks.
pub fn tabulate(oracle: &Oracle, config: BruteConfig) -> Result<TruthTable> {
    let g = oracle.ground();
    check_cap(g, config.cap)?;
    let mut table = BitTable::zeros(g.size());
    let total = g.power_set_len();
    let fill = |words: &mut [u64], first_word: usize| {
        for (k, word) in words.iter_mut().enumerate() {
            let base = ((first_word + k) as u64) << 6;
            for bit in 0..64u64.min(total - base) {
                if oracle.eval(Subset(base + bit)) {
                    *word |= 1 << bit;
                }
            }
        }
    };
    let threads = config.threads.max(1);
    if threads == 1 || table.words.len() < threads {
        fill(&mut table.words, 0);
    } else {
        let chunk = table.words.len().div_ceil(threads);
        std::thread::scope(|scope| {
            for (k, words) in table.words.chunks_mut(chunk).enumerate() {
                let fill = &fill;
                scope.spawn(move || fill(words, k * chunk));
            }
        });
    }
    Ok(TruthTable { ground: g, table })
}

/// Both families by exhaustive evaluation: (𝕄, 𝕂).
pub fn enumerate_brute(oracle: &Oracle, config: BruteConfig) -> Result<(MinimalFamily, MinimalFamily)> {
    let table = tabulate(oracle, config)?;
    Ok(families_from_table(&table))
}

pub fn families_from_table(table: &TruthTable) -> (MinimalFamily, MinimalFamily) {
    let g = table.ground();
    let msps = MinimalFamily::from_antichain(g, FamilyKind::Msp, table.minimal_sets());
    let mbps = MinimalFamily::from_antichain(g, FamilyKind::Mbp, table.complement().minimal_sets());
    (msps, mbps)
}

/// Smallest-first walk over all masks: by cardinality, then numeric value.
struct CanonicalCursor {
    m: usize,
    size: usize,
    current: u64,
}

impl CanonicalCursor {
    fn new(m: usize) -> Self {
        CanonicalCursor {
            m,
            size: 0,
            current: 0,
        }
    }

    fn get(&self) -> Option<Subset> {
        (self.size <= self.m).then_some(Subset(self.current))
    }

    fn advance(&mut self) {
        let limit = 1u64 << self.m;
        let v = self.current;
        let next = if v == 0 {
            limit
        } else {
            // Gosper's hack: next larger value with the same popcount
            let c = v & v.wrapping_neg();
            let r = v + c;
            (((r ^ v) >> 2) / c) | r
        };
        if next < limit {
            self.current = next;
        } else {
            self.size += 1;
            self.current = if self.size == 0 { 0 } else { (1u64 << self.size) - 1 };
        }
    }
}

/// Enumerates the family of `kind` by seed, shrink and grow exploration.
///
/// Seeds are the smallest unexplored masks in canonical order. A satisfying
/// seed is shrunk with `shrink` and all supersets of the result are blocked;
/// otherwise it is grown to a maximal non-satisfying set whose subsets are
/// blocked and whose complement is a minimal break. Stops early once `limit`
/// members of the requested kind are found.
pub fn enumerate_marco(
    oracle: &Oracle,
    kind: FamilyKind,
    limit: Option<usize>,
    shrink: Algorithm,
) -> Result<MinimalFamily> {
    let g = oracle.ground();
    let m = g.size();
    if m > MARCO_CAP {
        return Err(Error::SizeCap {
            size: m,
            cap: MARCO_CAP,
        });
    }
    let full = g.full();
    let mut explored = BitTable::zeros(m);
    let mut cursor = CanonicalCursor::new(m);
    let mut found = Vec::new();
    while limit.is_none_or(|l| found.len() < l) {
        while cursor.get().is_some_and(|s| explored.get(s)) {
            cursor.advance();
        }
        let Some(seed) = cursor.get() else { break };
        if oracle.eval(seed) {
            let msp = extract_msp(oracle, seed, shrink)?.found;
            for extra in submasks(full - msp) {
                explored.set(msp | extra);
            }
            if kind == FamilyKind::Msp {
                found.push(msp);
            }
        } else {
            let coatom = grow_to_coatom(oracle, seed)?;
            for sub in submasks(coatom) {
                explored.set(sub);
            }
            if kind == FamilyKind::Mbp {
                found.push(full - coatom);
            }
        }
    }
    MinimalFamily::new(g, kind, found)
}

/// All minimal hitting sets of the family's members, as a family of the
/// dual kind.
///
/// Branches on the elements of the first unhit member in ascending order and
/// prunes any partial set in which some element no longer has a member that
/// only it hits.
pub fn minimal_hitting_sets(family: &MinimalFamily) -> Result<MinimalFamily> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let sets = family.members();
    let mut out = Vec::new();
    if sets.iter().all(|s| !s.is_empty()) {
        branch(sets, Subset::EMPTY, &mut out);
    }
    sort_canonical(&mut out);
    out.dedup();
    Ok(MinimalFamily::from_antichain(family.ground(), family.kind().dual(), out))
}

fn branch(sets: &[Subset], partial: Subset, out: &mut Vec<Subset>) {
    let Some(&unhit) = sets.iter().find(|s| (**s & partial).is_empty()) else {
        out.push(partial);
        return;
    };
    for e in unhit.indices() {
        let next = partial.with(e);
        if every_element_has_private_set(sets, next) {
            branch(sets, next, out);
        }
    }
}

fn every_element_has_private_set(sets: &[Subset], h: Subset) -> bool {
    h.indices().all(|x| {
        let only_x = Subset::singleton(x);
        sets.iter().any(|&s| s & h == only_x)
    })
}

/// Checks that each family is exactly the minimal hitting sets of the other.
pub fn check_duality(msps: &MinimalFamily, mbps: &MinimalFamily) -> Result<bool> {
    if msps.ground() != mbps.ground() {
        return Err(Error::GroundMismatch(msps.ground().size(), mbps.ground().size()));
    }
    let forward = minimal_hitting_sets(msps)?;
    let backward = minimal_hitting_sets(mbps)?;
    Ok(forward.members() == mbps.members() && backward.members() == msps.members())
}
