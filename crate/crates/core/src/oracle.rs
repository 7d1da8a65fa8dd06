//! The monotone-predicate contract and the queries built on it.
//!
//! An [`Oracle`] wraps a [`Predicate`] and counts every evaluation. The
//! counter is atomic, so one oracle may be shared across worker threads and
//! the tally stays exact.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::seeded;
use crate::subset::{GroundSet, Subset};

/// A predicate over subsets of a ground set.
///
/// Implementations are expected to be monotonically increasing and
/// non-constant (false on the empty set, true on the full set). Only the
/// sampling check in [`find_monotone_violation`] enforces this.
pub trait Predicate: Send + Sync {
    fn ground(&self) -> GroundSet;
    fn holds(&self, s: Subset) -> bool;
}

impl<P: Predicate + ?Sized> Predicate for Arc<P> {
    fn ground(&self) -> GroundSet {
        (**self).ground()
    }
    fn holds(&self, s: Subset) -> bool {
        (**self).holds(s)
    }
}

/// A predicate plus a running count of how often it was evaluated.
pub struct Oracle {
    predicate: Arc<dyn Predicate>,
    calls: AtomicU64,
}

impl Oracle {
    pub fn new(predicate: impl Predicate + 'static) -> Self {
        Oracle::from_arc(Arc::new(predicate))
    }

    pub fn from_arc(predicate: Arc<dyn Predicate>) -> Self {
        Oracle {
            predicate,
            calls: AtomicU64::new(0),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.predicate.ground()
    }

    pub fn size(&self) -> usize {
        self.ground().size()
    }

    pub fn full(&self) -> Subset {
        self.ground().full()
    }

    pub fn predicate(&self) -> &Arc<dyn Predicate> {
        &self.predicate
    }

    /// Evaluates the predicate and bumps the call counter.
    ///
    /// The mask is assumed valid; use [`Oracle::cf`] for checked access.
    pub fn eval(&self, s: Subset) -> bool {
        debug_assert!(self.ground().contains(s), "mask {s:?} out of range");
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.predicate.holds(s)
    }

    /// Characteristic function: 1 where the predicate holds, else 0.
    pub fn cf(&self, s: Subset) -> Result<u8> {
        self.ground().check(s)?;
        Ok(self.eval(s) as u8)
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn reset_calls(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }

    /// Adds calls performed elsewhere (e.g. by a worker-local oracle).
    pub fn add_calls(&self, n: u64) {
        self.calls.fetch_add(n, Ordering::Relaxed);
    }

    /// A fresh oracle over the same predicate with its own counter.
    pub fn share(&self) -> Oracle {
        Oracle::from_arc(Arc::clone(&self.predicate))
    }

    /// `Q(S) = ¬P(N \ S)`. The minimal sets of `Q` are the minimal breaks
    /// of `P`. The returned oracle keeps its own call counter.
    pub fn complement(&self) -> Oracle {
        Oracle::new(Complement(Arc::clone(&self.predicate)))
    }
}

impl fmt::Debug for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Oracle")
            .field("size", &self.size())
            .field("calls", &self.calls())
            .finish()
    }
}

/// The dual predicate `S ↦ ¬P(N \ S)`.
pub struct Complement(pub Arc<dyn Predicate>);

impl Predicate for Complement {
    fn ground(&self) -> GroundSet {
        self.0.ground()
    }
    fn holds(&self, s: Subset) -> bool {
        let g = self.0.ground();
        !self.0.holds(g.complement(s))
    }
}

fn require_member(oracle: &Oracle, element: usize, s: Subset) -> Result<()> {
    let g = oracle.ground();
    g.check(s)?;
    if element >= g.size() {
        return Err(Error::ElementOutOfRange {
            element: element + 1,
            size: g.size(),
        });
    }
    if !s.has(element) {
        return Err(Error::NotMember {
            element: element + 1,
        });
    }
    Ok(())
}

/// `cf(S) − cf(S \ {i})` for `i ∈ S` (0-based `element`).
///
/// Always 0 or 1 for a monotone oracle. A negative difference means the
/// oracle is not monotone and is reported as 0.
pub fn delta(oracle: &Oracle, element: usize, s: Subset) -> Result<u8> {
    require_member(oracle, element, s)?;
    if !oracle.eval(s) {
        return Ok(0);
    }
    Ok(!oracle.eval(s.without(element)) as u8)
}

/// `P(S) ∧ ¬P(S \ {i})`.
pub fn is_critical_for_set(oracle: &Oracle, element: usize, s: Subset) -> Result<bool> {
    Ok(delta(oracle, element, s)? == 1)
}

/// `¬P(N \ B) ∧ P(N \ (B \ {i}))`.
pub fn is_critical_for_break(oracle: &Oracle, element: usize, b: Subset) -> Result<bool> {
    require_member(oracle, element, b)?;
    let g = oracle.ground();
    if oracle.eval(g.complement(b)) {
        return Ok(false);
    }
    Ok(oracle.eval(g.complement(b.without(element))))
}

/// Evidence that an oracle breaks the monotone, non-constant contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonotoneViolation {
    /// `P(∅)` holds.
    EmptySatisfies,
    /// `P(N)` fails.
    FullFails,
    /// `smaller ⊆ larger`, `P(smaller) = 1`, `P(larger) = 0`.
    Pair { smaller: Subset, larger: Subset },
}

impl fmt::Display for MonotoneViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonotoneViolation::EmptySatisfies => write!(f, "predicate holds on the empty set"),
            MonotoneViolation::FullFails => write!(f, "predicate fails on the full set"),
            MonotoneViolation::Pair { smaller, larger } => {
                write!(f, "P({smaller}) = 1 but P({larger}) = 0")
            }
        }
    }
}

/// Checks the endpoints, then draws `trials` random pairs `Y ⊆ X` and
/// returns the first violation found.
pub fn find_monotone_violation(
    oracle: &Oracle,
    trials: u64,
    rng_seed: u64,
) -> Option<MonotoneViolation> {
    let full = oracle.full();
    if oracle.eval(Subset::EMPTY) {
        return Some(MonotoneViolation::EmptySatisfies);
    }
    if !oracle.eval(full) {
        return Some(MonotoneViolation::FullFails);
    }
    let mut rng = seeded(rng_seed);
    for _ in 0..trials {
        let larger = Subset(rng.random::<u64>()) & full;
        let smaller = Subset(rng.random::<u64>()) & larger;
        if oracle.eval(smaller) && !oracle.eval(larger) {
            return Some(MonotoneViolation::Pair { smaller, larger });
        }
    }
    None
}

pub fn check_monotone_sample(oracle: &Oracle, trials: u64, rng_seed: u64) -> bool {
    find_monotone_violation(oracle, trials, rng_seed).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{ExplicitFamily, Graph, Threshold};

    fn ex1() -> Oracle {
        Oracle::new(Graph::new(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]).unwrap().dominating_set())
    }

    fn ex2() -> Oracle {
        Oracle::new(Threshold::new(16, vec![10, 6, 4, 2, 2, 1]).unwrap())
    }

    fn set(o: &Oracle, labels: &[usize]) -> Subset {
        o.ground().subset_from_labels(labels.iter().copied()).unwrap()
    }

    #[test]
    fn cf_values_and_call_count() {
        let o = ex1();
        assert_eq!(o.cf(set(&o, &[1, 2, 3])), Ok(1));
        assert_eq!(o.cf(Subset::EMPTY), Ok(0));
        assert_eq!(o.calls(), 2);
        assert!(matches!(o.cf(Subset(0b10000)), Err(Error::InvalidSubset { .. })));
        assert_eq!(o.calls(), 2);

        let t = ex2();
        assert_eq!(t.cf(set(&t, &[1, 3, 5])), Ok(1));
    }

    #[test]
    fn delta_examples() {
        let o = ex1();
        let d = set(&o, &[1, 2, 3]);
        assert_eq!(delta(&o, 2, d), Ok(1));
        assert_eq!(delta(&o, 1, d), Ok(0));
        // cf(S) = 0 forces delta = 0
        assert_eq!(delta(&o, 0, set(&o, &[1, 2])), Ok(0));
        assert_eq!(delta(&o, 3, d), Err(Error::NotMember { element: 4 }));
    }

    #[test]
    fn criticality_examples() {
        let t = ex2();
        assert!(is_critical_for_set(&t, 0, t.full()).unwrap());
        assert!(!is_critical_for_set(&t, 0, set(&t, &[1, 4, 5, 6])).unwrap());
        let o = ex1();
        assert!(is_critical_for_set(&o, 3, set(&o, &[1, 4])).unwrap());

        assert!(is_critical_for_break(&o, 2, set(&o, &[3, 4])).unwrap());
        assert!(!is_critical_for_break(&o, 0, set(&o, &[1])).unwrap());
        // P(N \ {1,2}) = P({3,4}) = 1, so nothing is critical for that break
        for i in [0, 1] {
            assert!(!is_critical_for_break(&o, i, set(&o, &[1, 2])).unwrap());
        }
    }

    #[test]
    fn delta_matches_criticality_exhaustively() {
        let o = ex1();
        for bits in 0..16u64 {
            for i in Subset(bits).indices() {
                let d = delta(&o, i, Subset(bits)).unwrap();
                let c = o.eval(Subset(bits)) && !o.eval(Subset(bits).without(i));
                assert_eq!(d == 1, c);
            }
        }
    }

    struct BrokenFull;
    impl Predicate for BrokenFull {
        fn ground(&self) -> GroundSet {
            GroundSet::new(4).unwrap()
        }
        fn holds(&self, s: Subset) -> bool {
            s.len() == 2
        }
    }

    struct NotMonotone;
    impl Predicate for NotMonotone {
        fn ground(&self) -> GroundSet {
            GroundSet::new(5).unwrap()
        }
        fn holds(&self, s: Subset) -> bool {
            s.len() == 1 || s.len() == 5
        }
    }

    #[test]
    fn monotone_sampling() {
        assert!(check_monotone_sample(&ex2(), 1000, 7));
        let fam = ExplicitFamily::from_labels(4, &[vec![3], vec![1, 4], vec![2, 4]]).unwrap();
        assert!(check_monotone_sample(&Oracle::new(fam), 1000, 7));
        assert_eq!(
            find_monotone_violation(&Oracle::new(BrokenFull), 1000, 7),
            Some(MonotoneViolation::FullFails)
        );
        match find_monotone_violation(&Oracle::new(NotMonotone), 1000, 7) {
            Some(MonotoneViolation::Pair { smaller, larger }) => {
                assert!(smaller.is_subset_of(larger));
                assert_eq!(smaller.len(), 1);
            }
            other => panic!("expected a pair witness, got {other:?}"),
        }
    }

    #[test]
    fn complement_flips_endpoints() {
        let o = ex1();
        let q = o.complement();
        assert!(!q.eval(Subset::EMPTY));
        assert!(q.eval(q.full()));
        assert!(!q.eval(set(&o, &[1, 2, 4])));
        assert_eq!(o.calls(), 0);
    }
}
