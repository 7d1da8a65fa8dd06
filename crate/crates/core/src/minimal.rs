//! Single minimal-set extraction: Deletion, QuickXplain, Progression and
//! Dichotomic, plus the linear-query minimality checks.
//!
//! All algorithms scan elements in ascending label order. Divide-and-conquer
//! splits give the extra element of an odd-sized range to the lower half.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Deletion,
    QuickXplain,
    Progression,
    Dichotomic,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Deletion,
        Algorithm::QuickXplain,
        Algorithm::Progression,
        Algorithm::Dichotomic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Deletion => "deletion",
            Algorithm::QuickXplain => "quickxplain",
            Algorithm::Progression => "progression",
            Algorithm::Dichotomic => "dichotomic",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub found: Subset,
    /// Every evaluation made, including the precondition check on the seed.
    pub oracle_calls: u64,
    pub algorithm: Algorithm,
}

/// Local call tally on top of the oracle's own counter.
struct Counted<'a> {
    oracle: &'a Oracle,
    calls: u64,
}

impl Counted<'_> {
    fn eval(&mut self, s: Subset) -> bool {
        self.calls += 1;
        self.oracle.eval(s)
    }
}

/// `P(M) ∧ ∀t∈M. ¬P(M \ {t})`, always using exactly `1 + |M|` calls.
pub fn verify_msp(oracle: &Oracle, m_set: Subset) -> bool {
    if !oracle.ground().contains(m_set) {
        return false;
    }
    let holds = oracle.eval(m_set);
    let mut minimal = true;
    for t in m_set.indices() {
        minimal &= !oracle.eval(m_set.without(t));
    }
    holds && minimal
}

/// `¬P(N \ B) ∧ ∀t∈B. P(N \ (B \ {t}))`, always using exactly `1 + |B|` calls.
pub fn verify_mbp(oracle: &Oracle, b_set: Subset) -> bool {
    let g = oracle.ground();
    if !g.contains(b_set) {
        return false;
    }
    let breaks = !oracle.eval(g.complement(b_set));
    let mut minimal = true;
    for t in b_set.indices() {
        minimal &= oracle.eval(g.complement(b_set.without(t)));
    }
    breaks && minimal
}

fn start(oracle: &Oracle, seed: Subset) -> Result<Counted<'_>> {
    oracle.ground().check(seed)?;
    let mut c = Counted { oracle, calls: 0 };
    if !c.eval(seed) {
        return Err(Error::SeedNotSatisfying);
    }
    Ok(c)
}

pub fn extract_msp(oracle: &Oracle, seed: Subset, algorithm: Algorithm) -> Result<Extraction> {
    let mut c = start(oracle, seed)?;
    let found = match algorithm {
        Algorithm::Deletion => deletion(&mut c, seed),
        Algorithm::QuickXplain => quickxplain(&mut c, seed),
        Algorithm::Progression => prefix_shrink(&mut c, seed, true),
        Algorithm::Dichotomic => prefix_shrink(&mut c, seed, false),
    };
    Ok(Extraction {
        found,
        oracle_calls: c.calls,
        algorithm,
    })
}

pub fn extract_msp_deletion(oracle: &Oracle, seed: Subset) -> Result<Extraction> {
    extract_msp(oracle, seed, Algorithm::Deletion)
}

pub fn extract_msp_quickxplain(oracle: &Oracle, seed: Subset) -> Result<Extraction> {
    extract_msp(oracle, seed, Algorithm::QuickXplain)
}

pub fn extract_msp_progression(oracle: &Oracle, seed: Subset) -> Result<Extraction> {
    extract_msp(oracle, seed, Algorithm::Progression)
}

pub fn extract_msp_dichotomic(oracle: &Oracle, seed: Subset) -> Result<Extraction> {
    extract_msp(oracle, seed, Algorithm::Dichotomic)
}

/// One minimal break, found as a minimal set of the complemented predicate
/// seeded with the full set. Calls are made on `oracle`'s predicate but
/// tallied on the complement's counter and reported in the result.
pub fn extract_mbp(oracle: &Oracle, algorithm: Algorithm) -> Extraction {
    extract_mbp_from(oracle, oracle.full(), algorithm)
        .expect("the full set is always a break of a non-constant predicate")
}

/// As [`extract_mbp`], shrinking a given break `seed` (`¬P(N \ seed)` required).
pub fn extract_mbp_from(oracle: &Oracle, seed: Subset, algorithm: Algorithm) -> Result<Extraction> {
    let complement = oracle.complement();
    let r = extract_msp(&complement, seed, algorithm)?;
    oracle.add_calls(r.oracle_calls);
    Ok(r)
}

/// Grows a non-satisfying `seed` to a maximal non-satisfying superset.
/// Its complement is a minimal break.
pub fn grow_to_coatom(oracle: &Oracle, seed: Subset) -> Result<Subset> {
    let g = oracle.ground();
    g.check(seed)?;
    if oracle.eval(seed) {
        return Err(Error::SeedSatisfying);
    }
    let mut grown = seed;
    for e in g.complement(seed).indices() {
        if !oracle.eval(grown.with(e)) {
            grown = grown.with(e);
        }
    }
    Ok(grown)
}

fn deletion(c: &mut Counted, seed: Subset) -> Subset {
    let mut current = seed;
    for e in seed.indices() {
        let candidate = current.without(e);
        if c.eval(candidate) {
            current = candidate;
        }
    }
    current
}

fn quickxplain(c: &mut Counted, seed: Subset) -> Subset {
    let elems: Vec<usize> = seed.indices().collect();
    if elems.is_empty() {
        return Subset::EMPTY;
    }
    qx(c, Subset::EMPTY, false, &elems)
}

fn mask_of(elems: &[usize]) -> Subset {
    elems.iter().fold(Subset::EMPTY, |s, &e| s.with(e))
}

// `background` is known to fail when `added` is false, so the test is skipped.
fn qx(c: &mut Counted, background: Subset, added: bool, elems: &[usize]) -> Subset {
    if added && c.eval(background) {
        return Subset::EMPTY;
    }
    if elems.len() == 1 {
        return Subset::singleton(elems[0]);
    }
    let (lower, upper) = elems.split_at(elems.len().div_ceil(2));
    let upper_part = qx(c, background | mask_of(lower), true, upper);
    let lower_part = qx(c, background | upper_part, !upper_part.is_empty(), lower);
    lower_part | upper_part
}

/// Shared skeleton of Progression and Dichotomic. Each round finds the
/// shortest prefix of the remaining candidates that, joined with the kept
/// elements, satisfies the predicate; the last element of that prefix is
/// necessary and everything after it is dropped.
fn prefix_shrink(c: &mut Counted, seed: Subset, geometric: bool) -> Subset {
    let mut kept = Subset::EMPTY;
    let mut rest: Vec<usize> = seed.indices().collect();
    while !rest.is_empty() {
        let cut = shortest_prefix(c, kept, &rest, geometric);
        if cut == 0 {
            break;
        }
        kept = kept.with(rest[cut - 1]);
        rest.truncate(cut - 1);
    }
    kept
}

/// Smallest `l` in `0..=rest.len()` with `P(kept ∪ rest[..l])`, given that
/// `l = rest.len()` satisfies.
fn shortest_prefix(c: &mut Counted, kept: Subset, rest: &[usize], geometric: bool) -> usize {
    let mut test = |l: usize| c.eval(kept | mask_of(&rest[..l]));
    let mut lo = 0;
    let mut hi = rest.len();
    if geometric {
        let mut step = 1;
        while step < rest.len() {
            if test(step) {
                hi = step;
                break;
            }
            lo = step + 1;
            step *= 2;
        }
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if test(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{ExplicitFamily, Graph, Threshold};
    use crate::subset::submasks;

    fn ex1() -> Oracle {
        Oracle::new(Graph::new(4, &[(1, 2), (1, 3), (2, 3), (3, 4)]).unwrap().dominating_set())
    }

    fn ex2() -> Oracle {
        Oracle::new(Threshold::new(16, vec![10, 6, 4, 2, 2, 1]).unwrap())
    }

    fn family(n: usize, sets: &[Vec<usize>]) -> Oracle {
        Oracle::new(ExplicitFamily::from_labels(n, sets).unwrap())
    }

    fn s(o: &Oracle, labels: &[usize]) -> Subset {
        o.ground().subset_from_labels(labels.iter().copied()).unwrap()
    }

    #[test]
    fn verify_examples() {
        let o = ex1();
        assert!(verify_msp(&o, s(&o, &[1, 4])));
        assert!(!verify_msp(&o, s(&o, &[1, 2, 3])));
        let t = ex2();
        assert!(verify_msp(&t, s(&t, &[1, 3, 4])));

        assert!(verify_mbp(&o, s(&o, &[3, 4])));
        assert!(!verify_mbp(&o, s(&o, &[3])));
        assert!(!verify_mbp(&o, Subset::EMPTY));
        assert!(!verify_mbp(&t, Subset::EMPTY));
    }

    #[test]
    fn verify_uses_linear_calls() {
        let o = ex1();
        let m = s(&o, &[1, 2, 3]);
        verify_msp(&o, m);
        assert_eq!(o.calls(), 4);
        o.reset_calls();
        verify_mbp(&o, s(&o, &[3]));
        assert_eq!(o.calls(), 2);
    }

    /// The linear test agrees with "no proper subset satisfies" for every
    /// subset of small monotone instances.
    #[test]
    fn linear_and_quantified_minimality_agree() {
        for o in [ex1(), ex2(), family(5, &[vec![1, 2], vec![2, 3, 4], vec![5]])] {
            for bits in 0..o.ground().power_set_len() {
                let m = Subset(bits);
                let quantified = o.eval(m) && submasks(m).skip(1).all(|sub| !o.eval(sub));
                assert_eq!(verify_msp(&o, m), quantified, "{m}");
            }
        }
    }

    #[test]
    fn deletion_examples() {
        let o = ex1();
        let r = extract_msp_deletion(&o, o.full()).unwrap();
        assert_eq!(r.found, s(&o, &[3]));
        assert_eq!(r.oracle_calls, 5);
        assert_eq!(o.calls(), 5);

        let t = ex2();
        let r = extract_msp_deletion(&t, s(&t, &[1, 2])).unwrap();
        assert_eq!(r.found, s(&t, &[1, 2]));
        assert_eq!(r.oracle_calls, 3);

        let whole = family(5, &[vec![1, 2, 3, 4, 5]]);
        assert_eq!(extract_msp_deletion(&whole, whole.full()).unwrap().found, whole.full());
    }

    #[test]
    fn every_algorithm_finds_a_known_minimal_set() {
        let table2 = [vec![1, 2], vec![1, 3, 4], vec![1, 3, 5]];
        for algo in Algorithm::ALL {
            let o = ex1();
            let r = extract_msp(&o, o.full(), algo).unwrap();
            assert!(verify_msp(&o, r.found), "{algo}");

            let t = ex2();
            let r = extract_msp(&t, t.full(), algo).unwrap();
            assert!(table2.contains(&r.found.labels()), "{algo}: {}", r.found);

            let single = family(6, &[vec![5]]);
            let r = extract_msp(&single, single.full(), algo).unwrap();
            assert_eq!(r.found.labels(), vec![5], "{algo}");
        }
    }

    #[test]
    fn rejects_non_satisfying_seed() {
        let o = ex1();
        for algo in Algorithm::ALL {
            assert_eq!(extract_msp(&o, s(&o, &[1, 2]), algo), Err(Error::SeedNotSatisfying));
        }
        assert!(matches!(
            extract_msp(&o, Subset(1 << 9), Algorithm::Deletion),
            Err(Error::InvalidSubset { .. })
        ));
    }

    #[test]
    fn minimal_breaks() {
        for algo in Algorithm::ALL {
            let o = ex1();
            let r = extract_mbp(&o, algo);
            assert!(verify_mbp(&o, r.found), "{algo}");

            let pair = family(2, &[vec![1], vec![2]]);
            assert_eq!(extract_mbp(&pair, algo).found.labels(), vec![1, 2]);
        }
        // {1} is a break of the penalty game: 6+4+2+2+1 = 15 < 16
        let t = ex2();
        assert!(verify_mbp(&t, s(&t, &[1])));
        let r = extract_mbp_from(&t, s(&t, &[1, 2]), Algorithm::Deletion).unwrap();
        assert_eq!(r.found.labels(), vec![1]);
    }

    #[test]
    fn coatoms() {
        let o = ex1();
        let t = grow_to_coatom(&o, Subset::EMPTY).unwrap();
        assert!(verify_mbp(&o, o.ground().complement(t)));

        let p = ex2();
        let seed = s(&p, &[2, 3, 4, 5, 6]);
        assert_eq!(grow_to_coatom(&p, seed), Ok(seed));

        let f = family(2, &[vec![1, 2]]);
        let one = s(&f, &[1]);
        assert_eq!(grow_to_coatom(&f, one), Ok(one));
        assert_eq!(grow_to_coatom(&f, f.full()), Err(Error::SeedSatisfying));
    }
}
