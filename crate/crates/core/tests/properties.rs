use importance::enumerate::{
    check_duality, enumerate_brute, enumerate_marco, minimal_hitting_sets, BruteConfig,
};
use importance::family::sort_canonical;
use importance::generate::{self, Kind};
use importance::indices::{
    banzhaf, compute_report, deegan_packel, shapley, swing_profile_brute, swing_profile_from_family,
    swing_profile_threshold_dp, Column, IndexKind, Method, ReportRequest,
};
use importance::instances::{ExplicitFamily, Instance, Threshold};
use importance::io::{parse_family, render_family};
use importance::minimal::{extract_mbp, extract_msp, verify_mbp, verify_msp, Algorithm};
use importance::oracle::{check_monotone_sample, delta, is_critical_for_set};
use importance::rng::seeded;
use importance::{FamilyKind, MinimalFamily, Oracle, Predicate, Subset};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = Kind> {
    prop::sample::select(Kind::ALL.to_vec())
}

fn instance(kind: Kind, m: usize, seed: u64) -> Instance {
    generate::instance(&mut seeded(seed), kind, m)
}

/// Exhaustive filter for minimal hitting sets.
fn mhs_exhaustive(f: &MinimalFamily) -> Vec<Subset> {
    let hits = |h: Subset| f.members().iter().all(|&s| !(s & h).is_empty());
    let mut out: Vec<Subset> = (0..f.ground().power_set_len())
        .map(Subset)
        .filter(|&h| hits(h) && h.indices().all(|i| !hits(h.without(i))))
        .collect();
    sort_canonical(&mut out);
    out
}

fn is_canonical_antichain(f: &MinimalFamily) -> bool {
    let ms = f.members();
    ms.windows(2).all(|w| w[0].canonical_key() < w[1].canonical_key())
        && ms.iter().enumerate().all(|(i, a)| {
            ms.iter().enumerate().all(|(j, b)| i == j || !a.is_subset_of(*b))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_oracles_are_monotone(kind in kind(), m in 2usize..=12, seed: u64) {
        let oracle = instance(kind, m, seed).oracle().unwrap();
        prop_assert!(check_monotone_sample(&oracle, 500, seed));
    }

    #[test]
    fn delta_agrees_with_criticality(kind in kind(), m in 2usize..=8, seed: u64) {
        let oracle = instance(kind, m, seed).oracle().unwrap();
        for bits in 0..oracle.ground().power_set_len() {
            let s = Subset(bits);
            for i in s.indices() {
                let d = delta(&oracle, i, s).unwrap();
                prop_assert!(d <= 1);
                prop_assert_eq!(d == 1, is_critical_for_set(&oracle, i, s).unwrap());
            }
        }
    }

    #[test]
    fn marco_matches_brute(kind in kind(), m in 2usize..=11, seed: u64, algo in 0usize..4) {
        let oracle = instance(kind, m, seed).oracle().unwrap();
        let (msps, mbps) = enumerate_brute(&oracle, BruteConfig::default()).unwrap();
        let shrink = Algorithm::ALL[algo];
        prop_assert_eq!(&enumerate_marco(&oracle, FamilyKind::Msp, None, shrink).unwrap(), &msps);
        prop_assert_eq!(&enumerate_marco(&oracle, FamilyKind::Mbp, None, shrink).unwrap(), &mbps);
        prop_assert!(is_canonical_antichain(&msps));
        prop_assert!(is_canonical_antichain(&mbps));
        prop_assert!(check_duality(&msps, &mbps).unwrap());
    }

    #[test]
    fn marco_limit_returns_true_members(kind in kind(), m in 2usize..=10, seed: u64, limit in 1usize..4) {
        let oracle = instance(kind, m, seed).oracle().unwrap();
        let (msps, _) = enumerate_brute(&oracle, BruteConfig::default()).unwrap();
        let some = enumerate_marco(&oracle, FamilyKind::Msp, Some(limit), Algorithm::QuickXplain).unwrap();
        prop_assert_eq!(some.len(), limit.min(msps.len()));
        for s in some.members() {
            prop_assert!(msps.members().contains(s));
        }
    }

    #[test]
    fn extraction_is_sound(kind in kind(), m in 2usize..=12, seed: u64) {
        let oracle = instance(kind, m, seed).oracle().unwrap();
        let (msps, mbps) = enumerate_brute(&oracle, BruteConfig::default()).unwrap();
        let mut rng = seeded(seed ^ 0x5eed);
        let seed_set = {
            use rand::Rng;
            let candidate = Subset(rng.random::<u64>()) & oracle.full();
            if oracle.eval(candidate) { candidate } else { oracle.full() }
        };
        for algo in Algorithm::ALL {
            oracle.reset_calls();
            let r = extract_msp(&oracle, seed_set, algo).unwrap();
            prop_assert_eq!(r.oracle_calls, oracle.calls());
            prop_assert!(r.found.is_subset_of(seed_set));
            prop_assert!(msps.members().contains(&r.found), "{} gave {}", algo, r.found);
            prop_assert!(verify_msp(&oracle, r.found));
            if algo == Algorithm::Deletion {
                prop_assert_eq!(r.oracle_calls, seed_set.len() as u64 + 1);
            }
            let b = extract_mbp(&oracle, algo);
            prop_assert!(mbps.members().contains(&b.found));
            prop_assert!(verify_mbp(&oracle, b.found));
        }
    }

    #[test]
    fn hitting_sets_match_exhaustive_and_involute(m in 2usize..=10, seed: u64) {
        let fam = generate::antichain(&mut seeded(seed), m);
        let f = MinimalFamily::new(fam.ground(), FamilyKind::Msp, fam.minimal_sets().to_vec()).unwrap();
        let dual = minimal_hitting_sets(&f).unwrap();
        prop_assert_eq!(dual.members(), &mhs_exhaustive(&f)[..]);
        prop_assert_eq!(dual.kind(), FamilyKind::Mbp);
        prop_assert_eq!(minimal_hitting_sets(&dual).unwrap(), f);
    }

    #[test]
    fn explicit_family_round_trips(m in 2usize..=12, seed: u64) {
        let fam = generate::antichain(&mut seeded(seed), m);
        let oracle = Oracle::new(fam.clone());
        let (msps, _) = enumerate_brute(&oracle, BruteConfig::default()).unwrap();
        let mut expected = fam.minimal_sets().to_vec();
        sort_canonical(&mut expected);
        prop_assert_eq!(msps.members(), &expected[..]);
        prop_assert_eq!(parse_family(&render_family(&msps), m, FamilyKind::Msp).unwrap(), msps);
    }

    #[test]
    fn double_complement_is_identity(kind in kind(), m in 2usize..=12, seed: u64) {
        let oracle = instance(kind, m, seed).oracle().unwrap();
        let twice = oracle.complement().complement();
        for bits in 0..oracle.ground().power_set_len() {
            prop_assert_eq!(oracle.eval(Subset(bits)), twice.eval(Subset(bits)));
        }
    }

    #[test]
    fn profile_producers_agree(kind in kind(), m in 1usize..=10, seed: u64) {
        let m = if kind == Kind::VertexCover { m.max(2) } else { m };
        let inst = instance(kind, m, seed);
        let oracle = inst.oracle().unwrap();
        let brute = swing_profile_brute(&oracle, BruteConfig::default()).unwrap();
        let (msps, _) = enumerate_brute(&oracle, BruteConfig::default()).unwrap();
        prop_assert_eq!(&swing_profile_from_family(&msps, 20).unwrap(), &brute);
        if let Instance::Threshold(t) = &inst {
            prop_assert_eq!(&swing_profile_threshold_dp(t, 20).unwrap(), &brute);
        }
        // σ_i > 0 exactly for elements of some minimal set
        let support = msps.support();
        for (i, s) in brute.sigma().iter().enumerate() {
            prop_assert_eq!(*s > 0, support.has(i));
        }
        let by_size_sum: Vec<u64> = brute.by_size().iter().map(|r| r.iter().sum()).collect();
        prop_assert_eq!(by_size_sum, brute.sigma());
    }

    #[test]
    fn indices_are_normalized_and_dummies_vanish(kind in kind(), m in 2usize..=10, seed: u64) {
        let oracle = instance(kind, m, seed).oracle().unwrap();
        let profile = swing_profile_brute(&oracle, BruteConfig::default()).unwrap();
        let (msps, _) = enumerate_brute(&oracle, BruteConfig::default()).unwrap();
        let s = shapley(&profile);
        let b = banzhaf(&profile);
        let d = deegan_packel(&msps).unwrap();
        let one = BigRational::one();
        prop_assert_eq!(s.iter().sum::<BigRational>(), one.clone());
        prop_assert_eq!(b.norm.iter().sum::<BigRational>(), one.clone());
        prop_assert_eq!(d.iter().sum::<BigRational>(), one);
        let frac = b.frac.unwrap();
        for i in 0..m {
            let cols = [&s[i], &b.raw[i], &frac[i], &b.norm[i], &d[i]];
            prop_assert!(cols.iter().all(|v| **v >= BigRational::zero()));
            if msps.restrict(i).unwrap().is_empty() {
                prop_assert!(cols.iter().all(|v| v.is_zero()));
            }
        }
    }

    #[test]
    fn scaling_a_threshold_game_keeps_the_profile(m in 1usize..=10, seed: u64, factor in 2u64..6) {
        let t = generate::threshold(&mut seeded(seed), m);
        let scaled = Threshold::new(
            t.quota() * factor,
            t.weights().iter().map(|w| w * factor).collect(),
        ).unwrap();
        prop_assert_eq!(
            swing_profile_threshold_dp(&t, 20).unwrap(),
            swing_profile_threshold_dp(&scaled, 20).unwrap()
        );
    }

    #[test]
    fn report_methods_agree(kind in kind(), m in 2usize..=9, seed: u64) {
        let inst = instance(kind, m, seed);
        let mut req = ReportRequest { method: Method::Brute, ..ReportRequest::default() };
        let brute = compute_report(&inst, None, &req).unwrap();
        req.method = Method::Family;
        prop_assert_eq!(&compute_report(&inst, None, &req).unwrap().columns, &brute.columns);
        if kind == Kind::Threshold {
            req.method = Method::ThresholdDp;
            prop_assert_eq!(&compute_report(&inst, None, &req).unwrap().columns, &brute.columns);
        }
        prop_assert!(brute.columns.iter().all(|(_, c)| matches!(c, Column::Exact(_))));
    }
}

#[test]
fn explicit_family_matches_threshold_game() {
    let threshold = Instance::Threshold(Threshold::new(16, vec![10, 6, 4, 2, 2, 1]).unwrap());
    let family = Instance::MonotoneFamily(
        ExplicitFamily::from_labels(6, &[vec![1, 2], vec![1, 3, 4], vec![1, 3, 5]]).unwrap(),
    );
    let a = compute_report(&threshold, None, &ReportRequest::default()).unwrap();
    let b = compute_report(&family, None, &ReportRequest::default()).unwrap();
    for kind in IndexKind::ALL {
        assert_eq!(a.values(kind), b.values(kind), "{kind}");
    }
}

#[test]
fn veto_player_has_full_fractional_banzhaf() {
    let oracle = Oracle::new(Threshold::new(16, vec![10, 6, 4, 2, 2, 1]).unwrap());
    let (msps, _) = enumerate_brute(&oracle, BruteConfig::default()).unwrap();
    let profile = swing_profile_brute(&oracle, BruteConfig::default()).unwrap();
    let frac = banzhaf(&profile).frac.unwrap();
    assert!(msps.members().iter().all(|s| s.has(0)));
    assert_eq!(frac[0], BigRational::one());
    assert_eq!(profile.sigma()[0], profile.crit_containing_sets().unwrap());
}
