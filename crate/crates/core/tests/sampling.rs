use importance::enumerate::BruteConfig;
use importance::generate::{self, Kind};
use importance::indices::{banzhaf, shapley, swing_profile_brute};
use importance::rng::seeded;
use importance::sampling::{sample_banzhaf_raw, sample_shapley, SampleConfig};
use num_traits::ToPrimitive;

const INSTANCES: u64 = 100;

/// Runs the estimator on random instances and checks the Hoeffding band.
/// Each run fails with probability at most δ, so the number of runs with
/// any estimate outside ±ε stays well under `δ · runs` plus slack.
#[test]
fn shapley_estimates_cover_exact_values() {
    let mut misses = 0;
    let mut signed = 0.0;
    let mut count = 0usize;
    for k in 0..INSTANCES {
        let mut rng = seeded(1000 + k);
        let kind = Kind::ALL[(k % 5) as usize];
        let m = 3 + (k % 6) as usize;
        let oracle = generate::instance(&mut rng, kind, m).oracle().unwrap();
        let profile = swing_profile_brute(&oracle, BruteConfig::default()).unwrap();
        let exact: Vec<f64> = shapley(&profile).iter().map(|v| v.to_f64().unwrap()).collect();

        let cfg = SampleConfig::new(0.05, 0.05, k);
        let est = sample_shapley(&oracle, &cfg).unwrap();
        assert!((est.estimates.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        let worst = est
            .estimates
            .iter()
            .zip(&exact)
            .map(|(e, x)| (e - x).abs())
            .fold(0.0, f64::max);
        if worst > cfg.epsilon {
            misses += 1;
        }
        for (e, x) in est.estimates.iter().zip(&exact) {
            signed += e - x;
            count += 1;
        }
    }
    assert!(misses <= 5, "{misses} runs outside the band");
    // Unbiased estimator: the pooled signed error is tiny.
    assert!((signed / count as f64).abs() < 0.005);
}

#[test]
fn banzhaf_estimates_cover_exact_values() {
    let mut misses = 0;
    let mut runs = 0;
    for k in 0..INSTANCES {
        let mut rng = seeded(5000 + k);
        let kind = Kind::ALL[(k % 5) as usize];
        let m = 3 + (k % 6) as usize;
        let oracle = generate::instance(&mut rng, kind, m).oracle().unwrap();
        let profile = swing_profile_brute(&oracle, BruteConfig::default()).unwrap();
        let raw = banzhaf(&profile).raw;
        let cfg = SampleConfig::new(0.05, 0.05, k);
        let i = (k as usize) % m;
        let est = sample_banzhaf_raw(&oracle, i, &cfg).unwrap();
        runs += 1;
        if (est.estimates[0] - raw[i].to_f64().unwrap()).abs() > cfg.epsilon {
            misses += 1;
        }
    }
    assert!(misses <= 5, "{misses}/{runs} runs outside the band");
}
