//! Monte-Carlo estimates of Shapley-Shubik (random permutations, crediting
//! the pivotal element) and raw Banzhaf (random coalitions), with sample
//! counts from Hoeffding's inequality.
//!
//! Randomness comes from [`crate::rng`]. With `workers > 1` the budget is
//! split evenly (the first `T mod workers` workers take one extra sample)
//! and worker `w` draws from substream `w`; counts are summed, so results
//! depend on the seed and the worker count only.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::oracle::Oracle;
use crate::rng::{shuffle, substream};
use crate::subset::Subset;

pub const DEFAULT_MAX_SAMPLES: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub max_samples: Option<u64>,
    pub rng_seed: u64,
    pub workers: usize,
}

impl SampleConfig {
    pub fn new(epsilon: f64, delta: f64, rng_seed: u64) -> Self {
        SampleConfig {
            epsilon,
            delta,
            max_samples: Some(DEFAULT_MAX_SAMPLES),
            rng_seed,
            workers: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let open = |x: f64| x > 0.0 && x < 1.0;
        if !open(self.epsilon) {
            return Err(Error::InvalidConfig(format!("epsilon {} not in (0,1)", self.epsilon)));
        }
        if !open(self.delta) {
            return Err(Error::InvalidConfig(format!("delta {} not in (0,1)", self.delta)));
        }
        if self.max_samples == Some(0) {
            return Err(Error::InvalidConfig("max_samples must be positive".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidConfig("at least one worker is needed".into()));
        }
        Ok(())
    }

    /// `ceil(ln(2k/δ) / (2ε²))`: samples giving every one of `k` estimates
    /// absolute error at most ε simultaneously with probability ≥ 1 − δ.
    pub fn hoeffding_samples(&self, estimates: usize) -> u64 {
        (self.log_term(estimates) / (2.0 * self.epsilon * self.epsilon)).ceil() as u64
    }

    fn log_term(&self, estimates: usize) -> f64 {
        (2.0 * estimates as f64 / self.delta).ln()
    }

    /// Samples to draw and the half-width they guarantee.
    fn budget(&self, estimates: usize) -> (u64, f64) {
        let needed = self.hoeffding_samples(estimates).max(1);
        match self.max_samples {
            Some(cap) if cap < needed => {
                let hw = (self.log_term(estimates) / (2.0 * cap as f64)).sqrt();
                (cap, hw)
            }
            _ => (needed, self.epsilon),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleEstimate {
    /// 0-based indices of the estimated elements.
    pub elements: Vec<usize>,
    pub estimates: Vec<f64>,
    pub half_widths: Vec<f64>,
    pub samples_used: u64,
    pub rng_seed: u64,
}

fn split_budget(total: u64, workers: usize) -> Vec<u64> {
    let w = workers as u64;
    (0..w).map(|k| total / w + u64::from(k < total % w)).collect()
}

fn run_workers<F>(cfg: &SampleConfig, total: u64, width: usize, job: F) -> Vec<u64>
where
    F: Fn(&mut dyn RngCore, u64, &mut [u64]) + Sync,
{
    let shares = split_budget(total, cfg.workers);
    let mut partial: Vec<Vec<u64>> = vec![vec![0; width]; shares.len()];
    std::thread::scope(|scope| {
        for (k, (share, counts)) in shares.iter().zip(partial.iter_mut()).enumerate() {
            let job = &job;
            let seed = cfg.rng_seed;
            let share = *share;
            let mut run = move || {
                let mut rng = substream(seed, k as u64);
                job(&mut rng, share, counts);
            };
            if cfg.workers == 1 {
                run();
            } else {
                scope.spawn(run);
            }
        }
    });
    partial.into_iter().fold(vec![0; width], |mut acc, p| {
        acc.iter_mut().zip(p).for_each(|(a, b)| *a += b);
        acc
    })
}

/// Shapley-Shubik estimate from random orderings of the ground set. Each
/// ordering credits the element whose arrival first makes the predicate
/// hold, so the estimates sum to one.
pub fn sample_shapley(oracle: &Oracle, cfg: &SampleConfig) -> Result<SampleEstimate> {
    cfg.validate()?;
    let m = oracle.size();
    let (total, half_width) = cfg.budget(m);
    let credits = run_workers(cfg, total, m, |rng, share, counts| {
        let mut order: Vec<usize> = (0..m).collect();
        for _ in 0..share {
            shuffle(rng, &mut order);
            let mut prefix = Subset::EMPTY;
            for &e in &order {
                prefix = prefix.with(e);
                if oracle.eval(prefix) {
                    counts[e] += 1;
                    break;
                }
            }
        }
    });
    Ok(SampleEstimate {
        elements: (0..m).collect(),
        estimates: credits.iter().map(|&c| c as f64 / total as f64).collect(),
        half_widths: vec![half_width; m],
        samples_used: total,
        rng_seed: cfg.rng_seed,
    })
}

/// Raw Banzhaf estimate for one element (0-based): the fraction of uniform
/// random `S ⊆ N \ {i}` with `P(S ∪ {i}) ∧ ¬P(S)`.
pub fn sample_banzhaf_raw(oracle: &Oracle, element: usize, cfg: &SampleConfig) -> Result<SampleEstimate> {
    cfg.validate()?;
    let g = oracle.ground();
    g.index_of(element + 1)?;
    let (total, half_width) = cfg.budget(1);
    let others = g.full().without(element);
    let swings = run_workers(cfg, total, 1, |rng, share, counts| {
        for _ in 0..share {
            let s = Subset(rng.next_u64()) & others;
            if oracle.eval(s.with(element)) && !oracle.eval(s) {
                counts[0] += 1;
            }
        }
    });
    Ok(SampleEstimate {
        elements: vec![element],
        estimates: vec![swings[0] as f64 / total as f64],
        half_widths: vec![half_width],
        samples_used: total,
        rng_seed: cfg.rng_seed,
    })
}

/// [`sample_banzhaf_raw`] for every element, each run from the same seed.
/// The guarantee is per element; `samples_used` is the per-element count.
pub fn sample_banzhaf_raw_all(oracle: &Oracle, cfg: &SampleConfig) -> Result<SampleEstimate> {
    cfg.validate()?;
    let mut out = SampleEstimate {
        elements: Vec::new(),
        estimates: Vec::new(),
        half_widths: Vec::new(),
        samples_used: 0,
        rng_seed: cfg.rng_seed,
    };
    for i in 0..oracle.size() {
        let e = sample_banzhaf_raw(oracle, i, cfg)?;
        out.elements.push(i);
        out.estimates.extend(e.estimates);
        out.half_widths.extend(e.half_widths);
        out.samples_used = e.samples_used;
    }
    Ok(out)
}
