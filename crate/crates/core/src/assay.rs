//! Ensemble measurement of the gate error in a sparsely filled lattice:
//! repeated CNOT-and-flush cycles, the deterministic mean counts, a seeded
//! stochastic run and the error estimate from the decline in target atoms.
//!
//! Each cycle a paired gate fails with probability `P`. A fraction `α` of
//! failures lose the control but keep the target, which then sits unpaired
//! until the next cycle's flush; the rest (both lost, or wrong logic state)
//! remove the target at once. A fraction `flip_probability` of the unpaired
//! targets escapes each flush.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssayConfig {
    /// Initial number of control-target pairs.
    pub n_pairs: u64,
    pub true_error: f64,
    /// Fraction of failures that lose the control but keep the target.
    pub alpha: f64,
    pub n_cycles: usize,
    pub seed: u64,
    /// Fraction of unpaired targets surviving each flush.
    pub flip_probability: f64,
    /// Of the failures that are not partner losses, the fraction losing both atoms.
    pub both_lost_fraction: f64,
}

impl AssayConfig {
    pub fn new(n_pairs: u64, true_error: f64, alpha: f64, n_cycles: usize) -> Result<Self> {
        let c = Self {
            n_pairs,
            true_error,
            alpha,
            n_cycles,
            seed: 0,
            flip_probability: 0.0,
            both_lost_fraction: 0.5,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_flip_probability(mut self, p: f64) -> Self {
        self.flip_probability = p;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_pairs == 0 {
            return Err(invalid("n_pairs", 0.0, "must be >= 1"));
        }
        if self.n_cycles == 0 {
            return Err(invalid("n_cycles", 0.0, "must be >= 1"));
        }
        for (name, p) in [
            ("true_error", self.true_error),
            ("alpha", self.alpha),
            ("flip_probability", self.flip_probability),
            ("both_lost_fraction", self.both_lost_fraction),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(name, p, "must lie in [0, 1]"));
            }
        }
        Ok(())
    }
}

/// Counts after one CNOT-and-flush cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleCounts {
    /// 1-based cycle index.
    pub cycle: usize,
    pub paired: f64,
    /// Targets orphaned in this cycle.
    pub new_unpaired: f64,
    /// All unpaired targets present after this cycle.
    pub unpaired: f64,
    pub both_lost: f64,
    pub wrong_state: f64,
    /// Target-species atoms remaining: paired plus unpaired.
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssayRecord {
    pub initial_pairs: f64,
    pub cycles: Vec<CycleCounts>,
}

/// Mean counts of the cycle recursion.
pub fn expected_counts(config: &AssayConfig) -> Result<AssayRecord> {
    config.validate()?;
    let p = config.true_error;
    let mut paired = config.n_pairs as f64;
    let mut unpaired = 0.0;
    let mut cycles = Vec::with_capacity(config.n_cycles);
    for cycle in 1..=config.n_cycles {
        let failures = p * paired;
        let orphaned = config.alpha * failures;
        let removed = failures - orphaned;
        paired -= failures;
        unpaired = orphaned + config.flip_probability * unpaired;
        cycles.push(CycleCounts {
            cycle,
            paired,
            new_unpaired: orphaned,
            unpaired,
            both_lost: config.both_lost_fraction * removed,
            wrong_state: (1.0 - config.both_lost_fraction) * removed,
            total: paired + unpaired,
        });
    }
    Ok(AssayRecord {
        initial_pairs: config.n_pairs as f64,
        cycles,
    })
}

fn binomial(rng: &mut ChaCha8Rng, n: u64, p: f64) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    Binomial::new(n, p)
        .expect("p checked to lie in (0, 1)")
        .sample(rng)
}

/// Stochastic run with per-pair binomial failures, deterministic in `seed`.
pub fn simulate(config: &AssayConfig) -> Result<AssayRecord> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut paired = config.n_pairs;
    let mut unpaired = 0u64;
    let mut cycles = Vec::with_capacity(config.n_cycles);
    for cycle in 1..=config.n_cycles {
        let failures = binomial(&mut rng, paired, config.true_error);
        let orphaned = binomial(&mut rng, failures, config.alpha);
        let removed = failures - orphaned;
        let both_lost = binomial(&mut rng, removed, config.both_lost_fraction);
        let kept = binomial(&mut rng, unpaired, config.flip_probability);
        paired -= failures;
        unpaired = orphaned + kept;
        cycles.push(CycleCounts {
            cycle,
            paired: paired as f64,
            new_unpaired: orphaned as f64,
            unpaired: unpaired as f64,
            both_lost: both_lost as f64,
            wrong_state: (removed - both_lost) as f64,
            total: (paired + unpaired) as f64,
        });
    }
    Ok(AssayRecord {
        initial_pairs: config.n_pairs as f64,
        cycles,
    })
}

/// `1 - total₂/total₁` from the first two cycles.
pub fn estimate_error(record: &AssayRecord) -> Result<f64> {
    if record.cycles.len() < 2 {
        return Err(invalid(
            "cycles",
            record.cycles.len() as f64,
            "need at least two cycles",
        ));
    }
    let first = record.cycles[0].total;
    if first <= 0.0 {
        return Err(Error::Undefined(
            "error estimate with no atoms after cycle 1",
        ));
    }
    Ok(1.0 - record.cycles[1].total / first)
}
