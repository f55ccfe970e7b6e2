#![allow(dead_code)]

use std::f64::consts::PI;

use parityprobe::ProbeConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random configuration in the working range: S up to 6 dB, S2 up to 1 dB,
/// B up to 10, k up to `k_max`.
pub fn random_config(rng: &mut impl Rng, k_max: usize) -> ProbeConfig {
    let s_db = rng.gen_range(0.05..6.0);
    let s2_db = rng.gen_range(0.05..1.0);
    let big_b = rng.gen_range(0.1..10.0);
    let k = rng.gen_range(0..=k_max);
    let phi = rng.gen_range(0.0..4.0 * PI);
    ProbeConfig::from_db(s_db, s2_db, big_b, k, phi).unwrap()
}

pub fn rel_dev(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Sum of heralding probabilities over all outcomes, stopping once terms
/// past the mode drop below `1e-16`.
pub fn total_probability(cfg: &ProbeConfig) -> f64 {
    let mut total = 0.0;
    let mut peak: f64 = 0.0;
    for k in 0.. {
        let p = parityprobe::analytic::probability(&cfg.with_k(k)).unwrap();
        total += p;
        peak = peak.max(p);
        if p < 1e-16 && p < peak && k > 2 {
            break;
        }
    }
    total
}

/// The grid shared by the oracle-equivalence and parity checks.
pub fn equivalence_grid() -> Vec<ProbeConfig> {
    parityprobe::crosscheck::equivalence_grid(false)
}
