//! Fixed workloads shared by the benchmarks.

use std::f64::consts::PI;

use parityprobe::ProbeConfig;

/// The reference `k = 1` operating point just below the landmark phase.
pub fn landmark_k1() -> ProbeConfig {
    ProbeConfig::from_db(0.305, 0.3, 3.527, 1, 2.0 * PI - 1e-4).expect("valid point")
}

/// One configuration per photon count `0..=k_max` at moderate squeezing.
pub fn ladder(k_max: usize) -> Vec<ProbeConfig> {
    (0..=k_max)
        .map(|k| ProbeConfig::from_db(1.0, 0.3, 2.0, k, 1.0).expect("valid point"))
        .collect()
}
