//! Closed forms against the brute-force Fock simulation on a fixed grid.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic;
use crate::error::Result;
use crate::fock;
use crate::params::ProbeConfig;

/// Largest relative deviation allowed for probabilities, moments and `G^(02)`.
pub const MOMENT_TOLERANCE: f64 = 1e-9;
/// Largest relative deviation allowed for the Fisher information.
pub const QFI_TOLERANCE: f64 = 1e-8;

/// Largest relative deviations seen over a set of configurations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Deviations {
    pub points: usize,
    pub probability: f64,
    pub mean_n: f64,
    pub mean_n2: f64,
    pub g02: f64,
    pub qfi: f64,
}

impl Deviations {
    /// Largest deviation among the moment-type quantities.
    pub fn max_moment(&self) -> f64 {
        [self.probability, self.mean_n, self.mean_n2, self.g02]
            .into_iter()
            .fold(0.0, f64::max)
    }

    pub fn within_tolerance(&self) -> bool {
        self.max_moment() < MOMENT_TOLERANCE && self.qfi < QFI_TOLERANCE
    }

    fn merge(self, o: Deviations) -> Deviations {
        Deviations {
            points: self.points + o.points,
            probability: self.probability.max(o.probability),
            mean_n: self.mean_n.max(o.mean_n),
            mean_n2: self.mean_n2.max(o.mean_n2),
            g02: self.g02.max(o.g02),
            qfi: self.qfi.max(o.qfi),
        }
    }
}

fn rel_dev(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// `S in {0.3, 1, 3} dB`, `B in {0.5, 1, 3.527}`, `k in 0..=4`,
/// `phi in {0.3, 1, pi - 0.01, 2 pi - 0.01}` at `S2 = 0.3 dB`; `quick`
/// keeps the outer values of each axis and `k <= 2`.
pub fn equivalence_grid(quick: bool) -> Vec<ProbeConfig> {
    let s_dbs: &[f64] = if quick { &[0.3, 3.0] } else { &[0.3, 1.0, 3.0] };
    let bs: &[f64] = if quick {
        &[0.5, 3.527]
    } else {
        &[0.5, 1.0, 3.527]
    };
    let k_max = if quick { 2 } else { 4 };
    let phis: &[f64] = if quick {
        &[0.3, 2.0 * PI - 0.01]
    } else {
        &[0.3, 1.0, PI - 0.01, 2.0 * PI - 0.01]
    };
    let mut out = Vec::new();
    for &s_db in s_dbs {
        for &big_b in bs {
            for k in 0..=k_max {
                for &phi in phis {
                    out.push(
                        ProbeConfig::from_db(s_db, 0.3, big_b, k, phi)
                            .expect("grid values are valid"),
                    );
                }
            }
        }
    }
    out
}

/// Evaluates every configuration both ways, in parallel.
pub fn compare(cfgs: &[ProbeConfig]) -> Result<Deviations> {
    cfgs.par_iter()
        .map(|cfg| {
            let a = analytic::report(cfg)?;
            let o = fock::numeric_report(cfg, fock::adaptive_cutoff(cfg))?;
            Ok(Deviations {
                points: 1,
                probability: rel_dev(a.probability, o.probability),
                mean_n: rel_dev(a.mean_n, o.mean_n),
                mean_n2: rel_dev(a.mean_n2, o.mean_n2),
                g02: rel_dev(a.g02, o.g02),
                qfi: rel_dev(a.qfi, o.qfi),
            })
        })
        .try_reduce(Deviations::default, |a, b| Ok(a.merge(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_sizes() {
        assert_eq!(equivalence_grid(false).len(), 180);
        assert_eq!(equivalence_grid(true).len(), 24);
    }

    #[test]
    fn quick_grid_agrees() {
        let d = compare(&equivalence_grid(true)).unwrap();
        assert_eq!(d.points, 24);
        assert!(d.within_tolerance(), "{d:?}");
    }
}
