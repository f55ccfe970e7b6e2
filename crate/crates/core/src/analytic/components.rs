//! Fock expansions of the normalized component states.
//!
//! With `n` the pair index of the reference squeezed vacuum and `m` the photon
//! number left in the signal mode, the zero-photon-input component has
//! amplitudes proportional to `y1^n (2n)! / (n! sqrt(m!))` with `2n = m + k`,
//! and the two-photon-input component to
//! `y1^n (2n)! / (n! sqrt(m!)) (B^2 m(m-1) - 2 B k m + k(k-1))` with
//! `2n = m + k - 2`. Both are summed in log space and normalized.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::normalization::ln_factorial;
use crate::error::{Error, Result};
use crate::fock::FockVector;

/// Which auxiliary input a component descends from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// Auxiliary vacuum.
    Zero,
    /// Auxiliary two-photon state.
    Two,
}

const TAIL_TOLERANCE: f64 = 1e-14;
const SERIES_LIMIT: usize = 200_000;

/// `(ln |a_m|, sign)` of the unnormalized amplitude, or `None` where it vanishes.
fn log_term(branch: Branch, k: usize, m: usize, ln_y1: f64, big_b: f64) -> Option<(f64, f64)> {
    let (twice_n, poly) = match branch {
        Branch::Zero => (m + k, 1.0),
        Branch::Two => {
            if m + k < 2 {
                return None;
            }
            let (mf, kf) = (m as f64, k as f64);
            let poly = big_b * big_b * mf * (mf - 1.0) - 2.0 * big_b * kf * mf + kf * (kf - 1.0);
            (m + k - 2, poly)
        }
    };
    if twice_n % 2 == 1 || poly == 0.0 {
        return None;
    }
    let n = twice_n / 2;
    let ln_pow = if n == 0 { 0.0 } else { n as f64 * ln_y1 };
    if ln_pow == f64::NEG_INFINITY {
        return None;
    }
    let ln_mag =
        ln_pow + ln_factorial(2 * n) - ln_factorial(n) - 0.5 * ln_factorial(m) + poly.abs().ln();
    Some((ln_mag, poly.signum()))
}

/// Normalized Fock amplitudes of one component state, on `0..=n_max`.
///
/// Fails with [`Error::Truncation`] when the discarded tail would exceed
/// `1e-14` of the norm; the error carries the smallest sufficient cutoff.
pub fn component_fock(
    k: usize,
    which: Branch,
    y1: f64,
    big_b: f64,
    n_max: usize,
) -> Result<FockVector> {
    if !(y1.is_finite() && (0.0..0.5).contains(&y1)) {
        return Err(Error::domain(format!("y1 = {y1} outside [0, 0.5)")));
    }
    if !(big_b.is_finite() && big_b >= 0.0) {
        return Err(Error::domain(format!(
            "B must be finite and >= 0, got {big_b}"
        )));
    }
    let ln_y1 = y1.ln();
    let mut terms: Vec<Option<(f64, f64)>> = Vec::new();
    let mut peak = f64::NEG_INFINITY;
    let mut m = 0;
    // extend past n_max until the terms have clearly died out
    loop {
        let t = log_term(which, k, m, ln_y1, big_b);
        if let Some((l, _)) = t {
            peak = peak.max(l);
        }
        terms.push(t);
        let converged = m > n_max.max(k + 2) + 4
            && terms[m.saturating_sub(3)..].iter().all(|t| match t {
                Some((l, _)) => *l < peak - 80.0,
                None => true,
            });
        if converged || m >= SERIES_LIMIT {
            break;
        }
        m += 1;
    }
    if peak == f64::NEG_INFINITY {
        return Err(Error::singular(format!(
            "component {which:?} with k = {k} vanishes identically at y1 = {y1}, B = {big_b}"
        )));
    }
    let weights: Vec<f64> = terms
        .iter()
        .map(|t| t.map_or(0.0, |(l, _)| (2.0 * (l - peak)).exp()))
        .collect();
    let total: f64 = weights.iter().sum();
    let mut tail = 0.0;
    let mut required = weights.len() - 1;
    for (i, w) in weights.iter().enumerate().rev() {
        if tail + w > TAIL_TOLERANCE * total {
            required = i;
            break;
        }
        tail += w;
    }
    if required > n_max {
        return Err(Error::Truncation { n_max, required });
    }
    let norm = total.sqrt();
    let amps = (0..=n_max)
        .map(|i| match terms.get(i).copied().flatten() {
            Some((l, sign)) => Complex64::new(sign * (l - peak).exp() / norm, 0.0),
            None => Complex64::new(0.0, 0.0),
        })
        .collect();
    Ok(FockVector::new(amps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock;
    use approx::assert_relative_eq;

    #[test]
    fn zero_branch_k0_is_squeezed_vacuum() {
        let y1: f64 = 0.2;
        let s = (2.0 * y1).atanh();
        let v = component_fock(0, Branch::Zero, y1, 1.0, 80).unwrap();
        let sm = fock::smsv_vector(s, 80).unwrap();
        for (a, b) in v.amps().iter().zip(sm.amps()) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn zero_branch_k1_small_y1_is_single_photon() {
        let v = component_fock(1, Branch::Zero, 1e-9, 1.0, 10).unwrap();
        assert_relative_eq!(v.amps()[1].re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn normalized_and_parity_clean() {
        for k in 0..=6 {
            for which in [Branch::Zero, Branch::Two] {
                let v = component_fock(k, which, 0.07, 2.0, 60).unwrap();
                assert_relative_eq!(v.norm_sqr(), 1.0, epsilon = 1e-12);
                assert!(v.parity_leak(k % 2) <= 1e-12);
            }
        }
    }

    #[test]
    fn truncation_reports_requirement() {
        match component_fock(1, Branch::Zero, 0.45, 1.0, 10) {
            Err(Error::Truncation { n_max, required }) => {
                assert_eq!(n_max, 10);
                assert!(required > 10);
                assert!(component_fock(1, Branch::Zero, 0.45, 1.0, required).is_ok());
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn matches_conditioned_branches() {
        let (y1, big_b, n_max): (f64, f64, usize) = (0.05, 1.0, 60);
        let cfg = crate::params::ProbeConfig::new(
            crate::params::SqueezeSpec::from_amplitude((2.0 * y1 * (1.0 + big_b)).atanh()).unwrap(),
            crate::params::AuxSpec::from_db(0.3).unwrap(),
            crate::params::BeamSplitterSpec::from_big_b(big_b).unwrap(),
            2,
            0.0,
        )
        .unwrap();
        let (a, b) = fock::branch_states(&cfg, n_max).unwrap();
        for (which, oracle) in [(Branch::Zero, a), (Branch::Two, b)] {
            let oracle = oracle.normalized();
            let v = component_fock(2, which, y1, big_b, n_max).unwrap();
            let sign = if (oracle.inner(&v)).re < 0.0 {
                -1.0
            } else {
                1.0
            };
            for (x, o) in v.amps().iter().zip(oracle.amps()) {
                assert!((x * sign - o).norm() <= 1e-10, "{which:?}");
            }
        }
    }
}
