//! Closed-form statistics of the heralded probe state.
//!
//! For a configuration with `k` photons detected in the measurement mode the
//! probe is `(|Psi_k^(0)> + e^{i phi} b2 b_k^(2) |Psi_k^(2)>) / sqrt(G_k^(02))`.
//! All moments follow from the normalization polynomials in
//! [`normalization`] and the dilation operator `y1 d/dy1`; `phi` enters only
//! through `cos phi` and `sin phi`, so everything is evaluated in real
//! arithmetic.

mod components;
pub mod normalization;

use serde::{Deserialize, Serialize};

pub use components::{component_fock, Branch};
pub use normalization::{
    coeff_c0, coeff_c2, cross_j02, factor_bk2, norm_g2, z_jet, Dilated, NormalizationBundle,
    K_INTERNAL_MAX,
};

use crate::error::{Error, Result};
use crate::params::{effective_y1, ProbeConfig};

/// All scalar outputs at one configuration.
///
/// Undefined uncertainties (zero Fisher information, stationary mean) are
/// reported as `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetrologyReport {
    pub probability: f64,
    pub mean_n: f64,
    pub mean_n2: f64,
    pub std_n: f64,
    pub dmean_dphi: f64,
    pub visibility: f64,
    pub qfi: f64,
    pub qcr: f64,
    pub errprop: f64,
    pub hl: f64,
    pub g02: f64,
}

/// First-order model of a detector with efficiency `eta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorReport {
    pub eta: f64,
    pub probability_eta: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub q_ratio: f64,
    pub qfi_eta: f64,
    pub qcr_eta: f64,
}

/// Relative size below which a variance numerator is treated as rounding noise.
const VARIANCE_RESOLUTION: f64 = 1e-12;

/// The probe state at one configuration, reduced to the handful of real
/// numbers every statistic depends on.
#[derive(Debug, Clone)]
struct Probe {
    norms: NormalizationBundle,
    /// `b2 * b_k^(2)`; zero when there is no two-photon admixture.
    u: f64,
    n2: f64,
    cos: f64,
    sin: f64,
}

impl Probe {
    fn new(cfg: &ProbeConfig) -> Result<Self> {
        let y1 = effective_y1(cfg);
        if y1 == 0.0 && cfg.k > 0 {
            return Err(Error::singular(format!(
                "k = {} photons cannot be heralded without reference squeezing",
                cfg.k
            )));
        }
        let norms = NormalizationBundle::new(cfg.k, y1, cfg.splitter.big_b)?;
        let b2 = cfg.aux.b2;
        let u = if b2 == 0.0 { 0.0 } else { b2 * norms.bk2()? };
        Ok(Probe {
            norms,
            u,
            n2: cfg.aux.n2,
            cos: cfg.phi.cos(),
            sin: cfg.phi.sin(),
        })
    }

    fn sqrt_zg(&self) -> f64 {
        (self.norms.z.value * self.norms.g2.value).sqrt()
    }

    fn g02(&self) -> f64 {
        let (g0, g1) = self.g02_parts();
        g0 + g1 * self.cos
    }

    /// Expectation of `n^p` (selected by `pick`) before normalization, split
    /// as `alpha + beta cos(phi)`.
    fn moment_parts(&self, pick: impl Fn(&Dilated) -> f64) -> (f64, f64) {
        let nb = &self.norms;
        let mut alpha = pick(&nb.z) / nb.z.value;
        let mut beta = 0.0;
        if self.u != 0.0 {
            alpha += self.u * self.u * pick(&nb.g2) / nb.g2.value;
            beta = 2.0 * self.u * pick(&nb.j02) / self.sqrt_zg();
        }
        (alpha, beta)
    }

    /// `G^(02) = g0 + g1 cos(phi)`.
    fn g02_parts(&self) -> (f64, f64) {
        if self.u == 0.0 {
            return (1.0, 0.0);
        }
        (1.0 + self.u * self.u, 2.0 * self.u * self.norms.overlap())
    }

    fn moment(&self, pick: impl Fn(&Dilated) -> f64) -> f64 {
        let (alpha, beta) = self.moment_parts(pick);
        (alpha + beta * self.cos) / self.g02()
    }

    fn probability(&self) -> f64 {
        let nb = &self.norms;
        let (k, y1, b) = (nb.k, nb.y1, nb.big_b);
        let x = y1 * b;
        let weight = if k == 0 {
            1.0
        } else if x == 0.0 {
            0.0
        } else {
            (k as f64 * x.ln() - normalization::ln_factorial(k)).exp()
        };
        let bp1 = 1.0 + b;
        let root = (1.0 - 4.0 * y1 * y1 * bp1 * bp1).sqrt();
        root * weight * nb.z.value * self.g02() / self.n2
    }

    fn mean(&self) -> f64 {
        self.moment(|d| d.first)
    }

    fn second_moment(&self) -> f64 {
        self.moment(|d| d.second)
    }

    /// `<n^2> - <n>^2`. Near-Fock probes make the direct difference lose
    /// most of its digits, so the numerator is collected as a polynomial in
    /// `cos(phi)` whose coefficients do not depend on the phase.
    ///
    /// Fails when the numerator is below the rounding level of its terms,
    /// which happens next to the zeros of `G^(02)`.
    fn variance(&self) -> Result<f64> {
        let (a1, b1) = self.moment_parts(|d| d.first);
        let (a2, b2) = self.moment_parts(|d| d.second);
        let (g0, g1) = self.g02_parts();
        let c = self.cos;
        let n0 = a2 * g0 - a1 * a1;
        let n1 = a2 * g1 + b2 * g0 - 2.0 * a1 * b1;
        let n2 = b2 * g1 - b1 * b1;
        let numerator = n0 + c * (n1 + c * n2);
        let scale = (a2 * g0).abs()
            + a1 * a1
            + (a2 * g1).abs()
            + (b2 * g0).abs()
            + (2.0 * a1 * b1).abs()
            + (b2 * g1).abs()
            + b1 * b1;
        if scale > 0.0 && numerator <= VARIANCE_RESOLUTION * scale {
            return Err(Error::Cancellation(format!(
                "photon-number variance {numerator:e} is below the rounding level {:e} (G02 = {:e})",
                VARIANCE_RESOLUTION * scale,
                self.g02()
            )));
        }
        let g = self.g02();
        Ok((numerator / (g * g)).max(0.0))
    }

    fn dmean_dphi(&self) -> f64 {
        if self.u == 0.0 {
            return 0.0;
        }
        let j = &self.norms.j02;
        let (a1, b1) = self.moment_parts(|d| d.first);
        let (g0, g1) = self.g02_parts();
        // J <n> - y1 dJ/dy1, with the phase-free parts combined first
        let bracket = (j.value * a1 - j.first * g0) + self.cos * (j.value * b1 - j.first * g1);
        let g = self.g02();
        2.0 * self.u * self.sin / (g * g * self.sqrt_zg()) * bracket
    }

    fn component_means(&self) -> (f64, f64, f64) {
        let nb = &self.norms;
        (
            nb.z.first / nb.z.value,
            nb.g2.first / nb.g2.value,
            nb.j02.first / self.sqrt_zg(),
        )
    }

    fn visibility(&self) -> f64 {
        if self.u == 0.0 {
            return 0.0;
        }
        let (n0, n2, n02) = self.component_means();
        2.0 * self.u * n02 / (n0 + self.u * self.u * n2)
    }

    /// `4 X^2 (R^2 (1 - u^2/G) - 2 u R cos(phi)/sqrt(G) - 1)` with
    /// `R = sqrt(Z G2 G02)/J` and `X = u J / (G02 sqrt(Z G2))`.
    /// `4 X^2 (R^2 (1 - u^2/G) - 2 u R cos(phi)/sqrt(G) - 1)` collapses to
    /// `4 u^2 (1 - w^2) / G^2` with `w` the component overlap. The collapsed
    /// form keeps all phase dependence in `G`, which avoids cancellation when
    /// the information is small.
    fn qfi(&self) -> f64 {
        if self.u == 0.0 {
            return 0.0;
        }
        let g = self.g02();
        let w = self.norms.overlap();
        4.0 * self.u * self.u * (1.0 - w * w) / (g * g)
    }

    /// Expanded `X`, `R` form of [`Probe::qfi`], kept as a cross-check.
    #[cfg(test)]
    fn qfi_expanded(&self) -> f64 {
        let (g, u, j) = (self.g02(), self.u, self.norms.j02.value);
        let r = self.sqrt_zg() * g.sqrt() / j;
        let x = u * j / (g * self.sqrt_zg());
        4.0 * x * x * (r * r * (1.0 - u * u / g) - 2.0 * u * r * self.cos / g.sqrt() - 1.0)
    }

    fn report(&self) -> Result<MetrologyReport> {
        let mean_n = self.mean();
        let mean_n2 = self.second_moment();
        let std_n = self.variance()?.sqrt();
        let dmean_dphi = self.dmean_dphi();
        let qfi = self.qfi();
        Ok(MetrologyReport {
            probability: self.probability(),
            mean_n,
            mean_n2,
            std_n,
            dmean_dphi,
            visibility: self.visibility(),
            qfi,
            qcr: qcr_from_qfi(qfi),
            errprop: if dmean_dphi == 0.0 {
                f64::INFINITY
            } else {
                std_n / dmean_dphi.abs()
            },
            hl: mean_n.recip(),
            g02: self.g02(),
        })
    }
}

/// `1/sqrt(F)`, infinite when the Fisher information vanishes.
pub fn qcr_from_qfi(qfi: f64) -> f64 {
    if qfi > 0.0 {
        qfi.sqrt().recip()
    } else {
        f64::INFINITY
    }
}

/// `G_k^(02)(y1, B, phi) = 1 + b2^2 bk^2 + 2 b2 bk J cos(phi) / sqrt(Z^(k) G_k^(2))`.
pub fn norm_g02(k: usize, y1: f64, big_b: f64, b2: f64, phi: f64) -> Result<f64> {
    if b2 == 0.0 {
        return Ok(1.0);
    }
    let nb = NormalizationBundle::new(k, y1, big_b)?;
    let u = b2 * nb.bk2()?;
    Ok(1.0 + u * u + 2.0 * u * nb.overlap() * phi.cos())
}

/// Heralding probability of `k` photons in the measurement mode.
pub fn probability(cfg: &ProbeConfig) -> Result<f64> {
    if effective_y1(cfg) == 0.0 && cfg.k > 0 {
        return Ok(0.0);
    }
    Ok(Probe::new(cfg)?.probability())
}

/// Mean photon numbers of the two normalized components and their cross term:
/// `(y Z^(k+1)/Z^(k), (y d/dy) G / G, (y d/dy) J / sqrt(Z G))`.
pub fn component_means(k: usize, y1: f64, big_b: f64) -> Result<(f64, f64, f64)> {
    let nb = NormalizationBundle::new(k, y1, big_b)?;
    let sqrt_zg = (nb.z.value * nb.g2.value).sqrt();
    Ok((
        nb.z.first / nb.z.value,
        nb.g2.first / nb.g2.value,
        nb.j02.first / sqrt_zg,
    ))
}

pub fn mean_photons(cfg: &ProbeConfig) -> Result<f64> {
    Ok(Probe::new(cfg)?.mean())
}

/// Interference visibility of the mean photon number; independent of `phi`.
pub fn visibility(cfg: &ProbeConfig) -> Result<f64> {
    Ok(Probe::new(cfg)?.visibility())
}

pub fn second_moment(cfg: &ProbeConfig) -> Result<f64> {
    Ok(Probe::new(cfg)?.second_moment())
}

pub fn dmean_dphi(cfg: &ProbeConfig) -> Result<f64> {
    let p = Probe::new(cfg)?;
    Ok(p.dmean_dphi())
}

/// Quantum Fisher information of the pure heralded probe with respect to `phi`.
pub fn qfi(cfg: &ProbeConfig) -> Result<f64> {
    Ok(Probe::new(cfg)?.qfi())
}

pub fn report(cfg: &ProbeConfig) -> Result<MetrologyReport> {
    Probe::new(cfg)?.report()
}

/// Corrections for a detector of efficiency `eta`, to first order in `1 - eta`.
///
/// A missed photon turns a `k+1` event into a `k` event, so the heralded
/// state is the mixture `lambda1 rho_k + lambda2 rho_{k+1}`. The two
/// components have opposite parity, hence orthogonal supports, and their
/// Fisher informations add with the mixture weights.
pub fn detector_report(cfg: &ProbeConfig, eta: f64) -> Result<DetectorReport> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::domain(format!(
            "detector efficiency must lie in (0, 1], got {eta}"
        )));
    }
    let here = Probe::new(cfg)?;
    let next = Probe::new(&cfg.with_k(cfg.k + 1))?;
    let q_ratio = next.norms.z.value * next.g02() / (here.norms.z.value * here.g02());
    let y1 = here.norms.y1;
    let x = (1.0 - eta) * y1 * cfg.splitter.big_b * q_ratio;
    let lambda1 = 1.0 / (1.0 + x);
    let lambda2 = x / (1.0 + x);
    let probability_eta = here.probability() * eta.powi(cfg.k as i32) * (1.0 + x);
    let qfi_eta = lambda1 * here.qfi()
        + if lambda2 > 0.0 {
            lambda2 * next.qfi()
        } else {
            0.0
        };
    Ok(DetectorReport {
        eta,
        probability_eta,
        lambda1,
        lambda2,
        q_ratio,
        qfi_eta,
        qcr_eta: qcr_from_qfi(qfi_eta),
    })
}
