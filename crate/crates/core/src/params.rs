//! Unit conversions and validated configuration records.
//!
//! Squeezing is carried in three equivalent forms: decibels `s_db`, the
//! amplitude `s` and the series parameter `y = tanh(s)/2`. The conversion
//! between decibels and amplitude is `s_db = -10 log10(exp(-2 s))`, i.e.
//! `s = s_db ln(10) / 20`.
//!
//! The beam splitter is parameterized by `B = r^2 / t^2`, so that
//! `T = t^2 = 1/(1+B)` and `R = r^2 = B/(1+B)`. After the splitter the
//! reference squeezing parameter becomes `y1 = y / (1+B)`.

use std::f64::consts::LN_10;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of detected photons accepted in a [`ProbeConfig`].
///
/// The normalization polynomials need derivatives of `Z` up to order `k+4`;
/// double precision has been validated in this range.
pub const K_MAX: usize = 12;

/// Auxiliary squeezing amplitude above which the vacuum plus two-photon
/// truncation of the auxiliary state is flagged as inaccurate.
pub const AUX_WARN_AMPLITUDE: f64 = 0.2;

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite, got {v}")))
    }
}

/// Decibels to squeezing amplitude.
pub fn db_to_amplitude(s_db: f64) -> f64 {
    s_db * LN_10 / 20.0
}

/// Squeezing amplitude to decibels, `-10 log10(exp(-2 s))`.
pub fn amplitude_to_db(s: f64) -> f64 {
    20.0 * s / LN_10
}

/// One single-mode squeezed vacuum parameterization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezeSpec {
    pub s_db: f64,
    pub s: f64,
    pub y: f64,
}

impl SqueezeSpec {
    pub fn from_db(s_db: f64) -> Result<Self> {
        check_finite("squeezing (dB)", s_db)?;
        if s_db < 0.0 {
            return Err(Error::domain(format!(
                "squeezing must be >= 0 dB, got {s_db}"
            )));
        }
        let s = db_to_amplitude(s_db);
        Ok(SqueezeSpec {
            s_db,
            s,
            y: s.tanh() / 2.0,
        })
    }

    pub fn from_amplitude(s: f64) -> Result<Self> {
        check_finite("squeezing amplitude", s)?;
        if s < 0.0 {
            return Err(Error::domain(format!(
                "squeezing amplitude must be >= 0, got {s}"
            )));
        }
        Ok(SqueezeSpec {
            s_db: amplitude_to_db(s),
            s,
            y: s.tanh() / 2.0,
        })
    }

    /// Mean photon number of the squeezed vacuum, `sinh^2 s`.
    pub fn mean_photons(&self) -> f64 {
        self.s.sinh().powi(2)
    }
}

/// Weak auxiliary squeezed vacuum approximated as `(|0> + b2 e^{i phi} |2>)/sqrt(n2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxSpec {
    pub squeeze: SqueezeSpec,
    pub b2: f64,
    pub n2: f64,
}

impl AuxSpec {
    pub fn from_db(s2_db: f64) -> Result<Self> {
        Self::from_squeeze(SqueezeSpec::from_db(s2_db)?)
    }

    pub fn from_squeeze(squeeze: SqueezeSpec) -> Result<Self> {
        if squeeze.s > AUX_WARN_AMPLITUDE {
            log::warn!(
                "auxiliary squeezing s2 = {:.4} exceeds {AUX_WARN_AMPLITUDE}; \
                 the two-term auxiliary state is a poor approximation here",
                squeeze.s
            );
        }
        let b2 = squeeze.s.tanh() / std::f64::consts::SQRT_2;
        Ok(AuxSpec {
            squeeze,
            b2,
            n2: 1.0 + b2 * b2,
        })
    }
}

/// Beam splitter with real amplitudes, parameterized by `B = r^2/t^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamSplitterSpec {
    pub big_b: f64,
    pub t: f64,
    pub r: f64,
    pub cap_t: f64,
    pub cap_r: f64,
}

impl BeamSplitterSpec {
    pub fn from_big_b(big_b: f64) -> Result<Self> {
        check_finite("B", big_b)?;
        if big_b < 0.0 {
            return Err(Error::domain(format!("B must be >= 0, got {big_b}")));
        }
        let cap_t = 1.0 / (1.0 + big_b);
        let cap_r = big_b / (1.0 + big_b);
        Ok(BeamSplitterSpec {
            big_b,
            t: cap_t.sqrt(),
            r: cap_r.sqrt(),
            cap_t,
            cap_r,
        })
    }
}

/// A full protocol point: reference squeeze, auxiliary squeeze, splitter,
/// number of photons detected in the measurement mode and the unknown phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub reference: SqueezeSpec,
    pub aux: AuxSpec,
    pub splitter: BeamSplitterSpec,
    pub k: usize,
    pub phi: f64,
}

impl ProbeConfig {
    pub fn new(
        reference: SqueezeSpec,
        aux: AuxSpec,
        splitter: BeamSplitterSpec,
        k: usize,
        phi: f64,
    ) -> Result<Self> {
        check_finite("phi", phi)?;
        if k > K_MAX {
            return Err(Error::domain(format!("k = {k} exceeds K_MAX = {K_MAX}")));
        }
        let y1 = reference.y / (1.0 + splitter.big_b);
        if !(0.0..0.5).contains(&y1) {
            return Err(Error::domain(format!(
                "effective y1 = {y1} outside [0, 0.5)"
            )));
        }
        Ok(ProbeConfig {
            reference,
            aux,
            splitter,
            k,
            phi,
        })
    }

    /// Builds a configuration from the user-facing units.
    pub fn from_db(s_db: f64, s2_db: f64, big_b: f64, k: usize, phi: f64) -> Result<Self> {
        Self::new(
            SqueezeSpec::from_db(s_db)?,
            AuxSpec::from_db(s2_db)?,
            BeamSplitterSpec::from_big_b(big_b)?,
            k,
            phi,
        )
    }

    pub fn with_phi(&self, phi: f64) -> Self {
        ProbeConfig { phi, ..*self }
    }

    /// Same point with a different photon count. Not range-checked against
    /// [`K_MAX`] so that `k+1` neighbours remain reachable.
    pub fn with_k(&self, k: usize) -> Self {
        ProbeConfig { k, ..*self }
    }

    pub fn y1(&self) -> f64 {
        effective_y1(self)
    }

    pub fn settings(&self) -> ProbeSettings {
        ProbeSettings {
            s_db: self.reference.s_db,
            s2_db: self.aux.squeeze.s_db,
            big_b: self.splitter.big_b,
            k: self.k,
            phi: self.phi,
        }
    }
}

/// Squeezing parameter after the beam splitter, `y / (1+B)`.
pub fn effective_y1(cfg: &ProbeConfig) -> f64 {
    cfg.reference.y / (1.0 + cfg.splitter.big_b)
}

/// Plain serializable form of a [`ProbeConfig`] in user units.
///
/// This is the JSON config-file schema: `{"s_db", "s2_db", "big_b", "k", "phi"}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSettings {
    pub s_db: f64,
    pub s2_db: f64,
    pub big_b: f64,
    pub k: usize,
    pub phi: f64,
}

impl ProbeSettings {
    pub fn to_config(&self) -> Result<ProbeConfig> {
        ProbeConfig::from_db(self.s_db, self.s2_db, self.big_b, self.k, self.phi)
    }
}
