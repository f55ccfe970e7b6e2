//! Brute-force simulation in a truncated Fock basis.
//!
//! The two-mode input (reference squeezed vacuum, auxiliary vacuum plus
//! two-photon state) is pushed through the beam splitter by explicit binomial
//! expansion of the creation operators, then conditioned on the photon count
//! in the measurement mode. Nothing here uses the closed forms of
//! [`crate::analytic`], so the two can be checked against each other.

use num_complex::Complex64;
use serde::Serialize;

use crate::analytic::{qcr_from_qfi, MetrologyReport};
use crate::error::{Error, Result};
use crate::params::ProbeConfig;

/// Discarded squeezed-vacuum probability allowed by [`smsv_cutoff`].
pub const TAIL_TOLERANCE: f64 = 1e-14;

/// Largest total photon number the two-mode stage will allocate.
pub const PHOTON_LIMIT: usize = 600;

const ORTHOGONALITY_TOLERANCE: f64 = 1e-12;

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    for i in 1..=n {
        out.push(out[i - 1] + (i as f64).ln());
    }
    out
}

/// Single-mode state vector; index is the photon number.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FockVector {
    amps: Vec<Complex64>,
}

impl FockVector {
    pub fn new(amps: Vec<Complex64>) -> Self {
        assert!(
            !amps.is_empty(),
            "a Fock vector needs at least the vacuum entry"
        );
        FockVector { amps }
    }

    pub fn from_real(amps: &[f64]) -> Self {
        Self::new(amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// `|n>` on `0..=n_max`.
    pub fn number_state(n: usize, n_max: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); n_max.max(n) + 1];
        amps[n] = Complex64::new(1.0, 0.0);
        FockVector { amps }
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn n_max(&self) -> usize {
        self.amps.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_finite(&self) -> bool {
        self.amps
            .iter()
            .all(|a| a.re.is_finite() && a.im.is_finite())
    }

    /// Unit-norm copy; the zero vector is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        if n == 0.0 {
            return self.clone();
        }
        self.scale(Complex64::new(1.0 / n, 0.0))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        FockVector {
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    /// `self + c * other`, padded to the longer length.
    pub fn add_scaled(&self, c: Complex64, other: &FockVector) -> Self {
        let n = self.amps.len().max(other.amps.len());
        let zero = Complex64::new(0.0, 0.0);
        let amps = (0..n)
            .map(|i| {
                self.amps.get(i).copied().unwrap_or(zero)
                    + c * other.amps.get(i).copied().unwrap_or(zero)
            })
            .collect();
        FockVector { amps }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `<self| n^p |other>`.
    pub fn number_moment(&self, other: &FockVector, p: i32) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .enumerate()
            .map(|(n, (a, b))| a.conj() * b * (n as f64).powi(p))
            .sum()
    }

    /// Largest amplitude magnitude on states whose photon-number parity
    /// differs from `parity` (0 even, 1 odd).
    pub fn parity_leak(&self, parity: usize) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(n, _)| n % 2 != parity % 2)
            .map(|(_, a)| a.norm())
            .fold(0.0, f64::max)
    }
}

/// Two-mode amplitudes `amps[(n1, n2)]`, row-major in `n1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    dim1: usize,
    dim2: usize,
    amps: Vec<Complex64>,
}

impl TwoModeState {
    pub fn zeros(dim1: usize, dim2: usize) -> Self {
        TwoModeState {
            dim1,
            dim2,
            amps: vec![Complex64::new(0.0, 0.0); dim1 * dim2],
        }
    }

    pub fn product(a: &FockVector, b: &FockVector) -> Self {
        let mut s = Self::zeros(a.amps.len(), b.amps.len());
        for (i, x) in a.amps.iter().enumerate() {
            for (j, y) in b.amps.iter().enumerate() {
                s.amps[i * s.dim2 + j] = x * y;
            }
        }
        s
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim1, self.dim2)
    }

    pub fn get(&self, n1: usize, n2: usize) -> Complex64 {
        if n1 < self.dim1 && n2 < self.dim2 {
            self.amps[n1 * self.dim2 + n2]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    fn add_at(&mut self, n1: usize, n2: usize, v: Complex64) {
        self.amps[n1 * self.dim2 + n2] += v;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Unnormalized mode-1 state `<n2 = k|psi>`.
    pub fn project(&self, k: usize) -> FockVector {
        FockVector::new((0..self.dim1).map(|n1| self.get(n1, k)).collect())
    }
}

/// Mode-1 state heralded by `k` photons in mode 2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionedState {
    /// Normalized; all zeros when the outcome is impossible.
    pub vector: FockVector,
    pub probability: f64,
    pub k: usize,
}

/// Smallest even cutoff with squeezed-vacuum tail probability below
/// [`TAIL_TOLERANCE`].
pub fn smsv_cutoff(s: f64) -> usize {
    let y = s.tanh() / 2.0;
    if y == 0.0 {
        return 0;
    }
    // |c_2n|^2 = sech(s) C(2n, n) y^(2n); successive ratios increase towards
    // q = 4 y^2, so the tail beyond n is at most w_n q / (1 - q)
    let q = 4.0 * y * y;
    let mut w = 1.0 / s.cosh();
    let mut n = 0usize;
    while w * q / (1.0 - q) >= TAIL_TOLERANCE {
        w *= 2.0 * (2 * n + 1) as f64 / (n + 1) as f64 * y * y;
        n += 1;
    }
    2 * n
}

/// Cutoff for the full protocol: the squeezed-vacuum cutoff doubled.
pub fn adaptive_cutoff(cfg: &ProbeConfig) -> usize {
    (2 * smsv_cutoff(cfg.reference.s)).max(cfg.k + 4)
}

/// `sum_n y^n sqrt((2n)!)/n! / sqrt(cosh s) |2n>` on `0..=n_max`.
pub fn smsv_vector(s: f64, n_max: usize) -> Result<FockVector> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::domain(format!(
            "squeezing amplitude must be finite and >= 0, got {s}"
        )));
    }
    let required = smsv_cutoff(s);
    if required > n_max {
        return Err(Error::Truncation { n_max, required });
    }
    let y = s.tanh() / 2.0;
    let ln_pre = -0.5 * s.cosh().ln();
    let lf = ln_factorials(n_max);
    let amps = (0..=n_max)
        .map(|i| {
            if i % 2 == 1 {
                return Complex64::new(0.0, 0.0);
            }
            let n = i / 2;
            let v = if n == 0 {
                ln_pre.exp()
            } else if y == 0.0 {
                0.0
            } else {
                (ln_pre + n as f64 * y.ln() + 0.5 * lf[2 * n] - lf[n]).exp()
            };
            Complex64::new(v, 0.0)
        })
        .collect();
    Ok(FockVector::new(amps))
}

/// `(|0> + b2 e^{i phi} |2>) / sqrt(1 + b2^2)`.
pub fn aux_vector(b2: f64, phi: f64) -> FockVector {
    let n = (1.0 + b2 * b2).sqrt();
    FockVector::new(vec![
        Complex64::new(1.0 / n, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::from_polar(b2 / n, phi),
    ])
}

/// Beam splitter acting as `a1+ -> t a1+ - r a2+`, `a2+ -> r a1+ + t a2+`.
pub fn bs_transform(in1: &FockVector, in2: &FockVector, t: f64) -> Result<TwoModeState> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::domain(format!(
            "transmission amplitude must lie in (0, 1], got {t}"
        )));
    }
    let (n1_max, n2_max) = (in1.n_max(), in2.n_max());
    let total = n1_max + n2_max;
    if total > PHOTON_LIMIT {
        return Err(Error::Truncation {
            n_max: PHOTON_LIMIT,
            required: total,
        });
    }
    let r = (1.0 - t * t).max(0.0).sqrt();
    let lf = ln_factorials(total);
    let ln_binom = |n: usize, j: usize| lf[n] - lf[j] - lf[n - j];
    // t^a r^b with sign handled by the caller; zero powers of r are exact
    let ln_tr = |a: usize, b: usize| -> Option<f64> {
        if b > 0 && r == 0.0 {
            None
        } else {
            Some(a as f64 * t.ln() + if b > 0 { b as f64 * r.ln() } else { 0.0 })
        }
    };
    let mut out = TwoModeState::zeros(total + 1, total + 1);
    for (n1, c1) in in1.amps.iter().enumerate() {
        if c1.norm_sqr() == 0.0 {
            continue;
        }
        for (n2, c2) in in2.amps.iter().enumerate() {
            if c2.norm_sqr() == 0.0 {
                continue;
            }
            let amp = c1 * c2;
            let ln_in = -0.5 * (lf[n1] + lf[n2]);
            // (t a1+ - r a2+)^n1: j photons stay in mode 1
            for j in 0..=n1 {
                let Some(l1) = ln_tr(j, n1 - j) else { continue };
                let s1 = if (n1 - j) % 2 == 1 { -1.0 } else { 1.0 };
                // (r a1+ + t a2+)^n2: l photons go to mode 1
                for l in 0..=n2 {
                    let Some(l2) = ln_tr(n2 - l, l) else { continue };
                    let (p, q) = (j + l, n1 - j + n2 - l);
                    let ln_mag =
                        ln_in + ln_binom(n1, j) + ln_binom(n2, l) + l1 + l2 + 0.5 * (lf[p] + lf[q]);
                    out.add_at(p, q, amp * (s1 * ln_mag.exp()));
                }
            }
        }
    }
    Ok(out)
}

/// Projects mode 2 onto `|k>` and renormalizes.
pub fn condition_on_k(state: &TwoModeState, k: usize) -> ConditionedState {
    let v = state.project(k);
    let probability = v.norm_sqr();
    ConditionedState {
        vector: v.normalized(),
        probability,
        k,
    }
}

/// Unnormalized heralded states of the two auxiliary branches,
/// `(<k|BS|ref, 0>, <k|BS|ref, 2>)`, each without the `1/sqrt(n2)` factor.
pub fn branch_states(cfg: &ProbeConfig, n_max: usize) -> Result<(FockVector, FockVector)> {
    let reference = smsv_vector(cfg.reference.s, n_max)?;
    let t = cfg.splitter.t;
    let a = bs_transform(&reference, &FockVector::number_state(0, 2), t)?.project(cfg.k);
    let b = bs_transform(&reference, &FockVector::number_state(2, 2), t)?.project(cfg.k);
    Ok((a, b))
}

/// The heralded state `(A + b2 e^{i phi} B)/sqrt(n2)` split into its
/// phase-independent pieces.
#[derive(Debug, Clone)]
struct Heralded {
    a: FockVector,
    /// `b2 B`.
    b: FockVector,
    n2: f64,
}

impl Heralded {
    fn new(cfg: &ProbeConfig, n_max: usize) -> Result<Self> {
        let (a, b) = branch_states(cfg, n_max)?;
        Ok(Heralded {
            a,
            b: b.scale(Complex64::new(cfg.aux.b2, 0.0)),
            n2: cfg.aux.n2,
        })
    }

    fn state(&self, phi: f64) -> FockVector {
        self.a
            .add_scaled(Complex64::from_polar(1.0, phi), &self.b)
            .scale(Complex64::new(self.n2.sqrt().recip(), 0.0))
    }

    fn derivative(&self, phi: f64) -> FockVector {
        self.b
            .scale(Complex64::new(0.0, 1.0) * Complex64::from_polar(self.n2.sqrt().recip(), phi))
    }

    fn mean(&self, phi: f64) -> f64 {
        let psi = self.state(phi);
        psi.number_moment(&psi, 1).re / psi.norm_sqr()
    }
}

/// Quantum Fisher information of the normalized version of an unnormalized
/// pure state `psi` with phase derivative `dpsi`.
pub fn pure_state_qfi(psi: &FockVector, dpsi: &FockVector) -> f64 {
    let n = psi.norm_sqr();
    if n == 0.0 {
        return 0.0;
    }
    4.0 * (dpsi.norm_sqr() / n - psi.inner(dpsi).norm_sqr() / (n * n))
}

/// Every [`MetrologyReport`] field computed by brute force at cutoff `n_max`.
///
/// The phase derivative of the mean is a central difference with step `1e-5`;
/// the visibility is read off the `cos phi` coefficient of the unnormalized
/// mean.
pub fn numeric_report(cfg: &ProbeConfig, n_max: usize) -> Result<MetrologyReport> {
    let h = Heralded::new(cfg, n_max)?;
    let phi = cfg.phi;
    let psi = h.state(phi);
    let probability = psi.norm_sqr();
    if probability == 0.0 {
        return Err(Error::singular(format!(
            "outcome k = {} has zero probability",
            cfg.k
        )));
    }
    let mean_n = psi.number_moment(&psi, 1).re / probability;
    let mean_n2 = psi.number_moment(&psi, 2).re / probability;
    let std_n = (mean_n2 - mean_n * mean_n).max(0.0).sqrt();
    let qfi = if cfg.aux.b2 == 0.0 {
        0.0
    } else {
        pure_state_qfi(&psi, &h.derivative(phi))
    };
    let step = 1e-5;
    let dmean_dphi = if cfg.aux.b2 == 0.0 {
        0.0
    } else {
        (h.mean(phi + step) - h.mean(phi - step)) / (2.0 * step)
    };
    let n_aa = h.a.number_moment(&h.a, 1).re;
    let n_bb = h.b.number_moment(&h.b, 1).re;
    let n_ab = h.a.number_moment(&h.b, 1).re;
    let visibility = if n_aa + n_bb == 0.0 {
        0.0
    } else {
        2.0 * n_ab / (n_aa + n_bb)
    };
    let g02 =
        h.a.add_scaled(Complex64::from_polar(1.0, phi), &h.b)
            .norm_sqr()
            / h.a.norm_sqr();
    Ok(MetrologyReport {
        probability,
        mean_n,
        mean_n2,
        std_n,
        dmean_dphi,
        visibility,
        qfi,
        qcr: qcr_from_qfi(qfi),
        errprop: if dmean_dphi == 0.0 {
            f64::INFINITY
        } else {
            std_n / dmean_dphi.abs()
        },
        hl: mean_n.recip(),
        g02,
    })
}

/// Heralded mode-1 density after a detector of efficiency `eta` reports `k`.
///
/// Stored as its decomposition `sum_m w_m |psi_m><psi_m|` over the true
/// photon number `m >= k` in mode 2; weights sum to one.
#[derive(Debug, Clone, Serialize)]
pub struct MixedConditioned {
    pub components: Vec<(usize, f64, FockVector)>,
    pub probability: f64,
    pub k: usize,
}

impl MixedConditioned {
    /// Dense density matrix `rho[i][j]`.
    pub fn to_matrix(&self) -> Vec<Vec<Complex64>> {
        let dim = self
            .components
            .iter()
            .map(|(_, _, v)| v.amps.len())
            .max()
            .unwrap_or(1);
        let mut rho = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for (_, w, v) in &self.components {
            for (i, a) in v.amps.iter().enumerate() {
                for (j, b) in v.amps.iter().enumerate() {
                    rho[i][j] += a * b.conj() * w;
                }
            }
        }
        rho
    }

    pub fn mean_photons(&self) -> f64 {
        self.components
            .iter()
            .map(|(_, w, v)| w * v.number_moment(v, 1).re)
            .sum()
    }
}

/// Binomial-loss POVM element weight `C(m,k) eta^k (1-eta)^(m-k)`.
pub fn povm_weight(m: usize, k: usize, eta: f64) -> f64 {
    if m < k {
        return 0.0;
    }
    if eta == 1.0 {
        return if m == k { 1.0 } else { 0.0 };
    }
    let ln = ln_factorial(m) - ln_factorial(k) - ln_factorial(m - k)
        + k as f64 * eta.ln()
        + (m - k) as f64 * (1.0 - eta).ln();
    ln.exp()
}

/// Conditions mode 1 on a `k` click of a detector with efficiency `eta`.
pub fn povm_condition(state: &TwoModeState, k: usize, eta: f64) -> Result<MixedConditioned> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::domain(format!(
            "detector efficiency must lie in (0, 1], got {eta}"
        )));
    }
    let (_, dim2) = state.dims();
    let mut components = Vec::new();
    let mut probability = 0.0;
    for m in k..dim2 {
        let w = povm_weight(m, k, eta);
        if w == 0.0 {
            continue;
        }
        let c = condition_on_k(state, m);
        if c.probability == 0.0 {
            continue;
        }
        let weight = w * c.probability;
        probability += weight;
        components.push((m, weight, c.vector));
    }
    if probability > 0.0 {
        for c in &mut components {
            c.1 /= probability;
        }
    }
    Ok(MixedConditioned {
        components,
        probability,
        k,
    })
}

/// Full heralded state for `cfg` at cutoff `n_max`.
pub fn protocol_state(cfg: &ProbeConfig, n_max: usize) -> Result<TwoModeState> {
    let reference = smsv_vector(cfg.reference.s, n_max)?;
    bs_transform(&reference, &aux_vector(cfg.aux.b2, cfg.phi), cfg.splitter.t)
}

/// Result of the rank-two detector model evaluated by brute force.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixtureQfi {
    /// Weights of the `k` and `k+1` blocks, renormalized to sum to one.
    pub lambda1: f64,
    pub lambda2: f64,
    pub qfi: f64,
    pub qcr: f64,
    /// Largest `|<psi_k|psi_{k+1}>|` seen by the orthogonality guard.
    pub overlap: f64,
}

/// QFI of the heralded mixture restricted to true photon numbers `k` and
/// `k+1`, with exact binomial-POVM weights.
///
/// The two blocks have opposite parity, so the QFI is the weighted sum of
/// the pure-state values; the guard rejects the additivity if the blocks
/// overlap by more than `1e-12`.
pub fn rank2_mixture_qfi(cfg: &ProbeConfig, eta: f64, n_max: usize) -> Result<MixtureQfi> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::domain(format!(
            "detector efficiency must lie in (0, 1], got {eta}"
        )));
    }
    let here = Heralded::new(cfg, n_max)?;
    let next = Heralded::new(&cfg.with_k(cfg.k + 1), n_max)?;
    let (psi0, psi1) = (here.state(cfg.phi), next.state(cfg.phi));
    let overlap = psi0.normalized().inner(&psi1.normalized()).norm();
    if overlap > ORTHOGONALITY_TOLERANCE {
        return Err(Error::singular(format!(
            "mixture blocks are not orthogonal (overlap {overlap:e}), QFI is not additive"
        )));
    }
    let w0 = povm_weight(cfg.k, cfg.k, eta) * psi0.norm_sqr();
    let w1 = povm_weight(cfg.k + 1, cfg.k, eta) * psi1.norm_sqr();
    let (lambda1, lambda2) = (w0 / (w0 + w1), w1 / (w0 + w1));
    let f0 = pure_state_qfi(&psi0, &here.derivative(cfg.phi));
    let f1 = pure_state_qfi(&psi1, &next.derivative(cfg.phi));
    let qfi = lambda1 * f0 + lambda2 * f1;
    Ok(MixtureQfi {
        lambda1,
        lambda2,
        qfi,
        qcr: qcr_from_qfi(qfi),
        overlap,
    })
}
