//! Normalization polynomials of the heralded component states.
//!
//! Everything here is built from derivatives of `Z(y) = (1 - 4 y^2)^(-1/2)`,
//! the generating function `sum_n C(2n, n) y^(2n)`. The component states with
//! zero added photons have norm `Z^(k)`; those with two added photons have norm
//! `G_k^(2)`, a polynomial in the dilation operator `y d/dy` applied to
//! `y Z^(k-1)`; and their overlap is carried by the cross term `J_k^(02)`.

use crate::error::{Error, Result};
use crate::jet::Jet;

/// Largest photon count the closed forms accept.
///
/// User configurations stop at [`crate::params::K_MAX`]; larger counts are reached through
/// [`crate::params::ProbeConfig::with_k`] by the detector model (`k+1`) and
/// by probability sums over all outcomes, where only the size of the terms
/// matters.
pub const K_INTERNAL_MAX: usize = 120;

/// Jet order needed to evaluate everything for photon count `k`.
pub(crate) fn required_order(k: usize) -> usize {
    k + 4
}

fn check_y1(y1: f64) -> Result<()> {
    if y1.is_finite() && (0.0..0.5).contains(&y1) {
        Ok(())
    } else {
        Err(Error::domain(format!("y1 = {y1} outside [0, 0.5)")))
    }
}

fn check_k(k: usize) -> Result<()> {
    if k > K_INTERNAL_MAX {
        Err(Error::domain(format!(
            "k = {k} exceeds the supported maximum {K_INTERNAL_MAX}"
        )))
    } else {
        Ok(())
    }
}

/// Derivatives `Z^(0..=order)(y1)`.
///
/// Uses the recurrence from differentiating `(1 - 4y^2) Z' = 4 y Z` n times:
/// `Z^(n+1) = [4(2n+1) y Z^(n) + 4 n^2 Z^(n-1)] / (1 - 4y^2)`.
pub fn z_jet(y1: f64, order: usize) -> Result<Jet> {
    check_y1(y1)?;
    if order > K_INTERNAL_MAX + 4 {
        return Err(Error::domain(format!(
            "derivative order {order} beyond supported range"
        )));
    }
    let denom = 1.0 - 4.0 * y1 * y1;
    let mut z = Vec::with_capacity(order + 1);
    z.push(denom.sqrt().recip());
    if order >= 1 {
        z.push(4.0 * y1 * z[0] / denom);
    }
    for n in 1..order {
        let nf = n as f64;
        let next = (4.0 * (2.0 * nf + 1.0) * y1 * z[n] + 4.0 * nf * nf * z[n - 1]) / denom;
        z.push(next);
    }
    Ok(Jet::from_derivatives(y1, z))
}

/// `(-1)^k (y1 B)^(k/2) / sqrt(k!)`: amplitude prefactor of the vacuum-input branch.
pub fn coeff_c0(k: usize, y1: f64, big_b: f64) -> f64 {
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    if k == 0 {
        return 1.0;
    }
    let x = y1 * big_b;
    if x == 0.0 {
        return 0.0;
    }
    sign * (0.5 * k as f64 * x.ln() - 0.5 * ln_factorial(k)).exp()
}

/// Amplitude prefactor of the two-photon-input branch.
pub fn coeff_c2(k: usize, y1: f64, big_b: f64) -> Result<f64> {
    if y1 == 0.0 {
        return Err(Error::singular("c_k^(2) is singular at y1 = 0"));
    }
    let bp1 = 1.0 + big_b;
    Ok(match k {
        0 => big_b / (y1 * bp1),
        1 => 2.0 * (big_b / y1).sqrt() / bp1,
        _ => {
            let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
            let x = y1 * big_b;
            let power = if k == 2 {
                1.0
            } else if x == 0.0 {
                0.0
            } else {
                ((0.5 * k as f64 - 1.0) * x.ln()).exp()
            };
            sign * power * (k * (k - 1)) as f64 * (-0.5 * ln_factorial(k)).exp() / bp1
        }
    })
}

/// `ln k!` by direct summation; `k` stays small here.
pub fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

fn g2_coefficients(k: usize, b: f64) -> [f64; 4] {
    let kf = k as f64;
    let km1 = kf - 1.0;
    [
        -4.0 * b / km1 * (1.0 + b / (2.0 * kf)),
        4.0 * b * b / (km1 * km1) * (1.0 + b * b / (4.0 * kf * kf) + km1 / (2.0 * kf) + b / kf),
        -4.0 * b.powi(3) / (kf * km1 * km1) * (1.0 + b / (2.0 * kf)),
        b.powi(4) / (kf * kf * km1 * km1),
    ]
}

/// Coefficients of `Z^(k-2)` and `(y d/dy)^(l-1) (y Z^(k-1))`, l = 1..3, in `J_k / 2`.
///
/// These are the expansion of `(x + k - 1)(1 - 2Bx/(k-1) + B^2 x(x-1)/(k(k-1)))`
/// in powers of the dilation eigenvalue `x`.
fn j02_coefficients(k: usize, b: f64) -> [f64; 4] {
    let kf = k as f64;
    let km1 = kf - 1.0;
    [
        km1,
        1.0 - 2.0 * b - b * b / kf,
        b * b / kf - 2.0 * b / km1 - b * b / (kf * km1),
        b * b / (kf * km1),
    ]
}

/// Jet of `G_k^(2)` (order 2) from a `Z` jet of order at least `k+4`.
pub(crate) fn g2_from_z(k: usize, z: &Jet, big_b: f64) -> Jet {
    debug_assert!(z.order() >= required_order(k));
    let b = big_b;
    match k {
        0 => z.derivative(1).mul_var().x_ddx().scale(0.25).truncate(2),
        1 => {
            let base = z.mul_var();
            let a = [(1.0 + b / 2.0).powi(2), -b * (1.0 + b / 2.0), b * b / 4.0];
            dilation_sum(&base, &a, 1)
        }
        _ => {
            let base = z.derivative(k - 1).mul_var();
            let head = z.derivative(k - 2).truncate(2);
            &head + &dilation_sum(&base, &g2_coefficients(k, b), 0)
        }
    }
}

/// Jet of `J_k^(02)` (order 2) from a `Z` jet of order at least `k+4`.
pub(crate) fn j02_from_z(k: usize, z: &Jet, big_b: f64) -> Jet {
    debug_assert!(z.order() >= required_order(k));
    let b = big_b;
    match k {
        0 => z.derivative(1).mul_var().scale(0.5).truncate(2),
        1 => {
            let base = z.mul_var();
            dilation_sum(&base, &[1.0 + b / 2.0, -b / 2.0], 1).scale(2.0)
        }
        _ => {
            let [a0, rest @ ..] = j02_coefficients(k, b);
            let base = z.derivative(k - 1).mul_var();
            let head = z.derivative(k - 2).truncate(2).scale(a0);
            (&head + &dilation_sum(&base, &rest, 0)).scale(2.0)
        }
    }
}

/// `sum_i a[i] (y d/dy)^(i + first) base`, truncated to order 2.
fn dilation_sum(base: &Jet, a: &[f64], first: usize) -> Jet {
    let mut term = base.x_ddx_pow(first);
    let mut acc = Jet::constant(base.at(), 0.0, 2);
    for (i, &ai) in a.iter().enumerate() {
        if i > 0 {
            term = term.x_ddx();
        }
        acc = &acc + &term.truncate(2).scale(ai);
    }
    acc
}

/// `G_k^(2)(y1, B)`, the squared norm of the unnormalized two-photon-input component.
pub fn norm_g2(k: usize, y1: f64, big_b: f64) -> Result<f64> {
    check_k(k)?;
    let z = z_jet(y1, required_order(k))?;
    Ok(g2_from_z(k, &z, big_b).value())
}

/// `J_k^(02)(y1, B) = sqrt(Z^(k) G_k^(2)) <Psi_k^(0)|Psi_k^(2)>`.
pub fn cross_j02(k: usize, y1: f64, big_b: f64) -> Result<f64> {
    check_k(k)?;
    let z = z_jet(y1, required_order(k))?;
    Ok(j02_from_z(k, &z, big_b).value())
}

/// A quantity together with one and two applications of `y d/dy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dilated {
    pub value: f64,
    pub first: f64,
    pub second: f64,
}

impl Dilated {
    fn from_jet(j: &Jet) -> Self {
        let d1 = j.x_ddx();
        Dilated {
            value: j.value(),
            first: d1.value(),
            second: d1.x_ddx().value(),
        }
    }
}

/// Every normalization quantity for one `(k, y1, B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationBundle {
    pub k: usize,
    pub y1: f64,
    pub big_b: f64,
    /// `Z^(0..=k+4)(y1)`.
    pub z_derivs: Vec<f64>,
    /// `Z^(k)` with its dilations.
    pub z: Dilated,
    /// `G_k^(2)` with its dilations.
    pub g2: Dilated,
    /// `J_k^(02)` with its dilations.
    pub j02: Dilated,
}

impl NormalizationBundle {
    pub fn new(k: usize, y1: f64, big_b: f64) -> Result<Self> {
        check_k(k)?;
        if !(big_b.is_finite() && big_b >= 0.0) {
            return Err(Error::domain(format!(
                "B must be finite and >= 0, got {big_b}"
            )));
        }
        let zj = z_jet(y1, required_order(k))?;
        if !zj.is_finite() {
            return Err(Error::singular(format!(
                "Z derivatives overflow at k = {k}, y1 = {y1}"
            )));
        }
        let bundle = NormalizationBundle {
            k,
            y1,
            big_b,
            z_derivs: zj.coeffs().to_vec(),
            z: Dilated::from_jet(&zj.derivative(k).truncate(2)),
            g2: Dilated::from_jet(&g2_from_z(k, &zj, big_b)),
            j02: Dilated::from_jet(&j02_from_z(k, &zj, big_b)),
        };
        Ok(bundle)
    }

    pub fn c0(&self) -> f64 {
        coeff_c0(self.k, self.y1, self.big_b)
    }

    pub fn c2(&self) -> Result<f64> {
        coeff_c2(self.k, self.y1, self.big_b)
    }

    /// Measurement-induced amplitude factor `b_k^(2)`.
    pub fn bk2(&self) -> Result<f64> {
        let (k, y1, b) = (self.k, self.y1, self.big_b);
        if y1 == 0.0 {
            return Err(Error::singular("b_k^(2) is singular at y1 = 0"));
        }
        if k > 1 && b == 0.0 {
            return Err(Error::singular("b_k^(2) is singular at B = 0 for k > 1"));
        }
        let ratio = (self.g2.value / self.z.value).sqrt();
        let pre = 1.0 / (std::f64::consts::SQRT_2 * (1.0 + b));
        Ok(pre
            * ratio
            * match k {
                0 => b / y1,
                1 => -2.0 / y1,
                _ => (k * (k - 1)) as f64 / (y1 * b),
            })
    }

    /// Normalized overlap `<Psi_k^(0)|Psi_k^(2)> = J / sqrt(Z^(k) G_k^(2))`.
    pub fn overlap(&self) -> f64 {
        self.j02.value / (self.z.value * self.g2.value).sqrt()
    }
}

/// `b_k^(2)(y1, B)`.
pub fn factor_bk2(k: usize, y1: f64, big_b: f64) -> Result<f64> {
    NormalizationBundle::new(k, y1, big_b)?.bk2()
}
