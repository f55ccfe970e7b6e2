//! Truncated derivative sequences ("jets") of a function of one variable.
//!
//! A [`Jet`] stores `f(x0), f'(x0), ..., f^(n)(x0)`. Products follow the
//! Leibniz rule, and the dilation operator `x d/dx` maps a jet of order `n`
//! to one of order `n-1`. This evaluates the repeated `(y d/dy)^m` operators
//! in the normalization polynomials exactly, without numeric differentiation.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    at: f64,
    coeffs: Vec<f64>,
}

impl Jet {
    /// Jet from explicit derivatives at `at`; `coeffs[m]` is the m-th derivative.
    pub fn from_derivatives(at: f64, coeffs: Vec<f64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a jet needs at least the function value"
        );
        Jet { at, coeffs }
    }

    pub fn constant(at: f64, value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Jet { at, coeffs }
    }

    /// The identity function `x -> x`.
    pub fn variable(at: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = at;
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        Jet { at, coeffs }
    }

    pub fn at(&self) -> f64 {
        self.at
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    /// Jet of `f^(m)`, losing `m` orders.
    pub fn derivative(&self, m: usize) -> Jet {
        assert!(
            m <= self.order(),
            "cannot differentiate a jet of order {} {m} times",
            self.order()
        );
        Jet {
            at: self.at,
            coeffs: self.coeffs[m..].to_vec(),
        }
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let n = order.min(self.order());
        Jet {
            at: self.at,
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn scale(&self, c: f64) -> Jet {
        Jet {
            at: self.at,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// `x * f(x)`: `(x f)^(m) = x f^(m) + m f^(m-1)`.
    pub fn mul_var(&self) -> Jet {
        let coeffs = (0..self.coeffs.len())
            .map(|m| {
                let lower = if m > 0 {
                    m as f64 * self.coeffs[m - 1]
                } else {
                    0.0
                };
                self.at * self.coeffs[m] + lower
            })
            .collect();
        Jet {
            at: self.at,
            coeffs,
        }
    }

    /// `x f'(x)`: `(x f')^(m) = x f^(m+1) + m f^(m)`. Order drops by one.
    pub fn x_ddx(&self) -> Jet {
        assert!(self.order() >= 1, "x d/dx needs a jet of order >= 1");
        let coeffs = (0..self.order())
            .map(|m| self.at * self.coeffs[m + 1] + m as f64 * self.coeffs[m])
            .collect();
        Jet {
            at: self.at,
            coeffs,
        }
    }

    /// `(x d/dx)^n f`.
    pub fn x_ddx_pow(&self, n: usize) -> Jet {
        (0..n).fold(self.clone(), |j, _| j.x_ddx())
    }

    fn zip_with(&self, other: &Jet, f: impl Fn(f64, f64) -> f64) -> Jet {
        assert_eq!(self.at, other.at, "jets expanded at different points");
        let n = self.coeffs.len().min(other.coeffs.len());
        Jet {
            at: self.at,
            coeffs: (0..n).map(|i| f(self.coeffs[i], other.coeffs[i])).collect(),
        }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

/// Leibniz product, truncated to the smaller order.
impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        assert_eq!(self.at, rhs.at, "jets expanded at different points");
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut coeffs = vec![0.0; n];
        for (m, out) in coeffs.iter_mut().enumerate() {
            let mut binom = 1.0;
            for i in 0..=m {
                *out += binom * self.coeffs[i] * rhs.coeffs[m - i];
                binom = binom * (m - i) as f64 / (i + 1) as f64;
            }
        }
        Jet {
            at: self.at,
            coeffs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Exact derivatives of the polynomial `sum_i c_i x^i` at `x0`.
    fn poly_jet(c: &[f64], x0: f64, order: usize) -> Jet {
        let coeffs = (0..=order)
            .map(|m| {
                c.iter()
                    .enumerate()
                    .skip(m)
                    .map(|(i, ci)| {
                        let falling: f64 = (0..m).map(|j| (i - j) as f64).product();
                        ci * falling * x0.powi((i - m) as i32)
                    })
                    .sum()
            })
            .collect();
        Jet::from_derivatives(x0, coeffs)
    }

    fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn variable_and_constant() {
        let x = Jet::variable(0.3, 3);
        assert_eq!(x.coeffs(), &[0.3, 1.0, 0.0, 0.0]);
        let c = Jet::constant(0.3, 2.0, 2);
        assert_eq!(c.coeffs(), &[2.0, 0.0, 0.0]);
    }

    #[test]
    fn x_ddx_of_monomial() {
        // x d/dx x^3 = 3 x^3
        let j = poly_jet(&[0.0, 0.0, 0.0, 1.0], 0.7, 4);
        let d = j.x_ddx();
        let expect = poly_jet(&[0.0, 0.0, 0.0, 3.0], 0.7, 3);
        for (a, b) in d.coeffs().iter().zip(expect.coeffs()) {
            assert_relative_eq!(a, b, max_relative = 1e-14);
        }
    }

    #[test]
    fn mixed_order_truncates() {
        let a = Jet::variable(0.5, 4);
        let b = Jet::constant(0.5, 1.0, 2);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!((&a * &b).order(), 2);
    }

    proptest! {
        #[test]
        fn product_matches_polynomial_product(
            a in prop::collection::vec(-2.0f64..2.0, 1..6),
            b in prop::collection::vec(-2.0f64..2.0, 1..6),
            x0 in -1.0f64..1.0,
        ) {
            let order = 5;
            let prod = &poly_jet(&a, x0, order) * &poly_jet(&b, x0, order);
            let expect = poly_jet(&poly_mul(&a, &b), x0, order);
            for (p, e) in prod.coeffs().iter().zip(expect.coeffs()) {
                prop_assert!((p - e).abs() <= 1e-11 * (1.0 + e.abs()));
            }
        }

        #[test]
        fn dilation_is_a_derivation(
            a in prop::collection::vec(-2.0f64..2.0, 1..6),
            b in prop::collection::vec(-2.0f64..2.0, 1..6),
            x0 in -1.0f64..1.0,
        ) {
            let (ja, jb) = (poly_jet(&a, x0, 5), poly_jet(&b, x0, 5));
            let lhs = (&ja * &jb).x_ddx();
            let rhs = &(&ja.x_ddx() * &jb) + &(&ja * &jb.x_ddx());
            for (l, r) in lhs.coeffs().iter().zip(rhs.coeffs()) {
                prop_assert!((l - r).abs() <= 1e-11 * (1.0 + r.abs()));
            }
        }

        #[test]
        fn mul_var_matches_shifted_polynomial(
            a in prop::collection::vec(-2.0f64..2.0, 1..6),
            x0 in -1.0f64..1.0,
        ) {
            let mut shifted = vec![0.0];
            shifted.extend_from_slice(&a);
            let lhs = poly_jet(&a, x0, 4).mul_var();
            let rhs = poly_jet(&shifted, x0, 4);
            for (l, r) in lhs.coeffs().iter().zip(rhs.coeffs()) {
                prop_assert!((l - r).abs() <= 1e-12 * (1.0 + r.abs()));
            }
        }
    }
}
