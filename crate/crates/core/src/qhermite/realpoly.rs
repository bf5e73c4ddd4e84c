use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::qcore::q_number_base;

/// Dense real polynomial, `coeffs[m]` multiplying `t^m`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RealPoly {
    coeffs: Vec<f64>,
}

impl RealPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(m: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; m + 1];
        coeffs[m] = c;
        Self::from_coeffs(coeffs)
    }

    /// Trailing zeros are dropped.
    pub fn from_coeffs(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> f64 {
        self.coeffs.get(m).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `p(s t)`.
    pub fn dilate(&self, s: f64) -> Self {
        let mut sm = 1.0;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(c * sm);
            sm *= s;
        }
        Self::from_coeffs(out)
    }

    /// `t p(t)`.
    pub fn mul_t(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(0.0);
        out.extend_from_slice(&self.coeffs);
        Self::from_coeffs(out)
    }

    /// Jackson derivative in base `q`: `t^m -> [m]_q t^(m-1)`.
    pub fn q_derivative(&self, q: f64) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, &c)| c * q_number_base(m as f64, q))
                .collect(),
        )
    }

    /// `p(-t)`.
    pub fn reflect(&self) -> Self {
        self.dilate(-1.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self - other).max_abs()
    }
}

impl Add for &RealPoly {
    type Output = RealPoly;
    fn add(self, rhs: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RealPoly::from_coeffs((0..n).map(|m| self.coeff(m) + rhs.coeff(m)).collect())
    }
}

impl Sub for &RealPoly {
    type Output = RealPoly;
    fn sub(self, rhs: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RealPoly::from_coeffs((0..n).map(|m| self.coeff(m) - rhs.coeff(m)).collect())
    }
}

impl Mul for &RealPoly {
    type Output = RealPoly;
    fn mul(self, rhs: &RealPoly) -> RealPoly {
        if self.is_zero() || rhs.is_zero() {
            return RealPoly::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPoly::from_coeffs(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_cube() {
        let p = RealPoly::monomial(3, 2.0);
        let d = p.q_derivative(0.5);
        assert_eq!(d.coeffs(), &[0.0, 0.0, 2.0 * 1.75]);
        assert!(RealPoly::constant(4.0).q_derivative(0.5).is_zero());
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let p = RealPoly::from_coeffs(vec![1.0, -2.0, 0.5, 3.0]);
        let q = 0.3;
        let t = 0.7;
        let dq = (p.eval(q * t) - p.eval(t)) / ((q - 1.0) * t);
        assert!((p.q_derivative(q).eval(t) - dq).abs() < 1e-13);
    }

    #[test]
    fn arithmetic() {
        let a = RealPoly::from_coeffs(vec![1.0, 1.0]);
        let b = &a * &a;
        assert_eq!(b.coeffs(), &[1.0, 2.0, 1.0]);
        assert!((&b - &b).is_zero());
        assert_eq!(a.mul_t().coeffs(), &[0.0, 1.0, 1.0]);
        assert_eq!(b.reflect().coeffs(), &[1.0, -2.0, 1.0]);
        assert_eq!(b.dilate(2.0).eval(1.0), 9.0);
    }
}
