use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::ZBarBasisPoly;
use super::realization::gaussian_inner;
use crate::error::{invalid, Result};
use crate::gram::GramReport;

/// Elliptic complex number `w = x + i p y` with axis ratio `p > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticVariable {
    pub p: f64,
    pub x: f64,
    pub y: f64,
}

impl EllipticVariable {
    pub fn new(p: f64, x: f64, y: f64) -> Result<Self> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(invalid(format!("elliptic axis ratio must be positive, got {p}")));
        }
        Ok(Self { p, x, y })
    }

    /// From elliptic polar coordinates `x = r cos(phi)`, `p y = r sin(phi)`.
    pub fn from_polar(p: f64, r: f64, phi: f64) -> Result<Self> {
        Self::new(p, r * phi.cos(), r * phi.sin() / p)
    }

    /// `w conj(w) = x^2 + p^2 y^2`.
    pub fn modulus_sq(&self) -> f64 {
        self.x * self.x + self.p * self.p * self.y * self.y
    }

    pub fn r_p(&self) -> f64 {
        self.modulus_sq().sqrt()
    }

    pub fn phi(&self) -> f64 {
        (self.p * self.y).atan2(self.x)
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.x, self.p * self.y)
    }

    /// `w = ((1 + p) z + (1 - p) zbar) / 2` as a polynomial in `z, zbar`.
    pub fn as_zbar_poly(p: f64) -> ZBarBasisPoly {
        ZBarBasisPoly::from_terms([
            ((1, 0), Complex64::new((1.0 + p) / 2.0, 0.0)),
            ((0, 1), Complex64::new((1.0 - p) / 2.0, 0.0)),
        ])
    }
}

/// Gaussian Gram matrix of `{ w^j wbar^k : j + k = n }` for `w = x + i p y`.
/// Full rank is the numerical form of the linear independence of that family.
pub fn elliptic_family_gram(n: u32, p: f64) -> Result<GramReport> {
    EllipticVariable::new(p, 0.0, 0.0)?;
    let w = EllipticVariable::as_zbar_poly(p);
    let wb = w.conj_function();
    let family: Vec<ZBarBasisPoly> = (0..=n).rev().map(|j| &w.pow(j) * &wb.pow(n - j)).collect();
    let labels = (0..=n).rev().map(|j| format!("w{j}_{}", n - j)).collect();
    let matrix = family
        .iter()
        .map(|f| family.iter().map(|g| gaussian_inner(f, g)).collect())
        .collect();
    Ok(GramReport::new(format!("elliptic-n{n}-p{p}"), labels, matrix))
}
