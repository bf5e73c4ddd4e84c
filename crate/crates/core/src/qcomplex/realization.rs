use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::analytic::zq_in_zbar;
use super::poly::ZBarBasisPoly;
use crate::context::QContext;
use crate::gram::GramReport;
use crate::util::factorial;

/// Complex Hermite polynomial
/// `H_{p,r} = p! r! sum_k (-1)^k / k! * z^(p-k)/(p-k)! * zbar^(r-k)/(r-k)!`.
pub fn complex_hermite(p: u32, r: u32) -> ZBarBasisPoly {
    let pr = factorial(p) * factorial(r);
    ZBarBasisPoly::from_terms((0..=p.min(r)).map(|k| {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let c = sign * pr / (factorial(k) * factorial(p - k) * factorial(r - k));
        ((p - k, r - k), Complex64::new(c, 0.0))
    }))
}

/// `int_C f conj(g) e^{-|z|^2} dx dy`, evaluated exactly from the moments
/// `int z^a zbar^b e^{-|z|^2} = pi a! delta_{ab}`.
pub fn gaussian_inner(f: &ZBarBasisPoly, g: &ZBarBasisPoly) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for ((a, b), cf) in f.terms() {
        for ((c, d), cg) in g.terms() {
            // z^a zbar^b * conj(z^c zbar^d) = z^(a+d) zbar^(b+c)
            if a + d == b + c {
                acc += cf * cg.conj() * factorial(a + d);
            }
        }
    }
    acc * PI
}

/// Coefficients against the complex Hermite basis: key `(p, r)` is `H_{p,r}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct HermiteSeries {
    pub coeffs: BTreeMap<(u32, u32), Complex64>,
}

impl HermiteSeries {
    /// Expand a polynomial in `H_{p,r}`.
    ///
    /// `H_{p,r} = z^p zbar^r + (lower total degree)`, so repeatedly removing a
    /// top-degree term with the matching Hermite polynomial terminates.
    pub fn from_poly(poly: &ZBarBasisPoly) -> Self {
        let mut rest = poly.clone();
        let mut coeffs = BTreeMap::new();
        while let Some(deg) = rest.degree() {
            let top: Vec<_> = rest.terms().filter(|((a, b), _)| a + b == deg).collect();
            for ((p, r), c) in top {
                *coeffs.entry((p, r)).or_insert(Complex64::new(0.0, 0.0)) += c;
                rest = &rest - &complex_hermite(p, r).scale(c);
                // the leading term cancels exactly; drop it even if rounding left a residue
                rest = ZBarBasisPoly::from_terms(rest.terms().filter(|&(k, _)| k != (p, r)));
            }
        }
        Self { coeffs }
    }

    pub fn to_poly(&self) -> ZBarBasisPoly {
        let mut out = ZBarBasisPoly::zero();
        for (&(p, r), &c) in &self.coeffs {
            out = &out + &complex_hermite(p, r).scale(c);
        }
        out
    }
}

/// Basis index `(k, h)` for `z_q^k zbar_q^h`, ordered by total degree and
/// then by descending `k`.
pub fn mixed_basis_indices(max_degree: u32) -> Vec<(u32, u32)> {
    (0..=max_degree)
        .flat_map(|d| (0..=d).rev().map(move |k| (k, d - k)))
        .collect()
}

/// `z_q^k zbar_q^h` in the `(z, zbar)` basis.
pub fn mixed_monomial(k: u32, h: u32, ctx: &QContext) -> ZBarBasisPoly {
    &zq_in_zbar(k as usize, ctx) * &zq_in_zbar(h as usize, ctx).conj_function()
}

fn gram_of(name: &str, family: &[((u32, u32), ZBarBasisPoly)], prefix: &str) -> GramReport {
    let labels = family.iter().map(|((k, h), _)| format!("{prefix}{k}_{h}")).collect();
    let matrix = family
        .iter()
        .map(|(_, f)| family.iter().map(|(_, g)| gaussian_inner(f, g)).collect())
        .collect();
    GramReport::new(name, labels, matrix)
}

/// Gaussian Gram matrix of `{ z_q^k zbar_q^h : k + h <= max_degree }`.
pub fn mixed_basis_gram(max_degree: u32, ctx: &QContext) -> GramReport {
    let family: Vec<_> = mixed_basis_indices(max_degree)
        .into_iter()
        .map(|(k, h)| ((k, h), mixed_monomial(k, h, ctx)))
        .collect();
    gram_of("mixed-basis", &family, "zq")
}

/// Gaussian Gram matrix of the classical monomials `{ z^k zbar^h : k + h <= max_degree }`.
pub fn monomial_gram(max_degree: u32) -> GramReport {
    let family: Vec<_> = mixed_basis_indices(max_degree)
        .into_iter()
        .map(|(k, h)| ((k, h), ZBarBasisPoly::monomial(k, h, Complex64::new(1.0, 0.0))))
        .collect();
    gram_of("monomial", &family, "z")
}
