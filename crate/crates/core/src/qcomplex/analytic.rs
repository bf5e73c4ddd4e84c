use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::{BivarPoly, ZBarBasisPoly, PRUNE_REL};
use crate::context::QContext;
use crate::qcore::{q_number, q_number_base};
use crate::util::I;

/// `z_q^n` at the point `z = x + i y`, as the running product
/// `prod_{l < n} (x + i q^l y)`.
pub fn zq_value(n: usize, z: Complex64, ctx: &QContext) -> Complex64 {
    let q = ctx.q();
    let mut acc = Complex64::new(1.0, 0.0);
    let mut ql = 1.0;
    for _ in 0..n {
        acc *= Complex64::new(z.re, ql * z.im);
        ql *= q;
    }
    acc
}

/// All of `z_q^0(z), ..., z_q^n(z)`.
pub fn zq_values(n: usize, z: Complex64, ctx: &QContext) -> Vec<Complex64> {
    let q = ctx.q();
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    let mut ql = 1.0;
    out.push(acc);
    for _ in 0..n {
        acc *= Complex64::new(z.re, ql * z.im);
        ql *= q;
        out.push(acc);
    }
    out
}

/// The q-analytic monomial `z_q^n = (x + i y)(x + i q y)...(x + i q^(n-1) y)`
/// expanded in `x, y`.
pub fn zq_monomial(n: usize, ctx: &QContext) -> BivarPoly {
    let q = ctx.q();
    let mut acc = BivarPoly::one();
    let mut ql = 1.0;
    for _ in 0..n {
        let factor = BivarPoly::from_terms([
            ((1, 0), Complex64::new(1.0, 0.0)),
            ((0, 1), Complex64::new(0.0, ql)),
        ]);
        acc = &acc * &factor;
        ql *= q;
    }
    acc
}

/// The q-anti-analytic monomial `zbar_q^n = conj(z_q^n)`.
pub fn zq_conjugate_monomial(n: usize, ctx: &QContext) -> BivarPoly {
    zq_monomial(n, ctx).conj()
}

fn complex_derivative(poly: &BivarPoly, ctx: &QContext, sign: f64) -> BivarPoly {
    let q = ctx.q();
    let half = Complex64::new(0.5, 0.0);
    let mut out = BivarPoly::zero();
    let mut scale: f64 = 0.0;
    for ((a, b), c) in poly.terms() {
        if a > 0 {
            let t = half * c * q_number(a as f64, ctx);
            scale = scale.max(t.norm());
            out.add_term(a - 1, b, t);
        }
        if b > 0 {
            let t = sign * half * I * c * q_number_base(b as f64, 1.0 / q);
            scale = scale.max(t.norm());
            out.add_term(a, b - 1, t);
        }
    }
    out.pruned_abs(PRUNE_REL * scale)
}

/// Complex q-derivative `D_z = (D_x^q - i D_y^{1/q}) / 2`, applied exactly on
/// monomials: `x^a y^b -> ([a]_q x^(a-1) y^b - i [b]_{1/q} x^a y^(b-1)) / 2`.
pub fn dz(poly: &BivarPoly, ctx: &QContext) -> BivarPoly {
    complex_derivative(poly, ctx, -1.0)
}

/// `D_zbar = (D_x^q + i D_y^{1/q}) / 2`; its kernel is the q-analytic functions.
pub fn dzbar(poly: &BivarPoly, ctx: &QContext) -> BivarPoly {
    complex_derivative(poly, ctx, 1.0)
}

/// Position operator on polynomials: `X_q p = z * p(x, q y)`.
pub fn position_poly(poly: &BivarPoly, ctx: &QContext) -> BivarPoly {
    let z = BivarPoly::from_terms([((1, 0), Complex64::new(1.0, 0.0)), ((0, 1), I)]);
    &z * &poly.dilate_y(ctx.q())
}

/// Coefficients `C_{i,j}` (key `(i, j)`, `i + j = n`) of
/// `z_q^(n+1) = z * sum C_{i,j} z^i zbar^j`.
///
/// Built by convolving with one factor `A_l z + B_l zbar`,
/// `A_l = (1 + q^l)/2`, `B_l = (1 - q^l)/2`, at a time.
pub fn zq_expansion_coeffs(n: usize, ctx: &QContext) -> ZBarBasisPoly {
    let q = ctx.q();
    let mut coeffs = vec![1.0f64]; // index = power of z so far
    let mut ql = 1.0;
    for _ in 1..=n {
        ql *= q;
        let (a, b) = ((1.0 + ql) / 2.0, (1.0 - ql) / 2.0);
        let mut next = vec![0.0; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] += a * c;
            next[i] += b * c;
        }
        coeffs = next;
    }
    ZBarBasisPoly::from_terms(
        coeffs
            .into_iter()
            .enumerate()
            .map(|(i, c)| ((i as u32, (n - i) as u32), Complex64::new(c, 0.0))),
    )
}

/// `z_q^n` in the `(z, zbar)` basis.
pub fn zq_in_zbar(n: usize, ctx: &QContext) -> ZBarBasisPoly {
    if n == 0 {
        return ZBarBasisPoly::one();
    }
    &ZBarBasisPoly::z() * &zq_expansion_coeffs(n - 1, ctx)
}

/// Outcome of testing `|z_q^n| <= |z|^n` on a sample set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominationReport {
    pub n: usize,
    pub checked: usize,
    pub violations: usize,
    /// Largest observed `|z_q^n| / |z|^n` (1 on the real axis).
    pub max_ratio: f64,
}

impl DominationReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

pub fn modulus_domination_check(n: usize, samples: &[(f64, f64)], ctx: &QContext) -> DominationReport {
    let mut violations = 0;
    let mut max_ratio: f64 = 0.0;
    for &(x, y) in samples {
        let z = Complex64::new(x, y);
        let lhs = zq_value(n, z, ctx).norm();
        let rhs = z.norm().powi(n as i32);
        if rhs > 0.0 {
            max_ratio = max_ratio.max(lhs / rhs);
        }
        if lhs > rhs * (1.0 + 1e-12) {
            violations += 1;
        }
    }
    DominationReport { n, checked: samples.len(), violations, max_ratio }
}
