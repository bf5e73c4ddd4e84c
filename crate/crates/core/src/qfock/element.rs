use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::qcomplex::{zq_monomial, zq_values, BivarPoly};
use crate::qcore::q_number;
use crate::util::I;

/// `[0]_q!, ..., [n]_q!`.
pub(crate) fn q_factorials(n: usize, ctx: &QContext) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 1.0;
    out.push(acc);
    for m in 1..=n {
        acc *= q_number(m as f64, ctx);
        out.push(acc);
    }
    out
}

/// Finite element `sum a_n z_q^n` of the q-Fock space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockElement {
    pub coeffs: Vec<Complex64>,
    pub ctx: QContext,
}

impl FockElement {
    pub fn new(coeffs: Vec<Complex64>, ctx: &QContext) -> Self {
        Self { coeffs, ctx: *ctx }
    }

    pub fn zero(ctx: &QContext) -> Self {
        Self::new(Vec::new(), ctx)
    }

    /// The basis element `z_q^n`.
    pub fn basis(n: usize, ctx: &QContext) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Self::new(coeffs, ctx)
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// Length of the coefficient vector (degree bound plus one).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Fischer product `sum [n]_q! a_n conj(b_n)`.
    pub fn fischer_inner(&self, other: &Self) -> Complex64 {
        let n = self.len().min(other.len());
        let fact = q_factorials(n, &self.ctx);
        (0..n).map(|m| self.coeffs[m] * other.coeffs[m].conj() * fact[m]).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.fischer_inner(self).re
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect(), &self.ctx)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        Self::new((0..n).map(|m| self.coeff(m) + other.coeff(m)).collect(), &self.ctx)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.len().max(other.len());
        (0..n).map(|m| (self.coeff(m) - other.coeff(m)).norm()).fold(0.0, f64::max)
    }

    /// `f(w)`, i.e. `sum a_n z_q^n` evaluated at the point `w`.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        if self.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        let zq = zq_values(self.len() - 1, w, &self.ctx);
        self.coeffs.iter().zip(zq).map(|(a, z)| a * z).sum()
    }

    /// Expansion as a polynomial in `x, y`.
    pub fn to_poly(&self) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (n, &a) in self.coeffs.iter().enumerate() {
            if a != Complex64::new(0.0, 0.0) {
                out = &out + &zq_monomial(n, &self.ctx).scale(a);
            }
        }
        out
    }

    /// Position operator `X_q = z o M_q^y`: `z_q^n -> z_q^(n+1)`.
    pub fn position(&self) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs, &self.ctx)
    }

    /// Complex q-derivative `D_z`: `z_q^n -> [n]_q z_q^(n-1)`.
    pub fn dz(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, a)| a * q_number(n as f64, &self.ctx))
                .collect(),
            &self.ctx,
        )
    }

    /// Momentum operator `P_q = -i D_z`.
    pub fn momentum(&self) -> Self {
        self.dz().scale(-I)
    }

    /// Annihilation operator `a = (X_q + i P_q) / sqrt(2)`.
    pub fn annihilate(&self) -> Self {
        self.position().add(&self.momentum().scale(I)).scale(FRAC_1_SQRT_2.into())
    }

    /// Creation operator `a^dagger = (X_q - i P_q) / sqrt(2)`.
    pub fn create(&self) -> Self {
        self.position().sub(&self.momentum().scale(I)).scale(FRAC_1_SQRT_2.into())
    }
}

/// Action of `[a, a^dagger]` on one basis element.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CommutatorReport {
    pub n: usize,
    /// Coefficient of `z_q^n` in `[a, a^dagger] z_q^n`.
    pub factor: Complex64,
    /// Coefficient of `z_q^n` in `[D_z, X_q] z_q^n`.
    pub factor_via_dz: Complex64,
    /// Largest coefficient of either image away from index `n`.
    pub off_diagonal: f64,
    pub expected: f64,
}

impl CommutatorReport {
    pub fn gap(&self) -> f64 {
        let e = Complex64::new(self.expected, 0.0);
        (self.factor - e).norm().max((self.factor_via_dz - e).norm()).max(self.off_diagonal)
    }
}

/// Apply `[a, a^dagger]` and `[D_z, X_q]` to `z_q^n`; both scale it by `q^n`.
pub fn commutator_check(n: usize, ctx: &QContext) -> CommutatorReport {
    let e = FockElement::basis(n, ctx);
    let ladder = e.create().annihilate().sub(&e.annihilate().create());
    let remark = e.position().dz().sub(&e.dz().position());
    let off_diagonal = [&ladder, &remark]
        .iter()
        .flat_map(|f| f.coeffs.iter().enumerate().filter(|&(m, _)| m != n).map(|(_, c)| c.norm()))
        .fold(0.0, f64::max);
    CommutatorReport {
        n,
        factor: ladder.coeff(n),
        factor_via_dz: remark.coeff(n),
        off_diagonal,
        expected: ctx.q().powi(n as i32),
    }
}

/// Both sides of an adjointness relation `<A R, Q> = <R, B Q>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdjointGap {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub gap: f64,
}

impl AdjointGap {
    fn of(lhs: Complex64, rhs: Complex64) -> Self {
        Self { lhs, rhs, gap: (lhs - rhs).norm() }
    }
}

/// `<D_z R, Q>` against `<R, X_q Q>`.
pub fn adjoint_check(r: &FockElement, q: &FockElement) -> AdjointGap {
    AdjointGap::of(r.dz().fischer_inner(q), r.fischer_inner(&q.position()))
}

/// `<a R, Q>` against `<R, a^dagger Q>`; the ladder pair is not adjoint
/// for the Fischer product, so this gap is generally nonzero.
pub fn ladder_adjoint_gap(r: &FockElement, q: &FockElement) -> AdjointGap {
    AdjointGap::of(r.annihilate().fischer_inner(q), r.fischer_inner(&q.create()))
}
