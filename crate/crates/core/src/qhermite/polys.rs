use serde::{Deserialize, Serialize};

use super::realpoly::RealPoly;
use crate::context::QContext;
use crate::qcore::{q_factorial, q_number};

/// q-Hermite polynomial `H_k` of degree `k` with leading coefficient `(q+1)^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QHermitePoly {
    pub k: usize,
    pub poly: RealPoly,
    pub ctx: QContext,
}

impl QHermitePoly {
    /// Coefficients `a_k^j` of `t^(k - 2j)`, `j = 0..=k/2`.
    pub fn coefficients(&self) -> Vec<f64> {
        (0..=self.k / 2).map(|j| self.poly.coeff(self.k - 2 * j)).collect()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.poly.eval(t)
    }
}

/// `H_0, ..., H_{k_max}` from
/// `H_{k+1} = (q+1) t H_k - (q+1) [k]_q q^(k+1) H_{k-1}`, `H_0 = 1`, `H_1 = (q+1) t`.
pub fn qhermite_recurrence(k_max: usize, ctx: &QContext) -> Vec<QHermitePoly> {
    let q = ctx.q();
    let mut polys = vec![RealPoly::constant(1.0)];
    if k_max >= 1 {
        polys.push(RealPoly::monomial(1, q + 1.0));
    }
    for k in 1..k_max {
        let up = polys[k].mul_t().scale(q + 1.0);
        let down = polys[k - 1].scale((q + 1.0) * q_number(k as f64, ctx) * q.powi(k as i32 + 1));
        polys.push(&up - &down);
    }
    polys
        .into_iter()
        .enumerate()
        .map(|(k, poly)| QHermitePoly { k, poly, ctx: *ctx })
        .collect()
}

/// `H_k` from its closed form
/// `a_k^j = (q+1)^(k-j) [k]! / ([k-2j]! [-2j][-2j+2]...[-2])`.
pub fn qhermite_explicit(k: usize, ctx: &QContext) -> QHermitePoly {
    let q = ctx.q();
    let kfact = q_factorial(k, ctx);
    let mut coeffs = vec![0.0; k + 1];
    let mut neg_brackets = 1.0;
    for j in 0..=k / 2 {
        if j > 0 {
            neg_brackets *= q_number(-2.0 * j as f64, ctx);
        }
        coeffs[k - 2 * j] =
            (q + 1.0).powi((k - j) as i32) * kfact / (q_factorial(k - 2 * j, ctx) * neg_brackets);
    }
    QHermitePoly { k, poly: RealPoly::from_coeffs(coeffs), ctx: *ctx }
}

/// Physicists' Hermite polynomial `H_k(t) = sum_j (-1)^j k! / (j! (k-2j)!) (2t)^(k-2j)`.
pub fn classical_hermite(k: usize) -> RealPoly {
    let mut prev = RealPoly::constant(1.0);
    if k == 0 {
        return prev;
    }
    let mut cur = RealPoly::monomial(1, 2.0);
    for n in 1..k {
        let next = &cur.mul_t().scale(2.0) - &prev.scale(2.0 * n as f64);
        prev = cur;
        cur = next;
    }
    cur
}

/// Size of a polynomial identity's defect.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyResidual {
    /// Largest absolute coefficient of `lhs - rhs`.
    pub max_abs: f64,
    /// Largest absolute coefficient among the terms entering the identity.
    pub scale: f64,
    /// `max_abs / scale`, or `max_abs` when the scale is zero.
    pub relative: f64,
}

impl PolyResidual {
    pub fn between(lhs: &RealPoly, rhs: &RealPoly) -> Self {
        let max_abs = lhs.max_abs_diff(rhs);
        let scale = lhs.max_abs().max(rhs.max_abs());
        let relative = if scale > 0.0 { max_abs / scale } else { max_abs };
        Self { max_abs, scale, relative }
    }

    pub fn zero() -> Self {
        Self { max_abs: 0.0, scale: 0.0, relative: 0.0 }
    }
}

fn pair(k: usize, ctx: &QContext) -> (RealPoly, RealPoly) {
    let mut h = qhermite_recurrence(k, ctx);
    let hk = h.pop().expect("k + 1 polynomials").poly;
    let hk1 = h.pop().map(|p| p.poly).unwrap_or_default();
    (hk, hk1)
}

/// `D_t H_k` against `(q+1) [k]_q H_{k-1}`.
pub fn qhermite_annihilate(k: usize, ctx: &QContext) -> PolyResidual {
    if k == 0 {
        return PolyResidual::zero();
    }
    let q = ctx.q();
    let (hk, hk1) = pair(k, ctx);
    PolyResidual::between(&hk.q_derivative(q), &hk1.scale((q + 1.0) * q_number(k as f64, ctx)))
}

/// The two raising identities
/// `H_k = ((q+1) t - q^k D) H_{k-1}` and `H_k(q t) = q^k ((q+1) t - D) H_{k-1}`.
pub fn qhermite_create(k: usize, ctx: &QContext) -> (PolyResidual, PolyResidual) {
    if k == 0 {
        return (PolyResidual::zero(), PolyResidual::zero());
    }
    let q = ctx.q();
    let qk = q.powi(k as i32);
    let (hk, hk1) = pair(k, ctx);
    let t_part = hk1.mul_t().scale(q + 1.0);
    let d_part = hk1.q_derivative(q);
    let first = PolyResidual::between(&hk, &(&t_part - &d_part.scale(qk)));
    let second = PolyResidual::between(&hk.dilate(q), &(&t_part - &d_part).scale(qk));
    (first, second)
}

/// Eigenvalue `[k]_q q^(-k)` of the q-Hermite difference operator.
pub fn qhermite_eigenvalue(k: usize, ctx: &QContext) -> f64 {
    q_number(k as f64, ctx) * ctx.q().powi(-(k as i32))
}

/// `(D^2 - (q+1) t D) H_k + (q+1) lambda_k H_k(q t)` as a polynomial defect.
pub fn qhermite_eigencheck(k: usize, ctx: &QContext) -> PolyResidual {
    let q = ctx.q();
    let (hk, _) = pair(k, ctx);
    let d1 = hk.q_derivative(q);
    let lhs = &d1.q_derivative(q) - &d1.mul_t().scale(q + 1.0);
    let rhs = hk.dilate(q).scale(-(q + 1.0) * qhermite_eigenvalue(k, ctx));
    PolyResidual::between(&lhs, &rhs)
}

/// Coefficient-wise distance between `H_k` and the physicists' Hermite
/// polynomial, absolute and relative to the largest classical coefficient.
pub fn classical_limit_gap(k: usize, ctx: &QContext) -> PolyResidual {
    let hk = qhermite_recurrence(k, ctx).pop().expect("k + 1 polynomials").poly;
    let classical = classical_hermite(k);
    let max_abs = hk.max_abs_diff(&classical);
    let scale = classical.max_abs();
    PolyResidual { max_abs, scale, relative: max_abs / scale }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: f64) -> QContext {
        QContext::new(q).unwrap()
    }

    #[test]
    fn low_degrees() {
        let c = ctx(0.5);
        let h = qhermite_recurrence(2, &c);
        assert_eq!(h[0].poly.coeffs(), &[1.0]);
        assert_eq!(h[1].poly.coeffs(), &[0.0, 1.5]);
        // (q+1)^2 t^2 - (q+1) q^2
        assert_eq!(h[2].poly.coeffs(), &[-0.375, 0.0, 2.25]);
        assert_eq!(qhermite_explicit(2, &c).poly.coeffs(), &[-0.375, 0.0, 2.25]);
    }

    #[test]
    fn explicit_matches_recurrence() {
        for q in [0.3, 0.5, 0.9] {
            let c = ctx(q);
            for h in qhermite_recurrence(12, &c) {
                let e = qhermite_explicit(h.k, &c);
                for m in 0..=h.k {
                    let (a, b) = (h.poly.coeff(m), e.poly.coeff(m));
                    assert!((a - b).abs() <= 1e-10 * b.abs().max(1e-300), "q={q} k={} m={m}", h.k);
                }
            }
        }
    }

    #[test]
    fn leading_coefficient_and_parity() {
        let c = ctx(0.7);
        for h in qhermite_recurrence(9, &c) {
            assert!((h.poly.coeff(h.k) - 1.7f64.powi(h.k as i32)).abs() < 1e-12 * 1.7f64.powi(h.k as i32));
            for m in 0..=h.k {
                if (h.k - m) % 2 == 1 {
                    assert_eq!(h.poly.coeff(m), 0.0);
                }
            }
            assert_eq!(h.coefficients().len(), h.k / 2 + 1);
        }
    }

    #[test]
    fn ladder_identities() {
        for q in [0.3, 0.5, 0.9] {
            let c = ctx(q);
            for k in 0..=10 {
                assert!(qhermite_annihilate(k, &c).relative < 1e-12, "q={q} k={k}");
                let (a, b) = qhermite_create(k, &c);
                assert!(a.relative < 1e-12 && b.relative < 1e-12, "q={q} k={k}");
                assert!(qhermite_eigencheck(k, &c).relative < 1e-12, "q={q} k={k}");
            }
        }
    }

    #[test]
    fn first_eigenvalue() {
        assert!((qhermite_eigenvalue(1, &ctx(0.5)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn classical_polynomials() {
        assert_eq!(classical_hermite(0).coeffs(), &[1.0]);
        assert_eq!(classical_hermite(3).coeffs(), &[0.0, -12.0, 0.0, 8.0]);
        assert_eq!(classical_hermite(4).coeffs(), &[12.0, 0.0, -48.0, 0.0, 16.0]);
    }

    #[test]
    fn approaches_classical_family() {
        let near = ctx(1.0 - 1e-6);
        for k in 0..=5 {
            assert!(classical_limit_gap(k, &near).relative < 1e-4, "k={k}");
        }
        // the gap shrinks with 1 - q
        let far = classical_limit_gap(5, &ctx(0.99)).relative;
        let mid = classical_limit_gap(5, &ctx(0.999)).relative;
        assert!(mid < far / 5.0);
    }
}
