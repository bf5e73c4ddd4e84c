use serde::{Deserialize, Serialize};

use super::numbers::q_number_base;
use crate::context::QContext;
use crate::error::{domain, invalid, Result};

/// Which of the two Jackson exponentials a [`QExpVariant`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExpKind {
    /// `E(x) = sum x^k / [k]!`
    BigE,
    /// `e(x) = sum base^(k(k-1)/2) x^k / [k]!`
    SmallE,
}

/// A q-exponential series.
///
/// `base` enters the Gaussian factor `base^(k(k-1)/2)` of the small
/// exponential; `factorial_base` is the base of the brackets in `[k]!`.
/// The ordinary `E_q`, `e_q` have both equal to `q`. For the Hermite weight
/// `e_{q^2}` two readings exist: the substituted series (both bases `q^2`,
/// see [`QExpVariant::hermite_weight`]) and the mixed series with Gaussian
/// base `q^2` but brackets in `q` ([`QExpVariant::hermite_weight_mixed`]).
/// Only the substituted one is compatible with the Hermite orthogonality
/// relation and the moment identity, so it is the one used for weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QExpVariant {
    pub kind: ExpKind,
    pub base: f64,
    pub factorial_base: f64,
}

impl QExpVariant {
    pub fn new(kind: ExpKind, base: f64, factorial_base: f64) -> Result<Self> {
        for b in [base, factorial_base] {
            if !(b > 0.0 && b < 1.0) {
                return Err(invalid(format!("exponential base must lie in (0, 1), got {b}")));
            }
        }
        Ok(Self { kind, base, factorial_base })
    }

    /// `E_p`.
    pub fn big(base: f64) -> Result<Self> {
        Self::new(ExpKind::BigE, base, base)
    }

    /// `e_p`.
    pub fn small(base: f64) -> Result<Self> {
        Self::new(ExpKind::SmallE, base, base)
    }

    /// Canonical Hermite weight `e_{q^2}`: the small exponential at base `q^2`.
    pub fn hermite_weight(ctx: &QContext) -> Self {
        let q2 = ctx.q() * ctx.q();
        Self { kind: ExpKind::SmallE, base: q2, factorial_base: q2 }
    }

    /// `sum q^(j(j-1)) u^j / [j]_q!`, kept for comparison with the canonical weight.
    pub fn hermite_weight_mixed(ctx: &QContext) -> Self {
        let q = ctx.q();
        Self { kind: ExpKind::SmallE, base: q * q, factorial_base: q }
    }

    /// Radius of absolute convergence: `1/(1 - factorial_base)` for `E`,
    /// infinite for `e`.
    pub fn radius(&self) -> f64 {
        match self.kind {
            ExpKind::BigE => 1.0 / (1.0 - self.factorial_base),
            ExpKind::SmallE => f64::INFINITY,
        }
    }
}

/// Value of a truncated series together with the number of terms summed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
}

/// Partial sum of the exponential series, stopping once a term is below
/// `series_term_tol` relative to the running sum or at `series_max_terms`.
pub fn q_exp_series(variant: &QExpVariant, x: f64, ctx: &QContext) -> Result<SeriesSum> {
    if variant.kind == ExpKind::BigE && x.abs() >= variant.radius() {
        return Err(domain(format!(
            "E series diverges for |x| = {} >= {}",
            x.abs(),
            variant.radius()
        )));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut gauss = 1.0; // base^(k-1) for the current step
    let mut k = 1usize;
    while k < ctx.series_max_terms {
        let ratio = x / q_number_base(k as f64, variant.factorial_base);
        term *= match variant.kind {
            ExpKind::BigE => ratio,
            ExpKind::SmallE => {
                let r = gauss * ratio;
                gauss *= variant.base;
                r
            }
        };
        sum += term;
        k += 1;
        if term.abs() <= ctx.series_term_tol * sum.abs() {
            break;
        }
    }
    Ok(SeriesSum { value: sum, terms: k })
}

/// q-exponential `E_p(x)` or `e_p(x)`; see [`QExpVariant`].
pub fn q_exp(variant: &QExpVariant, x: f64, ctx: &QContext) -> Result<f64> {
    q_exp_series(variant, x, ctx).map(|s| s.value)
}

/// `(a; p)_inf = prod_{j >= 0} (1 - a p^j)`.
///
/// With `a = -(1 - p) x` this is the product form of the small exponential
/// `e_p(x)`; with `a = p^m` it gives the Hermite weight on the Jackson node
/// `lambda q^m` exactly, including the zero at `m = 0`.
pub fn q_pochhammer_inf(a: f64, base: f64, ctx: &QContext) -> f64 {
    let mut acc = 1.0;
    let mut factor = a;
    for _ in 0..ctx.series_max_terms {
        acc *= 1.0 - factor;
        factor *= base;
        if factor.abs() <= ctx.series_term_tol || acc == 0.0 {
            break;
        }
    }
    acc
}
