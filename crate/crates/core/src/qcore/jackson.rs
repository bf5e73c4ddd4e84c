use serde::{Deserialize, Serialize};

use crate::context::QContext;

/// Terms with `|weight * f| < NODE_CUTOFF` on two consecutive nodes end a sum early.
const NODE_CUTOFF: f64 = 1e-18;

/// Jackson integral over `[a, b]`, computed as `int_0^b - int_0^a` with nodes
/// `a q^k`, `0 <= k <= level`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacksonQuadrature {
    pub a: f64,
    pub b: f64,
    pub level: usize,
    pub ctx: QContext,
}

impl JacksonQuadrature {
    pub fn new(a: f64, b: f64, ctx: &QContext) -> Self {
        Self { a, b, level: ctx.quad_max_level, ctx: *ctx }
    }

    pub fn with_level(mut self, level: usize) -> Self {
        self.level = level;
        self
    }

    /// Nodes `a q^k` and weights `(1 - q) a q^k` of `int_0^a`.
    pub fn nodes_from_origin(a: f64, level: usize, ctx: &QContext) -> Vec<(f64, f64)> {
        let q = ctx.q();
        let mut out = Vec::with_capacity(level + 1);
        let mut qk = 1.0;
        for _ in 0..=level {
            out.push((a * qk, (1.0 - q) * a * qk));
            qk *= q;
        }
        out
    }
}

/// Diagnostics of a Jackson sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacksonSum {
    pub value: f64,
    /// Number of nodes actually evaluated across both endpoint sums.
    pub nodes_used: usize,
    /// `true` when the last node level was reached before the terms decayed.
    pub hit_level_cap: bool,
}

fn from_origin<F: Fn(f64) -> f64>(f: &F, a: f64, level: usize, ctx: &QContext) -> JacksonSum {
    if a == 0.0 {
        return JacksonSum { value: 0.0, nodes_used: 0, hit_level_cap: false };
    }
    let q = ctx.q();
    let mut sum = 0.0;
    let mut qk = 1.0;
    let mut small_run = 0;
    let mut used = 0;
    for _ in 0..=level {
        let w = (1.0 - q) * a * qk;
        let term = w * f(a * qk);
        sum += term;
        used += 1;
        if term.abs() < NODE_CUTOFF {
            small_run += 1;
            if small_run == 2 {
                return JacksonSum { value: sum, nodes_used: used, hit_level_cap: false };
            }
        } else {
            small_run = 0;
        }
        qk *= q;
    }
    JacksonSum { value: sum, nodes_used: used, hit_level_cap: true }
}

/// Jackson integral with truncation diagnostics.
pub fn jackson_integral_detailed<F: Fn(f64) -> f64>(f: F, quad: &JacksonQuadrature) -> JacksonSum {
    let upper = from_origin(&f, quad.b, quad.level, &quad.ctx);
    let lower = from_origin(&f, quad.a, quad.level, &quad.ctx);
    JacksonSum {
        value: upper.value - lower.value,
        nodes_used: upper.nodes_used + lower.nodes_used,
        hit_level_cap: upper.hit_level_cap || lower.hit_level_cap,
    }
}

/// Jackson q-integral `int_a^b f(t) d_q t`.
pub fn jackson_integral<F: Fn(f64) -> f64>(f: F, quad: &JacksonQuadrature) -> f64 {
    jackson_integral_detailed(f, quad).value
}

/// `int_{-h}^{h} f d_q t` summed node by node in ascending `j`, with the
/// positive node `h q^j` before the negative one. No early stop, so the
/// summation order is fixed for a given level.
pub fn jackson_symmetric<F: Fn(f64) -> f64>(f: F, half_width: f64, level: usize, ctx: &QContext) -> f64 {
    JacksonQuadrature::nodes_from_origin(half_width, level, ctx)
        .into_iter()
        .map(|(t, w)| w * f(t) + w * f(-t))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{q_derivative, q_number};

    #[test]
    fn constant_integrates_to_length() {
        let c = QContext::new(0.5).unwrap();
        let v = jackson_integral(|_| 1.0, &JacksonQuadrature::new(0.0, 1.0, &c));
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn identity_integrates_to_inverse_bracket() {
        let c = QContext::new(0.5).unwrap();
        let v = jackson_integral(|t| t, &JacksonQuadrature::new(0.0, 1.0, &c));
        assert!((v - 1.0 / q_number(2.0, &c)).abs() < 1e-10);
        assert!((v - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn fundamental_theorem_for_cube() {
        let c = QContext::new(0.5).unwrap();
        let v = jackson_integral(
            |t| q_derivative(|s| s * s * s, t, &c).unwrap(),
            &JacksonQuadrature::new(0.0, 1.0, &c),
        );
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn general_interval_subtracts() {
        let c = QContext::new(0.3).unwrap();
        let quad = JacksonQuadrature::new(0.5, 1.5, &c);
        let v = jackson_integral(|t| t * t, &quad);
        // int_0^a t^2 = a^3 / [3]_q
        let exact = (1.5f64.powi(3) - 0.5f64.powi(3)) / q_number(3.0, &c);
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn level_cap_is_reported() {
        let c = QContext::new(0.9).unwrap();
        let s = jackson_integral_detailed(|_| 1.0, &JacksonQuadrature::new(0.0, 1.0, &c).with_level(5));
        assert!(s.hit_level_cap);
        assert_eq!(s.nodes_used, 6);
    }

    #[test]
    fn symmetric_sum_kills_odd_functions() {
        let c = QContext::new(0.5).unwrap();
        assert_eq!(jackson_symmetric(|t| t * t * t, 1.3, 200, &c), 0.0);
        let even = jackson_symmetric(|t| t * t, 1.0, 200, &c);
        assert!((even - 2.0 / q_number(3.0, &c)).abs() < 1e-14);
    }
}
