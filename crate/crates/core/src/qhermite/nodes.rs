use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::Result;
use crate::gram::GramReport;
use super::polys::qhermite_recurrence;
use crate::qcore::{q_exp, q_factorial, q_gamma, q_number, q_pochhammer_inf, QExpVariant};
use crate::Complex64;

/// Signed Jackson nodes `t = s lambda q^j`, `0 <= j <= J`, of the symmetric
/// integral over `[-lambda, lambda]`, ordered by ascending `j` with `+` before `-`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacksonNodes {
    pub q: f64,
    pub lambda: f64,
    pub depth: usize,
    pub t: Vec<f64>,
    /// Jackson weight `(1 - q) lambda q^j` of each node.
    pub jackson_weight: Vec<f64>,
    /// `e_{q^2}(-t^2)` at each node; equals `(q^{2j}; q^2)_inf`, so it is
    /// exactly zero at `t = +-lambda`.
    pub hermite_weight: Vec<f64>,
}

impl JacksonNodes {
    /// Nodes up to `j = ctx.quad_max_level`.
    pub fn new(ctx: &QContext) -> Self {
        let q = ctx.q();
        let q2 = q * q;
        let depth = ctx.quad_max_level;
        let lambda = ctx.lambda();

        // suffix products (q^{2j}; q^2)_inf = prod_{i >= j} (1 - q^{2i})
        let mut pochhammer = vec![0.0; depth + 1];
        let mut acc = q_pochhammer_inf(q2.powi(depth as i32 + 1), q2, ctx);
        for j in (0..=depth).rev() {
            acc *= 1.0 - q2.powi(j as i32);
            pochhammer[j] = acc;
        }

        let n = 2 * (depth + 1);
        let mut t = Vec::with_capacity(n);
        let mut jackson_weight = Vec::with_capacity(n);
        let mut hermite_weight = Vec::with_capacity(n);
        let mut qj = 1.0;
        for w in pochhammer {
            for s in [1.0, -1.0] {
                t.push(s * lambda * qj);
                jackson_weight.push((1.0 - q) * lambda * qj);
                hermite_weight.push(w);
            }
            qj *= q;
        }
        Self { q, lambda, depth, t, jackson_weight, hermite_weight }
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// `int f g d_q t` for real node values.
    pub fn integrate_product(&self, f: &[f64], g: &[f64]) -> f64 {
        self.jackson_weight.iter().zip(f).zip(g).map(|((w, a), b)| w * a * b).sum()
    }

    /// `int f conj(g) d_q t` for complex node values.
    pub fn inner(&self, f: &[Complex64], g: &[Complex64]) -> Complex64 {
        self.jackson_weight.iter().zip(f).zip(g).map(|((w, a), b)| a * b.conj() * *w).sum()
    }

    /// `H_0 .. H_{k_max}` at every node, indexed `[k][node]`.
    ///
    /// The forward recurrence is unstable here: `H_k` nearly vanishes on the
    /// outer nodes (its weighted norm `Lambda_k` decays like
    /// `q^{k^2/2}`), so the values are taken from the node formula of
    /// [`hermite_at_node`] instead.
    pub fn hermite_values(&self, k_max: usize, ctx: &QContext) -> Vec<Vec<f64>> {
        let mut out = vec![Vec::with_capacity(self.len()); k_max + 1];
        for j in 0..=self.depth {
            let pos = hermite_at_node(j, k_max, ctx);
            for (k, v) in pos.into_iter().enumerate() {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                out[k].push(v);
                out[k].push(sign * v);
            }
        }
        out
    }
}

/// `H_0 .. H_{k_max}` at the node `t = lambda q^j`.
///
/// With `x = t / (lambda q)`, `H_k(t) = ((q+1) lambda q)^k h_k(x)` where the
/// monic `h_k` have generating function
/// `sum h_k(x) s^k / (q;q)_k = (s^2; q^2)_inf / (x s; q)_inf`.
/// At `x = q^m` that function equals `(s; q)_m (-s; q)_inf`, and at `x = 1/q`
/// it equals `(-s; q)_inf / (1 - s/q)`, so each value is a short sum:
/// `h_k(q^m) = (q;q)_k sum_{i <= min(k, m)} (-1)^i q^{i(i-1)/2} [m, i]_q q^{(k-i)(k-i-1)/2} / (q;q)_{k-i}`.
pub fn hermite_at_node(j: usize, k_max: usize, ctx: &QContext) -> Vec<f64> {
    let q = ctx.q();
    // (q;q)_n
    let mut poch = vec![1.0; k_max + 1];
    for n in 1..=k_max {
        poch[n] = poch[n - 1] * (1.0 - q.powi(n as i32));
    }
    // q^{n(n-1)/2} / (q;q)_n: coefficients of (-s;q)_inf
    let tail: Vec<f64> = (0..=k_max).map(|n| q.powi((n * n.saturating_sub(1) / 2) as i32) / poch[n]).collect();
    // coefficients of the finite factor
    let head: Vec<f64> = if j == 0 {
        (0..=k_max).map(|i| q.powi(-(i as i32))).collect()
    } else {
        let m = j - 1;
        let mut c = Vec::with_capacity(k_max + 1);
        let mut gauss = 1.0; // [m, i]_q
        for i in 0..=k_max.min(m) {
            if i > 0 {
                gauss *= (1.0 - q.powi((m + 1 - i) as i32)) / (1.0 - q.powi(i as i32));
            }
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            c.push(sign * q.powi((i * i.saturating_sub(1) / 2) as i32) * gauss);
        }
        c
    };
    let scale = (q + 1.0) * ctx.lambda() * q;
    let mut sk = 1.0;
    (0..=k_max)
        .map(|k| {
            let conv: f64 = head.iter().take(k + 1).enumerate().map(|(i, h)| h * tail[k - i]).sum();
            let v = sk * poch[k] * conv;
            sk *= scale;
            v
        })
        .collect()
}

/// `H_0(t) .. H_{k_max}(t)` at each point, indexed `[k][point]`.
pub fn hermite_values_at(points: &[f64], k_max: usize, ctx: &QContext) -> Vec<Vec<f64>> {
    let q = ctx.q();
    let mut out = vec![vec![1.0; points.len()]];
    if k_max >= 1 {
        out.push(points.iter().map(|t| (q + 1.0) * t).collect());
    }
    for k in 1..k_max {
        let c = (q + 1.0) * q_number(k as f64, ctx) * q.powi(k as i32 + 1);
        let next = points
            .iter()
            .enumerate()
            .map(|(i, t)| (q + 1.0) * t * out[k][i] - c * out[k - 1][i])
            .collect();
        out.push(next);
    }
    out
}

/// `Lambda_k = 2 (q+1)^(k-1) q^((k+1)(k+2)/2) [k]_q! Gamma_{q^2}(1/2)`, the
/// squared weighted norm of `H_k`.
pub fn lambda_k(k: usize, ctx: &QContext) -> f64 {
    let q = ctx.q();
    let g = q_gamma(0.5, &ctx.with_q(q * q).expect("q^2 lies in (0, 1)")).expect("positive argument");
    let expo = ((k + 1) * (k + 2) / 2) as i32;
    2.0 * (q + 1.0).powi(k as i32 - 1) * q.powi(expo) * q_factorial(k, ctx) * g
}

/// Weighted inner product of `H_k` and `H_l` against its closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityEntry {
    pub k: usize,
    pub l: usize,
    pub value: f64,
    /// `delta_{kl} Lambda_k`.
    pub target: f64,
    /// `|value - target| / sqrt(Lambda_k Lambda_l)`.
    pub gap: f64,
}

/// `int_{-lambda}^{lambda} H_k H_l e_{q^2}(-t^2) d_q t`.
pub fn qhermite_orthogonality(k: usize, l: usize, ctx: &QContext) -> OrthogonalityEntry {
    let nodes = JacksonNodes::new(ctx);
    let h = nodes.hermite_values(k.max(l), ctx);
    orthogonality_entry(&nodes, &h, k, l, ctx)
}

fn orthogonality_entry(nodes: &JacksonNodes, h: &[Vec<f64>], k: usize, l: usize, ctx: &QContext) -> OrthogonalityEntry {
    let weighted: Vec<f64> = h[k].iter().zip(&nodes.hermite_weight).map(|(a, w)| a * w).collect();
    let value = nodes.integrate_product(&weighted, &h[l]);
    let (lk, ll) = (lambda_k(k, ctx), lambda_k(l, ctx));
    let target = if k == l { lk } else { 0.0 };
    OrthogonalityEntry { k, l, value, target, gap: (value - target).abs() / (lk * ll).sqrt() }
}

/// Weighted Gram matrix of `H_0 .. H_{k_max}` with target `diag(Lambda_k)`.
pub fn qhermite_gram(k_max: usize, ctx: &QContext) -> GramReport {
    let nodes = JacksonNodes::new(ctx);
    let h = nodes.hermite_values(k_max, ctx);
    let matrix = (0..=k_max)
        .map(|k| {
            (0..=k_max)
                .map(|l| Complex64::new(orthogonality_entry(&nodes, &h, k, l, ctx).value, 0.0))
                .collect()
        })
        .collect();
    let labels = (0..=k_max).map(|k| format!("H{k}")).collect();
    let targets: Vec<f64> = (0..=k_max).map(|k| lambda_k(k, ctx)).collect();
    GramReport::new("hermite-gram", labels, matrix).with_diagonal_target(&targets)
}

/// Largest defect of `H_k(q t) e(-q^2 t^2) = -q^k D_t[H_{k-1}(t) e(-t^2)]`
/// over the nodes `+-lambda q^j`, `j < J`, whose dilates are nodes again.
///
/// The right side is expanded by the q-Leibniz rule
/// `D[g w](t) = D g(t) w(q t) + g(t) D w(t)`, with `D g` taken exactly on the
/// polynomial and `w(q t) - w(t) = q^{2j} w(q t)` read off the product form of
/// the weight. A raw difference quotient would lose every digit once
/// `q^{2j}` drops below the rounding unit.
pub fn weight_relation_check(k: usize, ctx: &QContext) -> f64 {
    assert!(k >= 1, "the weight relation starts at k = 1");
    let q = ctx.q();
    let nodes = JacksonNodes::new(ctx);
    let h = nodes.hermite_values(k, ctx);
    let prev = qhermite_recurrence(k - 1, ctx).pop().expect("k polynomials").poly;
    let d_prev = prev.q_derivative(q);
    let qk = q.powi(k as i32);
    let mut worst: f64 = 0.0;
    let mut q2j = 1.0;
    // node i has its q-dilate at i + 2
    for i in 0..nodes.len().saturating_sub(2) {
        let t = nodes.t[i];
        let next = i + 2;
        let w_qt = nodes.hermite_weight[next];
        let lhs = h[k][next] * w_qt;
        let dw = q2j * w_qt / ((q - 1.0) * t);
        let rhs = -qk * (d_prev.eval(t) * w_qt + h[k - 1][i] * dw);
        worst = worst.max((lhs - rhs).abs());
        if i % 2 == 1 {
            q2j *= q * q;
        }
    }
    worst
}

/// The same defect at an arbitrary `t != 0` inside the series' range,
/// with the weight summed from its series.
pub fn weight_relation_at(k: usize, t: f64, ctx: &QContext) -> Result<f64> {
    assert!(k >= 1, "the weight relation starts at k = 1");
    let q = ctx.q();
    let weight = QExpVariant::hermite_weight(ctx);
    let w = |s: f64| q_exp(&weight, -s * s, ctx);
    let h = hermite_values_at(&[t, q * t], k, ctx);
    let lhs = h[k][1] * w(q * t)?;
    let g = |i: usize, s: f64| -> Result<f64> { Ok(h[k - 1][i] * w(s)?) };
    let rhs = -q.powi(k as i32) * (g(1, q * t)? - g(0, t)?) / ((q - 1.0) * t);
    Ok((lhs - rhs).abs())
}

/// Normalized q-Hermite function `H_k sqrt(e_{q^2}(-t^2)) / sqrt(Lambda_k)` on the nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QHermiteFunction {
    pub k: usize,
    pub norm_sq: f64,
    /// Values in node order.
    pub values: Vec<f64>,
}

/// `H~_0 .. H~_{k_max}` on the given nodes.
pub fn qhermite_functions(k_max: usize, nodes: &JacksonNodes, ctx: &QContext) -> Vec<QHermiteFunction> {
    let root_w: Vec<f64> = nodes.hermite_weight.iter().map(|w| w.sqrt()).collect();
    nodes
        .hermite_values(k_max, ctx)
        .into_iter()
        .enumerate()
        .map(|(k, hk)| {
            let norm_sq = lambda_k(k, ctx);
            let s = 1.0 / norm_sq.sqrt();
            let values = hk.iter().zip(&root_w).map(|(h, r)| h * r * s).collect();
            QHermiteFunction { k, norm_sq, values }
        })
        .collect()
}

pub fn qhermite_function(k: usize, ctx: &QContext) -> QHermiteFunction {
    qhermite_functions(k, &JacksonNodes::new(ctx), ctx).pop().expect("k + 1 functions")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: f64) -> QContext {
        QContext::new(q).unwrap()
    }

    #[test]
    fn node_weights_match_series() {
        let c = ctx(0.5);
        let nodes = JacksonNodes::new(&c);
        assert_eq!(nodes.len(), 2 * 401);
        assert_eq!(nodes.hermite_weight[0], 0.0);
        let v = QExpVariant::hermite_weight(&c);
        for i in [2, 3, 6, 11, 40] {
            let s = q_exp(&v, -nodes.t[i] * nodes.t[i], &c).unwrap();
            assert!((s - nodes.hermite_weight[i]).abs() < 1e-12, "node {i}");
        }
    }

    #[test]
    fn node_formula_matches_polynomials() {
        for q in [0.3, 0.5, 0.9] {
            let c = ctx(q);
            let polys = crate::qhermite::qhermite_recurrence(8, &c);
            for j in [0, 1, 2, 5, 30] {
                let t = c.lambda() * q.powi(j);
                let v = hermite_at_node(j as usize, 8, &c);
                for p in &polys {
                    let scale = p.poly.coeffs().iter().map(|a| a.abs() * t.abs().max(1.0).powi(p.k as i32)).sum::<f64>();
                    assert!((v[p.k] - p.eval(t)).abs() < 1e-13 * scale, "q={q} j={j} k={}", p.k);
                }
            }
        }
    }

    #[test]
    fn high_modes_stay_orthonormal() {
        for q in [0.3, 0.5] {
            let c = ctx(q);
            let nodes = JacksonNodes::new(&c);
            let f = qhermite_functions(20, &nodes, &c);
            for a in [0, 7, 15, 20] {
                for b in [0, 7, 15, 20] {
                    let want = if a == b { 1.0 } else { 0.0 };
                    let v = nodes.integrate_product(&f[a].values, &f[b].values);
                    assert!((v - want).abs() < 1e-12, "q={q} {a} {b}: {v}");
                }
            }
        }
    }

    #[test]
    fn lowest_norm() {
        let c = ctx(0.5);
        let e = qhermite_orthogonality(0, 0, &c);
        assert!((e.value / e.target - 1.0).abs() < 1e-12);
        let g = q_gamma(0.5, &ctx(0.25)).unwrap();
        assert!((lambda_k(0, &c) - 2.0 / 1.5 * 0.5 * g).abs() < 1e-15);
    }

    #[test]
    fn gram_is_diagonal() {
        for q in [0.3, 0.5, 0.9] {
            let g = qhermite_gram(8, &ctx(q));
            assert!(g.deviation.unwrap().max_normalized < 1e-11, "q={q}");
        }
        let e = qhermite_orthogonality(5, 5, &ctx(0.5));
        assert!(e.gap < 1e-12);
    }

    #[test]
    fn weight_relation_on_nodes_and_between() {
        let c = ctx(0.5);
        for k in 1..=6 {
            assert!(weight_relation_check(k, &c) < 1e-13, "k={k}");
            for t in [0.3, -0.8, 1.0, c.lambda()] {
                assert!(weight_relation_at(k, t, &c).unwrap() < 1e-10, "k={k} t={t}");
            }
        }
    }

    #[test]
    fn functions_are_orthonormal() {
        let c = ctx(0.5);
        let nodes = JacksonNodes::new(&c);
        let f = qhermite_functions(6, &nodes, &c);
        assert!((nodes.integrate_product(&f[0].values, &f[0].values) - 1.0).abs() < 1e-12);
        assert!(nodes.integrate_product(&f[2].values, &f[5].values).abs() < 1e-12);
        assert_eq!(f[3].values[0], 0.0);
        assert_eq!(qhermite_function(4, &c), f[4]);
    }
}
