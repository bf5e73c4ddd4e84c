use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::{invalid, Result};
use crate::gram::GramReport;
use crate::qcomplex::zq_values;
use crate::qfock::{q_factorials, FockElement};
use crate::qhermite::{qhermite_functions, JacksonNodes, QHermiteFunction};

/// Default number of Hermite modes kept by the transform.
pub const DEFAULT_MODES: usize = 16;

/// Function on the signed Jackson nodes `+-lambda q^j`, values in node order
/// (ascending `j`, `+` before `-`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacksonFunction {
    pub values: Vec<Complex64>,
}

impl JacksonFunction {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn zero(nodes: &JacksonNodes) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); nodes.len()])
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(nodes: &JacksonNodes, f: F) -> Self {
        Self::new(nodes.t.iter().map(|&t| f(t)).collect())
    }

    /// `int f conj(g) d_q t` over `[-lambda, lambda]`.
    pub fn inner(&self, other: &Self, nodes: &JacksonNodes) -> Complex64 {
        nodes.inner(&self.values, &other.values)
    }

    pub fn norm(&self, nodes: &JacksonNodes) -> f64 {
        self.inner(self, nodes).re.sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.values.iter().map(|v| v * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.values.len(), other.values.len(), "functions on different node sets");
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }
}

/// Everything the transform needs for a fixed `(q, M, J)`: the nodes, the
/// normalized q-Hermite functions `H~_0 .. H~_{M-1}` and `1/sqrt([n]_q!)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BargmannKernelTable {
    pub modes: usize,
    pub nodes: JacksonNodes,
    pub functions: Vec<QHermiteFunction>,
    pub fock_scale: Vec<f64>,
    pub ctx: QContext,
}

impl BargmannKernelTable {
    /// Nodes up to `ctx.quad_max_level`, modes `0 .. modes`.
    pub fn new(modes: usize, ctx: &QContext) -> Result<Self> {
        if modes == 0 {
            return Err(invalid("the transform needs at least one mode"));
        }
        let nodes = JacksonNodes::new(ctx);
        let functions = qhermite_functions(modes - 1, &nodes, ctx);
        let fock_scale = q_factorials(modes - 1, ctx).into_iter().map(|f| 1.0 / f.sqrt()).collect();
        Ok(Self { modes, nodes, functions, fock_scale, ctx: *ctx })
    }

    /// `H~_n` as a node function.
    pub fn hermite_function(&self, n: usize) -> JacksonFunction {
        JacksonFunction::from_real(&self.functions[n].values)
    }

    /// `int f H~_n d_q t` for `n < modes`.
    pub fn hermite_coefficients(&self, f: &JacksonFunction) -> Vec<Complex64> {
        assert_eq!(f.values.len(), self.nodes.len(), "function is not sampled on these nodes");
        self.functions
            .iter()
            .map(|h| {
                self.nodes
                    .jackson_weight
                    .iter()
                    .zip(&f.values)
                    .zip(&h.values)
                    .map(|((w, v), hv)| v * (w * hv))
                    .sum()
            })
            .collect()
    }

    /// `(B_q f)(z_q) = int f(t) A(z_q, t) d_q t`, as coefficients
    /// `b_n = int f H~_n / sqrt([n]_q!)` on `z_q^n`.
    pub fn forward(&self, f: &JacksonFunction) -> FockElement {
        let coeffs = self
            .hermite_coefficients(f)
            .into_iter()
            .zip(&self.fock_scale)
            .map(|(c, s)| c * *s)
            .collect();
        FockElement::new(coeffs, &self.ctx)
    }

    /// Adjoint of [`forward`](Self::forward) on the kept modes:
    /// `sum b_n sqrt([n]_q!) H~_n`.
    pub fn adjoint(&self, f: &FockElement) -> JacksonFunction {
        let mut out = JacksonFunction::zero(&self.nodes);
        for (n, s) in self.fock_scale.iter().enumerate() {
            let c = f.coeff(n) / *s;
            for (v, h) in out.values.iter_mut().zip(&self.functions[n].values) {
                *v += c * h;
            }
        }
        out
    }

    /// `Phi_z(t) = A(z_q, t) = sum_n z_q^n / sqrt([n]_q!) H~_n(t)`.
    pub fn coherent_state(&self, z: Complex64) -> JacksonFunction {
        let zq = zq_values(self.modes - 1, z, &self.ctx);
        let coeffs: Vec<Complex64> = zq.iter().zip(&self.fock_scale).map(|(a, s)| a * *s).collect();
        let mut out = JacksonFunction::zero(&self.nodes);
        for (c, h) in coeffs.iter().zip(&self.functions) {
            for (v, hv) in out.values.iter_mut().zip(&h.values) {
                *v += c * hv;
            }
        }
        out
    }
}

/// [`BargmannKernelTable::forward`] with a freshly built table.
pub fn bargmann_forward(f: &JacksonFunction, modes: usize, ctx: &QContext) -> Result<FockElement> {
    Ok(BargmannKernelTable::new(modes, ctx)?.forward(f))
}

/// [`BargmannKernelTable::coherent_state`] with a freshly built table.
pub fn coherent_state(z: Complex64, modes: usize, ctx: &QContext) -> Result<JacksonFunction> {
    Ok(BargmannKernelTable::new(modes, ctx)?.coherent_state(z))
}

/// Fischer Gram matrix of `B_q H~_0, ..., B_q H~_{modes-1}`; the identity
/// when the transform is unitary.
pub fn bargmann_unitarity_gram(modes: usize, ctx: &QContext) -> Result<GramReport> {
    let table = BargmannKernelTable::new(modes, ctx)?;
    let images: Vec<FockElement> = (0..modes).map(|m| table.forward(&table.hermite_function(m))).collect();
    let matrix = images.iter().map(|a| images.iter().map(|b| a.fischer_inner(b)).collect()).collect();
    let labels = (0..modes).map(|m| format!("B{m}")).collect();
    Ok(GramReport::new("bargmann-gram", labels, matrix).with_identity_target())
}
