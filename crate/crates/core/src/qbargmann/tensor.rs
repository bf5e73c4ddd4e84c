use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::transform::{BargmannKernelTable, JacksonFunction};
use crate::gram::GramReport;
use crate::qfock::FockElement;

/// Function on the product node grid, `values[i][j] = F(t_i, s_j)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorJacksonFunction {
    pub values: Vec<Vec<Complex64>>,
}

impl TensorJacksonFunction {
    /// `u(t) v(s)`.
    pub fn product(u: &JacksonFunction, v: &JacksonFunction) -> Self {
        Self { values: u.values.iter().map(|a| v.values.iter().map(|b| a * b).collect()).collect() }
    }

    pub fn zero(n: usize) -> Self {
        Self { values: vec![vec![Complex64::new(0.0, 0.0); n]; n] }
    }
}

/// Element `sum c_{k,h} z_q^k zbar_q^h / sqrt([k]_q! [h]_q!)` of the
/// two-variable q-Fock space; the normalized monomials are orthonormal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorFockElement {
    pub coeffs: Vec<Vec<Complex64>>,
}

impl TensorFockElement {
    /// `f(z) g(zbar)` for two one-variable elements.
    pub fn from_product(f: &FockElement, g: &FockElement) -> Self {
        let fact_f = crate::qfock::q_factorials(f.len(), &f.ctx);
        let fact_g = crate::qfock::q_factorials(g.len(), &g.ctx);
        let nf: Vec<Complex64> = f.coeffs.iter().zip(&fact_f).map(|(a, s)| a * s.sqrt()).collect();
        let ng: Vec<Complex64> = g.coeffs.iter().zip(&fact_g).map(|(a, s)| a * s.sqrt()).collect();
        Self { coeffs: nf.iter().map(|a| ng.iter().map(|b| a * b).collect()).collect() }
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .flat_map(|(r, s)| r.iter().zip(s).map(|(a, b)| a * b.conj()))
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.inner(self).re
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .flat_map(|(r, s)| r.iter().zip(s).map(|(a, b)| (a - b).norm()))
            .fold(0.0, f64::max)
    }
}

/// `c_{k,h} = int int F(t, s) H~_k(t) H~_h(s) d_q s d_q t`, with the product
/// kernel `A(z_q, t) A(w_q, s)`. The `s` integral is done first.
pub fn tensor_forward(f: &TensorJacksonFunction, table: &BargmannKernelTable) -> TensorFockElement {
    let nodes = &table.nodes;
    let n = nodes.len();
    assert!(f.values.len() == n && f.values.iter().all(|r| r.len() == n), "function is not on the node grid");
    let m = table.modes;
    let weighted: Vec<Vec<f64>> = table
        .functions
        .iter()
        .map(|h| h.values.iter().zip(&nodes.jackson_weight).map(|(hv, w)| hv * w).collect())
        .collect();
    // inner[i][h] = int F(t_i, s) H~_h(s) d_q s
    let inner: Vec<Vec<Complex64>> = f
        .values
        .iter()
        .map(|row| weighted.iter().map(|h| row.iter().zip(h).map(|(v, hv)| v * hv).sum()).collect())
        .collect();
    let coeffs = (0..m)
        .map(|k| (0..m).map(|h| (0..n).map(|i| inner[i][h] * weighted[k][i]).sum()).collect())
        .collect();
    TensorFockElement { coeffs }
}

/// Gram matrix of the images of `H~_k (x) H~_h`, `k, h < modes`, ordered with
/// `h` varying fastest.
pub fn tensor_unitarity_gram(table: &BargmannKernelTable) -> GramReport {
    let m = table.modes;
    let mut images = Vec::with_capacity(m * m);
    let mut labels = Vec::with_capacity(m * m);
    for k in 0..m {
        for h in 0..m {
            let f = TensorJacksonFunction::product(&table.hermite_function(k), &table.hermite_function(h));
            images.push(tensor_forward(&f, table));
            labels.push(format!("B{k}_{h}"));
        }
    }
    let matrix = images.iter().map(|a| images.iter().map(|b| a.inner(b)).collect()).collect();
    GramReport::new("tensor-bargmann-gram", labels, matrix).with_identity_target()
}
