//! Labeled Gram matrices with deviation and spectral diagnostics.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Entrywise comparison of a Gram matrix against its expected value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deviation {
    /// `max |G_ij - T_ij|`.
    pub max_abs: f64,
    /// `max |G_ij - T_ij| / sqrt(|T_ii T_jj|)`; the deviation of the Gram
    /// matrix of the target-normalized family from the identity when the
    /// target is diagonal.
    pub max_normalized: f64,
}

/// A matrix of inner products with its diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramReport {
    pub name: String,
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<Complex64>>,
    pub target: Option<Vec<Vec<Complex64>>>,
    pub deviation: Option<Deviation>,
    pub trace: f64,
    /// Eigenvalues of the Hermitian part, ascending.
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    /// Eigenvalues above `RANK_REL * trace`.
    pub rank: usize,
}

impl GramReport {
    pub const RANK_REL: f64 = 1e-10;

    pub fn new(name: impl Into<String>, labels: Vec<String>, matrix: Vec<Vec<Complex64>>) -> Self {
        let n = matrix.len();
        assert!(matrix.iter().all(|r| r.len() == n), "Gram matrix must be square");
        assert_eq!(labels.len(), n, "one label per row");
        let trace: f64 = (0..n).map(|i| matrix[i][i].re).sum();
        let eigenvalues = if n == 0 {
            Vec::new()
        } else {
            // Hermitian part, so that rounding asymmetry does not leak into the spectrum.
            let m = DMatrix::from_fn(n, n, |i, j| (matrix[i][j] + matrix[j][i].conj()) * 0.5);
            let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
            ev.sort_by(|a, b| a.total_cmp(b));
            ev
        };
        let min_eigenvalue = eigenvalues.first().copied().unwrap_or(0.0);
        let rank = eigenvalues.iter().filter(|&&e| e > Self::RANK_REL * trace).count();
        Self {
            name: name.into(),
            labels,
            matrix,
            target: None,
            deviation: None,
            trace,
            eigenvalues,
            min_eigenvalue,
            rank,
        }
    }

    pub fn with_target(mut self, target: Vec<Vec<Complex64>>) -> Self {
        let n = self.matrix.len();
        assert_eq!(target.len(), n, "target must match the Gram size");
        let mut max_abs: f64 = 0.0;
        let mut max_normalized: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let d = (self.matrix[i][j] - target[i][j]).norm();
                max_abs = max_abs.max(d);
                let s = (target[i][i].norm() * target[j][j].norm()).sqrt();
                if s > 0.0 {
                    max_normalized = max_normalized.max(d / s);
                }
            }
        }
        self.target = Some(target);
        self.deviation = Some(Deviation { max_abs, max_normalized });
        self
    }

    /// Target `diag(values)`.
    pub fn with_diagonal_target(self, values: &[f64]) -> Self {
        let n = values.len();
        let t = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Complex64::new(values[i], 0.0) } else { Complex64::new(0.0, 0.0) })
                    .collect()
            })
            .collect();
        self.with_target(t)
    }

    pub fn with_identity_target(self) -> Self {
        let n = self.matrix.len();
        self.with_diagonal_target(&vec![1.0; n])
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank == self.dim()
    }

    /// Largest `|G_ij|` with `i != j`.
    pub fn max_off_diagonal(&self) -> f64 {
        let n = self.dim();
        let mut m: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m = m.max(self.matrix[i][j].norm());
                }
            }
        }
        m
    }

    /// Matrix layout with one row per basis element:
    /// `label,<l0>_re,<l0>_im,<l1>_re,...`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label");
        for l in &self.labels {
            out.push_str(&format!(",{l}_re,{l}_im"));
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.matrix) {
            out.push_str(l);
            for v in row {
                out.push_str(&format!(",{},{}", v.re, v.im));
            }
            out.push('\n');
        }
        out
    }
}
