use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Deformation parameter together with the truncation policy shared by every
/// series, product and Jackson sum in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QContext {
    q: f64,
    /// Hard cap on the number of terms of any infinite sum or product.
    pub series_max_terms: usize,
    /// A series stops once `|term| <= series_term_tol * |partial sum|`.
    pub series_term_tol: f64,
    /// Largest Jackson node index `J`; nodes are `a q^k` for `0 <= k <= J`.
    pub quad_max_level: usize,
    /// Comparison tolerance used by verification helpers.
    pub default_tol: f64,
}

impl QContext {
    pub const DEFAULT_SERIES_MAX_TERMS: usize = 100_000;
    pub const DEFAULT_SERIES_TERM_TOL: f64 = 1e-17;
    pub const DEFAULT_QUAD_MAX_LEVEL: usize = 400;
    pub const DEFAULT_TOL: f64 = 1e-8;

    /// Context with default truncation settings. Fails unless `0 < q < 1`.
    pub fn new(q: f64) -> Result<Self> {
        Self {
            q,
            series_max_terms: Self::DEFAULT_SERIES_MAX_TERMS,
            series_term_tol: Self::DEFAULT_SERIES_TERM_TOL,
            quad_max_level: Self::DEFAULT_QUAD_MAX_LEVEL,
            default_tol: Self::DEFAULT_TOL,
        }
        .validated()
    }

    pub fn with_quad_level(mut self, level: usize) -> Result<Self> {
        self.quad_max_level = level;
        self.validated()
    }

    pub fn with_series(mut self, max_terms: usize, term_tol: f64) -> Result<Self> {
        self.series_max_terms = max_terms;
        self.series_term_tol = term_tol;
        self.validated()
    }

    pub fn with_default_tol(mut self, tol: f64) -> Result<Self> {
        self.default_tol = tol;
        self.validated()
    }

    /// The same truncation policy at a different deformation parameter,
    /// e.g. `q^2` for the Hermite weight.
    pub fn with_q(mut self, q: f64) -> Result<Self> {
        self.q = q;
        self.validated()
    }

    pub fn validated(self) -> Result<Self> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(invalid(format!("q must lie in (0, 1), got {}", self.q)));
        }
        if self.series_max_terms == 0 || self.quad_max_level == 0 {
            return Err(invalid("truncation caps must be at least 1"));
        }
        if !(self.series_term_tol > 0.0 && self.default_tol > 0.0) {
            return Err(invalid("tolerances must be positive"));
        }
        Ok(self)
    }

    #[inline]
    pub fn q(&self) -> f64 {
        self.q
    }

    /// Half-width `lambda = 1/sqrt(1 - q^2)` of the Hermite support `[-lambda, lambda]`.
    #[inline]
    pub fn lambda(&self) -> f64 {
        1.0 / (1.0 - self.q * self.q).sqrt()
    }
}
