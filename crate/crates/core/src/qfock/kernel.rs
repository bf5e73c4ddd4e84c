use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::element::FockElement;
use crate::context::QContext;
use crate::error::{domain, Result};
use crate::qcomplex::zq_values;
use crate::qcore::q_number;

/// Relative size of the tail bound at which the kernel series is cut.
pub const KERNEL_TAIL_REL: f64 = 1e-12;

/// Truncated value of the reproducing kernel `K_q(z, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelEvaluation {
    pub z: Complex64,
    pub w: Complex64,
    /// Highest index kept.
    pub n: usize,
    pub value: Complex64,
    /// Bound on the omitted terms from `|z_q^n| <= |z|^n`.
    pub tail_bound: f64,
}

fn check_disc(w: Complex64, ctx: &QContext) -> Result<()> {
    let r = 1.0 / (1.0 - ctx.q());
    if w.norm() >= r {
        return Err(domain(format!("kernel needs |w| < 1/(1-q) = {r}, got |w| = {}", w.norm())));
    }
    Ok(())
}

/// Degree at which the dominated series `sum |z|^n |w|^n / [n]_q!` has a tail
/// below `KERNEL_TAIL_REL` times the running sum, with that tail bound.
fn truncation(z: Complex64, w: Complex64, ctx: &QContext) -> Result<(usize, f64)> {
    let zw = z.norm() * w.norm();
    if zw * (1.0 - ctx.q()) >= 1.0 {
        return Err(domain(format!(
            "kernel series bound diverges for |z||w| = {zw} at q = {}",
            ctx.q()
        )));
    }
    let mut term = 1.0; // |z|^n |w|^n / [n]!
    let mut sum = 1.0;
    for n in 0..ctx.series_max_terms {
        let next = term * zw / q_number(n as f64 + 1.0, ctx);
        // term ratios decrease with n, so the tail is dominated geometrically
        let rho = zw / q_number(n as f64 + 2.0, ctx);
        if rho < 1.0 {
            let tail = next / (1.0 - rho);
            if tail <= KERNEL_TAIL_REL * sum || tail == 0.0 {
                return Ok((n, tail));
            }
        }
        term = next;
        sum += term;
    }
    Err(domain("kernel series did not reach its tolerance within the term cap"))
}

/// `K_q(z, w) = sum_n z_q^n(z) conj(w_q^n(w)) / [n]_q!`.
pub fn kernel_eval(z: Complex64, w: Complex64, ctx: &QContext) -> Result<KernelEvaluation> {
    check_disc(w, ctx)?;
    let (n, tail_bound) = truncation(z, w, ctx)?;
    let value = kernel_section(w, n, ctx)?.eval(z);
    Ok(KernelEvaluation { z, w, n, value, tail_bound })
}

/// `K_q(., w)` truncated at degree `n`: coefficients `conj(w_q^m) / [m]_q!`.
pub fn kernel_section(w: Complex64, n: usize, ctx: &QContext) -> Result<FockElement> {
    check_disc(w, ctx)?;
    let mut fact = 1.0;
    let coeffs = zq_values(n, w, ctx)
        .into_iter()
        .enumerate()
        .map(|(m, v)| {
            if m > 0 {
                fact *= q_number(m as f64, ctx);
            }
            v.conj() / fact
        })
        .collect();
    Ok(FockElement::new(coeffs, ctx))
}

/// `K_q(z, w)` for every `z` in `points`; CSV columns `x,y,re,im,abs`.
pub fn kernel_grid_csv(points: &[Complex64], w: Complex64, ctx: &QContext) -> Result<String> {
    let mut out = String::from("x,y,re,im,abs\n");
    for &z in points {
        let k = kernel_eval(z, w, ctx)?.value;
        out.push_str(&format!("{},{},{},{},{}\n", z.re, z.im, k.re, k.im, k.norm()));
    }
    Ok(out)
}
