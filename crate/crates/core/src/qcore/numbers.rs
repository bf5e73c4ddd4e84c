use crate::context::QContext;
use crate::error::{domain, invalid, Result};

/// `[alpha]_p = (1 - p^alpha)/(1 - p)` for an arbitrary positive base `p != 1`.
///
/// Evaluated through `expm1` so that brackets stay accurate as `p -> 1`.
/// Negative `alpha` gives the negative brackets used by the explicit
/// q-Hermite coefficients.
#[inline]
pub fn q_number_base(alpha: f64, base: f64) -> f64 {
    if alpha == 0.0 {
        return 0.0;
    }
    let ln = base.ln();
    // (1 - p^a)/(1 - p) = expm1(a ln p) / expm1(ln p)
    (alpha * ln).exp_m1() / ln.exp_m1()
}

/// q-number `[alpha]_q`.
#[inline]
pub fn q_number(alpha: f64, ctx: &QContext) -> f64 {
    q_number_base(alpha, ctx.q())
}

/// q-factorial `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: usize, ctx: &QContext) -> f64 {
    (1..=n).map(|m| q_number(m as f64, ctx)).product()
}

/// Gaussian binomial `[n k]_q = [n]_q! / ([n-k]_q! [k]_q!)`.
pub fn q_binomial(n: usize, k: usize, ctx: &QContext) -> Result<f64> {
    if k > n {
        return Err(invalid(format!("q-binomial needs k <= n, got n = {n}, k = {k}")));
    }
    // Cancel the common [n-k]! factor instead of forming three factorials.
    let k = k.min(n - k);
    let mut acc = 1.0;
    for m in 1..=k {
        acc *= q_number((n - k + m) as f64, ctx) / q_number(m as f64, ctx);
    }
    Ok(acc)
}

/// `[n+1]_q - [n]_q`, which equals `q^n`.
pub fn q_bracket_gap(n: usize, ctx: &QContext) -> f64 {
    q_number((n + 1) as f64, ctx) - q_number(n as f64, ctx)
}

/// Jackson derivative with respect to an arbitrary base `p`:
/// `(f(p x) - f(x)) / ((p - 1) x)`.
pub fn q_derivative_base<F: Fn(f64) -> f64>(f: F, x: f64, base: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(domain(
            "Jackson derivative of a black-box function is undefined at x = 0",
        ));
    }
    Ok((f(base * x) - f(x)) / ((base - 1.0) * x))
}

/// Jackson q-derivative `D_x^q f(x)`.
pub fn q_derivative<F: Fn(f64) -> f64>(f: F, x: f64, ctx: &QContext) -> Result<f64> {
    q_derivative_base(f, x, ctx.q())
}

/// Dilation `M_q f(x) = f(q x)`.
pub fn q_dilate<F: Fn(f64) -> f64>(f: F, x: f64, ctx: &QContext) -> f64 {
    f(ctx.q() * x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: f64) -> QContext {
        QContext::new(q).unwrap()
    }

    #[test]
    fn q_number_small_cases() {
        let c = ctx(0.5);
        assert_eq!(q_number(0.0, &c), 0.0);
        assert!((q_number(1.0, &c) - 1.0).abs() < 1e-15);
        assert!((q_number(3.0, &c) - 1.75).abs() < 1e-15);
    }

    #[test]
    fn q_factorial_values() {
        let c = ctx(0.5);
        assert_eq!(q_factorial(0, &c), 1.0);
        // 1 * 1.5 * 1.75
        assert!((q_factorial(3, &c) - 2.625).abs() < 1e-14);
    }

    #[test]
    fn q_binomial_edges_and_value() {
        let c = ctx(0.5);
        assert_eq!(q_binomial(5, 0, &c).unwrap(), 1.0);
        assert!((q_binomial(5, 5, &c).unwrap() - 1.0).abs() < 1e-15);
        // 1 + q + 2q^2 + q^3 + q^4 at q = 1/2
        assert!((q_binomial(4, 2, &c).unwrap() - 2.1875).abs() < 1e-14);
        assert!(matches!(
            q_binomial(3, 4, &c),
            Err(crate::QError::InvalidArgument(_))
        ));
    }

    #[test]
    fn bracket_gap_is_power() {
        assert_eq!(q_bracket_gap(0, &ctx(0.5)), 1.0);
        assert!((q_bracket_gap(3, &ctx(0.5)) - 0.125).abs() < 1e-16);
        let c = ctx(0.3);
        assert!((q_bracket_gap(7, &c) - 0.3f64.powi(7)).abs() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        let c = ctx(0.5);
        let d = q_derivative(|x| x * x * x, 2.0, &c).unwrap();
        assert!((d - 7.0).abs() < 1e-13);
        assert_eq!(q_derivative(|_| 4.2, 1.3, &c).unwrap(), 0.0);
        let c = ctx(0.25);
        let d = q_derivative(f64::sqrt, 1.0, &c).unwrap();
        assert!((d - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn derivative_rejects_origin() {
        let c = ctx(0.5);
        assert!(matches!(
            q_derivative(|x| x, 0.0, &c),
            Err(crate::QError::Domain(_))
        ));
    }

    #[test]
    fn dilation() {
        let c = ctx(0.5);
        assert_eq!(q_dilate(|x| x, 2.0, &c), 1.0);
        let c = ctx(0.3);
        assert!((q_dilate(|x| x * x, 1.0, &c) - 0.09).abs() < 1e-16);
        let twice = q_dilate(|x| q_dilate(|y| y * y, x, &c), 1.0, &c);
        assert!((twice - 0.09f64 * 0.09).abs() < 1e-16);
    }

    #[test]
    fn negative_bracket() {
        // [-2]_q = (1 - q^-2)/(1 - q) = -6 at q = 1/2
        assert!((q_number(-2.0, &ctx(0.5)) + 6.0).abs() < 1e-14);
    }
}
