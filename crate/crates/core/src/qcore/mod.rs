//! Scalar q-calculus: q-numbers, q-factorials and binomials, the Jackson
//! derivative and integral, the two q-exponentials and the q-Gamma function.

mod exp;
mod gamma;
mod jackson;
mod numbers;

pub use exp::{q_exp, q_exp_series, q_pochhammer_inf, ExpKind, QExpVariant, SeriesSum};
pub use gamma::{q_gamma, q_gamma_integral, q_gamma_moment_check, MomentCheck};
pub use jackson::{
    jackson_integral, jackson_integral_detailed, jackson_symmetric, JacksonQuadrature, JacksonSum,
};
pub use numbers::{
    q_binomial, q_bracket_gap, q_derivative, q_derivative_base, q_dilate, q_factorial,
    q_number, q_number_base,
};
