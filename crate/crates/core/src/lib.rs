//! Numerical q-calculus and the q-deformed Fock space.
//!
//! - [`qcore`]: q-numbers, Jackson derivative and integral, q-exponentials, `Gamma_q`.
//! - [`qcomplex`]: q-analytic monomials, complex q-derivatives, complex Hermite
//!   polynomials and `(q, 1/q)` grids.
//! - [`qhermite`]: the q-Hermite polynomials orthogonal under `e_{q^2}(-t^2)`.
//! - [`qfock`]: coefficient model of the q-Fock space and its operators.
//! - [`qbargmann`]: the q-Bargmann transform from Jackson `L^2` to the Fock space.
//! - [`suite`]: the identity verification run used by the command line tool.

pub mod context;
pub mod error;
pub mod gram;
pub mod qcomplex;
pub mod qbargmann;
pub mod qcore;
pub mod qfock;
pub mod qhermite;
pub mod suite;
pub mod util;

pub use context::QContext;
pub use error::{QError, Result};
pub use gram::{Deviation, GramReport};
pub use num_complex::Complex64;
