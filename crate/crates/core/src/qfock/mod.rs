//! Coefficient model of the q-Fock space over the basis `z_q^n`: Fischer
//! product, reproducing kernel and the oscillator operators.

mod element;
mod kernel;

pub use element::{adjoint_check, commutator_check, ladder_adjoint_gap, AdjointGap, CommutatorReport, FockElement};
pub(crate) use element::q_factorials;
pub use kernel::{kernel_eval, kernel_grid_csv, kernel_section, KernelEvaluation, KERNEL_TAIL_REL};
