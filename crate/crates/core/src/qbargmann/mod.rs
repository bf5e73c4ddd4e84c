//! The q-Bargmann transform from the Jackson space on `[-lambda, lambda]` to
//! the q-Fock space, and its two-variable tensor version.

mod tensor;
mod transform;

pub use tensor::{tensor_forward, tensor_unitarity_gram, TensorFockElement, TensorJacksonFunction};
pub use transform::{
    bargmann_forward, bargmann_unitarity_gram, coherent_state, BargmannKernelTable, JacksonFunction, DEFAULT_MODES,
};
