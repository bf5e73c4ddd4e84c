//! q-Hermite polynomials orthogonal under `e_{q^2}(-t^2)` on `[-lambda, lambda]`,
//! their ladder identities and the normalized q-Hermite functions.

mod nodes;
mod polys;
mod realpoly;

pub use nodes::{
    hermite_at_node, hermite_values_at, lambda_k, qhermite_function, qhermite_functions, qhermite_gram, qhermite_orthogonality,
    weight_relation_at, weight_relation_check, JacksonNodes, OrthogonalityEntry, QHermiteFunction,
};
pub use polys::{
    classical_hermite, classical_limit_gap, qhermite_annihilate, qhermite_create, qhermite_eigencheck,
    qhermite_eigenvalue, qhermite_explicit, qhermite_recurrence, PolyResidual, QHermitePoly,
};
pub use realpoly::RealPoly;
