//! Polynomial model of q-analytic monomials, the complex q-derivatives and
//! the Gaussian-weighted realization over the plane.

mod analytic;
mod elliptic;
mod grid;
mod poly;
mod realization;

pub use analytic::{
    dz, dzbar, modulus_domination_check, position_poly, zq_conjugate_monomial, zq_expansion_coeffs,
    zq_in_zbar, zq_monomial, zq_value, zq_values, DominationReport,
};
pub use elliptic::{elliptic_family_gram, EllipticVariable};
pub use grid::{qgrid_generate, reference_seed_set, GridPoint, QGrid};
pub use poly::{BivarPoly, Poly2, Xy, ZBarBasisPoly, ZZbar, PRUNE_REL};
pub use realization::{
    complex_hermite, gaussian_inner, mixed_basis_gram, mixed_basis_indices, mixed_monomial,
    monomial_gram, HermiteSeries,
};
