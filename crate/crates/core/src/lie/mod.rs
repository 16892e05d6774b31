//! Matrix models of the classical Lie algebras and the numeric bracket oracle.

pub mod algebra;
pub mod matrix;
pub mod models;
pub mod oracle;

pub use algebra::{ad_operator, cohomology_dims, cohomology_of_action, killing_ratio, variation, CohomologyDims};
pub use matrix::Matrix;
pub use models::{cartan_generator, in_algebra, in_group, is_generic, lie_basis, root_values, torus_matrix, LieBasis};
pub use oracle::{cartan_metric, differential, hamiltonian_field, numeric_bracket, omega_prime, CartanMetric, ORIENTATION};
