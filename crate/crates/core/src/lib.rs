//! Character varieties of free abelian groups in classical groups, made
//! executable on the maximal torus.
//!
//! * [`laurent`], [`weyl`]: the torus coordinate ring and its Weyl symmetry.
//! * [`chevalley`]: trace-generator images and the level-reduction
//!   decomposition of Weyl-invariant Laurent polynomials.
//! * [`poisson`]: the symbolic Poisson algebra of torus trace functions.
//! * [`lie`]: matrix models of the classical Lie algebras, Killing constants,
//!   variation functions, ℤᴺ-cohomology and a numeric symplectic oracle.

pub mod chevalley;
pub mod error;
pub mod exponent;
pub mod group;
pub mod json;
pub mod laurent;
pub mod lie;
pub mod point;
pub mod poisson;
pub mod sampling;
pub mod scalar;
pub mod weyl;

pub use chevalley::{decompose, Decomposer, GeneratorPoly, GeneratorSymbol};
pub use error::{Error, Result};
pub use exponent::ExponentMatrix;
pub use group::{Family, GroupSpec};
pub use laurent::LaurentPoly;
pub use point::TorusPoint;
pub use poisson::{PoissonAlgebra, TauPoly};
pub use scalar::{GaussScalar, Scalar};
