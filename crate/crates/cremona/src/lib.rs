//! Exact-arithmetic toolkit for constructing and certifying Cremona
//! transformations of projective space: de Jonquières maps from linear
//! constraints, stereographic projections of monoid hypersurfaces, monoid
//! interpolation systems, double-projection pipelines for reduced schemes,
//! and contraction of unions of rational varieties. Everything runs over
//! arbitrary-precision rationals; every emitted map carries an exact
//! inverse certificate that can be re-checked independently of the search
//! that produced it.

pub mod error;
pub mod scalar;
pub mod poly;
pub mod gcd;
pub mod matrix;
pub mod projective;
pub mod ratmap;
pub mod monoid;
pub mod dejonquieres;
pub mod interpolation;
pub mod chain;
pub mod equivalence;
pub mod json;
pub mod cli;

pub use error::{Error, Result};
pub use scalar::Rat;
pub use poly::{FormTuple, HomogeneousForm};
pub use projective::{LinearAutomorphism, LinearSubspace, ProjectivePoint, Sampler};
pub use ratmap::{InverseCertificate, ParamScheme, RationalMap, SchemeComponent};
pub use monoid::{BiVertexMonoid, Monoid};
pub use dejonquieres::DeJonquieresMap;
pub use interpolation::MonoidSystem;
pub use chain::CremonaChain;
