//! Exact-arithmetic toolkit for Hom-Lie algebras: (σ,σ)-derivation algebras,
//! dual and coadjoint representations, the coboundary complex, Manin triples,
//! purely Hom-Lie bialgebras, and the classical Hom-Yang-Baxter equation.
//!
//! Everything runs over an exact field (ℚ or a univariate function field
//! ℚ(x)); there is no floating point anywhere.

pub mod error;
pub mod poly;
pub mod scalar;
pub mod linmap;
pub mod multilinear;
pub mod report;
pub mod homlie;
pub mod qwitt;
pub mod derivations;
pub mod reps;
pub mod cohomology;
pub mod bialgebra;
pub mod yangbaxter;
pub mod format;
pub mod cert;

pub use error::HomlieError;
pub use report::CheckReport;
pub use scalar::Scalar;
