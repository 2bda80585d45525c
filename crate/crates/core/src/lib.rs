//! Exact arithmetic for synchronous correlations between finite sets, treated as
//! morphisms of a category: construction, composition, class membership, and the
//! section/retraction/monomorphism/epimorphism properties with explicit witnesses.

pub mod boole;
pub mod category;
pub mod complex;
pub mod constructors;
pub mod correlation;
pub mod error;
pub mod linalg;
pub mod morphology;
pub mod rational;
pub mod set;
pub mod simplex;

pub use complex::{GaussianRational, GaussianRationalMatrix};
pub use correlation::{Correlation, CorrelationFile, DeterministicPair, KernelVector, Side};
pub use error::{Error, Party, Result};
pub use rational::Rational;
pub use set::FiniteSet;
