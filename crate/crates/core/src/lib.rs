//! Numerical geometry of Euclidean Jordan algebras, their symmetric cones and
//! the associated structure groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`], [`element`], [`spectral`], [`gauge`]: algebras, elements,
//!   spectral decomposition, functional calculus and norms;
//! * [`linop`], [`structure`], [`opnorm`]: operators on `V`, the structure
//!   algebra `str = 𝕃 ⊕ der` and the operator norm for the order-unit norm;
//! * [`cone`]: the symmetric-space geometry of the positive cone;
//! * [`group`]: left-invariant geometry on the cone-preserving group and lifts.

pub mod algebra;
pub mod analytic;
pub mod cone;
pub mod group;
pub mod element;
pub mod error;
pub mod gauge;
pub mod identities;
pub mod linop;
pub mod ode;
pub mod opnorm;
pub mod quadrature;
pub mod random;
pub mod spectral;
pub mod structure;

#[cfg(test)]
pub(crate) mod testutil;

pub use algebra::{make_algebra, Algebra, AlgebraKind};
pub use analytic::sinh_ad_apply;
pub use element::Element;
pub use error::{Error, Result};
pub use gauge::GaugeFunction;
pub use linop::{commutator, op_exp, LinOp};
pub use random::{random_element, random_positive, trial_seed, Sampler};
pub use spectral::{functional_calculus, spectral_decompose, Spectrum};
pub use opnorm::{op_norm, OpNormEstimate};
pub use structure::{split_str, StrDecomposition};
