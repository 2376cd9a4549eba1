//! Exact symbolic calculus of Riemannian curvature measures.
//!
//! Curvature measures `C_kp` are encoded as formal power series in `xi`
//! (weight 1) and `eta` (weight 2), `C_kp <-> xi^(k-2p) eta^p`. With that
//! encoding the module action of `R[t]`, the pullback under isometric
//! immersions, the sphere template evaluations and the hermitian basis
//! changes all become substitutions and products of truncated series with
//! coefficients that are rational combinations of `pi^a * lambda^(b/2)`.
//!
//! The crate is `no_std` and needs only `alloc`. All arithmetic is exact.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod hermitian;
pub mod immersion;
pub mod riemannian;
pub mod scalar;
pub mod series;
pub mod sphere;
pub mod verify;

pub use error::{Error, Result};
pub use hermitian::{HermitianBasis, HermitianElement};
pub use immersion::{RelBasis, RelElement};
pub use riemannian::RElement;
pub use scalar::{ExactScalar, HalfInt, Rat};
pub use series::{Alphabet, GradedSeries, Monomial};
pub use sphere::{IntrinsicVolumeVector, SphereElement};
