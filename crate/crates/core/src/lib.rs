//! Numerical companion to the theory of Harnack inequalities and the harmonic
//! Schwarz lemma.
//!
//! The crate is organised bottom-up:
//!
//! - [`domains`]: the planar and n-dimensional domains together with exact
//!   boundary-distance oracles and seeded interior sampling.
//! - [`specfun`]: complete elliptic integral `K(r)`, the modulus function
//!   `mu(r)` and its inverse, the distortion function `phi_K`, `c(K)` and
//!   sphere surface areas.
//! - [`metrics`]: hyperbolic, distance-ratio and quasihyperbolic metrics and
//!   their comparison inequalities.
//! - [`harnack`]: Harnack constants, the empirical Harnack verifier, the
//!   Harnack metric on the ball and half-space, and bound calculators for
//!   quasiregular and quasiconformal mappings.
//! - [`harmonic`]: a Poisson-integral engine on disks together with
//!   Schwarz-type value and gradient bounds and their extremal functions.
//! - [`verify`]: the record type shared by every inequality sweep.

pub mod domains;
pub mod error;
pub mod harmonic;
pub mod harnack;
pub mod metrics;
mod quadrature;
pub mod sampling;
pub mod specfun;
pub mod verify;

pub use domains::{Domain, DomainKind, Point, SamplingBox};
pub use error::{Error, Result};
pub use verify::{Summary, VerificationRecord};
