//! Analytical solution of the shear flow of a rarefied gas driven by a
//! plate oscillating in its own plane, from the linearized kinetic equation
//! with a relaxation collision term and diffuse reflection at the wall.
//!
//! The solution proceeds through the classical machinery of singular
//! eigenfunction expansions: the dispersion function and its boundary
//! values on the cut ([`dispersion`]), classification of the problem by the
//! winding of the boundary coefficient and location of the discrete zeros
//! ([`spectrum`]), canonical factorization of the associated Riemann
//! problem ([`factor`]), and assembly of the distribution function,
//! velocity field, drag and dissipation ([`solution`]). A direct
//! discrete-ordinates solver ([`oracle`]) validates the analytical results
//! end to end, and [`cli`] exposes everything as the `stokes2` binary.
//!
//! Everything is dimensionless: lengths in mean free paths, the frequency
//! as ω₁ = ωτ, velocities per plate amplitude; [`solution::Dimensional`]
//! converts to SI.

pub mod cli;
pub mod dispersion;
pub mod error;
pub mod factor;
pub mod oracle;
pub mod quad;
pub mod solution;
pub mod spectrum;

pub use dispersion::Freq;
pub use error::{Result, StokesError};
pub use factor::Factorizer;
pub use oracle::OracleConfig;
pub use solution::{Dimensional, ForceResponse, Profile, WallResponse};
pub use spectrum::SpectrumInfo;
