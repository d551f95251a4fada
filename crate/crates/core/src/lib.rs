//! Numerical integral geometry: invariant-measure samplers over lines, planes
//! and convex-body boundaries, together with Monte Carlo estimators for both
//! sides of the classical chord-power identities (Pleijel, Ambartzumian,
//! Blaschke–Petkantschin, Zähle, Kingman) and their higher-dimensional
//! generalizations.
//!
//! Measure normalization used everywhere: the motion-invariant measure on
//! affine `l`-flats of `R^d` gives the set of flats hitting the unit ball the
//! mass `κ_{d-l}`, the volume of the unit `(d-l)`-ball.
//!
//! Modules:
//! - [`geometry`]: bodies (balls, ellipsoids, polytopes), chords, sections.
//! - [`measures`]: samplers with exactly known normalization.
//! - [`functionals`]: one estimator per side of every identity.
//! - [`verification`]: case registry, z-scores, reports and suites.

pub mod constants;
pub mod error;
pub mod flat;
pub mod functionals;
pub mod geometry;
pub mod histogram;
pub mod measures;
pub mod quadrature;
pub mod stats;
pub mod verification;

pub use error::{GeomError, Result};
pub use flat::AffineSubspace;
pub use geometry::{Body, BoundaryPoint, Chord, Shape};
pub use measures::RngStream;
pub use stats::{MCEstimate, Sampling};

/// Dynamic-dimension column vector used for points and directions.
pub type Vector = nalgebra::DVector<f64>;
