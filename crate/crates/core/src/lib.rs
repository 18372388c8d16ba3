//! Monte Carlo laboratory and analytic oracles for classic geometric-probability
//! paradoxes: Bertrand's chords, the broken stick, random obtuse triangles, and
//! the Two Boys / Three Prisoners conditional-probability puzzles.
//!
//! The math layers ([`geometry`], [`stats`], the quadrature in [`stick`] and the
//! closed forms in [`analytic`]) are generic over the floating-point type through
//! [`Scalar`]. Simulation is driven by an `f64` [`RngStream`], and exact discrete
//! answers are [`Rational64`]s. The aliases below name the common concrete
//! instantiations.

pub mod analytic;
pub mod bertrand;
pub mod discrete;
mod error;
pub mod geometry;
pub mod rng;
pub mod runner;
pub mod samplers;
mod scalar;
pub mod stats;
pub mod stick;

pub use error::{Error, Result};
pub use num_rational::Rational64;
pub use rng::RngStream;
pub use scalar::Scalar;

pub type Point64 = geometry::Point2<f64>;
pub type PolarPoint64 = geometry::PolarPoint<f64>;
pub type Triangle64 = geometry::Triangle<f64>;
pub type SideLengths64 = geometry::SideLengths<f64>;
pub type SummaryStats64 = stats::SummaryStats<f64>;
pub type Summary64 = stats::Summary<f64>;

pub type Point32 = geometry::Point2<f32>;
pub type Triangle32 = geometry::Triangle<f32>;
pub type SideLengths32 = geometry::SideLengths<f32>;
pub type SummaryStats32 = stats::SummaryStats<f32>;

/// Crate version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
