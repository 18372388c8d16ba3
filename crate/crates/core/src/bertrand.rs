//! Bertrand's chord constructions on the unit circle.
//!
//! Methods are numbered as in the final enumeration of the classical argument:
//! 1. [`ChordMethod::Endpoints`] - two independent uniform points on the circle (P = 1/3);
//! 2. [`ChordMethod::RadiusPoint`] - uniform point on a uniformly oriented radius,
//!    chord perpendicular to the radius there (P = 1/2);
//! 3. [`ChordMethod::DiskPoint`] - area-uniform point in the disk taken as the
//!    chord midpoint (P = 1/4).
//!
//! A chord is "long" when it exceeds `sqrt(3)`, the side of the inscribed
//! equilateral triangle; equivalently its midpoint lies strictly inside the
//! disk of radius 1/2.

use serde::{Deserialize, Serialize};

use crate::geometry::Point2;
use crate::rng::RngStream;
use crate::samplers::MAX_REJECTIONS;
use crate::{Error, Point64, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chord {
    pub p1: Point64,
    pub p2: Point64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChordMethod {
    Endpoints,
    RadiusPoint,
    DiskPoint,
}

impl ChordMethod {
    pub const ALL: [ChordMethod; 3] = [Self::Endpoints, Self::RadiusPoint, Self::DiskPoint];
}

impl Chord {
    /// Chord between the points of the unit circle at angles `a` and `b`.
    pub fn from_angles(a: f64, b: f64) -> Option<Chord> {
        let p1 = Point2::new(a.cos(), a.sin());
        let p2 = Point2::new(b.cos(), b.sin());
        (p1 != p2).then_some(Chord { p1, p2 })
    }

    /// Chord whose midpoint is `mid`, perpendicular to the radius through it.
    /// `None` at the centre (direction undefined) or on/outside the circle.
    pub fn with_midpoint(mid: Point64) -> Option<Chord> {
        let d2 = mid.x * mid.x + mid.y * mid.y;
        if d2 == 0.0 || d2 >= 1.0 {
            return None;
        }
        let d = d2.sqrt();
        let half = (1.0 - d2).sqrt();
        // unit tangent, perpendicular to the radius
        let (tx, ty) = (-mid.y / d, mid.x / d);
        Some(Chord {
            p1: Point2::new(mid.x + half * tx, mid.y + half * ty),
            p2: Point2::new(mid.x - half * tx, mid.y - half * ty),
        })
    }

    /// Chord perpendicular to the radius at angle `phi`, at distance `dist` from the centre.
    pub fn on_radius(phi: f64, dist: f64) -> Option<Chord> {
        if !(0.0..1.0).contains(&dist) {
            return None;
        }
        let (s, c) = phi.sin_cos();
        let half = (1.0 - dist * dist).sqrt();
        Some(Chord {
            p1: Point2::new(dist * c - half * s, dist * s + half * c),
            p2: Point2::new(dist * c + half * s, dist * s - half * c),
        })
    }

    pub fn midpoint(&self) -> Point64 {
        Point2::new((self.p1.x + self.p2.x) / 2.0, (self.p1.y + self.p2.y) / 2.0)
    }
}

pub fn chord_length(c: &Chord) -> f64 {
    c.p1.distance(c.p2)
}

/// Strictly longer than `sqrt(3)`.
pub fn is_long(c: &Chord) -> bool {
    c.p1.distance_squared(c.p2) > 3.0
}

pub fn draw_chord(method: ChordMethod, rng: &mut RngStream) -> Result<Chord> {
    for _ in 0..MAX_REJECTIONS {
        let chord = match method {
            ChordMethod::Endpoints => Chord::from_angles(rng.angle(), rng.angle()),
            ChordMethod::RadiusPoint => {
                let phi = rng.angle();
                Chord::on_radius(phi, rng.uniform())
            }
            ChordMethod::DiskPoint => {
                let r = rng.uniform().sqrt();
                let phi = rng.angle();
                Chord::with_midpoint(Point2::new(r * phi.cos(), r * phi.sin()))
            }
        };
        if let Some(c) = chord {
            return Ok(c);
        }
    }
    Err(Error::NonConvergence {
        attempts: MAX_REJECTIONS,
    })
}

pub fn trial(method: ChordMethod, rng: &mut RngStream) -> Result<bool> {
    Ok(is_long(&draw_chord(method, rng)?))
}

pub fn estimate_long_probability(method: ChordMethod, trials: u64, rng: &mut RngStream) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    let mut hits = 0u64;
    for _ in 0..trials {
        hits += trial(method, rng)? as u64;
    }
    Ok(hits as f64 / trials as f64)
}

pub fn analytic_long_probability(method: ChordMethod) -> f64 {
    match method {
        ChordMethod::Endpoints => 1.0 / 3.0,
        ChordMethod::RadiusPoint => 0.5,
        ChordMethod::DiskPoint => 0.25,
    }
}
