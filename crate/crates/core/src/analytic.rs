//! Closed-form obtuse-triangle probabilities and the two one-dimensional models.
//!
//! The L and M constructions fix one side at unit length and ask where the third
//! vertex may fall. With the longest side fixed, the admissible vertex region is
//! half of the lens cut by two unit circles, area `(pi/3 - sqrt(3)/4) / 2`, and
//! the obtuse part is a quarter disk of radius 1/2, area `pi/16`. With the
//! medium side fixed, the region has area `pi/6 + sqrt(3)/4` and the obtuse part
//! is a quarter of the unit disk, `pi/4`. (An often-quoted total of
//! `pi/6 - sqrt(3)/2` for the latter is wrong: it is negative.)
//!
//! The angle-line model drops two points on a segment of length pi, reading the
//! three pieces as angles; the big-angle model draws the largest angle uniformly
//! on [pi/3, pi]. Both give 3/4.

use serde::{Deserialize, Serialize};

use crate::rng::RngStream;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObtuseModel {
    LMethod,
    MMethod,
    AngleLine,
    BigAngle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionAreas<T> {
    pub favorable: T,
    pub total: T,
}

impl<T: Scalar> RegionAreas<T> {
    pub fn ratio(&self) -> T {
        self.favorable / self.total
    }
}

pub fn region_areas<T: Scalar>(model: ObtuseModel) -> Result<RegionAreas<T>> {
    let pi = T::PI();
    let root3 = T::lit(3.0).sqrt();
    let four = T::lit(4.0);
    match model {
        ObtuseModel::LMethod => Ok(RegionAreas {
            favorable: pi / T::lit(16.0),
            total: (pi / T::lit(3.0) - root3 / four) / T::lit(2.0),
        }),
        ObtuseModel::MMethod => Ok(RegionAreas {
            favorable: pi / four,
            total: pi / T::lit(6.0) + root3 / four,
        }),
        other => Err(Error::Domain(format!("{other:?} has no planar region"))),
    }
}

pub fn analytic_obtuse<T: Scalar>(model: ObtuseModel) -> T {
    match model {
        ObtuseModel::LMethod | ObtuseModel::MMethod => region_areas::<T>(model)
            .expect("planar model")
            .ratio(),
        ObtuseModel::AngleLine | ObtuseModel::BigAngle => T::lit(0.75),
    }
}

/// Two points at `p1`, `p2` in [0, pi] split the angle line into three
/// segments; obtuse iff one exceeds pi/2.
pub fn angle_line_obtuse(p1: f64, p2: f64) -> bool {
    let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
    let longest = lo.max(hi - lo).max(std::f64::consts::PI - hi);
    longest > std::f64::consts::FRAC_PI_2
}

#[inline]
pub fn big_angle_obtuse(angle: f64) -> bool {
    angle > std::f64::consts::FRAC_PI_2
}

pub fn angle_line_trial(rng: &mut RngStream) -> bool {
    let pi = std::f64::consts::PI;
    let p1 = pi * rng.uniform();
    angle_line_obtuse(p1, pi * rng.uniform())
}

pub fn big_angle_trial(rng: &mut RngStream) -> bool {
    let pi = std::f64::consts::PI;
    big_angle_obtuse(rng.uniform_in(pi / 3.0, pi))
}

fn fraction(trials: u64, mut hit: impl FnMut() -> bool) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    let hits = (0..trials).filter(|_| hit()).count();
    Ok(hits as f64 / trials as f64)
}

pub fn simulate_angle_line(trials: u64, rng: &mut RngStream) -> Result<f64> {
    fraction(trials, || angle_line_trial(rng))
}

pub fn simulate_big_angle(trials: u64, rng: &mut RngStream) -> Result<f64> {
    fraction(trials, || big_angle_trial(rng))
}
