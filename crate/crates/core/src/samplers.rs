//! Random-triangle generators.
//!
//! Each [`SamplerSpec`] defines a different sample space of triangles in the
//! plane. Besides the triangle itself every draw records the polar coordinates
//! of the vertices it placed, which feed the rho/theta columns of the report.

use std::f64::consts::{FRAC_PI_3, PI};
use std::fmt;
use std::str::FromStr;

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

use crate::geometry::{is_degenerate, Point2, PolarPoint, Triangle, DEGENERACY_EPS};
use crate::rng::RngStream;
use crate::{Error, Point64, PolarPoint64, Result, Triangle64};

/// Consecutive rejected draws after which a sampler gives up.
pub const MAX_REJECTIONS: u64 = 1_000_000;

pub const FRACTAL_DEPTH: u32 = 8;
pub const QUOTIENT_LO: f64 = 0.09;
pub const QUOTIENT_HI: f64 = 1.4;

/// Minor:major axis ratio for the ellipse and rectangle samplers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Aspect {
    OneOne,
    OneTwo,
    OneThree,
}

impl Aspect {
    pub const ALL: [Aspect; 3] = [Aspect::OneOne, Aspect::OneTwo, Aspect::OneThree];

    /// `(a, b)`: minor (y) and major (x) extents.
    pub fn axes(self) -> (f64, f64) {
        match self {
            Aspect::OneOne => (1.0, 1.0),
            Aspect::OneTwo => (1.0, 2.0),
            Aspect::OneThree => (1.0, 3.0),
        }
    }

    fn label(self) -> &'static str {
        match self {
            Aspect::OneOne => "1:1",
            Aspect::OneTwo => "1:2",
            Aspect::OneThree => "1:3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MVariant {
    /// theta uniform in [0, pi/3], rho uniform in [1, 2 cos theta]; not area-uniform.
    Polar,
    /// Uniform by area over the same region.
    AreaUniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SamplerSpec {
    /// Deterministic sweep of the largest angle over [pi/3, pi].
    Generated,
    /// Each vertex: theta uniform, rho uniform in [0, 1] (centre-biased).
    PolarUniform,
    /// Each vertex: theta uniform, rho = |N(0, 1)|.
    HalfNormal,
    /// Each vertex area-uniform in the ellipse with the given axes.
    Ellipse(Aspect),
    /// Each vertex uniform in the `b x a` rectangle centred at the origin.
    Rectangle(Aspect),
    /// Each coordinate is `sum_{k=1..depth} depth * u_k`, `u_k` uniform in [-1, 1].
    Fractal { depth: u32 },
    /// Each vertex: theta uniform, rho = sqrt(u / v), u ~ U[0, 1], v ~ U[lo, hi].
    Quotient { lo: f64, hi: f64 },
    /// Longest side fixed on (0,0)-(1,0); third vertex uniform over the region
    /// where it is the longest side and the side at the origin is the medium one.
    LMethod,
    /// Medium side fixed on (0,0)-(1,0); third vertex over the region where
    /// that side is the medium one.
    MMethod(MVariant),
}

/// One triangle plus the polar observations recorded for it.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleOutcome {
    pub triangle: Triangle64,
    pub vertex_polar: ArrayVec<PolarPoint64, 3>,
    pub rejections: u64,
}

impl SamplerSpec {
    /// The thirteen methods of the reference table, in table order.
    pub fn catalog() -> Vec<SamplerSpec> {
        let mut v = vec![Self::Generated, Self::PolarUniform, Self::HalfNormal];
        v.extend(Aspect::ALL.map(Self::Ellipse));
        v.extend(Aspect::ALL.map(Self::Rectangle));
        v.push(Self::Fractal {
            depth: FRACTAL_DEPTH,
        });
        v.push(Self::Quotient {
            lo: QUOTIENT_LO,
            hi: QUOTIENT_HI,
        });
        v.push(Self::LMethod);
        v.push(Self::MMethod(MVariant::AreaUniform));
        v
    }

    /// Rotation-invariant samplers (theta of recorded vertices is uniform).
    pub fn is_isotropic(&self) -> bool {
        matches!(
            self,
            Self::Generated
                | Self::PolarUniform
                | Self::HalfNormal
                | Self::Ellipse(Aspect::OneOne)
                | Self::Quotient { .. }
        )
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Fractal { depth: 0 } => {
                Err(Error::Config("fractal depth must be at least 1".into()))
            }
            Self::Quotient { lo, hi } if !(lo > 0.0 && lo < hi && hi.is_finite()) => Err(Error::Config(
                format!("quotient bounds must satisfy 0 < lo < hi, got [{lo}, {hi}]"),
            )),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Generated => "generated".into(),
            Self::PolarUniform => "polar-uniform".into(),
            Self::HalfNormal => "half-normal".into(),
            Self::Ellipse(a) => format!("ellipse-{}", a.label()),
            Self::Rectangle(a) => format!("rectangle-{}", a.label()),
            Self::Fractal { depth } if *depth == FRACTAL_DEPTH => "fractal".into(),
            Self::Fractal { depth } => format!("fractal-{depth}"),
            Self::Quotient { lo, hi } if *lo == QUOTIENT_LO && *hi == QUOTIENT_HI => "quotient".into(),
            Self::Quotient { lo, hi } => format!("quotient-{lo}-{hi}"),
            Self::LMethod => "l-method".into(),
            Self::MMethod(MVariant::AreaUniform) => "m-method".into(),
            Self::MMethod(MVariant::Polar) => "m-method-polar".into(),
        }
    }
}

impl fmt::Display for SamplerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for SamplerSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let aspect = |label: &str| {
            Aspect::ALL
                .into_iter()
                .find(|a| a.label() == label)
                .ok_or_else(|| Error::Config(format!("unknown aspect ratio `{label}`")))
        };
        let spec = match s {
            "generated" => Self::Generated,
            "polar-uniform" => Self::PolarUniform,
            "half-normal" => Self::HalfNormal,
            "fractal" => Self::Fractal {
                depth: FRACTAL_DEPTH,
            },
            "quotient" => Self::Quotient {
                lo: QUOTIENT_LO,
                hi: QUOTIENT_HI,
            },
            "l-method" => Self::LMethod,
            "m-method" => Self::MMethod(MVariant::AreaUniform),
            "m-method-polar" => Self::MMethod(MVariant::Polar),
            _ => {
                if let Some(rest) = s.strip_prefix("ellipse-") {
                    Self::Ellipse(aspect(rest)?)
                } else if let Some(rest) = s.strip_prefix("rectangle-") {
                    Self::Rectangle(aspect(rest)?)
                } else if let Some(rest) = s.strip_prefix("fractal-") {
                    let depth = rest
                        .parse()
                        .map_err(|_| Error::Config(format!("bad fractal depth `{rest}`")))?;
                    Self::Fractal { depth }
                } else {
                    return Err(Error::Config(format!("unknown sampler `{s}`")));
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[inline]
fn polar_point(rho: f64, theta: f64) -> Point64 {
    let (s, c) = theta.sin_cos();
    Point2::new(rho * c, rho * s)
}

/// Largest angle of draw `index` in a sweep of `count` midpoint-spaced cells over [pi/3, pi].
pub fn generated_big_angle(index: u64, count: u64) -> f64 {
    FRAC_PI_3 + (index as f64 + 0.5) * (2.0 * FRAC_PI_3) / count as f64
}

/// Triangle with largest angle `big` at `apex`, the remaining angle split at
/// fraction `split`, side 1 opposite the apex, apex bisector rotated to `heading`.
pub fn generated_triangle(big: f64, split: f64, apex: Point64, heading: f64) -> Triangle64 {
    let rest = PI - big;
    // B <= big and C <= big restrict B to [max(0, pi - 2 big), min(big, rest)]
    let lo = (PI - 2.0 * big).max(0.0);
    let hi = big.min(rest);
    let angle_b = lo + split * (hi - lo);
    let angle_c = rest - angle_b;
    let sin_a = big.sin();
    let side_b = angle_b.sin() / sin_a;
    let side_c = angle_c.sin() / sin_a;
    let half = big / 2.0;
    let vb = Point2::new(apex.x + side_c * half.cos(), apex.y + side_c * half.sin());
    let vc = Point2::new(apex.x + side_b * half.cos(), apex.y - side_b * half.sin());
    Triangle::new(apex, vb.rotate_about(apex, heading), vc.rotate_about(apex, heading))
}

/// Vertex region of [`SamplerSpec::LMethod`]: x >= 1/2, y >= 0, inside the unit circle at the origin.
#[inline]
pub fn in_l_region(p: Point64) -> bool {
    p.x >= 0.5 && p.y >= 0.0 && p.x * p.x + p.y * p.y <= 1.0
}

/// Vertex region of [`SamplerSpec::MMethod`]: y >= 0, outside the unit circle at
/// the origin, inside the unit circle at (1, 0).
#[inline]
pub fn in_m_region(p: Point64) -> bool {
    let dx = p.x - 1.0;
    p.y >= 0.0 && p.x * p.x + p.y * p.y >= 1.0 && dx * dx + p.y * p.y <= 1.0
}

fn draw_vertex(spec: &SamplerSpec, rng: &mut RngStream) -> Point64 {
    match *spec {
        SamplerSpec::PolarUniform => {
            let theta = rng.angle();
            polar_point(rng.uniform(), theta)
        }
        SamplerSpec::HalfNormal => {
            let theta = rng.angle();
            polar_point(rng.standard_normal().abs(), theta)
        }
        SamplerSpec::Ellipse(aspect) => {
            let (a, b) = aspect.axes();
            let theta = rng.angle();
            let p = polar_point(rng.uniform().sqrt(), theta);
            Point2::new(b * p.x, a * p.y)
        }
        SamplerSpec::Rectangle(aspect) => {
            let (a, b) = aspect.axes();
            let x = rng.uniform_in(-b / 2.0, b / 2.0);
            Point2::new(x, rng.uniform_in(-a / 2.0, a / 2.0))
        }
        SamplerSpec::Fractal { depth } => {
            let d = depth as f64;
            let mut coord = || (0..depth).map(|_| d * rng.uniform_in(-1.0, 1.0)).sum::<f64>();
            let x = coord();
            Point2::new(x, coord())
        }
        SamplerSpec::Quotient { lo, hi } => {
            let theta = rng.angle();
            let u = rng.uniform();
            polar_point((u / rng.uniform_in(lo, hi)).sqrt(), theta)
        }
        SamplerSpec::Generated | SamplerSpec::LMethod | SamplerSpec::MMethod(_) => {
            unreachable!("not a per-vertex sampler")
        }
    }
}

/// Draws one triangle. `trial_index` / `trial_count` position the draw in the
/// deterministic [`SamplerSpec::Generated`] sweep and are otherwise ignored.
pub fn sample(spec: &SamplerSpec, rng: &mut RngStream, trial_index: u64, trial_count: u64) -> Result<SampleOutcome> {
    if trial_index >= trial_count {
        return Err(Error::Domain(format!(
            "trial index {trial_index} out of range for {trial_count} trials"
        )));
    }
    let mut rejections = 0u64;
    loop {
        if rejections >= MAX_REJECTIONS {
            return Err(Error::NonConvergence {
                attempts: rejections,
            });
        }
        let mut polar = ArrayVec::new();
        let triangle = match *spec {
            SamplerSpec::Generated => {
                let big = generated_big_angle(trial_index, trial_count);
                let split = rng.uniform();
                let apex = polar_point(rng.uniform().sqrt(), rng.angle());
                let heading = -rng.angle();
                polar.push(apex.to_polar());
                generated_triangle(big, split, apex, heading)
            }
            SamplerSpec::LMethod => {
                let p = Point2::new(rng.uniform_in(0.5, 1.0), rng.uniform_in(0.0, FRAC_PI_3.sin()));
                if !in_l_region(p) {
                    rejections += 1;
                    continue;
                }
                polar.push(p.to_polar());
                Triangle::new(Point2::origin(), Point2::new(1.0, 0.0), p)
            }
            SamplerSpec::MMethod(MVariant::Polar) => {
                let theta = rng.uniform_in(0.0, FRAC_PI_3);
                let outer = (1.0 + (2.0 * theta).cos()) / theta.cos();
                let rho = rng.uniform_in(1.0, outer);
                polar.push(PolarPoint::new(rho, theta));
                Triangle::new(Point2::origin(), Point2::new(1.0, 0.0), polar_point(rho, theta))
            }
            SamplerSpec::MMethod(MVariant::AreaUniform) => {
                let p = Point2::new(rng.uniform_in(0.5, 2.0), rng.uniform());
                if !in_m_region(p) {
                    rejections += 1;
                    continue;
                }
                polar.push(p.to_polar());
                Triangle::new(Point2::origin(), Point2::new(1.0, 0.0), p)
            }
            _ => {
                let a = draw_vertex(spec, rng);
                let b = draw_vertex(spec, rng);
                let c = draw_vertex(spec, rng);
                for v in [a, b, c] {
                    polar.push(v.to_polar());
                }
                Triangle::new(a, b, c)
            }
        };
        if is_degenerate(&triangle, DEGENERACY_EPS) {
            rejections += 1;
            continue;
        }
        return Ok(SampleOutcome {
            triangle,
            vertex_polar: polar,
            rejections,
        });
    }
}
