//! Planar primitives, side-length extraction and triangle classification.

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Scalar};

/// Twice-area below which a triangle counts as degenerate.
pub const DEGENERACY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero())
    }

    #[inline]
    pub fn distance(self, other: Self) -> T {
        self.distance_squared(other).sqrt()
    }

    #[inline]
    pub fn distance_squared(self, other: Self) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    /// Rotates the point about `center` by `angle` radians (counter-clockwise).
    pub fn rotate_about(self, center: Self, angle: T) -> Self {
        let (sin, cos) = angle.sin_cos();
        let dx = self.x - center.x;
        let dy = self.y - center.y;
        Self::new(center.x + dx * cos - dy * sin, center.y + dx * sin + dy * cos)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn to_polar(self) -> PolarPoint<T> {
        PolarPoint {
            rho: self.norm(),
            // atan2 yields [-pi, pi]; fold -pi onto pi for the half-open range.
            theta: {
                let t = self.y.atan2(self.x);
                if t == -T::PI() {
                    T::PI()
                } else {
                    t
                }
            },
        }
    }
}

/// Polar coordinates with `rho >= 0` and `theta` in (-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PolarPoint<T> {
    pub rho: T,
    pub theta: T,
}

impl<T: Scalar> PolarPoint<T> {
    /// Builds a polar point, normalising any finite angle into (-pi, pi].
    pub fn new(rho: T, theta: T) -> Self {
        Self {
            rho,
            theta: wrap_angle(theta),
        }
    }

    pub fn to_cartesian(self) -> Point2<T> {
        let (sin, cos) = self.theta.sin_cos();
        Point2::new(self.rho * cos, self.rho * sin)
    }
}

/// Maps an angle into (-pi, pi].
pub fn wrap_angle<T: Scalar>(theta: T) -> T {
    let tau = T::TAU();
    let mut t = theta % tau;
    if t > T::PI() {
        t = t - tau;
    } else if t <= -T::PI() {
        t = t + tau;
    }
    t
}

pub fn to_polar<T: Scalar>(p: Point2<T>) -> PolarPoint<T> {
    p.to_polar()
}

pub fn from_polar<T: Scalar>(pp: PolarPoint<T>) -> Point2<T> {
    pp.to_cartesian()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle<T> {
    pub a: Point2<T>,
    pub b: Point2<T>,
    pub c: Point2<T>,
}

impl<T: Scalar> Triangle<T> {
    #[inline]
    pub fn new(a: Point2<T>, b: Point2<T>, c: Point2<T>) -> Self {
        Self { a, b, c }
    }

    /// Twice the signed area, as the cross product of two edge vectors.
    #[inline]
    pub fn twice_signed_area(&self) -> T {
        (self.b.x - self.a.x) * (self.c.y - self.a.y) - (self.b.y - self.a.y) * (self.c.x - self.a.x)
    }

    pub fn is_degenerate(&self, eps: T) -> bool {
        is_degenerate(self, eps)
    }

    pub fn side_lengths(&self) -> Result<SideLengths<T>> {
        side_lengths(self)
    }

    pub fn vertices(&self) -> [Point2<T>; 3] {
        [self.a, self.b, self.c]
    }
}

/// True iff twice the triangle's area is below `eps` (or a vertex is not finite).
#[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail the check
pub fn is_degenerate<T: Scalar>(t: &Triangle<T>, eps: T) -> bool {
    let twice = t.twice_signed_area().abs();
    // NaN compares false, so a non-finite area also lands here.
    !(twice >= eps)
}

/// The three sides of a triangle, sorted ascending: `s <= m <= l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SideLengths<T> {
    pub s: T,
    pub m: T,
    pub l: T,
}

impl<T: Scalar> SideLengths<T> {
    /// Sorts three arbitrary lengths; does not check the triangle inequality.
    pub fn from_unsorted(x: T, y: T, z: T) -> Self {
        let mut v = [x, y, z];
        v.sort_by(|p, q| p.partial_cmp(q).expect("finite side length"));
        Self {
            s: v[0],
            m: v[1],
            l: v[2],
        }
    }

    pub fn scaled(self, k: T) -> Self {
        Self {
            s: self.s * k,
            m: self.m * k,
            l: self.l * k,
        }
    }

    pub fn classify(&self) -> TriangleClass {
        classify(self)
    }

    pub fn ratios(&self) -> (T, T) {
        ratios(self)
    }

    /// Largest interior angle via the law of cosines.
    pub fn largest_angle(&self) -> T {
        let (s, m, l) = (self.s, self.m, self.l);
        let cos = (s * s + m * m - l * l) / (T::lit(2.0) * s * m);
        cos.max(-T::one()).min(T::one()).acos()
    }
}

pub fn side_lengths<T: Scalar>(t: &Triangle<T>) -> Result<SideLengths<T>> {
    if is_degenerate(t, T::lit(DEGENERACY_EPS)) {
        return Err(Error::DegenerateTriangle);
    }
    Ok(SideLengths::from_unsorted(
        t.a.distance(t.b),
        t.b.distance(t.c),
        t.c.distance(t.a),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleClass {
    Acute,
    Right,
    Obtuse,
}

/// Law-of-cosines classification on the sorted sides. "Right" is an exact
/// floating equality; it has measure zero under every sampler.
pub fn classify<T: Scalar>(sl: &SideLengths<T>) -> TriangleClass {
    let legs = sl.s * sl.s + sl.m * sl.m;
    let hyp = sl.l * sl.l;
    if legs < hyp {
        TriangleClass::Obtuse
    } else if legs == hyp {
        TriangleClass::Right
    } else {
        TriangleClass::Acute
    }
}

/// Small-to-medium and medium-to-large side ratios (SdM, MdL).
pub fn ratios<T: Scalar>(sl: &SideLengths<T>) -> (T, T) {
    (sl.s / sl.m, sl.m / sl.l)
}
