use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{invalid, Result};
use crate::scalar::{lit, Real};

/// Point (or free vector) in the plane, metres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Point2<T> {
    pub const fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// Unit vector at angle `theta` from the x-axis.
    pub fn unit(theta: T) -> Self {
        Self::new(theta.cos(), theta.sin())
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product.
    #[inline]
    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, other: Self) -> T {
        (self - other).norm()
    }

    /// Counter-clockwise perpendicular.
    #[inline]
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl<T: Real> Add for Point2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Real> Sub for Point2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Real> Mul<T> for Point2<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl<T: Real> Neg for Point2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Directed line segment with distinct endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment2<T> {
    pub a: Point2<T>,
    pub b: Point2<T>,
}

impl<T: Real> Segment2<T> {
    pub fn new(a: Point2<T>, b: Point2<T>) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(invalid("segment endpoints must be finite"));
        }
        if a == b {
            return Err(invalid("segment endpoints coincide"));
        }
        Ok(Self { a, b })
    }

    pub fn direction(&self) -> Point2<T> {
        self.b - self.a
    }

    pub fn length(&self) -> T {
        self.a.dist(self.b)
    }

    pub fn midpoint(&self) -> Point2<T> {
        (self.a + self.b) * lit(0.5)
    }
}

/// Rectangular building footprint.
///
/// `theta` is the anticlockwise angle from the x-axis to the `l` side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedRect<T> {
    pub center: Point2<T>,
    pub l: T,
    pub w: T,
    pub theta: T,
}

impl<T: Real> OrientedRect<T> {
    pub fn new(center: Point2<T>, l: T, w: T, theta: T) -> Result<Self> {
        if !center.is_finite() {
            return Err(invalid("rectangle center must be finite"));
        }
        if !(l > T::zero() && w > T::zero()) || !l.is_finite() || !w.is_finite() {
            return Err(invalid(format!("rectangle sides must be positive, got l={l}, w={w}")));
        }
        if !(theta > T::zero() && theta <= T::PI()) {
            return Err(invalid(format!("orientation must lie in (0, pi], got {theta}")));
        }
        Ok(Self { center, l, w, theta })
    }

    /// Unit vectors along the `l` side and the `w` side.
    pub fn axes(&self) -> (Point2<T>, Point2<T>) {
        let u = Point2::unit(self.theta);
        (u, u.perp())
    }

    /// Corners in counter-clockwise order.
    pub fn corners(&self) -> [Point2<T>; 4] {
        let (u, v) = self.axes();
        let hu = u * (self.l * lit(0.5));
        let hv = v * (self.w * lit(0.5));
        let c = self.center;
        [c - hu - hv, c + hu - hv, c + hu + hv, c - hu + hv]
    }

    /// The four walls, counter-clockwise; walls 0 and 2 are the `l` sides.
    pub fn walls(&self) -> [Segment2<T>; 4] {
        let k = self.corners();
        [
            Segment2 { a: k[0], b: k[1] },
            Segment2 { a: k[1], b: k[2] },
            Segment2 { a: k[2], b: k[3] },
            Segment2 { a: k[3], b: k[0] },
        ]
    }

    /// Radius of the circumscribed circle.
    pub fn circumradius(&self) -> T {
        self.l.hypot(self.w) * lit(0.5)
    }
}
