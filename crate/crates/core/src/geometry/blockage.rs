//! Exact blockage regions.
//!
//! A building of size `l × w` at orientation θ blocks a segment iff its
//! center lies in the Minkowski sum of the segment with the centered
//! rectangle. For a two-leg reflection path the blocking centers form the
//! union of two such hexagons.

use crate::error::Result;
use crate::geometry::{reflection_point, Branch, ConvexPolygon, OrientedRect, Point2, Segment2};
use crate::scalar::{lit, Real};

/// Minkowski sum of `seg` with a centered `l × w` rectangle at angle θ.
pub fn blockage_hexagon<T: Real>(seg: &Segment2<T>, l: T, w: T, theta: T) -> Result<ConvexPolygon<T>> {
    let rect = OrientedRect::new(Point2::origin(), l, w, theta)?;
    let corners = rect.corners();
    let pts: Vec<Point2<T>> = corners
        .iter()
        .flat_map(|&k| [seg.a + k, seg.b + k])
        .collect();
    ConvexPolygon::hull(&pts)
}

/// Width of an `l × w` rectangle at angle θ measured perpendicular to `seg`.
pub fn projected_width<T: Real>(seg: &Segment2<T>, l: T, w: T, theta: T) -> T {
    let d = seg.direction();
    let n = d.perp() * (T::one() / d.norm());
    let u = Point2::unit(theta);
    l * u.dot(n).abs() + w * u.perp().dot(n).abs()
}

/// The two blockage hexagons of the path `Tx → R₁ → Rx` for the `l`-side
/// reflection point `R₁` of orientation θ.
pub fn blockage_pair<T: Real>(
    d: T,
    path_len: T,
    theta: T,
    l: T,
    w: T,
) -> Result<(ConvexPolygon<T>, ConvexPolygon<T>)> {
    let r1 = reflection_point(d, path_len, theta, Branch::LSide)?;
    let h = d * lit(0.5);
    let tx = Point2::new(-h, T::zero());
    let rx = Point2::new(h, T::zero());
    let a = blockage_hexagon(&Segment2::new(tx, r1)?, l, w, theta)?;
    let b = blockage_hexagon(&Segment2::new(r1, rx)?, l, w, theta)?;
    Ok((a, b))
}

/// Exact area of the blockage region of a first-order reflection path.
pub fn exact_blockage_area<T: Real>(d: T, path_len: T, theta: T, l: T, w: T) -> Result<T> {
    let (a, b) = blockage_pair(d, path_len, theta, l, w)?;
    let overlap = a.intersection(&b).map_or(T::zero(), |p| p.area());
    Ok(a.area() + b.area() - overlap)
}
