//! Convex polygons: hull construction, clipping and area.
//!
//! Only what the blockage-area computation needs. Union areas are obtained by
//! inclusion-exclusion, `|A ∪ B| = |A| + |B| - |A ∩ B|`, which is exact for
//! any pair of convex regions.

use crate::error::{invalid, Result};
use crate::geometry::{Point2, GRAZING_EPS};
use crate::scalar::{lit, Real};

/// Strictly convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point2<T>>,
}

impl<T: Real> ConvexPolygon<T> {
    /// Builds a polygon from vertices given in either orientation.
    ///
    /// Collinear and duplicate vertices are pruned; the remaining chain must be
    /// strictly convex with at least three vertices.
    pub fn new(vertices: Vec<Point2<T>>) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(invalid("polygon vertices must be finite"));
        }
        let mut v = prune(vertices, lit(GRAZING_EPS));
        if v.len() < 3 {
            return Err(invalid("polygon degenerates to fewer than three vertices"));
        }
        if signed_area(&v) < T::zero() {
            v.reverse();
        }
        let n = v.len();
        for i in 0..n {
            let (a, b, c) = (v[i], v[(i + 1) % n], v[(i + 2) % n]);
            if (b - a).cross(c - b) <= T::zero() {
                return Err(invalid("polygon is not strictly convex"));
            }
        }
        Ok(Self { vertices: v })
    }

    /// Convex hull of a point cloud (Andrew's monotone chain).
    pub fn hull(points: &[Point2<T>]) -> Result<Self> {
        let mut pts: Vec<Point2<T>> = points.to_vec();
        pts.sort_by(|p, q| {
            p.x.partial_cmp(&q.x)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(p.y.partial_cmp(&q.y).unwrap_or(std::cmp::Ordering::Equal))
        });
        pts.dedup();
        if pts.len() < 3 {
            return Err(invalid("hull needs at least three distinct points"));
        }
        let turn = |o: Point2<T>, a: Point2<T>, b: Point2<T>| (a - o).cross(b - o);
        let mut hull: Vec<Point2<T>> = Vec::with_capacity(2 * pts.len());
        for &p in &pts {
            while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= T::zero() {
                hull.pop();
            }
            hull.push(p);
        }
        let lower = hull.len() + 1;
        for &p in pts.iter().rev().skip(1) {
            while hull.len() >= lower && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= T::zero() {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
        Self::new(hull)
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn area(&self) -> T {
        signed_area(&self.vertices)
    }

    /// Closed containment test with tolerance `eps`.
    pub fn contains(&self, p: Point2<T>, eps: T) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let e = b - a;
            e.cross(p - a) >= -eps * e.norm()
        })
    }

    /// Intersection of two convex polygons, `None` if it has no area.
    pub fn intersection(&self, other: &Self) -> Option<Self> {
        let mut out = self.vertices.clone();
        let n = other.vertices.len();
        for i in 0..n {
            if out.is_empty() {
                return None;
            }
            let a = other.vertices[i];
            let b = other.vertices[(i + 1) % n];
            out = clip_half_plane(&out, a, b);
        }
        Self::new(out).ok()
    }
}

/// Polygon area by the shoelace formula; positive when counter-clockwise.
pub fn polygon_area<T: Real>(p: &ConvexPolygon<T>) -> T {
    p.area()
}

fn signed_area<T: Real>(v: &[Point2<T>]) -> T {
    let n = v.len();
    let twice = (0..n).fold(T::zero(), |acc, i| acc + v[i].cross(v[(i + 1) % n]));
    twice * lit(0.5)
}

/// Keeps the part of `poly` to the left of the directed line a→b
/// (Sutherland–Hodgman step).
fn clip_half_plane<T: Real>(poly: &[Point2<T>], a: Point2<T>, b: Point2<T>) -> Vec<Point2<T>> {
    let e = b - a;
    let side = |p: Point2<T>| e.cross(p - a);
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let (sp, sq) = (side(p), side(q));
        if sp >= T::zero() {
            out.push(p);
        }
        if (sp >= T::zero()) != (sq >= T::zero()) {
            let t = sp / (sp - sq);
            out.push(p + (q - p) * t);
        }
    }
    out
}

/// Drops repeated and (nearly) collinear vertices from a closed chain.
fn prune<T: Real>(mut v: Vec<Point2<T>>, eps: T) -> Vec<Point2<T>> {
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let mut removed = false;
        for i in 0..n {
            let prev = v[(i + n - 1) % n];
            let cur = v[i];
            let next = v[(i + 1) % n];
            let base = next - prev;
            let len = base.norm();
            let dup = cur.dist(prev) <= eps || cur.dist(next) <= eps;
            // distance of `cur` from the line prev→next
            if dup || len <= eps || (base.cross(cur - prev)).abs() <= eps * len {
                v.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Point2<f64>;

    fn square(x0: f64, y0: f64, s: f64) -> ConvexPolygon<f64> {
        ConvexPolygon::new(vec![
            P::new(x0, y0),
            P::new(x0 + s, y0),
            P::new(x0 + s, y0 + s),
            P::new(x0, y0 + s),
        ])
        .unwrap()
    }

    #[test]
    fn identical_squares_intersect_to_themselves() {
        let s = square(0.0, 0.0, 1.0);
        let i = s.intersection(&s).unwrap();
        assert!((i.area() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disjoint_squares_are_empty() {
        assert!(square(0.0, 0.0, 1.0).intersection(&square(3.0, 0.0, 1.0)).is_none());
    }

    #[test]
    fn shifted_square_overlap() {
        let i = square(0.0, 0.0, 1.0).intersection(&square(0.5, 0.0, 1.0)).unwrap();
        assert!((polygon_area(&i) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn edge_contact_has_no_area() {
        assert!(square(0.0, 0.0, 1.0).intersection(&square(1.0, 0.0, 1.0)).is_none());
    }

    #[test]
    fn clockwise_input_is_reoriented_and_collinear_points_pruned() {
        let p = ConvexPolygon::new(vec![
            P::new(0.0, 0.0),
            P::new(0.0, 2.0),
            P::new(2.0, 2.0),
            P::new(2.0, 1.0),
            P::new(2.0, 0.0),
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!((p.area() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn non_convex_rejected() {
        let r = ConvexPolygon::new(vec![
            P::new(0.0, 0.0),
            P::new(2.0, 0.0),
            P::new(1.0, 0.5),
            P::new(2.0, 2.0),
            P::new(0.0, 2.0),
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn hull_of_cloud() {
        let pts: Vec<P> = (0..20)
            .map(|k| {
                let t = k as f64 * 0.7;
                P::new(t.cos() * (1.0 + 0.1 * (k % 3) as f64), t.sin())
            })
            .chain([P::new(0.0, 0.0), P::new(0.1, 0.2)])
            .collect();
        let h = ConvexPolygon::hull(&pts).unwrap();
        for p in &pts {
            assert!(h.contains(*p, 1e-9));
        }
    }
}
