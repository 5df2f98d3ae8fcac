//! Image-method specular reflection and the segment/rectangle blockage test.

use crate::geometry::{OrientedRect, Point2, Segment2};
use crate::scalar::{lit, Real};

/// A specular bounce found by the image method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecularHit<T> {
    pub point: Point2<T>,
    /// `|tx→point| + |point→rx|`.
    pub length: T,
}

/// Mirror image of `p` across the supporting line of `wall`.
pub fn mirror<T: Real>(p: Point2<T>, wall: &Segment2<T>) -> Point2<T> {
    let d = wall.direction();
    let n = d.perp() * (T::one() / d.norm());
    let s = (p - wall.a).dot(n);
    p - n * (s + s)
}

/// First-order specular reflection of `tx → wall → rx`.
///
/// Both terminals must lie strictly on the same side of the wall's supporting
/// line. The image of `tx` is joined to `rx`; the crossing with the wall must
/// fall strictly inside the wall segment.
pub fn specular_reflection<T: Real>(tx: Point2<T>, rx: Point2<T>, wall: &Segment2<T>) -> Option<SpecularHit<T>> {
    let d = wall.direction();
    let st = d.cross(tx - wall.a);
    let sr = d.cross(rx - wall.a);
    if !(st * sr > T::zero()) {
        return None;
    }
    let image = mirror(tx, wall);
    let r = rx - image;
    let denom = r.cross(d);
    if denom == T::zero() {
        return None;
    }
    // image + r·s = wall.a + d·t
    let q = wall.a - image;
    let t = q.cross(r) / denom;
    let s = q.cross(d) / denom;
    if !(t > T::zero() && t < T::one() && s > T::zero() && s < T::one()) {
        return None;
    }
    let point = wall.a + d * t;
    Some(SpecularHit { point, length: r.norm() })
}

/// True iff the segment passes through the rectangle's interior by more than
/// `eps`.
///
/// The rectangle is shrunk by `eps` on every side before a Liang–Barsky clip,
/// so contact along the boundary or at a single point (a reflection point
/// lying on its own wall, a path ending on a corner) does not count.
pub fn segment_intersects_rect<T: Real>(seg: &Segment2<T>, rect: &OrientedRect<T>, eps: T) -> bool {
    let (u, v) = rect.axes();
    let hu = rect.l * lit(0.5) - eps;
    let hv = rect.w * lit(0.5) - eps;
    if hu <= T::zero() || hv <= T::zero() {
        return false;
    }
    let rel = seg.a - rect.center;
    let p0 = Point2::new(rel.dot(u), rel.dot(v));
    let dir = seg.direction();
    let dl = Point2::new(dir.dot(u), dir.dot(v));

    let mut t0 = T::zero();
    let mut t1 = T::one();
    for (p, dp, h) in [(p0.x, dl.x, hu), (p0.y, dl.y, hv)] {
        if dp == T::zero() {
            if p.abs() >= h {
                return false;
            }
            continue;
        }
        let mut ta = (-h - p) / dp;
        let mut tb = (h - p) / dp;
        if ta > tb {
            std::mem::swap(&mut ta, &mut tb);
        }
        t0 = t0.max(ta);
        t1 = t1.min(tb);
        if t0 >= t1 {
            return false;
        }
    }
    t0 < t1
}
