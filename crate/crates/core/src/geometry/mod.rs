//! Exact plane geometry: reflection loci, specular bounces, blockage tests
//! and the convex-polygon machinery behind the exact blockage area.

mod blockage;
mod ellipse;
mod polygon;
mod primitives;
mod reflection;

pub use blockage::{blockage_hexagon, blockage_pair, exact_blockage_area, projected_width};
pub use ellipse::{ellipse_radii, reflection_point, Branch, EllipseLocus};
pub use polygon::{polygon_area, ConvexPolygon};
pub use primitives::{OrientedRect, Point2, Segment2};
pub use reflection::{mirror, segment_intersects_rect, specular_reflection, SpecularHit};

/// Grazing tolerance for intersection predicates and vertex pruning, metres.
pub const GRAZING_EPS: f64 = 1e-9;
