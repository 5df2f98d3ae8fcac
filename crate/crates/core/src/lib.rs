//! Power delay profile of first-order building reflections in a
//! millimetre-wave link, over a Poisson field of equally oriented
//! rectangular buildings.
//!
//! The [`analytic`] module gives the closed-form and quadrature-based
//! reflection-path densities and the link budget built on them;
//! [`montecarlo`] is an independent ray-tracing reference over sampled
//! building scenes. [`geometry`] and [`numerics`] are shared building blocks.
//!
//! Geometry, numerics and analytic code is generic over [`Real`] (`f32` or
//! `f64`); the aliases below fix the scalar to `f64`.

// `!(x > 0)` guards deliberately reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod geometry;
pub mod montecarlo;
pub mod numerics;
mod scalar;

pub use error::{ModelError, Result};
pub use scalar::{lit, Real};

pub type Point = geometry::Point2<f64>;
pub type Segment = geometry::Segment2<f64>;
pub type Rect = geometry::OrientedRect<f64>;
pub type Polygon = geometry::ConvexPolygon<f64>;
pub type Link = analytic::LinkParams<f64>;
pub type Environment = analytic::EnvironmentParams<f64>;
pub type Sizes = analytic::SizeDistribution<f64>;
pub type Grid = analytic::DelayGrid<f64>;

/// Single-precision aliases.
pub mod f32 {
    pub type Point = crate::geometry::Point2<f32>;
    pub type Segment = crate::geometry::Segment2<f32>;
    pub type Rect = crate::geometry::OrientedRect<f32>;
    pub type Polygon = crate::geometry::ConvexPolygon<f32>;
    pub type Link = crate::analytic::LinkParams<f32>;
    pub type Environment = crate::analytic::EnvironmentParams<f32>;
    pub type Sizes = crate::analytic::SizeDistribution<f32>;
    pub type Grid = crate::analytic::DelayGrid<f32>;
}
