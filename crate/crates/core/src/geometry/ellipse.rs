//! Constant-path-length ellipse with the transmitter and receiver as foci.
//!
//! Tx sits at `(-D/2, 0)` and Rx at `(D/2, 0)`. Every first-order reflection
//! with path length `L_r` bounces off a wall tangent to the ellipse with
//! major radius `L_r/2` and minor radius `sqrt(L_r² - D²)/2`.

use crate::error::{domain, invalid, Result};
use crate::geometry::Point2;
use crate::scalar::{lit, Real};

/// Which of the four tangency points a building orientation produces.
///
/// For orientation θ the `l`-side wall has direction θ and touches the
/// ellipse at two antipodal points; the `w`-side wall (direction θ + π/2)
/// touches it at two more.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `l`-side wall, the tangency point on the side of the ellipse reached
    /// by the closed form with a positive root.
    LSide,
    /// `w`-side wall, same convention at direction θ + π/2.
    WSide,
    /// Point reflection of [`Branch::LSide`] through the origin.
    LSideOpposite,
    /// Point reflection of [`Branch::WSide`] through the origin.
    WSideOpposite,
}

impl Branch {
    pub const ALL: [Branch; 4] = [Branch::LSide, Branch::WSide, Branch::LSideOpposite, Branch::WSideOpposite];

    /// Maps the 1-based branch index `1..=4`.
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Branch::LSide),
            2 => Ok(Branch::WSide),
            3 => Ok(Branch::LSideOpposite),
            4 => Ok(Branch::WSideOpposite),
            _ => Err(invalid(format!("branch index must be 1..=4, got {i}"))),
        }
    }

    /// Whether the reflecting wall is an `l` side.
    pub fn is_l_side(self) -> bool {
        matches!(self, Branch::LSide | Branch::LSideOpposite)
    }
}

/// Ellipse of all reflection points with path length `path_len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseLocus<T> {
    d: T,
    path_len: T,
}

impl<T: Real> EllipseLocus<T> {
    pub fn new(d: T, path_len: T) -> Result<Self> {
        if !(d >= T::zero()) || !d.is_finite() {
            return Err(invalid(format!("focal separation must be non-negative, got {d}")));
        }
        if !(path_len >= d) || !path_len.is_finite() {
            return Err(domain(format!("path length {path_len} shorter than focal separation {d}")));
        }
        Ok(Self { d, path_len })
    }

    pub fn focal_separation(&self) -> T {
        self.d
    }

    pub fn path_len(&self) -> T {
        self.path_len
    }

    /// Major radius `m`.
    pub fn major(&self) -> T {
        self.path_len * lit(0.5)
    }

    /// Minor radius `n`.
    pub fn minor(&self) -> T {
        ((self.path_len - self.d) * (self.path_len + self.d)).max(T::zero()).sqrt() * lit(0.5)
    }

    pub fn foci(&self) -> (Point2<T>, Point2<T>) {
        let h = self.d * lit(0.5);
        (Point2::new(-h, T::zero()), Point2::new(h, T::zero()))
    }

    /// Sum of focal distances of `p`; equals `path_len` on the ellipse.
    pub fn focal_sum(&self, p: Point2<T>) -> T {
        let (f1, f2) = self.foci();
        p.dist(f1) + p.dist(f2)
    }

    /// Tangency point of a line with direction angle `psi`.
    ///
    /// `(L² sin ψ, -(L² - D²) cos ψ) / (2 sqrt(L² - D² cos² ψ))`, the
    /// `|cos ψ|`-rationalised form of the tan/sec expression, finite for
    /// every ψ including π/2.
    pub fn tangency(&self, psi: T) -> Point2<T> {
        let l2 = self.path_len * self.path_len;
        let d2 = self.d * self.d;
        let cos = psi.cos();
        let den = (l2 - d2 * cos * cos).sqrt() * lit(2.0);
        Point2::new(l2 * psi.sin() / den, -(l2 - d2) * cos / den)
    }
}

/// Major and minor radii of the ellipse for delay `tau`.
pub fn ellipse_radii<T: Real>(d: T, tau: T, c: T) -> Result<(T, T)> {
    let path_len = c * tau;
    if path_len < d {
        return Err(domain(format!("delay {tau} s is shorter than the line-of-sight delay")));
    }
    let e = EllipseLocus::new(d, path_len)?;
    Ok((e.major(), e.minor()))
}

/// Reflection point on the ellipse `(D, L_r)` for building orientation θ.
pub fn reflection_point<T: Real>(d: T, path_len: T, theta: T, branch: Branch) -> Result<Point2<T>> {
    if !(path_len > d) {
        return Err(domain(format!("path length {path_len} must exceed separation {d}")));
    }
    if !(theta > T::zero() && theta <= T::PI()) {
        return Err(invalid(format!("orientation must lie in (0, pi], got {theta}")));
    }
    let e = EllipseLocus::new(d, path_len)?;
    let p = match branch {
        Branch::LSide | Branch::LSideOpposite => e.tangency(theta),
        Branch::WSide | Branch::WSideOpposite => e.tangency(theta + T::FRAC_PI_2()),
    };
    Ok(match branch {
        Branch::LSide | Branch::WSide => p,
        Branch::LSideOpposite | Branch::WSideOpposite => -p,
    })
}
