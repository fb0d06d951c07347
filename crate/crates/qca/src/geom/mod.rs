//! Exact planar geometry for Q cells: points, disks, half-planes, convex
//! arc regions, Apollonius circles, and cell construction.

mod cell;
mod region;

pub use cell::{
    apollonius, intersect_disks, mobius_image, qcell, refined_qcell, scale_cell,
    ApolloniusBoundary, CellKind, CellRegion, QCell,
};
pub use region::{ClipOutcome, ConvexArcRegion, Edge};

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// Planar point, also used as a 2-vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn dist_sq(self, o: Point) -> f64 {
        (self - o).norm_sq()
    }

    /// atan2 angle of the vector, in (-pi, pi].
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn from_angle(a: f64) -> Self {
        Self::new(a.cos(), a.sin())
    }

    pub fn normalize(self) -> Self {
        let n = self.norm();
        Self::new(self.x / n, self.y / n)
    }

    /// Counterclockwise quarter turn.
    pub fn rot90(self) -> Self {
        Self::new(-self.y, self.x)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Open disk b(center, radius).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius > 0.0);
        Self { center, radius }
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        p.dist(self.center) <= self.radius + tol
    }

    pub fn point_at(&self, angle: f64) -> Point {
        self.center + Point::from_angle(angle) * self.radius
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.radius * self.radius
    }
}

/// Closed half-plane given by a boundary point and the inward normal
/// direction; contains p iff (p - anchor) . n >= 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane {
    pub anchor: Point,
    /// Inward normal angle, normalized to [0, 2*pi).
    pub normal_angle: f64,
}

impl HalfPlane {
    pub fn new(anchor: Point, normal_angle: f64) -> Self {
        Self {
            anchor,
            normal_angle: normal_angle.rem_euclid(std::f64::consts::TAU),
        }
    }

    pub fn normal(&self) -> Point {
        Point::from_angle(self.normal_angle)
    }

    /// Positive inside, negative outside.
    pub fn signed_dist(&self, p: Point) -> f64 {
        (p - self.anchor).dot(self.normal())
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.signed_dist(p) >= -tol
    }

    /// Boundary direction such that the half-plane lies to the left.
    pub fn boundary_dir(&self) -> Point {
        self.normal().rot90()
    }
}
