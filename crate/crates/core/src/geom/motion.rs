use serde::{Deserialize, Serialize};

use super::angular::normalize_angle;
use super::{Body, Point2};

/// Rotation about the origin by `theta`, followed by translation by `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidMotion {
    pub theta: f64,
    pub t: Point2,
}

impl Default for RigidMotion {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl RigidMotion {
    pub const IDENTITY: RigidMotion = RigidMotion { theta: 0.0, t: Point2::ORIGIN };

    pub fn new(theta: f64, t: Point2) -> Self {
        Self { theta: normalize_angle(theta), t }
    }

    pub fn translation(t: Point2) -> Self {
        Self { theta: 0.0, t }
    }

    pub fn rotation(theta: f64) -> Self {
        Self::new(theta, Point2::ORIGIN)
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.theta, -self.t.rotate(-self.theta))
    }

    pub fn apply_point(&self, p: Point2) -> Point2 {
        p.rotate(self.theta) + self.t
    }

    pub fn apply_points(&self, pts: &[Point2]) -> Vec<Point2> {
        pts.iter().map(|p| self.apply_point(*p)).collect()
    }

    /// Moves the core points; `rho` is unchanged.
    pub fn apply_body(&self, body: &Body) -> Body {
        Body::new(self.apply_points(body.core()), body.rho())
            .expect("rigid motions preserve convexity and orientation")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::samples::{disc1, square2};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn identity_keeps_body() {
        assert_eq!(RigidMotion::IDENTITY.apply_body(&square2()), square2());
    }

    #[test]
    fn quarter_turn_point() {
        let p = RigidMotion::rotation(FRAC_PI_2).apply_point(Point2::new(1.0, 0.0));
        assert!(p.dist(Point2::new(0.0, 1.0)) < 1e-15);
    }

    #[test]
    fn translate_disc() {
        let b = RigidMotion::translation(Point2::new(3.0, 4.0)).apply_body(&disc1());
        assert_eq!(b.core(), &[Point2::new(3.0, 4.0)][..]);
        assert_eq!(b.rho(), 1.0);
    }

    #[test]
    fn inverse_round_trip() {
        let g = RigidMotion::new(1.1, Point2::new(-2.0, 0.5));
        let p = Point2::new(0.3, 0.7);
        assert!(g.apply_point(g.inverse().apply_point(p)).dist(p) < 1e-14);
    }
}
