//! Reference bodies used throughout the tests and the documentation.

use super::{Body, Point2};

/// Axis-aligned square of side 2 centered at the origin.
pub fn square2() -> Body {
    Body::new(
        vec![Point2::new(-1.0, -1.0), Point2::new(1.0, -1.0), Point2::new(1.0, 1.0), Point2::new(-1.0, 1.0)],
        0.0,
    )
    .unwrap()
}

/// Unit disc at the origin.
pub fn disc1() -> Body {
    Body::new(vec![Point2::ORIGIN], 1.0).unwrap()
}

/// Segment `(0,0)–(2,0)` thickened by 1.
pub fn stadium() -> Body {
    Body::new(vec![Point2::ORIGIN, Point2::new(2.0, 0.0)], 1.0).unwrap()
}

/// Equilateral triangle with circumradius 2, apex up.
pub fn tri_eq() -> Body {
    let s3 = 3f64.sqrt();
    Body::new(vec![Point2::new(0.0, 2.0), Point2::new(-s3, -1.0), Point2::new(s3, -1.0)], 0.0).unwrap()
}
