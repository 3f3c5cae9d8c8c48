//! Disc-polygons: `K = conv(core) ⊕ ρ·D`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::angular::{ccw_sweep, normalize_angle};
use super::hull::convex_hull;
use super::point::{closest_on_segment, point_segment_distance};
use super::{Point2, DEFAULT_TOL};
use crate::error::{Error, Result};

/// A convex body given as the Minkowski sum of a convex polygon (possibly a
/// single point or a segment) and a closed disc of radius `rho`.
///
/// On disk this is the `{"core": [[x, y], ...], "radius": rho}` document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodyFile", into = "BodyFile")]
pub struct Body {
    core: Vec<Point2>,
    rho: f64,
    /// Outward unit normals of the core edges `core[i] -> core[i+1]`.
    normals: Vec<Point2>,
    /// `normals[i] · core[i]`.
    offsets: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyFile {
    pub core: Vec<Point2>,
    pub radius: f64,
}

impl TryFrom<BodyFile> for Body {
    type Error = Error;
    fn try_from(f: BodyFile) -> Result<Self> {
        Body::new(f.core, f.radius)
    }
}

impl From<Body> for BodyFile {
    fn from(b: Body) -> Self {
        BodyFile { core: b.core, radius: b.rho }
    }
}

/// One piece of `∂K`, traversed counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPiece {
    /// An edge of the core pushed outward by `rho`.
    Segment { a: Point2, b: Point2 },
    /// A corner arc of radius `rho` around a core vertex, from angle `start`
    /// sweeping `sweep` (≤ π) counterclockwise. `from`/`to` are its endpoints.
    Arc { center: Point2, radius: f64, start: f64, sweep: f64, from: Point2, to: Point2 },
}

impl BoundaryPiece {
    pub fn start_point(&self) -> Point2 {
        match *self {
            BoundaryPiece::Segment { a, .. } => a,
            BoundaryPiece::Arc { from, .. } => from,
        }
    }

    pub fn end_point(&self) -> Point2 {
        match *self {
            BoundaryPiece::Segment { b, .. } => b,
            BoundaryPiece::Arc { to, .. } => to,
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidBody(msg.into())
}

impl Body {
    /// Validates and builds a body. The core must be listed counterclockwise
    /// in strictly convex position; one- and two-point cores need `rho > 0`.
    pub fn new(core: Vec<Point2>, rho: f64) -> Result<Self> {
        if !rho.is_finite() || rho < 0.0 {
            return Err(invalid(format!("radius: must be a finite number >= 0, got {rho}")));
        }
        if core.is_empty() {
            return Err(invalid("core: needs at least one point"));
        }
        if let Some(p) = core.iter().find(|p| !p.is_finite()) {
            return Err(invalid(format!("core: non-finite coordinate ({}, {})", p.x, p.y)));
        }
        let m = core.len();
        for i in 0..m {
            for j in i + 1..m {
                if core[i].dist(core[j]) <= DEFAULT_TOL {
                    return Err(invalid(format!("core: duplicate points at indices {i} and {j}")));
                }
            }
        }
        if m < 3 && rho <= 0.0 {
            return Err(invalid(format!(
                "radius: a {m}-point core needs radius > 0 to have interior"
            )));
        }
        if m >= 3 {
            let mut turning = 0.0;
            for i in 0..m {
                let e1 = core[(i + 1) % m] - core[i];
                let e2 = core[(i + 2) % m] - core[(i + 1) % m];
                let cross = e1.cross(e2);
                if cross <= DEFAULT_TOL * e1.norm() * e2.norm() {
                    return Err(invalid(format!(
                        "core: points not in strictly convex counterclockwise position (turn at index {})",
                        (i + 1) % m
                    )));
                }
                turning += cross.atan2(e1.dot(e2));
            }
            if (turning - TAU).abs() > 1e-6 {
                return Err(invalid("core: polygon winds more than once (not convex)"));
            }
        }

        let edge_count = match m {
            1 => 0,
            2 => 2,
            _ => m,
        };
        let mut normals = Vec::with_capacity(edge_count);
        let mut offsets = Vec::with_capacity(edge_count);
        for i in 0..edge_count {
            let a = core[i % m];
            let b = core[(i + 1) % m];
            let d = b - a;
            let n = d.perp_right() * (1.0 / d.norm());
            normals.push(n);
            offsets.push(n.dot(a));
        }
        Ok(Self { core, rho, normals, offsets })
    }

    /// Builds a body from the convex hull of arbitrary points.
    pub fn from_hull(points: &[Point2], rho: f64) -> Result<Self> {
        let hull = convex_hull(points);
        Self::new(hull.vertices, rho)
    }

    pub fn core(&self) -> &[Point2] {
        &self.core
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// `(outward unit normal, offset)` per core edge. Empty for a one-point
    /// core; two opposite edges for a segment core.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, f64)> + '_ {
        self.normals.iter().copied().zip(self.offsets.iter().copied())
    }

    pub fn is_polygonal_core(&self) -> bool {
        self.core.len() >= 3
    }

    /// Euclidean distance from `p` to `conv(core)` (zero inside).
    pub fn distance_to_core(&self, p: Point2) -> f64 {
        match self.core.len() {
            1 => p.dist(self.core[0]),
            2 => point_segment_distance(p, self.core[0], self.core[1]),
            m => {
                if self.edges().all(|(n, b)| n.dot(p) <= b) {
                    return 0.0;
                }
                (0..m)
                    .map(|i| point_segment_distance(p, self.core[i], self.core[(i + 1) % m]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    /// Nearest point of `conv(core)` to `p`.
    pub fn nearest_core_point(&self, p: Point2) -> Point2 {
        match self.core.len() {
            1 => self.core[0],
            2 => closest_on_segment(p, self.core[0], self.core[1]),
            m => {
                if self.edges().all(|(n, b)| n.dot(p) <= b) {
                    return p;
                }
                (0..m)
                    .map(|i| closest_on_segment(p, self.core[i], self.core[(i + 1) % m]))
                    .min_by(|a, b| a.dist(p).total_cmp(&b.dist(p)))
                    .unwrap()
            }
        }
    }

    /// Signed distance from `p` to `∂K`: positive inside, negative outside.
    pub fn depth(&self, p: Point2) -> f64 {
        if self.core.len() >= 3 && self.edges().all(|(n, b)| n.dot(p) <= b) {
            let inner = self.edges().map(|(n, b)| b - n.dot(p)).fold(f64::INFINITY, f64::min);
            return self.rho + inner;
        }
        self.rho - self.distance_to_core(p)
    }

    /// Membership test: `dist(p, conv(core)) ≤ rho + tol`.
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.distance_to_core(p) <= self.rho + tol
    }

    /// Support function `h_K(u) = max_{x∈K} x·u` for a unit vector `u`.
    pub fn support(&self, u: Point2) -> f64 {
        self.core.iter().map(|p| p.dot(u)).fold(f64::NEG_INFINITY, f64::max) + self.rho
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.core.iter().enumerate() {
            for b in &self.core[i + 1..] {
                d = d.max(a.dist(*b));
            }
        }
        d + 2.0 * self.rho
    }

    /// Mean of the core points; always interior.
    pub fn core_centroid(&self) -> Point2 {
        let n = self.core.len() as f64;
        self.core.iter().fold(Point2::ORIGIN, |acc, p| acc + *p) * (1.0 / n)
    }

    /// `-K`.
    pub fn reflect(&self) -> Body {
        Body::new(self.core.iter().map(|p| -*p).collect(), self.rho)
            .expect("negation preserves convexity and orientation")
    }

    /// `∂K` as straight and circular pieces in counterclockwise order. Corner
    /// arcs sweeping more than π are split in two.
    pub fn boundary(&self) -> Vec<BoundaryPiece> {
        let m = self.core.len();
        let rho = self.rho;
        let mut pieces = Vec::new();
        if m == 1 {
            let c = self.core[0];
            let mid = Point2::polar(c, rho, PI);
            let start = Point2::polar(c, rho, 0.0);
            pieces.push(BoundaryPiece::Arc { center: c, radius: rho, start: 0.0, sweep: PI, from: start, to: mid });
            pieces.push(BoundaryPiece::Arc { center: c, radius: rho, start: PI, sweep: PI, from: mid, to: start });
            return pieces;
        }
        let e = self.normals.len();
        for i in 0..e {
            let v = self.core[i % m];
            let n_prev = self.normals[(i + e - 1) % e];
            let n_cur = self.normals[i];
            if rho > 0.0 {
                let from = v + n_prev * rho;
                let to = v + n_cur * rho;
                let start = n_prev.angle();
                let sweep = ccw_sweep(start, n_cur.angle());
                if sweep > PI - 1e-12 {
                    let half = 0.5 * sweep;
                    let mid = Point2::polar(v, rho, start + half);
                    pieces.push(BoundaryPiece::Arc { center: v, radius: rho, start, sweep: half, from, to: mid });
                    pieces.push(BoundaryPiece::Arc {
                        center: v,
                        radius: rho,
                        start: normalize_angle(start + half),
                        sweep: half,
                        from: mid,
                        to,
                    });
                } else if sweep > 0.0 {
                    pieces.push(BoundaryPiece::Arc { center: v, radius: rho, start, sweep, from, to });
                }
            }
            let w = self.core[(i + 1) % m];
            pieces.push(BoundaryPiece::Segment { a: v + n_cur * rho, b: w + n_cur * rho });
        }
        pieces
    }

    /// Radial boundary profile about an interior point: the unique `s > 0`
    /// with `c + s·(cos φ, sin φ)` on `∂K`.
    pub fn radial_distance(&self, c: Point2, phi: f64) -> Result<f64> {
        if !(self.depth(c) > 0.0) {
            return Err(Error::NotInterior { x: c.x, y: c.y });
        }
        Ok(self.radial_distance_unchecked(c, phi))
    }

    pub(crate) fn radial_distance_unchecked(&self, c: Point2, phi: f64) -> f64 {
        let u = Point2::unit(phi);
        let mut best = f64::NEG_INFINITY;
        for piece in self.boundary() {
            if let Some(s) = ray_hit(piece, c, u) {
                best = best.max(s);
            }
        }
        if best.is_finite() && best > 0.0 {
            return best;
        }
        // Only reached on numerically pathological input.
        let (mut lo, mut hi) = (0.0, self.diameter() + c.dist(self.core[0]) + 1.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.contains(c + u * mid, 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

const PIECE_SLACK: f64 = 1e-12;

fn ray_hit(piece: BoundaryPiece, c: Point2, u: Point2) -> Option<f64> {
    match piece {
        BoundaryPiece::Segment { a, b } => {
            let d = b - a;
            let denom = u.cross(d);
            if denom.abs() <= f64::EPSILON * d.norm() {
                return None;
            }
            let w = a - c;
            let s = w.cross(d) / denom;
            let t = w.cross(u) / denom;
            (s > 0.0 && (-PIECE_SLACK..=1.0 + PIECE_SLACK).contains(&t)).then_some(s)
        }
        BoundaryPiece::Arc { center, radius, start, sweep, .. } => {
            let w = c - center;
            let b = w.dot(u);
            let disc = b * b - (w.norm_sq() - radius * radius);
            if disc < 0.0 {
                return None;
            }
            let s = -b + disc.sqrt();
            if s <= 0.0 {
                return None;
            }
            let hit_angle = (c + u * s - center).angle();
            let off = ccw_sweep(start, hit_angle);
            (off <= sweep + PIECE_SLACK || off >= TAU - PIECE_SLACK).then_some(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::samples::{disc1, square2, stadium, tri_eq};
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn contains_examples() {
        let sq = square2();
        assert!(sq.contains(Point2::new(0.5, 0.5), 1e-9));
        assert!(!sq.contains(Point2::new(1.5, 0.0), 1e-9));
        assert!(disc1().contains(Point2::new(0.0, 1.0), 1e-9));
        assert!(!disc1().contains(Point2::new(0.0, 1.0 + 1e-6), 1e-9));
    }

    #[test]
    fn radial_examples() {
        let sq = square2();
        assert!((sq.radial_distance(Point2::ORIGIN, 0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((sq.radial_distance(Point2::ORIGIN, FRAC_PI_4).unwrap() - SQRT_2).abs() < 1e-12);
        for k in 0..16 {
            let r = disc1().radial_distance(Point2::ORIGIN, 0.4 * k as f64).unwrap();
            assert!((r - 1.0).abs() < 1e-12);
        }
        let st = stadium();
        assert!((st.radial_distance(Point2::new(1.0, 0.0), 0.0).unwrap() - 2.0).abs() < 1e-12);
        assert!((st.radial_distance(Point2::new(1.0, 0.0), PI / 2.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn radial_rejects_exterior_center() {
        let err = square2().radial_distance(Point2::new(3.0, 0.0), 0.0).unwrap_err();
        assert!(matches!(err, Error::NotInterior { .. }));
    }

    #[test]
    fn rejects_invalid_cores() {
        let cw = vec![Point2::new(0.0, 0.0), Point2::new(0.0, 1.0), Point2::new(1.0, 0.0)];
        assert!(Body::new(cw, 0.0).is_err());
        let collinear = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(2.0, 0.0)];
        assert!(Body::new(collinear, 1.0).is_err());
        assert!(Body::new(vec![Point2::ORIGIN], 0.0).is_err());
        assert!(Body::new(vec![Point2::ORIGIN], -1.0).is_err());
        let dup = vec![Point2::ORIGIN, Point2::new(1.0, 0.0), Point2::new(1.0, 0.0)];
        assert!(Body::new(dup, 1.0).is_err());
        let pentagram: Vec<Point2> = (0..5).map(|i| Point2::unit(TAU * 2.0 * i as f64 / 5.0)).collect();
        assert!(Body::new(pentagram, 0.0).is_err());
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(square2().reflect().core(), square2().core().iter().map(|p| -*p).collect::<Vec<_>>());
        let seg = Body::new(vec![Point2::ORIGIN, Point2::new(2.0, 0.0)], 1.0).unwrap();
        let r = seg.reflect();
        assert_eq!(r.rho(), 1.0);
        assert!(r.core().contains(&Point2::new(-2.0, 0.0)));
        let t = tri_eq().reflect();
        let s3 = 3f64.sqrt();
        assert_eq!(t.core(), &[Point2::new(0.0, -2.0), Point2::new(s3, 1.0), Point2::new(-s3, 1.0)][..]);
    }

    #[test]
    fn boundary_is_closed_loop() {
        for body in [square2(), disc1(), stadium(), Body::new(square2().core().to_vec(), 0.3).unwrap()] {
            let pieces = body.boundary();
            for i in 0..pieces.len() {
                let next = pieces[(i + 1) % pieces.len()];
                assert!(pieces[i].end_point().dist(next.start_point()) < 1e-12);
            }
        }
    }

    #[test]
    fn depth_matches_geometry() {
        assert!((square2().depth(Point2::ORIGIN) - 1.0).abs() < 1e-15);
        assert!((stadium().depth(Point2::new(1.0, 0.5)) - 0.5).abs() < 1e-15);
        assert!((disc1().depth(Point2::new(2.0, 0.0)) + 1.0).abs() < 1e-15);
    }
}
