//! Largest inscribed circles of disc-polygons, the contact set `∂K ∩ O`,
//! and the `β/α` lower bound on any Helly-type constant.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::angular::ccw_sweep;
use crate::geom::hull::{convex_hull, signed_area2};
use crate::geom::point::point_segment_distance;
use crate::geom::{AngularSet, Body, BoundaryPiece, Point2, DEFAULT_TOL};
use crate::lp::{max_min_slack, SlackOptimum};
use crate::serde_util::inf_as_string;

/// Slack added to the offset half-planes when extracting the center set.
pub const CENTER_SLACK: f64 = 1e-9;
/// Diameter/area threshold separating point, segment and polygon center sets.
pub const CENTER_CLASSIFY_EPS: f64 = 1e-7;

/// Set of admissible incircle centers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CenterSet {
    Point { at: Point2 },
    Segment { a: Point2, b: Point2 },
    Polygon { vertices: Vec<Point2> },
}

impl CenterSet {
    pub fn extreme_points(&self) -> Vec<Point2> {
        match self {
            CenterSet::Point { at } => vec![*at],
            CenterSet::Segment { a, b } => vec![*a, *b],
            CenterSet::Polygon { vertices } => vertices.clone(),
        }
    }

    /// Midpoint of a segment, vertex mean of a polygon.
    pub fn centroid(&self) -> Point2 {
        let pts = self.extreme_points();
        pts.iter().fold(Point2::ORIGIN, |acc, p| acc + *p) * (1.0 / pts.len() as f64)
    }

    pub fn distance(&self, p: Point2) -> f64 {
        match self {
            CenterSet::Point { at } => p.dist(*at),
            CenterSet::Segment { a, b } => point_segment_distance(p, *a, *b),
            CenterSet::Polygon { vertices } => {
                let n = vertices.len();
                let inside = (0..n).all(|i| (vertices[(i + 1) % n] - vertices[i]).cross(p - vertices[i]) >= 0.0);
                if inside {
                    0.0
                } else {
                    (0..n)
                        .map(|i| point_segment_distance(p, vertices[i], vertices[(i + 1) % n]))
                        .fold(f64::INFINITY, f64::min)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Incircle {
    pub r: f64,
    pub centers: CenterSet,
}

impl Incircle {
    pub fn admits_center(&self, p: Point2, tol: f64) -> bool {
        self.centers.distance(p) <= tol.max(CENTER_CLASSIFY_EPS)
    }
}

fn polygon_rows(poly: &[Point2]) -> Vec<(Point2, f64)> {
    let n = poly.len();
    (0..n)
        .filter_map(|i| {
            let d = poly[(i + 1) % n] - poly[i];
            let len = d.norm();
            (len > 0.0).then(|| {
                let nrm = d.perp_right() * (1.0 / len);
                (nrm, nrm.dot(poly[i]))
            })
        })
        .collect()
}

fn clip(poly: &[Point2], normal: Point2, offset: f64) -> Vec<Point2> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let dp = normal.dot(p) - offset;
        let dq = normal.dot(q) - offset;
        if dp <= 0.0 {
            out.push(p);
        }
        if (dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0) {
            out.push(p.lerp(q, dp / (dp - dq)));
        }
    }
    out
}

fn classify(vertices: Vec<Point2>, fallback: Point2) -> CenterSet {
    if vertices.is_empty() {
        return CenterSet::Point { at: fallback };
    }
    let mut diam = 0.0;
    let mut pair = (vertices[0], vertices[0]);
    for (i, a) in vertices.iter().enumerate() {
        for b in &vertices[i + 1..] {
            let d = a.dist(*b);
            if d > diam {
                diam = d;
                pair = (*a, *b);
            }
        }
    }
    if diam <= CENTER_CLASSIFY_EPS {
        return CenterSet::Point { at: fallback };
    }
    let area = 0.5 * signed_area2(&vertices).abs();
    if area <= CENTER_CLASSIFY_EPS * diam {
        // Thin sliver: its axis through the optimum, spanning the sliver.
        let u = (pair.1 - pair.0) * (1.0 / diam);
        let on_axis = |p: Point2| fallback + u * u.dot(p - fallback);
        let pair = (on_axis(pair.0), on_axis(pair.1));
        let (a, b) = if (pair.0.x, pair.0.y) <= (pair.1.x, pair.1.y) { pair } else { (pair.1, pair.0) };
        return CenterSet::Segment { a, b };
    }
    CenterSet::Polygon { vertices }
}

fn polygon_incircle(poly: &[Point2], rows: &[(Point2, f64)]) -> Result<(SlackOptimum, CenterSet)> {
    let opt = max_min_slack(rows)?;
    let scale = poly.iter().map(|p| p.x.abs().max(p.y.abs())).fold(1.0, f64::max);
    let slack = CENTER_SLACK * scale;
    let mut region = poly.to_vec();
    for &(n, c) in rows {
        region = clip(&region, n, c - opt.slack + slack);
        if region.is_empty() {
            break;
        }
    }
    Ok((opt, classify(region, opt.x)))
}

/// Largest inscribed circle of `K`.
///
/// For a polygonal core this is the Chebyshev-center program on the core
/// edges; eroding `conv(core) ⊕ ρD` by `ρD` recovers the core, so the
/// inradius is the core's plus `ρ` with the same center set. One- and
/// two-point cores have `r = ρ` and centers `conv(core)`.
pub fn chebyshev_incircle(body: &Body) -> Result<Incircle> {
    let core = body.core();
    match core.len() {
        1 => Ok(Incircle { r: body.rho(), centers: CenterSet::Point { at: core[0] } }),
        2 => Ok(Incircle { r: body.rho(), centers: CenterSet::Segment { a: core[0], b: core[1] } }),
        _ => {
            let rows: Vec<_> = body.edges().collect();
            let (opt, centers) = polygon_incircle(core, &rows)?;
            Ok(Incircle { r: opt.slack + body.rho(), centers })
        }
    }
}

/// Inradius of the convex hull of `points`.
pub fn inradius_of_points(points: &[Point2]) -> Result<f64> {
    let hull = convex_hull(points);
    if hull.degenerate {
        return Err(Error::DegenerateHull(format!(
            "{} points span fewer than 3 hull vertices",
            points.len()
        )));
    }
    let rows = polygon_rows(&hull.vertices);
    Ok(max_min_slack(&rows)?.slack)
}

/// `∂K ∩ O` about one incircle center.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContactReport {
    pub center: Point2,
    pub r: f64,
    /// Angles (at `center`) of isolated tangency points.
    pub tangent_points: Vec<f64>,
    /// Boundary arcs lying on the incircle.
    pub contact_arcs: AngularSet,
    /// Arc length of `contact_arcs`.
    pub alpha_contact: f64,
    /// Incircle circumference `2πr`.
    pub beta: f64,
    pub discrete: bool,
    /// `beta / alpha_contact`, infinite when the contact set is discrete.
    #[serde(with = "inf_as_string")]
    pub lower_bound: f64,
    /// How the contact hypothesis is read.
    pub contact_set: String,
}

pub const CONTACT_SET_READING: &str = "boundary intersected with incircle";

pub fn contact_report(body: &Body, center: Point2) -> Result<ContactReport> {
    contact_report_with_tol(body, center, DEFAULT_TOL)
}

pub fn contact_report_with_tol(body: &Body, center: Point2, tol: f64) -> Result<ContactReport> {
    let inc = chebyshev_incircle(body)?;
    if !inc.admits_center(center, tol) {
        return Err(Error::NotAdmissibleCenter { x: center.x, y: center.y });
    }
    let r = inc.r;
    let mut tangents: Vec<f64> = Vec::new();
    let mut arcs: Vec<(f64, f64)> = Vec::new();
    for piece in body.boundary() {
        match piece {
            BoundaryPiece::Segment { a, b } => {
                let foot = crate::geom::point::closest_on_segment(center, a, b);
                if (foot.dist(center) - r).abs() <= tol {
                    tangents.push((foot - center).angle());
                }
            }
            BoundaryPiece::Arc { center: v, radius, start, sweep, .. } => {
                let d = v.dist(center);
                if d <= tol && (radius - r).abs() <= tol {
                    arcs.push((start, sweep));
                } else if d > tol && (d + radius - r).abs() <= tol {
                    let psi = (v - center).angle();
                    let off = ccw_sweep(start, psi);
                    if off <= sweep + 1e-12 || off >= TAU - 1e-12 {
                        tangents.push(psi);
                    }
                }
            }
        }
    }
    let contact_arcs = AngularSet::from_arcs(arcs);
    tangents.sort_by(f64::total_cmp);
    let mut tangent_points: Vec<f64> = Vec::new();
    for t in tangents {
        let dup = tangent_points.iter().any(|&u| {
            let d = ccw_sweep(u, t);
            d.min(TAU - d) <= 1e-9
        });
        if !dup {
            tangent_points.push(t);
        }
    }
    let alpha_contact = r * contact_arcs.measure();
    let beta = TAU * r;
    let discrete = contact_arcs.is_empty();
    let lower_bound = if discrete { f64::INFINITY } else { beta / alpha_contact };
    Ok(ContactReport {
        center,
        r,
        tangent_points,
        contact_arcs,
        alpha_contact,
        beta,
        discrete,
        lower_bound,
        contact_set: CONTACT_SET_READING.to_string(),
    })
}

/// Incircle centers worth analyzing: the extreme points of the center set,
/// its centroid, and any core vertex inside it (snapped to the exact vertex).
pub fn candidate_centers(body: &Body) -> Result<Vec<Point2>> {
    let inc = chebyshev_incircle(body)?;
    let mut raw = inc.centers.extreme_points();
    raw.push(inc.centers.centroid());
    let vertices: Vec<Point2> =
        body.core().iter().copied().filter(|v| inc.admits_center(*v, DEFAULT_TOL)).collect();
    let mut out: Vec<Point2> = Vec::new();
    for mut p in raw {
        if let Some(v) = vertices.iter().find(|v| v.dist(p) <= CENTER_CLASSIFY_EPS) {
            p = *v;
        }
        if !out.iter().any(|q| q.dist(p) <= CENTER_CLASSIFY_EPS) {
            out.push(p);
        }
    }
    for v in vertices {
        if !out.iter().any(|q| q.dist(v) <= CENTER_CLASSIFY_EPS) {
            out.push(v);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub center: Point2,
    #[serde(with = "inf_as_string")]
    pub lower_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSummary {
    #[serde(with = "inf_as_string")]
    pub min: f64,
    #[serde(with = "inf_as_string")]
    pub max: f64,
    pub per_center: Vec<BoundRow>,
}

/// `β/α` over every candidate center.
pub fn bound_summary(body: &Body) -> Result<BoundSummary> {
    let mut per_center = Vec::new();
    for c in candidate_centers(body)? {
        let rep = contact_report(body, c)?;
        per_center.push(BoundRow { center: c, lower_bound: rep.lower_bound });
    }
    let min = per_center.iter().map(|r| r.lower_bound).fold(f64::INFINITY, f64::min);
    let max = per_center.iter().map(|r| r.lower_bound).fold(f64::NEG_INFINITY, f64::max);
    Ok(BoundSummary { min, max, per_center })
}
