//! Marked sets: directions (seen from an interior center) in which the
//! boundary comes closer than a radius `R`, and their total angle `α(R)`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Error, Result};
use crate::format::fmt_sig;
use crate::geom::angular::ccw_sweep;
use crate::geom::{AngularSet, Body, BoundaryPiece, Point2};

/// Relative band inside which a boundary point at constant distance `R` is
/// treated as "not closer than `R`".
pub const MARK_BAND: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkedSet {
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(rename = "U")]
    pub marked: AngularSet,
    pub alpha: f64,
}

/// Boundary directions `φ` about `center` with `ρ_K(φ) < R`.
///
/// Each boundary piece is solved in closed form: a quadratic in the segment
/// parameter for straight pieces, the law of cosines for corner arcs. Since
/// `center` is interior, the angle seen from it increases monotonically along
/// `∂K`, so every sub-threshold sub-piece maps to a single arc of directions.
pub fn marked_set(body: &Body, center: Point2, radius: f64) -> Result<MarkedSet> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(invalid_param("R", format!("must be a positive finite length, got {radius}")));
    }
    if !(body.depth(center) > 0.0) {
        return Err(Error::NotInterior { x: center.x, y: center.y });
    }
    let band = MARK_BAND * radius.max(1.0);
    let mut arcs: Vec<(f64, f64)> = Vec::new();
    for piece in body.boundary() {
        match piece {
            BoundaryPiece::Segment { a, b } => {
                if let Some((pa, pb)) = segment_below(a, b, center, radius) {
                    let (u, v) = (pa - center, pb - center);
                    let len = u.cross(v).atan2(u.dot(v));
                    if len > 0.0 {
                        arcs.push((u.angle(), len));
                    }
                }
            }
            BoundaryPiece::Arc { center: v, radius: rho, start, sweep, from, to } => {
                let d = v.dist(center);
                let whole = || vec![(from, to)];
                let sub: Vec<(Point2, Point2)> = if d <= band {
                    if rho < radius - band {
                        whole()
                    } else {
                        Vec::new()
                    }
                } else {
                    let kappa = (radius * radius - d * d - rho * rho) / (2.0 * rho * d);
                    if kappa >= 1.0 {
                        whole()
                    } else if kappa <= -1.0 {
                        Vec::new()
                    } else {
                        let half = kappa.acos();
                        let delta = (v - center).angle();
                        let below = AngularSet::arc(delta + half, TAU - 2.0 * half);
                        AngularSet::arc(start, sweep)
                            .intersection(&below)
                            .arcs()
                            .iter()
                            .map(|s| {
                                let end = s.start + s.length;
                                let pa = if ccw_sweep(start, s.start) <= 1e-12 { from } else { Point2::polar(v, rho, s.start) };
                                let pb = if (ccw_sweep(start, end) - sweep).abs() <= 1e-12 {
                                    to
                                } else {
                                    Point2::polar(v, rho, end)
                                };
                                (pa, pb)
                            })
                            .collect()
                    }
                };
                for (pa, pb) in sub {
                    let fa = (pa - center).angle();
                    let len = ccw_sweep(fa, (pb - center).angle());
                    if len > 0.0 && len < TAU - 1e-9 {
                        arcs.push((fa, len));
                    }
                }
            }
        }
    }
    let marked = AngularSet::from_arcs(arcs);
    Ok(MarkedSet { radius, alpha: marked.measure(), marked })
}

/// Sub-segment of `[a, b]` strictly within distance `radius` of `c`.
fn segment_below(a: Point2, b: Point2, c: Point2, radius: f64) -> Option<(Point2, Point2)> {
    let d = b - a;
    let w = a - c;
    let qa = d.norm_sq();
    let qb = w.dot(d);
    let qc = w.norm_sq() - radius * radius;
    let disc = qb * qb - qa * qc;
    if !(disc > 0.0) || qa == 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let q = -(qb + qb.signum() * sq);
    let (t1, t2) = if q != 0.0 { (q / qa, qc / q) } else { (-sq / qa, sq / qa) };
    let (lo, hi) = (t1.min(t2).max(0.0), t1.max(t2).min(1.0));
    if hi <= lo {
        return None;
    }
    let pa = if lo == 0.0 { a } else { a + d * lo };
    let pb = if hi == 1.0 { b } else { a + d * hi };
    Some((pa, pb))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaRow {
    #[serde(rename = "R")]
    pub radius: f64,
    pub alpha: f64,
}

/// `α(R)` over a list of radii, sorted by `R`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaProfile {
    pub rows: Vec<AlphaRow>,
}

pub fn alpha_profile(body: &Body, center: Point2, radii: &[f64]) -> Result<AlphaProfile> {
    let mut sorted = radii.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rows = sorted
        .into_iter()
        .map(|r| marked_set(body, center, r).map(|m| AlphaRow { radius: r, alpha: m.alpha }))
        .collect::<Result<Vec<_>>>()?;
    Ok(AlphaProfile { rows })
}

impl AlphaProfile {
    /// `R,alpha` header, one row per radius, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("R,alpha\n");
        for row in &self.rows {
            out.push_str(&fmt_sig(row.radius, 12));
            out.push(',');
            out.push_str(&fmt_sig(row.alpha, 12));
            out.push('\n');
        }
        out
    }
}
