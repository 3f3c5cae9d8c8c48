//! Covering oracles: can a translate (or a rigid copy) of `K` cover a point set?

use std::collections::HashSet;
use std::f64::consts::TAU;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{convex_hull, Body, Point2, RigidMotion};
use crate::incircle::{chebyshev_incircle, inradius_of_points};
use crate::lemma::{binomial, sample_subsets};
use crate::lp::max_min_slack;

pub const DEFAULT_GRID: usize = 720;
pub const DEFAULT_REFINE_ITERS: usize = 60;
pub const DEFAULT_COVER_TOL: f64 = 1e-7;

/// Iteration cap of the ellipsoid method.
pub const MAX_CUTS: usize = 10_000;
/// Certified optimality gap at which the ellipsoid method stops.
pub const GAP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImpossibilityCertificate {
    pub hull_inradius: f64,
    pub body_inradius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverResult {
    pub found: bool,
    /// Covering motion when found; otherwise the best motion tried.
    pub motion: Option<RigidMotion>,
    /// Best containment margin (signed; `≥ −tol` when found).
    pub margin: f64,
    pub certificate_of_impossibility: Option<ImpossibilityCertificate>,
    /// `false` for a heuristic "not found" that proves nothing.
    pub conclusive: bool,
    /// For polygonal bodies, whether the linear-feasibility route agreed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp_agrees: Option<bool>,
}

/// Minimum over translations `t` of `g(t) = max_i sd_K(v_i − t)`, where
/// `sd_K` is the signed distance to `∂K` (negative inside).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslationOptimum {
    pub t: Point2,
    pub value: f64,
    pub iterations: usize,
}

fn eval_g(points: &[Point2], body: &Body, t: Point2) -> (f64, Point2) {
    let mut worst = f64::NEG_INFINITY;
    let mut grad = Point2::ORIGIN;
    for &v in points {
        let (sd, grad_x) = signed_distance(body, v - t);
        if sd > worst {
            worst = sd;
            grad = -grad_x;
        }
    }
    (worst, grad)
}

/// Signed distance to `∂K` (negative inside) and a subgradient in `x`.
fn signed_distance(body: &Body, x: Point2) -> (f64, Point2) {
    if body.is_polygonal_core() {
        let (mut best, mut normal) = (f64::NEG_INFINITY, Point2::ORIGIN);
        for (n, b) in body.edges() {
            let s = n.dot(x) - b;
            if s > best {
                best = s;
                normal = n;
            }
        }
        if best <= 0.0 {
            return (best - body.rho(), normal);
        }
    }
    let q = body.nearest_core_point(x);
    let d = x.dist(q);
    let grad = if d > 0.0 { (x - q) * (1.0 / d) } else { Point2::ORIGIN };
    (d - body.rho(), grad)
}

fn diameter(points: &[Point2]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            d = d.max(a.dist(*b));
        }
    }
    d
}

/// Central-cut ellipsoid method on the convex function `g`.
///
/// Each cut uses a subgradient at the current center: for the worst point,
/// the unit vector from its nearest core point (or the active edge normal
/// when it is inside the core), negated since `g` depends on `v_i − t`. The lower
/// bound `g(t_k) − ‖∇‖_{P_k}` certifies the gap used as stopping rule.
pub fn minimize_translation(points: &[Point2], body: &Body) -> Result<TranslationOptimum> {
    if points.is_empty() {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    let n = points.len() as f64;
    let mean = points.iter().fold(Point2::ORIGIN, |a, p| a + *p) * (1.0 / n);
    let mut x = mean - body.core_centroid();
    let radius = 2.0 * diameter(points) + body.diameter() + 1.0;
    // Shape matrix [[a, b], [b, c]].
    let (mut a, mut b, mut c) = (radius * radius, 0.0, radius * radius);

    let (mut best_val, _) = eval_g(points, body, x);
    let mut best_t = x;
    let mut lower = f64::NEG_INFINITY;
    let mut iterations = 0;
    while iterations < MAX_CUTS {
        iterations += 1;
        let (val, g) = eval_g(points, body, x);
        if val < best_val {
            best_val = val;
            best_t = x;
        }
        if g == Point2::ORIGIN {
            // The worst point sits on a one- or two-point core: global minimum.
            break;
        }
        let pg = Point2::new(a * g.x + b * g.y, b * g.x + c * g.y);
        let gpg = g.dot(pg);
        if !(gpg > 0.0) {
            break;
        }
        let norm = gpg.sqrt();
        lower = lower.max(val - norm);
        if best_val - lower <= GAP_TOL {
            break;
        }
        let step = pg * (1.0 / norm);
        x = x - step * (1.0 / 3.0);
        let f = 4.0 / 3.0;
        a = f * (a - (2.0 / 3.0) * step.x * step.x);
        b = f * (b - (2.0 / 3.0) * step.x * step.y);
        c = f * (c - (2.0 / 3.0) * step.y * step.y);
    }
    Ok(TranslationOptimum { t: best_t, value: best_val, iterations })
}

/// For a polygonal body (`ρ = 0`): maximizes `s` subject to
/// `n_j·(v_i − t) ≤ b_j − s`. The points fit in a translate iff `s ≥ 0`.
pub fn translation_lp(points: &[Point2], body: &Body) -> Result<(Point2, f64)> {
    if points.is_empty() {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    let rows: Vec<(Point2, f64)> = body
        .edges()
        .map(|(nrm, off)| {
            let reach = points.iter().map(|v| nrm.dot(*v)).fold(f64::NEG_INFINITY, f64::max);
            (-nrm, off - reach)
        })
        .collect();
    let opt = max_min_slack(&rows)?;
    Ok((opt.x, opt.slack))
}

fn covers(points: &[Point2], body: &Body, motion: &RigidMotion, tol: f64) -> bool {
    let inv = motion.inverse();
    points.iter().all(|p| body.contains(inv.apply_point(*p), tol))
}

/// Decides whether some translate of `K` covers every point.
///
/// A translate `t + K` contains `v` iff `t ∈ v + (−K)`, so this is the
/// nonemptiness of `⋂ (v_i − K)`, decided by minimizing `g`. Polygonal bodies
/// are also solved as an exact linear feasibility problem and the two routes
/// are compared in `lp_agrees`.
pub fn translation_cover(points: &[Point2], body: &Body, tol: f64) -> Result<CoverResult> {
    let opt = minimize_translation(points, body)?;
    let mut found = opt.value <= tol && covers(points, body, &RigidMotion::translation(opt.t), tol);
    let mut t = opt.t;
    let mut lp_agrees = None;
    if body.rho() == 0.0 && body.is_polygonal_core() {
        let (t_lp, slack) = translation_lp(points, body)?;
        let lp_found = -slack <= tol;
        lp_agrees = Some(lp_found == (opt.value <= tol));
        if !found && lp_found && covers(points, body, &RigidMotion::translation(t_lp), tol) {
            found = true;
            t = t_lp;
        }
    }
    Ok(CoverResult {
        found,
        motion: Some(RigidMotion::translation(t)),
        margin: -opt.value,
        certificate_of_impossibility: None,
        conclusive: true,
        lp_agrees,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HellyTripleReport {
    pub all_triples_coverable: bool,
    pub whole_coverable: bool,
    pub witness: Option<[usize; 3]>,
    /// All triples coverable but the whole set not: impossible for exact
    /// arithmetic, so this flags a numerical fault.
    pub violation: bool,
}

/// Checks every 3-subset and the whole set for a covering translate.
pub fn helly_triple_property(points: &[Point2], body: &Body, tol: f64) -> Result<HellyTripleReport> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: points.len() });
    }
    let mut witness = None;
    for idx in (0..points.len()).combinations(3) {
        let triple = [points[idx[0]], points[idx[1]], points[idx[2]]];
        if !translation_cover(&triple, body, tol)?.found {
            witness = Some([idx[0], idx[1], idx[2]]);
            break;
        }
    }
    let whole = translation_cover(points, body, tol)?.found;
    Ok(HellyTripleReport {
        all_triples_coverable: witness.is_none(),
        whole_coverable: whole,
        witness,
        violation: witness.is_none() && !whole,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidParams {
    pub grid_n: usize,
    pub refine_iters: usize,
    pub tol: f64,
}

impl Default for RigidParams {
    fn default() -> Self {
        Self { grid_n: DEFAULT_GRID, refine_iters: DEFAULT_REFINE_ITERS, tol: DEFAULT_COVER_TOL }
    }
}

/// Best translation score for `K` rotated by `theta` (≤ tol means coverable).
/// Polygonal bodies use the linear program, which has the same sign as `g`.
fn rotated_score(points: &[Point2], body: &Body, theta: f64) -> Result<f64> {
    let rotated = RigidMotion::rotation(theta).apply_body(body);
    if rotated.rho() == 0.0 && rotated.is_polygonal_core() {
        Ok(-translation_lp(points, &rotated)?.1)
    } else {
        Ok(minimize_translation(points, &rotated)?.value)
    }
}

/// Heuristic rigid-motion cover: an inradius impossibility test, then a
/// uniform rotation grid, then golden-section refinement around the best
/// angle. A "not found" without an impossibility certificate is inconclusive.
pub fn rigid_cover(points: &[Point2], body: &Body, params: RigidParams) -> Result<CoverResult> {
    if points.is_empty() {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    let grid_n = params.grid_n.max(1);
    let tol = params.tol;
    let body_r = chebyshev_incircle(body)?.r;
    if !convex_hull(points).degenerate {
        let hull_r = inradius_of_points(points)?;
        if hull_r > body_r + tol {
            return Ok(CoverResult {
                found: false,
                motion: None,
                margin: body_r - hull_r,
                certificate_of_impossibility: Some(ImpossibilityCertificate {
                    hull_inradius: hull_r,
                    body_inradius: body_r,
                }),
                conclusive: true,
                lp_agrees: None,
            });
        }
    }

    let finish = |theta: f64| -> Result<Option<CoverResult>> {
        let rotated = RigidMotion::rotation(theta).apply_body(body);
        let res = translation_cover(points, &rotated, tol)?;
        let t = res.motion.map(|m| m.t).unwrap_or_default();
        let motion = RigidMotion::new(theta, t);
        Ok((res.found && covers(points, body, &motion, tol)).then(|| CoverResult {
            motion: Some(motion),
            lp_agrees: None,
            ..res
        }))
    };

    let step = TAU / grid_n as f64;
    let mut best = (f64::INFINITY, 0.0);
    for j in 0..grid_n {
        let theta = step * j as f64;
        let score = rotated_score(points, body, theta)?;
        if score <= tol {
            if let Some(res) = finish(theta)? {
                return Ok(res);
            }
        }
        if score < best.0 {
            best = (score, theta);
        }
    }

    // Golden-section search on [θ* − step, θ* + step].
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (best.1 - step, best.1 + step);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = rotated_score(points, body, x1)?;
    let mut f2 = rotated_score(points, body, x2)?;
    for _ in 0..params.refine_iters {
        if f1 < best.0 {
            best = (f1, x1);
        }
        if f2 < best.0 {
            best = (f2, x2);
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = rotated_score(points, body, x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = rotated_score(points, body, x2)?;
        }
    }
    for (f, x) in [(f1, x1), (f2, x2)] {
        if f < best.0 {
            best = (f, x);
        }
    }
    if best.0 <= tol {
        if let Some(res) = finish(best.1)? {
            return Ok(res);
        }
    }
    let rotated = RigidMotion::rotation(best.1).apply_body(body);
    let opt = minimize_translation(points, &rotated)?;
    Ok(CoverResult {
        found: false,
        motion: Some(RigidMotion::new(best.1, opt.t)),
        margin: -opt.value,
        certificate_of_impossibility: None,
        conclusive: false,
        lp_agrees: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimateMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HellyEstimate {
    /// Largest `k` such that every checked `k`-subset is rigidly coverable.
    pub k_max: usize,
    pub mode: EstimateMode,
    /// Set in sampled mode: `k_max` may overstate the true value.
    pub upper_confidence: bool,
    /// First subset found not coverable, if any.
    pub failing_subset: Option<Vec<usize>>,
}

/// Largest `k` such that every `k`-subset can be covered by a rigid copy of
/// `K`. Levels with more than `budget` subsets are sampled.
pub fn empirical_helly_number(
    points: &[Point2],
    body: &Body,
    budget: usize,
    seed: u64,
    params: RigidParams,
) -> Result<HellyEstimate> {
    let n = points.len();
    if n == 0 {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    if rigid_cover(points, body, params)?.found {
        return Ok(HellyEstimate { k_max: n, mode: EstimateMode::Exhaustive, upper_confidence: false, failing_subset: None });
    }
    let mut mode = EstimateMode::Exhaustive;
    let mut failing: Vec<Vec<usize>> = Vec::new();
    let mut passed: HashSet<Vec<usize>> = HashSet::new();
    for k in 1..n {
        let subsets: Vec<Vec<usize>> = if binomial(n, k) <= budget as u128 {
            (0..n).combinations(k).collect()
        } else {
            mode = EstimateMode::Sampled;
            sample_subsets(n, k, budget, seed.wrapping_add(k as u64))
        };
        for subset in subsets {
            if passed.contains(&subset) {
                continue;
            }
            // A superset of a failing subset fails too.
            let known_bad = failing.iter().any(|f| f.iter().all(|i| subset.binary_search(i).is_ok()));
            let selected: Vec<Point2> = subset.iter().map(|&i| points[i]).collect();
            if known_bad || !rigid_cover(&selected, body, params)?.found {
                failing.push(subset.clone());
                return Ok(HellyEstimate {
                    k_max: k - 1,
                    mode,
                    upper_confidence: mode == EstimateMode::Sampled,
                    failing_subset: Some(subset),
                });
            }
            passed.insert(subset);
        }
    }
    Ok(HellyEstimate {
        k_max: n - 1,
        mode,
        upper_confidence: mode == EstimateMode::Sampled,
        failing_subset: Some((0..n).collect()),
    })
}
