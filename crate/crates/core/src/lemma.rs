//! The regular-polygon counterexample.
//!
//! Around an incircle center `c` of `K` (radius `r`) place the vertices of a
//! regular `n`-gon `P` whose own inradius is `r + ε`. `P` never fits in any
//! rigid copy of `K`, but when the marked set `U(R)` (directions in which
//! `∂K` is closer than the circumradius `R`) has measure `α` with `kα < 2π`,
//! every `k` of its vertices can be rotated about `c` into `K` at once. The
//! certificate records the parameters, one rotation per checked subset, and
//! the inradius inequality proving the whole polygon is not coverable.

use std::f64::consts::{PI, TAU};

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Error, Result};
use crate::geom::{AngularSet, Body, Configuration, Point2, DEFAULT_TOL};
use crate::incircle::{candidate_centers, chebyshev_incircle, inradius_of_points};
use crate::marking::marked_set;

/// Headroom on the `kα < 2π` test.
pub const SAFETY_SLACK: f64 = 0.05;
/// Number of `ε` steps tried by default.
pub const DEFAULT_BUDGET: usize = 6;
pub const DEFAULT_SUBSET_BUDGET: usize = 100_000;
/// Largest polygon size the parameter search considers.
pub const MAX_POLYGON_SIZE: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub epsilon: f64,
    pub n: usize,
    /// Circumradius of the polygon.
    #[serde(rename = "R")]
    pub radius: f64,
    pub center: Point2,
}

/// Circumradius of a regular `n`-gon with inradius `inradius`.
pub fn circumradius(inradius: f64, n: usize) -> f64 {
    inradius / (PI / n as f64).cos()
}

/// Vertices of the regular `n`-gon around `center` with inradius
/// `r + epsilon`, starting at angle `phase`. Returns the points and their
/// circumradius `R`.
pub fn regular_polygon_config(
    center: Point2,
    r: f64,
    epsilon: f64,
    n: usize,
    phase: f64,
) -> Result<(Configuration, f64)> {
    if n < 3 {
        return Err(invalid_param("n", format!("need at least 3 vertices, got {n}")));
    }
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return Err(invalid_param("epsilon", format!("must be finite and >= 0, got {epsilon}")));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(invalid_param("r", format!("must be finite and > 0, got {r}")));
    }
    let radius = circumradius(r + epsilon, n);
    let points = (0..n)
        .map(|i| Point2::polar(center, radius, phase + TAU * i as f64 / n as f64))
        .collect();
    let provenance = format!("regular {n}-gon, inradius {} about ({}, {})", r + epsilon, center.x, center.y);
    Ok((Configuration::new(points, provenance)?, radius))
}

/// Parameters together with the marked measure they achieve.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamChoice {
    pub params: ConstructionParams,
    pub alpha: f64,
    pub body_inradius: f64,
}

/// Searches `ε_j = r·10^{-j}` for `j = 1..=budget`. At each step the polygon
/// size is the larger of the floor `8·5^{j-1}` and the smallest `n` with
/// `α(R(ε_j, n)) < 2π / (k(1 + SAFETY_SLACK))`; it is never below `k`.
pub fn choose_construction_params(body: &Body, center: Point2, k: usize, budget: usize) -> Result<ParamChoice> {
    if k == 0 {
        return Err(invalid_param("k", "must be at least 1"));
    }
    let r = chebyshev_incircle(body)?.r;
    let target = TAU / (k as f64 * (1.0 + SAFETY_SLACK));
    let alpha_at = |eps: f64, n: usize| marked_set(body, center, circumradius(r + eps, n)).map(|m| m.alpha);

    let mut best_alpha = f64::INFINITY;
    let mut floor: usize = 8;
    for j in 1..=budget {
        let eps = r * 10f64.powi(-(j as i32));
        let limit = alpha_at(eps, MAX_POLYGON_SIZE)?;
        best_alpha = best_alpha.min(limit);
        if limit < target {
            // alpha is non-increasing in n: bisect for the smallest good n.
            let (mut lo, mut hi) = (3usize, MAX_POLYGON_SIZE);
            if alpha_at(eps, lo)? < target {
                hi = lo;
            }
            while hi - lo > 1 {
                let mid = lo + (hi - lo) / 2;
                if alpha_at(eps, mid)? < target {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let n = hi.max(floor).max(k);
            let radius = circumradius(r + eps, n);
            let alpha = marked_set(body, center, radius)?.alpha;
            return Ok(ParamChoice {
                params: ConstructionParams { epsilon: eps, n, radius, center },
                alpha,
                body_inradius: r,
            });
        }
        floor = floor.saturating_mul(5);
    }
    Err(Error::BudgetExhausted { k, best_alpha, target })
}

/// Rotations `θ` (applied to the vertices about the center) that keep every
/// vertex out of the marked set: the complement of `⋃ (U − φ_i)`.
pub fn rotation_feasible_set(marked: &AngularSet, vertex_angles: &[f64]) -> AngularSet {
    if marked.is_empty() {
        return AngularSet::full();
    }
    let shifted: Vec<AngularSet> = vertex_angles.iter().map(|&phi| marked.shift(-phi)).collect();
    AngularSet::union_all(&shifted).complement()
}

/// Rotates the selected points by `theta` about `center` and returns
/// `min_i (ρ_K(angle_i) − |p_i − center|)`; non-negative iff all selected
/// points lie in `K`. `+∞` for an empty subset.
pub fn verify_subset(body: &Body, center: Point2, config: &Configuration, subset: &[usize], theta: f64) -> Result<f64> {
    let mut margin = f64::INFINITY;
    for &i in subset {
        let p = config
            .points
            .get(i)
            .ok_or_else(|| invalid_param("subset", format!("index {i} out of range")))?
            .rotate_about(center, theta);
        let v = p - center;
        margin = margin.min(body.radial_distance(center, v.angle())? - v.norm());
    }
    Ok(margin)
}

/// `true` proves no rigid copy of `K` covers the configuration: the hull of
/// the points has a larger inradius than `K`. `false` is inconclusive.
pub fn verify_noncover(body: &Body, config: &Configuration) -> Result<bool> {
    let hull_r = inradius_of_points(&config.points)?;
    Ok(hull_r > chebyshev_incircle(body)?.r + DEFAULT_TOL)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SubsetStrategy {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetResult {
    pub indices: Vec<usize>,
    pub theta: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NonCover {
    pub hull_inradius: f64,
    pub body_inradius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaCertificate {
    pub body: Body,
    pub center: Point2,
    pub k: usize,
    pub params: ConstructionParams,
    pub alpha: f64,
    pub points: Configuration,
    pub subset_strategy: SubsetStrategy,
    pub subset_results: Vec<SubsetResult>,
    pub noncover: NonCover,
    pub verdict: bool,
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Uniform `k`-subsets of `0..n`, sorted, from a seeded generator.
pub fn sample_subsets(n: usize, k: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut s = rand::seq::index::sample(&mut rng, n, k).into_vec();
            s.sort_unstable();
            s
        })
        .collect()
}

/// The rotation used for a subset: midpoint of the largest feasible arc.
pub fn subset_rotation(marked: &AngularSet, vertex_angles: &[f64]) -> Option<f64> {
    rotation_feasible_set(marked, vertex_angles).largest_arc().map(|a| a.midpoint())
}

/// Runs the whole construction for one `k`.
pub fn build_certificate(
    body: &Body,
    k: usize,
    budget: usize,
    subset_budget: usize,
    seed: u64,
) -> Result<LemmaCertificate> {
    if k == 0 {
        return Err(invalid_param("k", "must be at least 1"));
    }
    let r = chebyshev_incircle(body)?.r;
    let probe = r * (1.0 + 1e-6);
    let mut center = None;
    let mut best = f64::INFINITY;
    for c in candidate_centers(body)? {
        let a = marked_set(body, c, probe)?.alpha;
        if a < best {
            best = a;
            center = Some(c);
        }
    }
    let center = center.ok_or_else(|| invalid_param("body", "no incircle center found"))?;

    let choice = choose_construction_params(body, center, k, budget)?;
    let params = choice.params;
    let (points, radius) = regular_polygon_config(center, r, params.epsilon, params.n, 0.0)?;
    let marked = marked_set(body, center, radius)?;
    let angles: Vec<f64> = points.points.iter().map(|p| (*p - center).angle()).collect();

    let n = params.n;
    let (strategy, subsets): (SubsetStrategy, Vec<Vec<usize>>) = if binomial(n, k) <= subset_budget as u128 {
        (SubsetStrategy::Exhaustive, (0..n).combinations(k).collect())
    } else {
        (
            SubsetStrategy::Sampled { count: subset_budget, seed },
            sample_subsets(n, k, subset_budget, seed),
        )
    };

    let mut subset_results = Vec::with_capacity(subsets.len());
    let mut all_inside = true;
    for indices in subsets {
        let sub_angles: Vec<f64> = indices.iter().map(|&i| angles[i]).collect();
        let (theta, margin) = match subset_rotation(&marked.marked, &sub_angles) {
            Some(theta) => (theta, verify_subset(body, center, &points, &indices, theta)?),
            None => (0.0, f64::NEG_INFINITY),
        };
        all_inside &= margin >= -DEFAULT_TOL;
        subset_results.push(SubsetResult { indices, theta, margin });
    }

    let hull_inradius = inradius_of_points(&points.points)?;
    let noncover_ok = hull_inradius > r + DEFAULT_TOL && hull_inradius - r >= 0.5 * params.epsilon;
    let verdict = (k as f64) * marked.alpha < TAU && all_inside && noncover_ok;

    Ok(LemmaCertificate {
        body: body.clone(),
        center,
        k,
        params: ConstructionParams { radius, ..params },
        alpha: marked.alpha,
        points,
        subset_strategy: strategy,
        subset_results,
        noncover: NonCover { hull_inradius, body_inradius: r },
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `k·α ≥ 2π` for the stored or the recomputed `α`.
    Precondition { k: usize, alpha: f64 },
    AlphaMismatch { stored: f64, recomputed: f64 },
    ParamsMismatch { detail: String },
    /// A stored subset whose rotated points are not all in `K`.
    SubsetNotCovered { position: usize, indices: Vec<usize>, theta: f64, worst_depth: f64 },
    NonCoverFails { hull_inradius: f64, body_inradius: f64 },
    VerdictMismatch { stored: bool },
    /// The certificate was checked against a different body.
    BodyMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub clean: bool,
    pub subsets_checked: usize,
    pub violations: Vec<Violation>,
}

/// Re-checks a certificate from scratch: parameters, `α`, `kα < 2π`, every
/// stored subset (via plain membership tests) and the inradius inequality.
pub fn verify_certificate(cert: &LemmaCertificate) -> Result<VerificationReport> {
    let body = &cert.body;
    let n = cert.params.n;
    if cert.k == 0 {
        return Err(Error::MalformedCertificate("k must be at least 1".into()));
    }
    if cert.points.len() != n {
        return Err(Error::MalformedCertificate(format!(
            "params.n = {n} but {} points are stored",
            cert.points.len()
        )));
    }
    for (pos, s) in cert.subset_results.iter().enumerate() {
        let distinct = s.indices.iter().all_unique();
        if s.indices.len() != cert.k || !distinct || s.indices.iter().any(|&i| i >= n) {
            return Err(Error::MalformedCertificate(format!(
                "subset_results[{pos}] is not a {}-subset of 0..{n}",
                cert.k
            )));
        }
    }

    let mut violations = Vec::new();
    let r = chebyshev_incircle(body)?.r;
    let expected_radius = circumradius(r + cert.params.epsilon, n);
    if (expected_radius - cert.params.radius).abs() > DEFAULT_TOL {
        violations.push(Violation::ParamsMismatch {
            detail: format!("R = {} but (r + epsilon)/cos(pi/n) = {expected_radius}", cert.params.radius),
        });
    }
    if cert.params.center.dist(cert.center) > 0.0 {
        violations.push(Violation::ParamsMismatch { detail: "params.center differs from center".into() });
    }
    if let Some((i, p)) =
        cert.points.points.iter().enumerate().find(|(_, p)| (p.dist(cert.center) - cert.params.radius).abs() > DEFAULT_TOL)
    {
        violations.push(Violation::ParamsMismatch {
            detail: format!("point {i} at distance {} from the center, expected R", p.dist(cert.center)),
        });
    }

    let recomputed = marked_set(body, cert.center, cert.params.radius)?.alpha;
    if (recomputed - cert.alpha).abs() > 1e-9 {
        violations.push(Violation::AlphaMismatch { stored: cert.alpha, recomputed });
    }
    for alpha in [cert.alpha, recomputed] {
        if cert.k as f64 * alpha >= TAU {
            violations.push(Violation::Precondition { k: cert.k, alpha });
            break;
        }
    }

    for (pos, s) in cert.subset_results.iter().enumerate() {
        let worst_depth = s
            .indices
            .iter()
            .map(|&i| body.depth(cert.points.points[i].rotate_about(cert.center, s.theta)))
            .fold(f64::INFINITY, f64::min);
        let inside = s
            .indices
            .iter()
            .all(|&i| body.contains(cert.points.points[i].rotate_about(cert.center, s.theta), DEFAULT_TOL));
        if !inside || s.margin < -DEFAULT_TOL {
            violations.push(Violation::SubsetNotCovered {
                position: pos,
                indices: s.indices.clone(),
                theta: s.theta,
                worst_depth,
            });
        }
    }

    let hull_inradius = inradius_of_points(&cert.points.points)
        .map_err(|e| Error::MalformedCertificate(format!("points: {e}")))?;
    if !(hull_inradius > r + DEFAULT_TOL && hull_inradius - r >= 0.5 * cert.params.epsilon)
        || (hull_inradius - cert.noncover.hull_inradius).abs() > 1e-9
        || (r - cert.noncover.body_inradius).abs() > 1e-9
    {
        violations.push(Violation::NonCoverFails { hull_inradius, body_inradius: r });
    }

    if cert.verdict != violations.is_empty() {
        violations.push(Violation::VerdictMismatch { stored: cert.verdict });
    }
    Ok(VerificationReport {
        clean: violations.is_empty(),
        subsets_checked: cert.subset_results.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::samples::{disc1, square2};
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn polygon_config_examples() {
        let (cfg, radius) = regular_polygon_config(Point2::ORIGIN, 1.0, 0.0, 4, FRAC_PI_4).unwrap();
        assert!((radius - SQRT_2).abs() < 1e-15);
        for (p, q) in cfg.points.iter().zip([(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)]) {
            assert!(p.dist(Point2::new(q.0, q.1)) < 1e-12);
        }
        let (cfg, radius) = regular_polygon_config(Point2::ORIGIN, 1.0, 0.01, 40, 0.0).unwrap();
        assert!((radius - 1.0131231204676538).abs() < 1e-12);
        assert!((inradius_of_points(&cfg.points).unwrap() - 1.01).abs() < 1e-12);
        assert!(regular_polygon_config(Point2::ORIGIN, 1.0, 0.01, 2, 0.0).is_err());
        assert!(regular_polygon_config(Point2::ORIGIN, 1.0, -0.01, 5, 0.0).is_err());
    }

    #[test]
    fn circumradius_tends_to_inradius() {
        let rows = [(0.1, 8, 1.1906314203216335), (0.01, 40, 1.0131231204676538), (0.001, 200, 1.0011235061225014)];
        let mut prev = f64::INFINITY;
        for (eps, n, want) in rows {
            let got = circumradius(1.0 + eps, n);
            assert!((got - want).abs() < 1e-12);
            assert!(got < prev && got > 1.0);
            prev = got;
        }
    }

    #[test]
    fn params_for_square() {
        let c3 = choose_construction_params(&square2(), Point2::ORIGIN, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(c3.params.n, 40);
        assert!((c3.params.epsilon - 0.01).abs() < 1e-15);
        assert!((c3.alpha - 1.2890279557378677).abs() < 1e-9);
        assert!(3.0 * c3.alpha < TAU);

        let c10 = choose_construction_params(&square2(), Point2::ORIGIN, 10, DEFAULT_BUDGET).unwrap();
        assert_eq!((c10.params.n, c10.params.epsilon), (200, 0.001));
        assert!(c10.params.radius < 1.00309);
        assert!((c10.alpha - 0.3790438905074374).abs() < 1e-9);
    }

    #[test]
    fn disc_exhausts_budget() {
        for k in [2, 3, 7] {
            let err = choose_construction_params(&disc1(), Point2::ORIGIN, k, DEFAULT_BUDGET).unwrap_err();
            assert!(matches!(err, Error::BudgetExhausted { .. }));
        }
        assert!(matches!(build_certificate(&disc1(), 2, 6, 1000, 0), Err(Error::BudgetExhausted { .. })));
    }

    #[test]
    fn feasible_set_examples() {
        assert!(rotation_feasible_set(&AngularSet::empty(), &[0.3, 1.0]).is_full());
        let u = AngularSet::arc(-0.1, 0.2);
        let f = rotation_feasible_set(&u, &[0.0]);
        assert!((f.measure() - (TAU - 0.2)).abs() < 1e-12);
        // Scan oracle.
        let steps = 100_000;
        let hits = (0..steps).filter(|i| f.contains(TAU * (*i as f64 + 0.5) / steps as f64)).count();
        assert!((hits as f64 / steps as f64 * TAU - f.measure()).abs() < 1e-3);
    }

    #[test]
    fn subset_margins() {
        let (cfg, radius) = regular_polygon_config(Point2::ORIGIN, 1.0, 0.01, 40, 0.0).unwrap();
        let marked = marked_set(&square2(), Point2::ORIGIN, radius).unwrap();
        let subset = [0, 13, 26];
        let angles: Vec<f64> = subset.iter().map(|&i| cfg.points[i].angle()).collect();
        let theta = subset_rotation(&marked.marked, &angles).unwrap();
        let margin = verify_subset(&square2(), Point2::ORIGIN, &cfg, &subset, theta).unwrap();
        assert!(margin > 0.0);
        for &i in &subset {
            assert!(square2().contains(cfg.points[i].rotate(theta), 0.0));
        }
        // Vertex 0 sits at angle 0, inside the marked arc around 0.
        let bad = verify_subset(&square2(), Point2::ORIGIN, &cfg, &subset, 0.0).unwrap();
        assert!(bad < 0.0);
        assert!(!square2().contains(cfg.points[0], DEFAULT_TOL));
        assert_eq!(verify_subset(&square2(), Point2::ORIGIN, &cfg, &[], 0.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn noncover_examples() {
        let (cfg, _) = regular_polygon_config(Point2::ORIGIN, 1.0, 0.01, 40, 0.0).unwrap();
        assert!(verify_noncover(&square2(), &cfg).unwrap());
        let inside = Configuration::new(vec![Point2::new(0.5, 0.5), Point2::new(-0.5, 0.2), Point2::new(0.0, -0.9)], "").unwrap();
        assert!(!verify_noncover(&square2(), &inside).unwrap());
        let single = Configuration::new(vec![Point2::ORIGIN], "").unwrap();
        assert!(matches!(verify_noncover(&square2(), &single), Err(Error::DegenerateHull(_))));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(40, 3), 9880);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(200, 10), 22_451_004_309_013_280);
        assert_eq!(binomial(2000, 1000), u128::MAX);
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_subsets(200, 10, 50, 7);
        assert_eq!(a, sample_subsets(200, 10, 50, 7));
        assert_ne!(a, sample_subsets(200, 10, 50, 8));
        assert!(a.iter().all(|s| s.len() == 10 && s.windows(2).all(|w| w[0] < w[1])));
    }
}
