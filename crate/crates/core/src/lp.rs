//! Small dense simplex for the three-variable programs used by the incircle
//! and translation-feasibility code:
//!
//! ```text
//! maximize s  subject to  a_j · x + s ≤ c_j,   x ∈ R², s ∈ R
//! ```
//!
//! With unit `a_j` this is the Chebyshev-center program of the polygon
//! `{x : a_j · x ≤ c_j}`.

use crate::error::{Error, Result};
use crate::geom::Point2;

const PIVOT_EPS: f64 = 1e-12;
const MAX_PIVOTS: usize = 10_000;

/// Optimal point of [`max_min_slack`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlackOptimum {
    pub x: Point2,
    /// `min_j (c_j - a_j · x)`, recomputed from `x`.
    pub slack: f64,
}

/// Maximizes `min_j (c_j - a_j · x)` over `x`.
///
/// Returns [`Error::Unbounded`] when the rows do not positively span the
/// plane. Bland's rule keeps degenerate vertices (e.g. a square's center,
/// where four rows are tight) from cycling.
pub fn max_min_slack(rows: &[(Point2, f64)]) -> Result<SlackOptimum> {
    if rows.is_empty() {
        return Err(Error::Unbounded);
    }
    let m = rows.len();
    // Shift s = s0 + s' so the all-slack basis is feasible at x = 0.
    let s0 = rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);

    // Columns: x+, y+, x-, y-, s'+, s'-, slacks..., rhs.
    const NV: usize = 6;
    let ncol = NV + m + 1;
    let rhs = ncol - 1;
    let mut t = vec![vec![0.0; ncol]; m];
    for (i, &(a, c)) in rows.iter().enumerate() {
        let row = &mut t[i];
        row[0] = a.x;
        row[1] = a.y;
        row[2] = -a.x;
        row[3] = -a.y;
        row[4] = 1.0;
        row[5] = -1.0;
        row[NV + i] = 1.0;
        row[rhs] = (c - s0).max(0.0);
    }
    let mut reduced = vec![0.0; ncol];
    reduced[4] = 1.0;
    reduced[5] = -1.0;
    let mut basis: Vec<usize> = (NV..NV + m).collect();

    for _ in 0..MAX_PIVOTS {
        let Some(enter) = (0..ncol - 1).find(|&j| reduced[j] > PIVOT_EPS) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let coef = t[i][enter];
            if coef > PIVOT_EPS {
                let ratio = t[i][rhs] / coef;
                leave = match leave {
                    Some((li, lr))
                        if lr < ratio || (lr == ratio && basis[li] < basis[i]) =>
                    {
                        Some((li, lr))
                    }
                    _ => Some((i, ratio)),
                };
            }
        }
        let Some((p, _)) = leave else {
            return Err(Error::Unbounded);
        };

        let piv = t[p][enter];
        for v in t[p].iter_mut() {
            *v /= piv;
        }
        let prow = t[p].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == p {
                continue;
            }
            let f = row[enter];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= f * pv;
                }
            }
        }
        let f = reduced[enter];
        for (v, pv) in reduced.iter_mut().zip(&prow) {
            *v -= f * pv;
        }
        basis[p] = enter;
    }

    let mut vals = [0.0; NV];
    for (i, &b) in basis.iter().enumerate() {
        if b < NV {
            vals[b] = t[i][rhs];
        }
    }
    let x = Point2::new(vals[0] - vals[2], vals[1] - vals[3]);
    Ok(SlackOptimum { x, slack: min_slack(rows, x) })
}

/// `min_j (c_j - a_j · x)`.
pub fn min_slack(rows: &[(Point2, f64)], x: Point2) -> f64 {
    rows.iter().map(|&(a, c)| c - a.dot(x)).fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_rows() -> Vec<(Point2, f64)> {
        vec![
            (Point2::new(1.0, 0.0), 1.0),
            (Point2::new(0.0, 1.0), 1.0),
            (Point2::new(-1.0, 0.0), 1.0),
            (Point2::new(0.0, -1.0), 1.0),
        ]
    }

    #[test]
    fn square_center() {
        let opt = max_min_slack(&square_rows()).unwrap();
        assert!(opt.x.norm() < 1e-12);
        assert!((opt.slack - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shifted_square_with_negative_offsets() {
        // Square [4,6] x [-6,-4]: every c_j is negative for one side.
        let rows: Vec<(Point2, f64)> = square_rows()
            .into_iter()
            .map(|(a, c)| (a, c + a.dot(Point2::new(5.0, -5.0))))
            .collect();
        let opt = max_min_slack(&rows).unwrap();
        assert!(opt.x.dist(Point2::new(5.0, -5.0)) < 1e-12);
        assert!((opt.slack - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_region_reports_negative_slack() {
        // x ≤ -1 and -x ≤ -1 (x ≥ 1) cannot both hold; best slack is -1.
        let rows = vec![
            (Point2::new(1.0, 0.0), -1.0),
            (Point2::new(-1.0, 0.0), -1.0),
            (Point2::new(0.0, 1.0), 0.0),
            (Point2::new(0.0, -1.0), 0.0),
        ];
        let opt = max_min_slack(&rows).unwrap();
        assert!((opt.slack + 1.0).abs() < 1e-12);
    }

    #[test]
    fn half_plane_is_unbounded() {
        assert_eq!(max_min_slack(&[(Point2::new(1.0, 0.0), 0.0)]), Err(Error::Unbounded));
    }
}
