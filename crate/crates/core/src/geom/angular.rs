//! Unions of half-open arcs on the unit circle.
//!
//! An [`AngularSet`] is always kept in canonical form: arcs sorted by start,
//! pairwise disjoint, separated by gaps wider than [`MERGE_EPS`], with the
//! full circle stored as a single arc of length exactly `2π`. At most one arc
//! (the last) wraps past `2π`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{invalid_param, Result};

/// Gaps narrower than this are closed during canonicalization.
pub const MERGE_EPS: f64 = 1e-12;

/// Maps any finite angle into `[0, 2π)`.
#[inline]
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Counterclockwise sweep from `from` to `to`, in `[0, 2π)`.
#[inline]
pub fn ccw_sweep(from: f64, to: f64) -> f64 {
    normalize_angle(to - from)
}

/// Half-open arc `[start, start + length)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularInterval {
    pub start: f64,
    pub length: f64,
}

impl AngularInterval {
    pub fn new(start: f64, length: f64) -> Result<Self> {
        if !start.is_finite() {
            return Err(invalid_param("start", "must be finite"));
        }
        if !(length > 0.0 && length <= TAU) {
            return Err(invalid_param("length", format!("{length} is outside (0, 2π]")));
        }
        Ok(Self { start: normalize_angle(start), length })
    }

    /// End angle, unnormalized (may exceed `2π` for a wrapping arc).
    #[inline]
    pub fn end(&self) -> f64 {
        self.start + self.length
    }

    #[inline]
    pub fn midpoint(&self) -> f64 {
        normalize_angle(self.start + 0.5 * self.length)
    }

    pub fn contains(&self, phi: f64) -> bool {
        self.length >= TAU || ccw_sweep(self.start, phi) < self.length
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngularSet {
    arcs: Vec<AngularInterval>,
    measure: f64,
}

#[derive(Deserialize)]
struct RawAngularSet {
    arcs: Vec<AngularInterval>,
}

impl<'de> Deserialize<'de> for AngularSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawAngularSet::deserialize(d)?;
        Ok(AngularSet::from_arcs(raw.arcs.into_iter().map(|a| (a.start, a.length))))
    }
}

impl Default for AngularSet {
    fn default() -> Self {
        Self::empty()
    }
}

impl AngularSet {
    pub fn empty() -> Self {
        Self { arcs: Vec::new(), measure: 0.0 }
    }

    pub fn full() -> Self {
        Self { arcs: vec![AngularInterval { start: 0.0, length: TAU }], measure: TAU }
    }

    /// A single arc; non-positive lengths give the empty set, lengths of at
    /// least `2π` the full circle.
    pub fn arc(start: f64, length: f64) -> Self {
        Self::from_arcs(std::iter::once((start, length)))
    }

    /// Canonical union of arbitrary `(start, length)` pairs.
    pub fn from_arcs(arcs: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut linear: Vec<(f64, f64)> = Vec::new();
        for (start, length) in arcs {
            if !(length > 0.0) || !start.is_finite() {
                continue;
            }
            if length >= TAU {
                return Self::full();
            }
            let s = normalize_angle(start);
            let e = s + length;
            if e <= TAU {
                linear.push((s, e));
            } else {
                linear.push((s, TAU));
                linear.push((0.0, e - TAU));
            }
        }
        if linear.is_empty() {
            return Self::empty();
        }
        linear.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(linear.len());
        for (s, e) in linear {
            match merged.last_mut() {
                Some(last) if s <= last.1 + MERGE_EPS => last.1 = last.1.max(e),
                _ => merged.push((s, e)),
            }
        }

        let first = merged[0];
        let last = *merged.last().unwrap();
        if merged.len() == 1 && first.0 <= MERGE_EPS && first.1 >= TAU - MERGE_EPS {
            return Self::full();
        }
        let mut out: Vec<AngularInterval> = Vec::with_capacity(merged.len());
        if merged.len() > 1 && first.0 <= MERGE_EPS && last.1 >= TAU - MERGE_EPS {
            for &(s, e) in &merged[1..merged.len() - 1] {
                out.push(AngularInterval { start: s, length: e - s });
            }
            let length = (TAU - last.0) + first.1;
            if length >= TAU - MERGE_EPS {
                return Self::full();
            }
            out.push(AngularInterval { start: last.0, length });
        } else {
            for (s, e) in merged {
                out.push(AngularInterval { start: s, length: e - s });
            }
        }
        let measure = out.iter().map(|a| a.length).sum();
        Self { arcs: out, measure }
    }

    pub fn arcs(&self) -> &[AngularInterval] {
        &self.arcs
    }

    pub fn measure(&self) -> f64 {
        self.measure
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.arcs.len() == 1 && self.arcs[0].length >= TAU
    }

    pub fn contains(&self, phi: f64) -> bool {
        self.arcs.iter().any(|a| a.contains(phi))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::union_all([self, other])
    }

    pub fn union_all<'a>(sets: impl IntoIterator<Item = &'a AngularSet>) -> Self {
        Self::from_arcs(sets.into_iter().flat_map(|s| s.arcs.iter().map(|a| (a.start, a.length))))
    }

    pub fn complement(&self) -> Self {
        if self.is_empty() {
            return Self::full();
        }
        if self.is_full() {
            return Self::empty();
        }
        let n = self.arcs.len();
        let mut gaps = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.arcs[i];
            let next_start = if i + 1 < n { self.arcs[i + 1].start } else { self.arcs[0].start + TAU };
            gaps.push((a.end(), next_start - a.end()));
        }
        Self::from_arcs(gaps)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    /// Rotates every arc by `delta`.
    pub fn shift(&self, delta: f64) -> Self {
        if self.is_full() || self.is_empty() {
            return self.clone();
        }
        Self::from_arcs(self.arcs.iter().map(|a| (a.start + delta, a.length)))
    }

    /// Every arc of `self` lies inside some arc of `other`, up to `tol`.
    pub fn is_subset_of(&self, other: &Self, tol: f64) -> bool {
        if other.is_full() {
            return true;
        }
        self.arcs.iter().all(|a| {
            other.arcs.iter().any(|o| {
                let mut d = ccw_sweep(o.start, a.start);
                if d > TAU - tol {
                    d -= TAU;
                }
                d >= -tol && d + a.length <= o.length + tol
            })
        })
    }

    /// The longest arc; ties go to the earliest start.
    pub fn largest_arc(&self) -> Option<AngularInterval> {
        self.arcs.iter().copied().fold(None, |best: Option<AngularInterval>, a| match best {
            Some(b) if b.length >= a.length => Some(b),
            _ => Some(a),
        })
    }
}
