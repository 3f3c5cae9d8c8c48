//! Planar toolkit for rotational Helly-type covering questions on
//! disc-polygons (convex polygons thickened by a disc).
//!
//! The pieces, bottom up:
//!
//! - [`geom`]: points, circular angle sets, bodies, rigid motions, hulls.
//! - [`incircle`]: Chebyshev incircles, contact sets and the `β/α` bound.
//! - [`marking`]: boundary directions closer than `R` to a center, `α(R)`.
//! - [`lemma`]: builds and checks the regular-polygon counterexample that
//!   rules out any finite Helly constant for rotations plus translations.
//! - [`coverage`]: translation and rigid-motion covering oracles.
//! - [`cli`], [`svg`]: command-line front end and figure output.

pub mod cli;
pub mod coverage;
pub mod error;
pub mod format;
pub mod geom;
pub mod incircle;
pub mod io;
pub mod lemma;
pub mod lp;
pub mod marking;
mod serde_util;
pub mod svg;

pub use error::{Error, Result};
pub use geom::{AngularInterval, AngularSet, Body, Point2, RigidMotion, DEFAULT_TOL};
