//! Planar primitives: points, circular angle sets, disc-polygon bodies,
//! rigid motions and convex hulls.

pub mod angular;
pub mod body;
pub mod config;
pub mod hull;
pub mod motion;
pub mod point;
pub mod samples;

pub use angular::{AngularInterval, AngularSet};
pub use body::{Body, BodyFile, BoundaryPiece};
pub use config::Configuration;
pub use hull::{convex_hull, Hull};
pub use motion::RigidMotion;
pub use point::Point2;

/// Default geometric tolerance in body units.
pub const DEFAULT_TOL: f64 = 1e-9;
