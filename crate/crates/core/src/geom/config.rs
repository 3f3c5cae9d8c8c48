use serde::{Deserialize, Serialize};

use super::Point2;
use crate::error::{Error, Result};

/// A finite planar point set to be covered.
///
/// On disk: `{"points": [[x, y], ...]}` with an optional `"provenance"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration")]
pub struct Configuration {
    pub points: Vec<Point2>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub provenance: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfiguration {
    points: Vec<Point2>,
    #[serde(default)]
    provenance: String,
}

impl TryFrom<RawConfiguration> for Configuration {
    type Error = Error;
    fn try_from(raw: RawConfiguration) -> Result<Self> {
        Configuration::new(raw.points, raw.provenance)
    }
}

impl Configuration {
    pub fn new(points: Vec<Point2>, provenance: impl Into<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::TooFewPoints { needed: 1, got: 0 });
        }
        if let Some((i, _)) = points.iter().enumerate().find(|(_, p)| !p.is_finite()) {
            return Err(Error::InvalidParameter { name: "points", reason: format!("point {i} is not finite") });
        }
        Ok(Self { points, provenance: provenance.into() })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn select(&self, indices: &[usize]) -> Vec<Point2> {
        indices.iter().map(|&i| self.points[i]).collect()
    }
}
