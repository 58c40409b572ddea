use serde::{Deserialize, Serialize};

use super::Point;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::Domain("circle center must be finite".into()));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Domain(format!(
                "circle radius must be finite and positive, got {radius}"
            )));
        }
        Ok(Self { center, radius })
    }

    /// The unit-diameter circle on the segment from (-1/2, 0) to (1/2, 0).
    pub fn reference() -> Self {
        Self {
            center: Point::ORIGIN,
            radius: 0.5,
        }
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.radius * self.radius
    }

    /// Closed-disc membership.
    pub fn contains(&self, p: Point) -> bool {
        (p - self.center).norm_sq() <= self.radius * self.radius
    }

    /// Parses `cx,cy,r`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Domain(format!("bad circle `{s}`: {e}")))?;
        match parts[..] {
            [cx, cy, r] => Self::new(Point::new(cx, cy), r),
            _ => Err(Error::Domain(format!("circle must be `cx,cy,r`, got `{s}`"))),
        }
    }
}
