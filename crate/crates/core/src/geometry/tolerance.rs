use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by the kernel and the measures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Length below which two points coincide.
    pub geom_eps: f64,
    /// Absolute tolerance for area identities.
    pub area_tol: f64,
    /// Maximum chord-to-arc distance when arcs are replaced by chords.
    pub arc_max_sagitta: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            geom_eps: 1e-12,
            area_tol: 1e-9,
            arc_max_sagitta: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(geom_eps: f64, area_tol: f64, arc_max_sagitta: f64) -> Result<Self> {
        for (name, v) in [
            ("geom_eps", geom_eps),
            ("area_tol", area_tol),
            ("arc_max_sagitta", arc_max_sagitta),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!("{name} must be finite and positive, got {v}")));
            }
        }
        Ok(Self {
            geom_eps,
            area_tol,
            arc_max_sagitta,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_positive() {
        assert!(Tolerance::new(0.0, 1e-9, 1e-9).is_err());
        assert!(Tolerance::new(1e-12, -1.0, 1e-9).is_err());
        assert!(Tolerance::new(1e-12, 1e-9, f64::NAN).is_err());
        assert!(Tolerance::new(1e-12, 1e-9, 1e-9).is_ok());
    }
}
