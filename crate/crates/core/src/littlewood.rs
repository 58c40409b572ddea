//! Radial area functional and the chord bound.
//!
//! A figure with a boundary point `O` at the origin is described by its
//! radial profile `ρ(θ)`, `θ ∈ [0, π]`, the distance from `O` to the
//! boundary in direction `θ`. Its area is `½∫ρ² dθ`. Pairing `θ` with
//! `θ + π/2` gives `½∫₀^{π/2} (ρ(θ)² + ρ(θ+π/2)²) dθ`, and the integrand is
//! the squared length of a chord through `O`, hence at most the squared
//! diameter.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_SAMPLES: usize = 8;

const GRID_EPS: f64 = 1e-12;

/// Samples `(θᵢ, ρᵢ)` of a radial profile, linearly interpolated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProfileDoc", into = "ProfileDoc")]
pub struct RadialProfile {
    theta: Vec<f64>,
    rho: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ProfileDoc {
    theta: Vec<f64>,
    rho: Vec<f64>,
}

impl TryFrom<ProfileDoc> for RadialProfile {
    type Error = Error;
    fn try_from(d: ProfileDoc) -> Result<Self> {
        RadialProfile::new(d.theta, d.rho)
    }
}

impl From<RadialProfile> for ProfileDoc {
    fn from(p: RadialProfile) -> Self {
        ProfileDoc {
            theta: p.theta,
            rho: p.rho,
        }
    }
}

impl RadialProfile {
    pub fn new(theta: Vec<f64>, rho: Vec<f64>) -> Result<Self> {
        if theta.len() != rho.len() {
            return Err(Error::Domain(format!(
                "theta has {} samples but rho has {}",
                theta.len(),
                rho.len()
            )));
        }
        if theta.len() < MIN_SAMPLES {
            return Err(Error::Domain(format!(
                "profile needs at least {MIN_SAMPLES} samples, got {}",
                theta.len()
            )));
        }
        if theta[0].abs() > GRID_EPS || (theta[theta.len() - 1] - PI).abs() > GRID_EPS {
            return Err(Error::Domain("theta must run from 0 to π".into()));
        }
        if theta.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("theta must be strictly increasing".into()));
        }
        if let Some(r) = rho.iter().find(|r| !(r.is_finite() && **r >= 0.0)) {
            return Err(Error::Domain(format!("rho samples must be finite and ≥ 0, got {r}")));
        }
        Ok(Self { theta, rho })
    }

    /// `n` samples of `f` on the uniform grid `θᵢ = iπ/(n−1)`.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n < MIN_SAMPLES {
            return Err(Error::Domain(format!("profile needs at least {MIN_SAMPLES} samples, got {n}")));
        }
        let theta: Vec<f64> = (0..n).map(|i| PI * i as f64 / (n - 1) as f64).collect();
        let rho = theta.iter().map(|&t| f(t)).collect();
        Self::new(theta, rho)
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    /// Linear interpolation; 0 outside `[0, π]`.
    pub fn at(&self, t: f64) -> f64 {
        let th = &self.theta;
        if t < th[0] - GRID_EPS || t > th[th.len() - 1] + GRID_EPS {
            return 0.0;
        }
        let i = th.partition_point(|&x| x <= t);
        if i == 0 {
            return self.rho[0];
        }
        if i >= th.len() {
            return self.rho[th.len() - 1];
        }
        let (t0, t1) = (th[i - 1], th[i]);
        let w = (t - t0) / (t1 - t0);
        if w <= GRID_EPS {
            return self.rho[i - 1];
        }
        self.rho[i - 1] * (1.0 - w) + self.rho[i] * w
    }

    /// `ρ(θ)² + ρ(θ+π/2)²` at the grid points in `[0, π/2]`, with `ρ`
    /// interpolated linearly.
    fn chord_sq_at_grid(&self) -> impl Iterator<Item = f64> + '_ {
        self.theta
            .iter()
            .zip(&self.rho)
            .take_while(|(t, _)| **t <= FRAC_PI_2 + GRID_EPS)
            .map(|(&t, &r)| {
                let q = self.at(t + FRAC_PI_2);
                r * r + q * q
            })
    }

    /// Linear interpolant of the `ρ²` samples.
    fn rho_sq_at(&self, t: f64) -> f64 {
        let th = &self.theta;
        let i = th.partition_point(|&x| x <= t);
        if i == 0 {
            return self.rho[0] * self.rho[0];
        }
        if i >= th.len() {
            let r = self.rho[th.len() - 1];
            return r * r;
        }
        let (t0, t1) = (th[i - 1], th[i]);
        let w = (t - t0) / (t1 - t0);
        let (r0, r1) = (self.rho[i - 1], self.rho[i]);
        r0 * r0 * (1.0 - w) + r1 * r1 * w
    }

    /// `(θ, ρ²(θ) + ρ²(θ+π/2))` on the merged grid made of the samples in
    /// `[0, π/2]` and the samples in `[π/2, π]` shifted back by `π/2`.
    ///
    /// With `ρ²` interpolated linearly, every kink of the integrand is a grid
    /// point, so its trapezoid sum is exactly the direct sum reassociated.
    fn paired_integrand(&self) -> Vec<(f64, f64)> {
        let mut grid: Vec<f64> = self
            .theta
            .iter()
            .map(|&t| if t <= FRAC_PI_2 { t } else { t - FRAC_PI_2 })
            .chain([0.0, FRAC_PI_2])
            .collect();
        grid.sort_by(f64::total_cmp);
        grid.dedup_by(|a, b| (*a - *b).abs() <= GRID_EPS);
        grid.into_iter()
            .map(|t| (t, self.rho_sq_at(t) + self.rho_sq_at(t + FRAC_PI_2)))
            .collect()
    }
}

fn trapezoid(xs: impl Iterator<Item = (f64, f64)>) -> f64 {
    let mut sum = 0.0;
    let mut prev: Option<(f64, f64)> = None;
    for (x, y) in xs {
        if let Some((x0, y0)) = prev {
            sum += 0.5 * (x - x0) * (y0 + y);
        }
        prev = Some((x, y));
    }
    sum
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialArea {
    /// `½∫₀^π ρ² dθ`
    pub direct: f64,
    /// `½∫₀^{π/2} (ρ(θ)² + ρ(θ+π/2)²) dθ`
    pub paired: f64,
    /// Richardson estimate from the half-resolution grid.
    pub quadrature_error: f64,
}

pub fn radial_area(p: &RadialProfile) -> RadialArea {
    let direct = 0.5 * trapezoid(p.theta.iter().zip(&p.rho).map(|(&t, &r)| (t, r * r)));
    let paired = 0.5 * trapezoid(p.paired_integrand().into_iter());
    let n = p.len();
    let coarse = 0.5
        * trapezoid(
            (0..n)
                .filter(|i| i % 2 == 0 || *i == n - 1)
                .map(|i| (p.theta[i], p.rho[i] * p.rho[i])),
        );
    RadialArea {
        direct,
        paired,
        quadrature_error: (direct - coarse).abs() / 3.0,
    }
}

/// Largest `ρ(θ)² + ρ(θ+π/2)²` over the grid points in `[0, π/2]`: the
/// squared length of the longest right-angled chord through the origin.
pub fn max_chord_sq(p: &RadialProfile) -> f64 {
    p.chord_sq_at_grid().fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LittlewoodBound {
    pub area: f64,
    pub paired_area: f64,
    pub max_chord_sq: f64,
    /// `(π/4)·max_chord_sq`
    pub bound: f64,
    pub quadrature_error: f64,
    pub ok: bool,
}

/// Checks `area ≤ (π/4)·max PQ²`, the diameter bound in scale-free form.
pub fn littlewood_bound(p: &RadialProfile) -> LittlewoodBound {
    let a = radial_area(p);
    let chord = max_chord_sq(p);
    let bound = FRAC_PI_4 * chord;
    let slack = a.quadrature_error + 1e-12 * bound.max(1.0);
    LittlewoodBound {
        area: a.direct,
        paired_area: a.paired,
        max_chord_sq: chord,
        bound,
        quadrature_error: a.quadrature_error,
        ok: a.direct <= bound + slack,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sine_profile_hits_the_bound() {
        let p = RadialProfile::from_fn(1001, f64::sin).unwrap();
        let a = radial_area(&p);
        assert!((a.direct - FRAC_PI_4).abs() < 1e-12);
        assert!((a.direct - a.paired).abs() < 1e-12);
        assert!((max_chord_sq(&p) - 1.0).abs() < 1e-12);
        let b = littlewood_bound(&p);
        assert!(b.ok);
        assert!((b.bound - FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn zero_profile() {
        let p = RadialProfile::from_fn(16, |_| 0.0).unwrap();
        assert_eq!(radial_area(&p).direct, 0.0);
        assert_eq!(max_chord_sq(&p), 0.0);
        assert!(littlewood_bound(&p).ok);
    }

    #[test]
    fn half_sine_scales_quadratically() {
        let p = RadialProfile::from_fn(1001, |t| 0.5 * t.sin()).unwrap();
        let b = littlewood_bound(&p);
        assert!((b.area - PI / 16.0).abs() < 1e-12);
        assert!(b.ok);
    }

    #[test]
    fn asymmetric_profile_max_at_zero() {
        let p = RadialProfile::from_fn(1001, |t| if t <= FRAC_PI_2 { t.sin() } else { 0.9 * t.sin() }).unwrap();
        assert!((max_chord_sq(&p) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(RadialProfile::from_fn(4, f64::sin).is_err());
        assert!(RadialProfile::from_fn(16, |t| t.sin() - 0.5).is_err());
        let theta: Vec<f64> = (0..8).map(|i| PI * i as f64 / 7.0).collect();
        assert!(RadialProfile::new(theta.clone(), vec![0.0; 7]).is_err());
        let mut bad = theta.clone();
        bad.swap(2, 3);
        assert!(RadialProfile::new(bad, vec![0.0; 8]).is_err());
        let short: Vec<f64> = theta.iter().map(|t| t * 0.5).collect();
        assert!(RadialProfile::new(short, vec![0.0; 8]).is_err());
    }

    #[test]
    fn interpolation() {
        let p = RadialProfile::from_fn(9, |t| t).unwrap();
        assert!((p.at(1.0) - 1.0).abs() < 1e-15);
        assert_eq!(p.at(-1.0), 0.0);
        assert_eq!(p.at(4.0), 0.0);
    }
}
