//! Monte Carlo estimates of areas and of μ by plain rejection sampling.
//!
//! Samples are drawn uniformly in the figure's tight bounding box. The work
//! is split into fixed chunks; chunk `i` draws from `ChaCha8Rng` seeded with
//! `seed` on stream `i`, and only integer hit counts are reduced, so the
//! result depends on `(seed, n)` alone and not on the thread count.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Circle, Figure, Location, Point, Tolerance};

pub const MIN_SAMPLES: u64 = 10_000;
pub const RNG_NAME: &str = "ChaCha8Rng, stream = chunk index";
const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
    pub bounding_box: (Point, Point),
    pub rng: &'static str,
}

impl McEstimate {
    /// Whether `target` lies within `k` standard errors of the estimate.
    pub fn agrees_with(&self, target: f64, k: f64) -> bool {
        (self.value - target).abs() <= k * self.std_error
    }
}

fn check_samples(n: u64) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(Error::Domain(format!("at least {MIN_SAMPLES} samples required, got {n}")));
    }
    Ok(())
}

fn sample_box(f: &Figure) -> Result<(Point, Point)> {
    let (lo, hi) = f.bounding_box();
    if !(hi.x > lo.x && hi.y > lo.y) {
        return Err(Error::DegenerateFigure("bounding box has zero area".into()));
    }
    Ok((lo, hi))
}

/// Runs `visit` on every sample point and sums the per-chunk counters.
fn sample_counts<F>(n: u64, seed: u64, (lo, hi): (Point, Point), visit: F) -> (u64, u64)
where
    F: Fn(Point) -> (u64, u64) + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let count = CHUNK.min(n - i * CHUNK);
            let mut acc = (0u64, 0u64);
            for _ in 0..count {
                let p = Point::new(lo.x + w * rng.random::<f64>(), lo.y + h * rng.random::<f64>());
                let (a, b) = visit(p);
                acc.0 += a;
                acc.1 += b;
            }
            acc
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1))
}

/// Area estimate: hit fraction times bounding-box area.
pub fn mc_area(f: &Figure, n: u64, seed: u64) -> Result<McEstimate> {
    check_samples(n)?;
    let bbox = sample_box(f)?;
    let cls = f.classifier(&Tolerance::default());
    let (hits, _) = sample_counts(n, seed, bbox, |p| (u64::from(cls.classify(p) != Location::Outside), 0));
    let box_area = (bbox.1.x - bbox.0.x) * (bbox.1.y - bbox.0.y);
    let p_hat = hits as f64 / n as f64;
    Ok(McEstimate {
        value: p_hat * box_area,
        std_error: box_area * (p_hat * (1.0 - p_hat) / n as f64).sqrt(),
        samples: n,
        seed,
        bounding_box: bbox,
        rng: RNG_NAME,
    })
}

/// Fraction of the samples inside `f` that fall outside the closed disc.
pub fn mc_mu(f: &Figure, c: &Circle, n: u64, seed: u64) -> Result<McEstimate> {
    check_samples(n)?;
    let bbox = sample_box(f)?;
    let cls = f.classifier(&Tolerance::default());
    let (inside, outside_disc) = sample_counts(n, seed, bbox, |p| {
        if cls.classify(p) == Location::Outside {
            (0, 0)
        } else {
            (1, u64::from(!c.contains(p)))
        }
    });
    if inside == 0 {
        return Err(Error::DegenerateFigure("no samples landed inside the figure".into()));
    }
    let q = outside_disc as f64 / inside as f64;
    Ok(McEstimate {
        value: q,
        std_error: (q * (1.0 - q) / inside as f64).sqrt(),
        samples: n,
        seed,
        bounding_box: bbox,
        rng: RNG_NAME,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_all_hits() {
        let sq = Figure::polygon(&[
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        let est = mc_area(&sq, 200_000, 3).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn too_few_samples() {
        let f = Figure::circle(&Circle::reference());
        assert!(matches!(mc_area(&f, 100, 0), Err(Error::Domain(_))));
        assert!(matches!(mc_mu(&f, &Circle::reference(), 9_999, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn seeds_are_reproducible_and_distinct() {
        let f = Figure::circle(&Circle::reference());
        let a = mc_area(&f, 100_000, 11).unwrap();
        let b = mc_area(&f, 100_000, 11).unwrap();
        let c = mc_area(&f, 100_000, 12).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_ne!(a.value, c.value);
    }

    #[test]
    fn disc_outside_figure_gives_one() {
        let f = Figure::circle(&Circle::reference());
        let far = Circle::new(Point::new(5.0, 5.0), 0.1).unwrap();
        assert_eq!(mc_mu(&f, &far, 20_000, 1).unwrap().value, 1.0);
    }
}
