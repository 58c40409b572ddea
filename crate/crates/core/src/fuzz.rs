//! Random convex test figures.

use std::f64::consts::TAU;

use rand::Rng;

use crate::error::Result;
use crate::geometry::hull::{convex_hull_points, convex_polygon_diameter};
use crate::geometry::{orient, Figure, Point};
use crate::littlewood::RadialProfile;

/// Convex polygon with between 3 and `max_vertices` vertices (before hull
/// reduction) scaled to a diameter drawn uniformly from `[min_diam, max_diam]`.
pub fn random_convex_polygon<R: Rng>(rng: &mut R, max_vertices: usize, min_diam: f64, max_diam: f64) -> Vec<Point> {
    loop {
        let n = rng.random_range(3..=max_vertices.max(3));
        let pts: Vec<Point> = (0..n)
            .map(|_| {
                let r = rng.random::<f64>().sqrt();
                Point::polar(rng.random::<f64>() * TAU) * r
            })
            .collect();
        let hull = convex_hull_points(&pts);
        if hull.len() < 3 {
            continue;
        }
        let diam = convex_polygon_diameter(&hull);
        let area = crate::measures::polygon_area(&hull);
        if area < 1e-6 * diam * diam {
            continue;
        }
        let target = rng.random_range(min_diam..=max_diam);
        let s = target / diam;
        return hull.into_iter().map(|p| p * s).collect();
    }
}

pub fn random_convex_figure<R: Rng>(rng: &mut R, max_vertices: usize, max_diam: f64) -> Result<Figure> {
    Figure::polygon(&random_convex_polygon(rng, max_vertices, 0.1 * max_diam, max_diam))
}

/// Radial profile of a counter-clockwise convex polygon seen from its vertex
/// `0`, after rotating so the edge `0 → 1` points along +x.
pub fn radial_profile_of(poly: &[Point], samples: usize) -> Result<RadialProfile> {
    let n = poly.len();
    let o = poly[0];
    let dir = (poly[1] - o).normalized();
    let rot = |p: Point| {
        let v = p - o;
        Point::new(v.dot(dir), dir.cross(v))
    };
    let local: Vec<Point> = poly.iter().map(|&p| rot(p)).collect();
    let interior = local[n - 1].angle();

    RadialProfile::from_fn(samples, |t| {
        if t == 0.0 {
            return local[1].norm();
        }
        if t > interior + 1e-12 {
            return 0.0;
        }
        if (t - interior).abs() <= 1e-12 {
            return local[n - 1].norm();
        }
        let u = Point::polar(t);
        // farthest crossing of the ray with the edges not incident to the origin
        (1..n - 1)
            .filter_map(|i| ray_hit(u, local[i], local[i + 1]))
            .fold(0.0, f64::max)
    })
}

/// Distance along the unit ray `u` from the origin to segment `a b`.
fn ray_hit(u: Point, a: Point, b: Point) -> Option<f64> {
    let d = b - a;
    let den = u.cross(d);
    if den.abs() < 1e-300 {
        return None;
    }
    let t = a.cross(d) / den;
    let s = a.cross(u) / den;
    (t >= 0.0 && (-1e-12..=1.0 + 1e-12).contains(&s)).then_some(t)
}

/// Whether the counter-clockwise polygon `pts` turns left at every vertex.
pub fn is_convex_polygon(pts: &[Point]) -> bool {
    let n = pts.len();
    n >= 3 && (0..n).all(|i| orient(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) > 0.0)
}

/// Random profile of a convex figure through the origin with diameter at most 1.
pub fn random_convex_profile<R: Rng>(rng: &mut R, samples: usize) -> Result<RadialProfile> {
    let poly = random_convex_polygon(rng, 24, 0.2, 1.0);
    let start = rng.random_range(0..poly.len());
    let rotated: Vec<Point> = poly[start..].iter().chain(&poly[..start]).copied().collect();
    radial_profile_of(&rotated, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn polygons_are_convex_with_bounded_diameter() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let p = random_convex_polygon(&mut rng, 20, 0.3, 1.0);
            assert!(is_convex_polygon(&p));
            let d = convex_polygon_diameter(&p);
            assert!((0.3 - 1e-12..=1.0 + 1e-12).contains(&d), "{d}");
        }
    }

    #[test]
    fn square_profile() {
        let sq = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let p = radial_profile_of(&sq, 9).unwrap();
        // θ = π/4 hits the opposite corner
        assert!((p.rho()[2] - 2f64.sqrt()).abs() < 1e-12);
        assert!((p.rho()[0] - 1.0).abs() < 1e-12);
        assert!((p.rho()[4] - 1.0).abs() < 1e-12);
        assert_eq!(p.rho()[8], 0.0);
    }
}
